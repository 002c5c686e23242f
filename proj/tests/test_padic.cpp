#include "bhst/error.hpp"
#include "bhst/padic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bhst;

namespace {

// x0 in [1, p] with x0 = x mod p, for x with denominator prime to p.
std::uint64_t residue_in_1_p(const Rational& x, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  std::int64_t num = ((x.numerator() % pp) + pp) % pp;
  std::int64_t den = ((x.denominator() % pp) + pp) % pp;
  for (std::int64_t r = 1; r <= pp; ++r)
    if ((den * r - num) % pp == 0) return static_cast<std::uint64_t>(r);
  return 0;
}

}  // namespace

TEST(Ring, RejectsCompositeAndTwo) {
  EXPECT_THROW(ZpRing::make(9, 3), Error);
  EXPECT_THROW(ZpRing::make(2, 3), Error);
  EXPECT_NO_THROW(ZpRing::make(7, 3));
}

TEST(Ring, MixedRingsRefuseToCombine) {
  auto r3 = ZpRing::make(7, 3);
  auto r4 = ZpRing::make(7, 4);
  EXPECT_THROW(PAdicInt(r3, 1L) + PAdicInt(r4, 1L), Error);
}

TEST(PAdic, ValuationAndInverse) {
  auto ring = ZpRing::make(5, 6);
  EXPECT_EQ(PAdicInt(ring, 50L).valuation(), 2);
  EXPECT_EQ(PAdicInt(ring, 0L).valuation(), 6);
  PAdicInt u(ring, 7L);
  EXPECT_EQ(u * u.inverse(), PAdicInt(ring, 1L));
  EXPECT_THROW(PAdicInt(ring, 10L).inverse(), Error);
}

TEST(Teichmuller, ExhaustiveAtSevenPrecisionThree) {
  auto ring = ZpRing::make(7, 3);
  for (std::int64_t a = 1; a < 7; ++a) {
    const PAdicInt w = teichmuller(a, ring);
    EXPECT_EQ(w.pow(6), PAdicInt(ring, 1L)) << a;
    EXPECT_EQ(mpz_class(w.residue() % 7), a) << a;
    // Multiplicative: w(a) w(b) = w(ab).
    for (std::int64_t b = 1; b < 7; ++b) EXPECT_EQ(w * teichmuller(b, ring), teichmuller(a * b % 7, ring));
  }
  EXPECT_THROW(teichmuller(0, ring), Error);
  // Known value: omega(3) mod 343.
  EXPECT_EQ(teichmuller(3, ring).residue(), 325);
}

TEST(Gamma, SmallValuesByDefinition) {
  auto ring = ZpRing::make(7, 4);
  EXPECT_EQ(gamma_factorial(0, ring), PAdicInt(ring, 1L));
  EXPECT_EQ(gamma_factorial(1, ring), PAdicInt(ring, -1L));
  EXPECT_EQ(gamma_factorial(2, ring), PAdicInt(ring, 1L));
  EXPECT_EQ(gamma_factorial(4, ring), PAdicInt(ring, 6L));
  // Gamma_7(8) = (-1)^8 * 6! * 1 (7 skipped).
  EXPECT_EQ(gamma_factorial(8, ring), PAdicInt(ring, 720L));
}

TEST(Gamma, FunctionalEquationThroughEvaluator) {
  for (std::uint64_t p : {5u, 7u, 19u}) {
    auto ring = ZpRing::make(p, 5);
    const GammaEvaluator ev(ring);
    PAdicInt prev = ev.at_integer(1);
    for (std::uint64_t m = 1; m < 3000; ++m) {
      const PAdicInt next = ev.at_integer(m + 1);
      const PAdicInt expected = m % p == 0 ? -prev : PAdicInt(ring, -static_cast<long>(m)) * prev;
      ASSERT_EQ(next, expected) << "p=" << p << " m=" << m;
      prev = next;
    }
  }
}

TEST(Gamma, EvaluatorMatchesLiteralProduct) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {3u, 7u, 13u, 31u}) {
    auto ring = ZpRing::make(p, 4);
    const GammaEvaluator ev(ring);
    for (int i = 0; i < 40; ++i) {
      const std::uint64_t m = rng() % 20000;
      EXPECT_EQ(ev.at_integer(m), gamma_factorial(m, ring)) << p << " " << m;
    }
  }
}

TEST(Gamma, ReflectionFormula) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {7u, 13u, 31u, 61u}) {
    auto ring = ZpRing::make(p, 5);
    for (std::uint64_t d = 2; d < p; ++d) {
      if ((p - 1) % d) continue;
      for (std::int64_t a = 1; a < static_cast<std::int64_t>(d); ++a) {
        const Rational x(a, static_cast<std::int64_t>(d));
        const PAdicInt prod = gamma_at(x, ring) * gamma_at(1 - x, ring);
        const long sign = residue_in_1_p(x, p) % 2 ? -1 : 1;
        EXPECT_EQ(prod, PAdicInt(ring, sign)) << p << " " << x;
      }
    }
  }
}

TEST(Gamma, OneThirdAtSeven) {
  auto ring = ZpRing::make(7, 4);
  EXPECT_EQ(gamma_at(Rational(1, 3), ring) * gamma_at(Rational(2, 3), ring), PAdicInt(ring, -1L));
}

TEST(Gamma, ArgumentNeedsDenominatorDividingPMinusOne) {
  auto ring = ZpRing::make(7, 3);
  try {
    gamma_at(Rational(1, 5), ring);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(Gamma, ArgumentIntegerIsCongruentToRational) {
  auto ring = ZpRing::make(13, 4);
  const Rational x(5, 12);
  const mpz_class m = gamma_argument_integer(x, *ring);
  EXPECT_EQ(mpz_class((m * 12 - 5) % ring->modulus()), 0);
  EXPECT_GE(m, 0);
}

TEST(Gamma, BatchStrategiesAgree) {
  auto ring = ZpRing::make(13, 3);
  std::vector<Rational> args;
  for (std::int64_t d : {2, 3, 4, 6, 12})
    for (std::int64_t a = 1; a < d; ++a) args.emplace_back(a, d);
  const auto block = batch_gamma(args, ring, GammaStrategy::kBlockPolynomial, 1);
  for (unsigned threads : {1u, 3u}) {
    const auto sweep = batch_gamma(args, ring, GammaStrategy::kSweep, threads);
    ASSERT_EQ(sweep.size(), block.size());
    for (const auto& [x, v] : block) {
      EXPECT_EQ(sweep.at(x), v) << x;
      EXPECT_EQ(v, gamma_factorial(gamma_argument_integer(x, *ring).get_ui(), ring)) << x;
    }
  }
}
