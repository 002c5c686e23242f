// Fixed-precision p-adic integers and the p-adic gamma function.
#pragma once

#include "bhst/rational.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bhst {

bool is_prime(std::uint64_t n);

// The ring Z/p^N.
class ZpRing {
 public:
  // Odd primes only; N >= 1.
  static std::shared_ptr<const ZpRing> make(std::uint64_t p, int precision);

  std::uint64_t prime() const { return p_; }
  int precision() const { return precision_; }
  const mpz_class& modulus() const { return modulus_; }
  const mpz_class& prime_z() const { return prime_z_; }
  mpz_class reduce(const mpz_class& x) const;
  mpz_class power_of_p(int k) const;

  ZpRing(std::uint64_t p, int precision);

 private:
  std::uint64_t p_;
  int precision_;
  mpz_class prime_z_;
  mpz_class modulus_;
};
using ZpRingPtr = std::shared_ptr<const ZpRing>;

class PAdicInt {
 public:
  PAdicInt(ZpRingPtr ring, const mpz_class& value);
  PAdicInt(ZpRingPtr ring, long value);

  const ZpRingPtr& ring() const { return ring_; }
  std::uint64_t prime() const { return ring_->prime(); }
  int precision() const { return ring_->precision(); }
  const mpz_class& residue() const { return residue_; }

  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const;
  // p-adic valuation of the residue, N for zero.
  int valuation() const;
  PAdicInt inverse() const;
  PAdicInt pow(std::uint64_t e) const;
  PAdicInt reduced_to(int precision) const;
  std::string to_string() const;

  PAdicInt operator-() const;
  PAdicInt& operator+=(const PAdicInt& o);
  PAdicInt& operator-=(const PAdicInt& o);
  PAdicInt& operator*=(const PAdicInt& o);
  friend PAdicInt operator+(PAdicInt a, const PAdicInt& b) { return a += b; }
  friend PAdicInt operator-(PAdicInt a, const PAdicInt& b) { return a -= b; }
  friend PAdicInt operator*(PAdicInt a, const PAdicInt& b) { return a *= b; }
  friend bool operator==(const PAdicInt& a, const PAdicInt& b);

 private:
  void check_same_ring(const PAdicInt& o) const;
  ZpRingPtr ring_;
  mpz_class residue_;
};

// Multiplicative lift of a (mod p) with value^(p-1) = 1.
PAdicInt teichmuller(std::int64_t a, const ZpRingPtr& ring);

// Gamma_p(m) = (-1)^m prod_{0<j<m, p∤j} j by the literal product; O(m).
PAdicInt gamma_factorial(std::uint64_t m, const ZpRingPtr& ring);

// Integer m in [0, p^N) congruent to x; requires the reduced denominator of x
// to divide p-1.
mpz_class gamma_argument_integer(const Rational& x, const ZpRing& ring);

// Gamma_p on integers via iterated block polynomials
//   b_1(Y) = prod_{i=1}^{p-1} (pY + i),  b_L(Y) = prod_{i=0}^{p-1} b_{L-1}(pY + i),
// truncated to degree < N (the Y^t coefficient is divisible by p^t).
// b_L(Y) is the product of the units in [p^L Y, p^L (Y+1)), so walking the
// base-p digits of m costs O(p N^2) per evaluation after O(p N^3) setup.
class GammaEvaluator {
 public:
  explicit GammaEvaluator(ZpRingPtr ring);
  PAdicInt at_integer(const mpz_class& m) const;
  PAdicInt at(const Rational& x) const;
  const ZpRingPtr& ring() const { return ring_; }

 private:
  mpz_class eval_block(int level, const mpz_class& y) const;
  ZpRingPtr ring_;
  std::vector<std::vector<mpz_class>> blocks_;  // blocks_[L-1] = coefficients of b_L
};

PAdicInt gamma_at(const Rational& x, const ZpRingPtr& ring);

enum class GammaStrategy {
  kBlockPolynomial,  // default
  kSweep,            // one ascending pass over [0, max m], segmented across threads
};

std::map<Rational, PAdicInt> batch_gamma(const std::vector<Rational>& args, const ZpRingPtr& ring,
                                         GammaStrategy strategy = GammaStrategy::kBlockPolynomial,
                                         unsigned threads = 0);

}  // namespace bhst
