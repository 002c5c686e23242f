#include "bhst/bh_matrix.hpp"
#include "bhst/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace bhst;

namespace {

ErrorCode code_of(const IntMatrix& m, std::uint64_t p) {
  try {
    BHMatrix::validate(m, p);
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST(Validate, ErrorCodes) {
  EXPECT_EQ(code_of({{2, 1}}, 7), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{2, -1}, {0, 3}}, 7), ErrorCode::kNegativeEntry);
  EXPECT_EQ(code_of({{1, 1}, {1, 1}}, 7), ErrorCode::kSingularMatrix);
  EXPECT_EQ(code_of({{2, 1}, {1, 1}}, 7), ErrorCode::kNoAtomDecomposition);
  EXPECT_EQ(code_of({{2, 1, 1}, {0, 2, 0}, {0, 0, 2}}, 17), ErrorCode::kNoAtomDecomposition);
  EXPECT_EQ(code_of({{2, 1}, {0, 3}}, 9), ErrorCode::kDomain);
  EXPECT_EQ(code_of({{2, 1}, {0, 3}}, 11), ErrorCode::kDeterminantNotDividing);
  EXPECT_EQ(code_of({{2, 1}, {0, 3}}, 7), static_cast<ErrorCode>(0));
}

TEST(Validate, StructuralErrorsBeatPrimeErrors) {
  // Negative entry is reported even though 9 is not prime.
  EXPECT_EQ(code_of({{2, -1}, {0, 3}}, 9), ErrorCode::kNegativeEntry);
}

TEST(Validate, RelaxedModeOnlyNeedsExponentLcm) {
  const IntMatrix quartic = {{4, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4}};
  EXPECT_THROW(BHMatrix::validate(quartic, 13), Error);
  EXPECT_NO_THROW(BHMatrix::validate(quartic, 13, Admissibility::kRelaxedOracle));
}

TEST(Atoms, KindsAndReassembly) {
  const IntMatrix loop = {{2, 1, 0}, {0, 2, 1}, {1, 0, 3}};
  const auto a = BHMatrix::validate(loop, 0);
  ASSERT_EQ(a.atoms().size(), 1u);
  EXPECT_EQ(a.atoms()[0].kind, AtomKind::kLoop);
  EXPECT_EQ(reassemble(a.atoms(), 3), loop);

  const IntMatrix mixed = {{2, 1, 0, 0}, {0, 3, 0, 0}, {0, 0, 5, 0}, {0, 0, 1, 4}};
  const auto b = BHMatrix::validate(mixed, 0);
  int chains = 0, fermats = 0;
  for (const auto& at : b.atoms()) {
    chains += at.kind == AtomKind::kChain;
    fermats += at.kind == AtomKind::kFermat;
  }
  EXPECT_EQ(chains, 2);
  EXPECT_EQ(fermats, 0);
  EXPECT_EQ(reassemble(b.atoms(), 4), mixed);
}

TEST(Atoms, RandomPermutedSumsDecompose) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix m(n, IntVector(n, 0));
    int i = 0;
    while (i < n) {
      const int len = 1 + static_cast<int>(rng() % (n - i));
      const bool loop = len >= 2 && rng() % 2;
      for (int k = 0; k < len; ++k) {
        const int r = perm[i + k];
        m[r][r] = 2 + rng() % 4;
        if (k + 1 < len) m[r][perm[i + k + 1]] = 1;
        else if (loop) m[r][perm[i]] = 1;
      }
      i += len;
    }
    const auto a = BHMatrix::validate(m, 0);
    EXPECT_EQ(reassemble(a.atoms(), n), m) << format_matrix(m);
  }
}

TEST(Weights, ChainAndCy) {
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, 19);
  EXPECT_EQ(a.det(), 18);
  EXPECT_EQ(a.weights(), (RationalVector{Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
  EXPECT_EQ(a.cy_check(), CyClass::kStrict);
  EXPECT_EQ(a.potential_string(), "x1^2*x2 + x2^3 + x3^3");
  const auto t = a.transpose();
  EXPECT_EQ(t.entries(), (IntMatrix{{2, 0, 0}, {1, 3, 0}, {0, 0, 3}}));
  EXPECT_EQ(t.weights(), (RationalVector{Rational(1, 2), Rational(1, 6), Rational(1, 3)}));
  const auto c = BHMatrix::validate({{2, 1}, {0, 3}}, 7);
  EXPECT_NE(c.cy_check(), CyClass::kStrict);
}

TEST(Weights, InverseIsExact) {
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 2, 1}, {1, 0, 3}}, 0);
  const auto& inv = a.inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += Rational(a(i, k)) * inv[k][j];
      EXPECT_EQ(s, Rational(i == j ? 1 : 0));
    }
}

TEST(AutoPrime, SmallestAdmissible) {
  EXPECT_EQ(auto_prime({{4, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4}}), 257u);
  EXPECT_EQ(auto_prime({{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}), 19u);
  EXPECT_EQ(auto_prime({{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 10, 0}, {0, 0, 0, 15}}), 1801u);
  EXPECT_EQ(auto_prime({{2, 0}, {0, 2}}), 5u);  // 3 fails: 4 does not divide 2
}

TEST(Parse, MatrixText) {
  EXPECT_EQ(parse_matrix("[[2,1],[0,3]]"), (IntMatrix{{2, 1}, {0, 3}}));
  EXPECT_EQ(parse_matrix(" [ [2, 1] , [0, 3] ] "), (IntMatrix{{2, 1}, {0, 3}}));
  EXPECT_EQ(format_matrix({{2, 1}, {0, 3}}), "[[2,1],[0,3]]");
  for (const char* bad : {"", "[[2,1],[0,3]", "[[2,x],[0,3]]", "[2,1]"}) {
    try {
      parse_matrix(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
    }
  }
}
