#include "bhst/catalog.hpp"
#include "bhst/error.hpp"
#include "bhst/point_count.hpp"

#include <gtest/gtest.h>

using namespace bhst;

namespace {

// Literal O(p^n) affine count.
std::uint64_t naive_affine(const BHMatrix& a) {
  const std::uint64_t p = a.p();
  const int n = a.n();
  std::vector<std::uint64_t> x(n, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t w = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t mono = 1;
      for (int j = 0; j < n; ++j)
        for (std::int64_t k = 0; k < a(i, j); ++k) mono = mono * x[j] % p;
      w = (w + mono) % p;
    }
    count += w == 0;
    int i = 0;
    while (i < n && ++x[i] == p) x[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST(Count, BruteMatchesNaive) {
  for (const IntMatrix& m : {IntMatrix{{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 3}},
                             IntMatrix{{3, 1, 0}, {0, 2, 1}, {0, 0, 2}}, IntMatrix{{2, 1}, {0, 3}}}) {
    const auto a = BHMatrix::validate(m, auto_prime(m));
    if (a.p() > 60) continue;
    EXPECT_EQ(affine_count_brute(a), naive_affine(a)) << format_matrix(m);
  }
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, 37);
  EXPECT_EQ(affine_count_brute(a), naive_affine(a));
}

TEST(Count, DiagonalConvolutionMatchesBrute) {
  for (const IntMatrix& m : {IntMatrix{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}, IntMatrix{{2, 0, 0}, {0, 4, 0}, {0, 0, 4}},
                             IntMatrix{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}}}) {
    const auto a = BHMatrix::validate(m, auto_prime(m));
    EXPECT_EQ(affine_count_diagonal(a), affine_count_brute(a)) << format_matrix(m);
  }
}

TEST(Count, ChunkingDoesNotChangeTheCount) {
  const auto a = BHMatrix::validate({{3, 1, 0}, {0, 2, 1}, {0, 0, 2}}, 109);
  const auto base = affine_count_brute(a, kDefaultBruteBudget, 1, 1);
  EXPECT_EQ(affine_count_brute(a, kDefaultBruteBudget, 3, 7), base);
  EXPECT_EQ(affine_count_brute(a, kDefaultBruteBudget, 2, 64), base);
}

TEST(Count, BudgetIsEnforced) {
  const auto a = BHMatrix::validate({{3, 1, 0}, {0, 2, 1}, {0, 0, 2}}, 109);
  try {
    affine_count_brute(a, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
}

TEST(Count, FermatCubicAtSeven) {
  const auto a = BHMatrix::validate({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}, 7, Admissibility::kRelaxedOracle);
  EXPECT_EQ(affine_count_diagonal(a), 55u);
  EXPECT_EQ(projective_count(55, 7), 9u);
  EXPECT_EQ(weil_count(a), 9);
}

TEST(Count, WeilFormulaMatchesConvolution) {
  const IntMatrix quartic = {{4, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4}};
  for (std::uint64_t p : {13u, 17u, 29u}) {
    const auto a = BHMatrix::validate(quartic, p, Admissibility::kRelaxedOracle);
    EXPECT_EQ(weil_count(a), static_cast<std::int64_t>(projective_count(affine_count_diagonal(a), p))) << p;
  }
  const auto k3 = BHMatrix::validate({{2, 0, 0, 0}, {0, 6, 0, 0}, {0, 0, 6, 0}, {0, 0, 0, 6}}, 433);
  EXPECT_EQ(weil_count(k3), static_cast<std::int64_t>(projective_count(affine_count_diagonal(k3), 433)));
}

TEST(Count, RecoveredTypeTwoChain) {
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 2, 1}, {0, 0, 3}}, 97);
  const auto r = crepant_count(a, j_subgroup(a));
  EXPECT_EQ(r.projective, 80u);
  const StateSpace s(a, j_subgroup(a));
  EXPECT_EQ(lift_integer(supertrace_padic(s, 3)), 80);
}

TEST(Nu, MatchesRegistryForEverySingularK3) {
  for (const auto& e : catalog_family(CatalogFamily::kK3)) {
    const auto a = BHMatrix::validate(e.matrix, e.verification_prime);
    const auto rep = nu_via_stabilizers(a);
    EXPECT_EQ(rep.nu, e.nu_registry()) << e.name;
    // Each A_{m,m-1} point class has stabilizer of order m.
    for (const auto& s : e.singularities)
      EXPECT_EQ(rep.points_by_stabilizer.count(s.type) ? rep.points_by_stabilizer.at(s.type) : 0,
                [&] {
                  std::int64_t total = 0;
                  for (const auto& t : e.singularities)
                    if (t.type == s.type) total += t.multiplicity;
                  return total;
                }())
          << e.name << " type " << s.type;
  }
}

TEST(Verify, CrepantNeedsJ) {
  const auto a = BHMatrix::validate({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}, 109);
  try {
    crepant_count(a, group_of(a, Side::kRow));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}
