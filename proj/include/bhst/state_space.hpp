// Milnor rings, sector dimensions and the bigraded state space.
#pragma once

#include "bhst/group.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bhst {

struct MilnorMonomial {
  IntVector exponents;
  Rational degree;  // sum_i beta_i q_i
  SectorElement group_class;  // [beta] in the column group of the matrix it was computed for
};

struct MilnorBasis {
  IntMatrix matrix;
  std::vector<MilnorMonomial> basis;
  std::size_t dimension() const { return basis.size(); }
};

// Quotient F_p[x]/(d_1 W, ..., d_n W) by row reduction inside each
// (weighted degree, column-group class) piece up to the socle degree.
// Throws kInternal if the size differs from prod(1/q_i - 1).
// Row reduction happens over F_p with p = `p`, else the matrix prime, else 1000003.
MilnorBasis milnor_basis(const BHMatrix& a, std::uint64_t p = 0);
// prod_i (1/q_i - 1) as an exact rational.
Rational milnor_number(const BHMatrix& a);

struct SectorGenerator {
  SectorElement gamma;   // column side
  SectorElement lambda;  // row side
  IntVector gamma_exponents;
  IntVector lambda_exponents;
  std::vector<int> theta_set;
  Rational age;       // of lambda
  Rational age_dual;  // of gamma
  int dim = 0;
  Rational r;
  Rational s;
  int q = 0;
  int q_vee = 0;

  // (-1)^{dim + age_dual}; age_dual is an integer whenever delta = 1 and J is in G^T.
  int sign() const;
  // age + age_dual - 1.
  Rational p_exponent() const;
  // Nonzero components of gamma A^{-1} in index order.
  RationalVector gamma_args() const;
  std::string monomial_string() const;
  std::string contribution_string() const;
};

// Caches the restricted Milnor rings keyed by fixed set.
class StateSpace {
 public:
  StateSpace(const BHMatrix& a, const Subgroup& g);

  const BHMatrix& matrix() const { return a_; }
  const Subgroup& group() const { return g_; }
  const Subgroup& transpose_group() const { return gt_; }

  int delta(const SectorElement& gamma, const SectorElement& lambda) const;
  const std::vector<SectorGenerator>& generators() const { return generators_; }
  std::map<std::pair<Rational, Rational>, int> hodge_diamond() const;
  bool j_hypothesis() const { return j_in_g_ && j_in_gt_; }

 private:
  struct Restricted {
    std::vector<int> fixed;
    // class numerators (restricted to F, common denominator) -> dim
    std::map<std::vector<std::int64_t>, int> class_dims;
    std::int64_t denom = 1;
  };
  const Restricted& restricted_for(const std::vector<int>& fixed) const;

  BHMatrix a_;
  Subgroup g_;
  Subgroup gt_;
  bool j_in_g_ = false;
  bool j_in_gt_ = false;
  mutable std::map<std::vector<int>, Restricted> cache_;
  std::vector<SectorGenerator> generators_;
};

}  // namespace bhst
