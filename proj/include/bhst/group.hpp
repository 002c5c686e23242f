// Diagonal symmetry groups G_A (row side) and G_{A^T} (column side).
#pragma once

#include "bhst/bh_matrix.hpp"

#include <cstdint>
#include <vector>

namespace bhst {

enum class Side { kRow, kColumn };
const char* side_name(Side s);

// An element stored by its fractional vector frac_i = num_i / denom in [0,1),
// equal to lambda A^{-T} (row side) or gamma A^{-1} (column side); denom = |det A|.
class SectorElement {
 public:
  SectorElement() = default;
  SectorElement(Side side, std::int64_t denom, std::vector<std::int64_t> num);
  // Reduces an integer vector into the group.
  static SectorElement from_lift(const BHMatrix& a, Side side, const IntVector& lift);
  static SectorElement identity(const BHMatrix& a, Side side);

  Side side() const { return side_; }
  int n() const { return static_cast<int>(num_.size()); }
  std::int64_t denom() const { return denom_; }
  const std::vector<std::int64_t>& numerators() const { return num_; }
  Rational frac(int i) const { return Rational(num_[i], denom_); }
  RationalVector frac() const;
  Rational age() const;
  int dim_fixed() const;
  std::vector<int> fixed_set() const;
  bool is_identity() const;
  // frac * A^T (row) or frac * A (column): the canonical non-negative lift.
  IntVector canonical_lift(const BHMatrix& a) const;

  SectorElement operator+(const SectorElement& o) const;
  SectorElement operator-() const;
  friend bool operator==(const SectorElement&, const SectorElement&) = default;
  friend auto operator<=>(const SectorElement&, const SectorElement&) = default;

 private:
  Side side_ = Side::kRow;
  std::int64_t denom_ = 1;
  std::vector<std::int64_t> num_;
};

struct SmithForm {
  std::vector<std::int64_t> divisors;  // d_1 | d_2 | ...
  IntMatrix v;                         // U M V = diag(divisors)
  IntMatrix v_inverse;
};
SmithForm smith_normal_form(const IntMatrix& m);

class Subgroup {
 public:
  Side side() const { return side_; }
  const std::vector<SectorElement>& generators() const { return generators_; }
  // Sorted.
  const std::vector<SectorElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const SectorElement& x) const;
  // Elementary divisors of the full group this was enumerated from (empty for
  // subgroups built by closure).
  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }

  static Subgroup from_elements(Side side, std::vector<SectorElement> gens,
                                std::vector<SectorElement> elements,
                                std::vector<std::int64_t> factors = {});

 private:
  Side side_ = Side::kRow;
  std::vector<SectorElement> generators_;
  std::vector<SectorElement> elements_;
  std::vector<std::int64_t> factors_;
};

constexpr std::int64_t kMaxGroupOrder = 100000;

Subgroup group_of(const BHMatrix& a, Side side);
Subgroup subgroup(const BHMatrix& a, Side side, const std::vector<IntVector>& generator_lifts);
Subgroup subgroup_of_elements(Side side, const std::vector<SectorElement>& gens);
// <J> on the row side.
Subgroup j_subgroup(const BHMatrix& a);
// {gamma : pairing(gamma, lambda) = 0 for all lambda in G}.
Subgroup transpose_subgroup(const BHMatrix& a, const Subgroup& g);
// gamma A^{-1} lambda^T mod 1.
Rational pairing(const BHMatrix& a, const SectorElement& gamma, const SectorElement& lambda);

}  // namespace bhst
