// Berglund-Huebsch matrices and their atom decomposition.
#pragma once

#include "bhst/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bhst {

enum class AtomKind { kFermat, kChain, kLoop };
const char* atom_kind_name(AtomKind kind);

// Variables listed along the pointer path: row of variables[k] is
// x_k^{exponents[k]} * x_{k+1} (wrapping for loops, absent at a chain end).
struct Atom {
  AtomKind kind;
  std::vector<int> variables;
  std::vector<std::int64_t> exponents;
};

enum class CyClass { kStrict, kIntegerCy, kNeither };
const char* cy_class_name(CyClass c);

enum class Admissibility {
  kStrict,        // det(A) | p-1
  kRelaxedOracle  // lcm of the diagonal exponents | p-1; only for count cross-checks
};

class BHMatrix {
 public:
  // p == 0 skips every prime-related check (used by auto_prime).
  static BHMatrix validate(const IntMatrix& entries, std::uint64_t p,
                           Admissibility mode = Admissibility::kStrict);

  int n() const { return static_cast<int>(entries_.size()); }
  const IntMatrix& entries() const { return entries_; }
  std::int64_t operator()(int i, int j) const { return entries_[i][j]; }
  std::uint64_t p() const { return p_; }
  Admissibility admissibility() const { return mode_; }
  std::int64_t det() const { return det_; }
  std::int64_t abs_det() const { return det_ < 0 ? -det_ : det_; }
  const RationalMatrix& inverse() const { return inv_; }
  // q = J A^{-T}: row sums of A^{-1}.
  const RationalVector& weights() const { return q_; }
  const IntVector& scaled_weights() const { return w_; }
  std::int64_t weight_scale() const { return m_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_diagonal() const;

  Rational cy_value() const;
  CyClass cy_check() const;

  BHMatrix transpose() const;
  // A[F,F]; rows in F must only involve variables in F.
  BHMatrix restrict(const std::vector<int>& fixed) const;
  BHMatrix with_prime(std::uint64_t p) const;

  // "x1^2*x2 + x2^3"
  std::string potential_string() const;

 private:
  IntMatrix entries_;
  std::uint64_t p_ = 0;
  Admissibility mode_ = Admissibility::kStrict;
  std::int64_t det_ = 1;
  RationalMatrix inv_;
  RationalVector q_;
  IntVector w_;
  std::int64_t m_ = 1;
  std::vector<Atom> atoms_;
};

// Atoms in canonical order; throws kNoAtomDecomposition.
std::vector<Atom> decompose_atoms(const IntMatrix& a);
IntMatrix reassemble(const std::vector<Atom>& atoms, int n);

// Smallest odd prime p with det(A) | p-1.
std::uint64_t auto_prime(const IntMatrix& entries);

IntMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& m);

}  // namespace bhst
