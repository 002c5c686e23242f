// Point counts over F_p and conjecture verification.
#pragma once

#include "bhst/supertrace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace bhst {

constexpr std::uint64_t kDefaultBruteBudget = std::uint64_t{1} << 34;

enum class CountMethod { kBrute, kDiagonalConvolution, kWeil };
const char* count_method_name(CountMethod m);

std::uint64_t affine_count_brute(const BHMatrix& a, std::uint64_t budget = kDefaultBruteBudget,
                                 unsigned threads = 0, std::size_t chunks = 0);
std::uint64_t affine_count_diagonal(const BHMatrix& a);
std::uint64_t projective_count(std::uint64_t affine, std::uint64_t p);

struct NuReport {
  std::int64_t nu = 0;
  // stabilizer order -> number of F_p-points with that stabilizer
  std::map<std::int64_t, std::int64_t> points_by_stabilizer;
};
// Points of X_A with nontrivial stabilizer, via exact-support affine counts.
NuReport nu_via_stabilizers(const BHMatrix& a);

struct CountReport {
  IntMatrix matrix;
  std::uint64_t p = 0;
  std::uint64_t affine = 0;
  std::uint64_t projective = 0;
  CountMethod method = CountMethod::kBrute;
  std::optional<std::int64_t> nu;
  std::optional<std::uint64_t> crepant;
};

// n = 3 with G = <J>, or n = 4 diagonal with G = <J>.
CountReport crepant_count(const BHMatrix& a, const Subgroup& g,
                          std::uint64_t budget = kDefaultBruteBudget, unsigned threads = 0);

// 1 + p + ... + p^{n-2} + (1/p) sum_beta prod_i G_{(p-1) beta_i / a_i}.
// Needs a_i | p-1 (relaxed admissibility suffices).
std::int64_t weil_count(const BHMatrix& a, int precision = 0);

enum class Verdict { kEqual, kCongruentOnly, kMismatch };
const char* verdict_name(Verdict v);

struct VerificationReport {
  CountReport count;
  SupertraceResult supertrace;
  Verdict verdict = Verdict::kMismatch;
  double count_seconds = 0;
  double supertrace_seconds = 0;
};

VerificationReport verify_conjecture(const StateSpace& space, int precision = 0,
                                     std::uint64_t budget = kDefaultBruteBudget,
                                     unsigned threads = 0);

}  // namespace bhst
