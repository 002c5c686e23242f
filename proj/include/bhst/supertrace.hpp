// Frobenius eigenvalues on sectors and the p-adic supertrace.
#pragma once

#include "bhst/eisenstein.hpp"
#include "bhst/state_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bhst {

// pi^{(p-1) age_dual(gamma)} p^{-q} Gamma_p(gamma A^{-1}); the dual form uses
// lambda, age(lambda) and q_vee.
EisensteinElement frobenius_eigenvalue(const BHMatrix& a, const SectorGenerator& g,
                                       const ZpRingPtr& ring, bool dual = false);

struct SupertraceTerm {
  SectorGenerator generator;
  int sign = 1;
  int p_exponent = 0;
  RationalVector gamma_args;
  mpz_class value;  // mod p^N
};

struct SupertraceResult {
  std::uint64_t p = 0;
  int precision = 0;
  mpz_class residue;
  std::optional<mpz_class> lifted;
  std::vector<SupertraceTerm> terms;
};

// Smallest N >= 2 with p^{N-1} > B and p^N > 64 B, where
// B = (number of generators) * p^{n-2}.
int default_precision(const BHMatrix& a, std::size_t generator_count);

// Throws kHypothesis unless J lies in G and in G^T.
SupertraceResult supertrace_padic(const StateSpace& space, int precision,
                                  GammaStrategy strategy = GammaStrategy::kBlockPolynomial);

// Lift to [0, p^N); throws kPrecisionExhausted unless the lift is < p^{N-1}.
mpz_class lift_integer(const SupertraceResult& r);
std::optional<mpz_class> try_lift_integer(const SupertraceResult& r);

struct ModPSupertrace {
  std::uint64_t p = 0;
  std::uint64_t gamma_form = 0;
  std::uint64_t multinomial_form = 0;
};
// 1 + (-1)^{n-1} Gamma_p(J A^{-1}) and 1 + (-1)^n (p-1)! / prod((p-1) x_i)!,
// x = J A^{-1}; throws kInternal if they differ.
ModPSupertrace supertrace_mod_p(const BHMatrix& a);

}  // namespace bhst
