// Laurent elements of Q_p(pi) with pi^(p-1) = -p.
// Dwork's splitting coefficients and everything built from them live here too.
#pragma once

#include "bhst/padic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bhst {

// pi^v * sum_{j<p-1} a_j pi^j with a_0 a unit, a_j mod p^M, known modulo
// pi^abs_precision. Zero carries only its absolute precision.
class EisensteinElement {
 public:
  static constexpr long kExact = 1L << 40;

  static EisensteinElement zero(ZpRingPtr ring, long abs_precision = kExact);
  static EisensteinElement one(ZpRingPtr ring);
  static EisensteinElement pi_power(ZpRingPtr ring, long k);
  static EisensteinElement from_padic(const PAdicInt& x);
  static EisensteinElement from_integer(ZpRingPtr ring, const mpz_class& x);
  // Unit-part coefficients are taken as given and normalized.
  static EisensteinElement from_coefficients(ZpRingPtr ring, long valuation,
                                             std::vector<mpz_class> coeffs,
                                             long abs_precision = kExact);

  const ZpRingPtr& ring() const { return ring_; }
  std::uint64_t prime() const { return ring_->prime(); }
  bool is_zero() const { return zero_; }
  // Throws for zero.
  long pi_valuation() const;
  long absolute_precision() const { return abs_; }
  const std::vector<mpz_class>& unit_coeffs() const { return coeffs_; }
  // True when the unit part is a scalar, i.e. the element is pi^v times a p-adic unit.
  bool is_monomial() const;

  EisensteinElement operator-() const;
  friend EisensteinElement operator+(const EisensteinElement& a, const EisensteinElement& b);
  friend EisensteinElement operator-(const EisensteinElement& a, const EisensteinElement& b);
  friend EisensteinElement operator*(const EisensteinElement& a, const EisensteinElement& b);
  EisensteinElement times(const PAdicInt& s) const;
  EisensteinElement times_pi_power(long k) const;
  // Exact division by a nonzero integer.
  EisensteinElement divided_by(const mpz_class& k) const;
  EisensteinElement pow(std::uint64_t e) const;
  EisensteinElement with_precision_cap(long abs_precision) const;

  // Value in Z/p^target when the element lies in Z_p; nullopt when it has a
  // nonzero component outside Q_p or negative valuation. Throws
  // kPrecisionExhausted when not known to (p-1)*target.
  std::optional<PAdicInt> to_padic(int target) const;
  std::string to_string() const;

 private:
  EisensteinElement(ZpRingPtr ring) : ring_(std::move(ring)) {}
  static EisensteinElement normalized(ZpRingPtr ring, long v, std::vector<mpz_class> coeffs,
                                      long abs_precision);
  ZpRingPtr ring_;
  bool zero_ = true;
  long val_ = 0;
  long abs_ = kExact;
  std::vector<mpz_class> coeffs_;
};

// a == b modulo pi^pi_precision; throws kPrecisionExhausted if undecidable.
bool congruent(const EisensteinElement& a, const EisensteinElement& b, long pi_precision);

// Dwork's bound: v_pi(c_k) >= k (p-1)^2 / p^2.
long dwork_valuation_bound(std::uint64_t p, long k);

// c_0..c_K of exp(pi (t - t^p)):  k c_k = pi c_{k-1} + pi^p c_{k-p}.
class SplittingCoefficients {
 public:
  // Valid to p-adic precision N for every index <= K; works internally with
  // N + ceil(K/(p-1)) + 2 digits.
  SplittingCoefficients(std::uint64_t p, int precision, long max_index);
  // Enough terms that the omitted tail of sum c_s u^s (|u| <= 1) vanishes mod p^N.
  static long index_for_precision(std::uint64_t p, int precision);

  std::uint64_t prime() const { return p_; }
  int precision() const { return precision_; }
  long max_index() const { return static_cast<long>(coeffs_.size()) - 1; }
  int guard_digits() const { return guard_; }
  const ZpRingPtr& working_ring() const { return ring_; }
  const EisensteinElement& operator[](long k) const;

 private:
  std::uint64_t p_;
  int precision_;
  int guard_;
  ZpRingPtr ring_;
  std::vector<EisensteinElement> coeffs_;
};

// Theta(x) = sum_s c_s chi(x)^s.
EisensteinElement dwork_theta(std::int64_t x, const SplittingCoefficients& coeffs);

// G_t = sum_{x != 0} Theta(x) chi(x)^{t'} collapsed by orthogonality of chi:
// G_t = (p-1) * sum_{s = -t' mod (p-1)} c_s.
EisensteinElement gauss_sum(std::int64_t t, const SplittingCoefficients& coeffs);
EisensteinElement gauss_sum(std::int64_t t, std::uint64_t p, int precision);
// The literal character sum; used as an oracle.
EisensteinElement gauss_sum_direct(std::int64_t t, const SplittingCoefficients& coeffs);

// p * pi^{-(p-1) beta/d} * Gamma_p(1 - beta/d).
EisensteinElement gross_koblitz_rhs(std::int64_t d, std::int64_t beta, std::uint64_t p,
                                    int precision);

// Gamma_p(p z - a) = sum_s lambda_{a+ps} p^s (z)_s with lambda_k = c_k pi^{-k}
// and (z)_s the rising factorial.
PAdicInt gamma_series_eval(const PAdicInt& z, std::int64_t a);

}  // namespace bhst
