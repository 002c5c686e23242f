#include "bhst/eisenstein.hpp"

#include "bhst/error.hpp"

#include <algorithm>
#include <sstream>

namespace bhst {

namespace {

long clamp_abs(long a) { return std::min(a, EisensteinElement::kExact); }

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Number of p-digits of a_j that are meaningful when a_j pi^{v+j} must be known
// modulo pi^abs.
long digits_needed(long abs, long v, long j, long e, long m) {
  long t = ceil_div(abs - v - j, e);
  return std::clamp(t, 0L, m);
}

ZpRingPtr smaller_ring(const ZpRingPtr& a, const ZpRingPtr& b) {
  if (a->prime() != b->prime())
    fail(ErrorCode::kInvalidArgument, "Eisenstein operands have different primes");
  return a->precision() <= b->precision() ? a : b;
}

}  // namespace

EisensteinElement EisensteinElement::zero(ZpRingPtr ring, long abs_precision) {
  EisensteinElement z(std::move(ring));
  z.abs_ = clamp_abs(abs_precision);
  return z;
}

EisensteinElement EisensteinElement::one(ZpRingPtr ring) { return pi_power(std::move(ring), 0); }

EisensteinElement EisensteinElement::pi_power(ZpRingPtr ring, long k) {
  const long e = static_cast<long>(ring->prime()) - 1;
  std::vector<mpz_class> c(e, 0);
  c[0] = 1;
  const long abs = k + e * ring->precision();
  return normalized(std::move(ring), k, std::move(c), abs);
}

EisensteinElement EisensteinElement::from_padic(const PAdicInt& x) {
  const long e = static_cast<long>(x.prime()) - 1;
  const long abs = e * x.precision();
  if (x.is_zero()) return zero(x.ring(), abs);
  std::vector<mpz_class> c(e, 0);
  c[0] = x.residue();
  return normalized(x.ring(), 0, std::move(c), abs);
}

EisensteinElement EisensteinElement::from_integer(ZpRingPtr ring, const mpz_class& x) {
  if (x == 0) return zero(std::move(ring));
  const long e = static_cast<long>(ring->prime()) - 1;
  mpz_class u = x;
  long k = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), ring->prime_z().get_mpz_t()));
  std::vector<mpz_class> c(e, 0);
  c[0] = (k % 2 == 0) ? u : mpz_class(-u);
  const long v = e * k;
  return normalized(std::move(ring), v, std::move(c), kExact);
}

EisensteinElement EisensteinElement::from_coefficients(ZpRingPtr ring, long valuation,
                                                       std::vector<mpz_class> coeffs,
                                                       long abs_precision) {
  const long e = static_cast<long>(ring->prime()) - 1;
  if (static_cast<long>(coeffs.size()) != e)
    fail(ErrorCode::kInvalidArgument, "Eisenstein unit part needs p-1 coefficients");
  return normalized(std::move(ring), valuation, std::move(coeffs), abs_precision);
}

EisensteinElement EisensteinElement::normalized(ZpRingPtr ring, long v, std::vector<mpz_class> c,
                                                long abs) {
  const long e = static_cast<long>(ring->prime()) - 1;
  const long m = ring->precision();
  const mpz_class& p = ring->prime_z();
  abs = clamp_abs(std::min(abs, v + e * m));
  bool any = false;
  for (auto& x : c) {
    x = ring->reduce(x);
    if (x != 0) any = true;
  }
  if (!any || v >= abs) return zero(ring, abs);

  // Pull out the common power of p.
  long k = m;
  for (const auto& x : c) {
    if (x == 0) continue;
    mpz_class t = x;
    k = std::min(k, static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t())));
  }
  if (k > 0) {
    mpz_class pk = ring->power_of_p(static_cast<int>(k));
    for (auto& x : c) {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
      if (k % 2 == 1) x = -x;
    }
    v += e * k;
  }
  // Rotate so the first unit coefficient sits at index 0.
  long r = 0;
  while (mpz_divisible_p(c[r].get_mpz_t(), p.get_mpz_t())) ++r;
  if (r > 0) {
    std::vector<mpz_class> rot(e, 0);
    for (long j = r; j < e; ++j) rot[j - r] = c[j];
    for (long j = 0; j < r; ++j) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), c[j].get_mpz_t(), p.get_mpz_t());
      rot[j - r + e] = -q;
    }
    c = std::move(rot);
    v += r;
  }
  if (v >= abs) return zero(ring, abs);
  // Drop digits below the known precision so equal elements compare equal.
  for (long j = 0; j < e; ++j) {
    long t = digits_needed(abs, v, j, e, m);
    c[j] = t >= m ? ring->reduce(c[j]) : mpz_class(ring->reduce(c[j]) % ring->power_of_p(static_cast<int>(t)));
  }
  EisensteinElement out(std::move(ring));
  out.zero_ = false;
  out.val_ = v;
  out.abs_ = abs;
  out.coeffs_ = std::move(c);
  return out;
}

long EisensteinElement::pi_valuation() const {
  if (zero_) fail(ErrorCode::kDomain, "valuation of zero");
  return val_;
}

bool EisensteinElement::is_monomial() const {
  if (zero_) return true;
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

EisensteinElement EisensteinElement::operator-() const {
  if (zero_) return *this;
  std::vector<mpz_class> c = coeffs_;
  for (auto& x : c) x = -x;
  return normalized(ring_, val_, std::move(c), abs_);
}

namespace {

// Coefficients of pi^d * u relative to pi^0, d >= 0, in the basis 1..pi^{e-1}.
std::vector<mpz_class> shift_up(const std::vector<mpz_class>& u, long d, const ZpRing& ring) {
  const long e = static_cast<long>(u.size());
  const long q = d / e;
  const long s = d % e;
  std::vector<mpz_class> out(e, 0);
  for (long j = 0; j < e; ++j) {
    if (u[j] == 0) continue;
    long idx = j + s;
    if (idx >= e) out[idx - e] -= u[j] * ring.prime_z();
    else out[idx] += u[j];
  }
  if (q > 0) {
    mpz_class f = ring.power_of_p(static_cast<int>(std::min<long>(q, ring.precision() + 1)));
    if (q % 2 == 1) f = -f;
    for (auto& x : out) x = ring.reduce(x * f);
  }
  return out;
}

EisensteinElement coerce(const EisensteinElement& x, const ZpRingPtr& ring) {
  if (x.ring()->precision() == ring->precision()) return x;
  if (x.is_zero()) return EisensteinElement::zero(ring, x.absolute_precision());
  return EisensteinElement::from_coefficients(ring, x.pi_valuation(), x.unit_coeffs(),
                                              x.absolute_precision());
}

}  // namespace

EisensteinElement operator+(const EisensteinElement& a_in, const EisensteinElement& b_in) {
  ZpRingPtr ring = smaller_ring(a_in.ring_, b_in.ring_);
  EisensteinElement a = coerce(a_in, ring);
  EisensteinElement b = coerce(b_in, ring);
  const long abs = std::min(a.abs_, b.abs_);
  if (a.zero_ && b.zero_) return EisensteinElement::zero(ring, abs);
  if (a.zero_) return EisensteinElement::normalized(ring, b.val_, b.coeffs_, abs);
  if (b.zero_) return EisensteinElement::normalized(ring, a.val_, a.coeffs_, abs);
  const EisensteinElement& lo = a.val_ <= b.val_ ? a : b;
  const EisensteinElement& hi = a.val_ <= b.val_ ? b : a;
  std::vector<mpz_class> c = shift_up(hi.coeffs_, hi.val_ - lo.val_, *ring);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += lo.coeffs_[j];
  return EisensteinElement::normalized(ring, lo.val_, std::move(c), abs);
}

EisensteinElement operator-(const EisensteinElement& a, const EisensteinElement& b) { return a + (-b); }

EisensteinElement operator*(const EisensteinElement& a_in, const EisensteinElement& b_in) {
  ZpRingPtr ring = smaller_ring(a_in.ring_, b_in.ring_);
  EisensteinElement a = coerce(a_in, ring);
  EisensteinElement b = coerce(b_in, ring);
  using E = EisensteinElement;
  if (a.zero_ || b.zero_) {
    long abs;
    if (a.zero_ && b.zero_) abs = a.abs_ + b.abs_;
    else if (a.zero_) abs = a.abs_ + b.val_;
    else abs = b.abs_ + a.val_;
    return E::zero(ring, abs);
  }
  const long e = static_cast<long>(ring->prime()) - 1;
  const long v = a.val_ + b.val_;
  const long abs = std::min(a.abs_ + b.val_, b.abs_ + a.val_);
  std::vector<mpz_class> c(e, 0);
  if (a.is_monomial() || b.is_monomial()) {
    const E& mono = a.is_monomial() ? a : b;
    const E& other = a.is_monomial() ? b : a;
    for (long j = 0; j < e; ++j)
      if (other.coeffs_[j] != 0) c[j] = other.coeffs_[j] * mono.coeffs_[0];
    return E::normalized(ring, v, std::move(c), abs);
  }
  std::vector<mpz_class> wide(2 * e - 1, 0);
  for (long i = 0; i < e; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (long j = 0; j < e; ++j)
      if (b.coeffs_[j] != 0) mpz_addmul(wide[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
  }
  for (long k = 0; k < e; ++k) c[k] = wide[k];
  for (long k = e; k < 2 * e - 1; ++k) c[k - e] -= wide[k] * ring->prime_z();
  return E::normalized(ring, v, std::move(c), abs);
}

EisensteinElement EisensteinElement::times(const PAdicInt& s) const {
  if (s.prime() != prime()) fail(ErrorCode::kInvalidArgument, "scalar has a different prime");
  if (!zero_ && s.is_unit()) {
    ZpRingPtr ring = smaller_ring(ring_, s.ring());
    const long e = static_cast<long>(prime()) - 1;
    std::vector<mpz_class> c(e, 0);
    for (long j = 0; j < e; ++j)
      if (coeffs_[j] != 0) c[j] = coeffs_[j] * s.residue();
    return normalized(ring, val_, std::move(c), std::min(abs_, val_ + e * s.precision()));
  }
  return *this * from_padic(s);
}

EisensteinElement EisensteinElement::times_pi_power(long k) const {
  EisensteinElement out = *this;
  out.abs_ = clamp_abs(abs_ + k);
  if (!zero_) out.val_ += k;
  return out;
}

EisensteinElement EisensteinElement::divided_by(const mpz_class& k) const {
  if (k == 0) fail(ErrorCode::kDomain, "division by zero");
  const long e = static_cast<long>(prime()) - 1;
  mpz_class u = k;
  long t = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), ring_->prime_z().get_mpz_t()));
  if (zero_) return zero(ring_, abs_ - e * t);
  mpz_class inv = ring_->reduce(u);
  mpz_invert(inv.get_mpz_t(), inv.get_mpz_t(), ring_->modulus().get_mpz_t());
  if (t % 2 == 1) inv = -inv;
  std::vector<mpz_class> c(e, 0);
  for (long j = 0; j < e; ++j)
    if (coeffs_[j] != 0) c[j] = coeffs_[j] * inv;
  return normalized(ring_, val_ - e * t, std::move(c), abs_ - e * t);
}

EisensteinElement EisensteinElement::pow(std::uint64_t n) const {
  EisensteinElement result = one(ring_);
  EisensteinElement base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

EisensteinElement EisensteinElement::with_precision_cap(long abs_precision) const {
  if (zero_) return zero(ring_, std::min(abs_, abs_precision));
  return normalized(ring_, val_, coeffs_, std::min(abs_, abs_precision));
}

std::optional<PAdicInt> EisensteinElement::to_padic(int target) const {
  const long e = static_cast<long>(prime()) - 1;
  auto out_ring = ZpRing::make(prime(), target);
  if (abs_ < e * target) {
    if (zero_ || val_ >= 0)
      fail(ErrorCode::kPrecisionExhausted, "element known only modulo pi^" + std::to_string(abs_) +
                                               ", need pi^" + std::to_string(e * target));
  }
  if (zero_) return PAdicInt(out_ring, 0L);
  if (val_ < 0 || val_ % e != 0) return std::nullopt;
  for (long j = 1; j < e; ++j) {
    if (coeffs_[j] == 0) continue;
    mpz_class t = coeffs_[j];
    long vp = static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), ring_->prime_z().get_mpz_t()));
    if (val_ + j + e * vp < e * target) return std::nullopt;
  }
  const long k = val_ / e;
  if (k >= target) return PAdicInt(out_ring, 0L);
  mpz_class value = coeffs_[0] * ring_->power_of_p(static_cast<int>(k));
  if (k % 2 == 1) value = -value;
  return PAdicInt(out_ring, value);
}

std::string EisensteinElement::to_string() const {
  std::ostringstream os;
  if (zero_) {
    os << "O(pi^" << abs_ << ")";
    return os.str();
  }
  os << "pi^" << val_ << "*(";
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[j].get_str();
    if (j > 0) os << "*pi^" << j;
    first = false;
  }
  os << ")";
  if (abs_ < kExact / 2) os << " + O(pi^" << abs_ << ")";
  return os.str();
}

bool congruent(const EisensteinElement& a, const EisensteinElement& b, long pi_precision) {
  EisensteinElement d = a - b;
  if (!d.is_zero()) return d.pi_valuation() >= pi_precision;
  if (d.absolute_precision() < pi_precision)
    fail(ErrorCode::kPrecisionExhausted, "difference known only modulo pi^" +
                                             std::to_string(d.absolute_precision()));
  return true;
}

long dwork_valuation_bound(std::uint64_t p, long k) {
  const long e = static_cast<long>(p) - 1;
  const long pp = static_cast<long>(p) * static_cast<long>(p);
  return ceil_div(k * e * e, pp);
}

long SplittingCoefficients::index_for_precision(std::uint64_t p, int precision) {
  const long e = static_cast<long>(p) - 1;
  const long pp = static_cast<long>(p) * static_cast<long>(p);
  return ceil_div(static_cast<long>(precision) * pp, e);
}

SplittingCoefficients::SplittingCoefficients(std::uint64_t p, int precision, long max_index)
    : p_(p), precision_(precision) {
  if (max_index < 0) fail(ErrorCode::kInvalidArgument, "max index must be non-negative");
  const long e = static_cast<long>(p) - 1;
  guard_ = static_cast<int>(ceil_div(max_index, e) + 2);
  ring_ = ZpRing::make(p, precision + guard_);
  coeffs_.reserve(max_index + 1);
  coeffs_.push_back(EisensteinElement::one(ring_));
  const long pl = static_cast<long>(p);
  for (long k = 1; k <= max_index; ++k) {
    EisensteinElement term = coeffs_[k - 1].times_pi_power(1);
    if (k >= pl) term = term + coeffs_[k - pl].times_pi_power(pl);
    coeffs_.push_back(term.divided_by(mpz_class(k)));
    if (coeffs_.back().absolute_precision() < e * precision)
      fail(ErrorCode::kPrecisionExhausted,
           "splitting coefficient c_" + std::to_string(k) + " lost its guard digits");
  }
}

const EisensteinElement& SplittingCoefficients::operator[](long k) const {
  if (k < 0 || k > max_index()) fail(ErrorCode::kInvalidArgument, "coefficient index out of range");
  return coeffs_[k];
}

namespace {

SplittingCoefficients table_for(std::uint64_t p, int precision) {
  return SplittingCoefficients(p, precision, SplittingCoefficients::index_for_precision(p, precision));
}

long tail_bound(const SplittingCoefficients& c, long first_omitted) {
  return std::min<long>(dwork_valuation_bound(c.prime(), first_omitted),
                        static_cast<long>(c.prime() - 1) * c.precision());
}

}  // namespace

EisensteinElement dwork_theta(std::int64_t x, const SplittingCoefficients& coeffs) {
  const auto p = static_cast<std::int64_t>(coeffs.prime());
  const long K = coeffs.max_index();
  if (((x % p) + p) % p == 0) return coeffs[0].with_precision_cap(tail_bound(coeffs, K + 1));
  const PAdicInt chi = teichmuller(x, coeffs.working_ring());
  PAdicInt power(coeffs.working_ring(), 1L);
  EisensteinElement sum = EisensteinElement::zero(coeffs.working_ring());
  for (long s = 0; s <= K; ++s) {
    sum = sum + coeffs[s].times(power);
    power *= chi;
  }
  return sum.with_precision_cap(tail_bound(coeffs, K + 1));
}

EisensteinElement gauss_sum(std::int64_t t, const SplittingCoefficients& coeffs) {
  const auto e = static_cast<std::int64_t>(coeffs.prime()) - 1;
  std::int64_t tp = ((t % e) + e) % e;
  if (tp == 0) tp = e;
  const std::int64_t r = ((-tp) % e + e) % e;
  const long K = coeffs.max_index();
  EisensteinElement sum = EisensteinElement::zero(coeffs.working_ring());
  long s = r;
  for (; s <= K; s += e) sum = sum + coeffs[s];
  sum = sum.times(PAdicInt(coeffs.working_ring(), static_cast<long>(e)));
  return sum.with_precision_cap(tail_bound(coeffs, s));
}

EisensteinElement gauss_sum(std::int64_t t, std::uint64_t p, int precision) {
  return gauss_sum(t, table_for(p, precision));
}

EisensteinElement gauss_sum_direct(std::int64_t t, const SplittingCoefficients& coeffs) {
  const auto e = static_cast<std::int64_t>(coeffs.prime()) - 1;
  std::int64_t tp = ((t % e) + e) % e;
  if (tp == 0) tp = e;
  EisensteinElement sum = EisensteinElement::zero(coeffs.working_ring());
  for (std::int64_t x = 1; x <= e; ++x) {
    PAdicInt chi = teichmuller(x, coeffs.working_ring()).pow(static_cast<std::uint64_t>(tp));
    sum = sum + dwork_theta(x, coeffs).times(chi);
  }
  return sum;
}

EisensteinElement gross_koblitz_rhs(std::int64_t d, std::int64_t beta, std::uint64_t p, int precision) {
  const auto e = static_cast<std::int64_t>(p) - 1;
  if (d <= 0 || e % d != 0)
    fail(ErrorCode::kDomain, "d = " + std::to_string(d) + " does not divide p-1 = " + std::to_string(e));
  if (beta < 1 || beta >= d) fail(ErrorCode::kDomain, "beta must lie in [1, d-1]");
  auto ring = ZpRing::make(p, precision);
  const PAdicInt g = gamma_at(Rational(1) - Rational(beta, d), ring);
  // p = -pi^{p-1}
  return (-EisensteinElement::from_padic(g)).times_pi_power(e - e * beta / d);
}

PAdicInt gamma_series_eval(const PAdicInt& z, std::int64_t a) {
  const std::uint64_t p = z.prime();
  const auto pl = static_cast<std::int64_t>(p);
  if (a < 0 || a >= pl) fail(ErrorCode::kDomain, "series offset a must lie in [0, p-1]");
  const int n = z.precision();
  // ord_p(term_s) >= (a + p s) delta + s with delta = (p-1)/p^2 - 1/(p-1) < 0,
  // so the tail is below p^N once s (1 + p delta) >= N - a delta.
  const Rational delta = Rational(pl - 1, pl * pl) - Rational(1, pl - 1);
  const Rational rate = Rational(1) + Rational(pl) * delta;
  if (rate <= 0) fail(ErrorCode::kPrecisionExhausted, "gamma series does not converge for this p");
  const Rational need = Rational(n + 1) - Rational(a) * delta;
  const long s_max = static_cast<long>(floor_of(need / rate)) + 1;
  const long k_max = a + pl * s_max;
  const int work = n + static_cast<int>(ceil_div(a + s_max, pl - 1)) + 2;
  SplittingCoefficients c(p, work, k_max);
  const ZpRingPtr& ring = c.working_ring();
  const mpz_class zz = z.residue();
  EisensteinElement sum = EisensteinElement::zero(ring);
  mpz_class poch = 1;  // p^s (z)_s
  for (long s = 0; s <= s_max; ++s) {
    const long k = a + pl * s;
    sum = sum + c[k].times_pi_power(-k) * EisensteinElement::from_integer(ring, poch);
    poch *= (zz + s) * c.working_ring()->prime_z();
  }
  auto value = sum.to_padic(n);
  if (!value) fail(ErrorCode::kInternal, "gamma series produced a value outside Z_p");
  return *value;
}

}  // namespace bhst
