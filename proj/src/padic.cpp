#include "bhst/padic.hpp"

#include "bhst/error.hpp"
#include "bhst/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace bhst {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % d == 0) return n == d;
  }
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

ZpRing::ZpRing(std::uint64_t p, int precision) : p_(p), precision_(precision) {
  if (!is_prime(p)) fail(ErrorCode::kDomain, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) fail(ErrorCode::kDomain, "p = 2 is not supported");
  if (precision < 1) fail(ErrorCode::kInvalidArgument, "precision must be positive");
  prime_z_ = mpz_class(static_cast<unsigned long>(p));
  mpz_pow_ui(modulus_.get_mpz_t(), prime_z_.get_mpz_t(), static_cast<unsigned long>(precision));
}

std::shared_ptr<const ZpRing> ZpRing::make(std::uint64_t p, int precision) {
  return std::make_shared<const ZpRing>(p, precision);
}

mpz_class ZpRing::reduce(const mpz_class& x) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

mpz_class ZpRing::power_of_p(int k) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), prime_z_.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

PAdicInt::PAdicInt(ZpRingPtr ring, const mpz_class& value)
    : ring_(std::move(ring)), residue_(ring_->reduce(value)) {}

PAdicInt::PAdicInt(ZpRingPtr ring, long value) : PAdicInt(std::move(ring), mpz_class(value)) {}

bool PAdicInt::is_unit() const {
  return mpz_divisible_p(residue_.get_mpz_t(), ring_->prime_z().get_mpz_t()) == 0;
}

int PAdicInt::valuation() const {
  if (residue_ == 0) return precision();
  mpz_class t = residue_;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), ring_->prime_z().get_mpz_t()));
}

PAdicInt PAdicInt::inverse() const {
  if (!is_unit()) fail(ErrorCode::kDomain, "inverse of a non-unit " + to_string());
  mpz_class r;
  mpz_invert(r.get_mpz_t(), residue_.get_mpz_t(), ring_->modulus().get_mpz_t());
  return PAdicInt(ring_, r);
}

PAdicInt PAdicInt::pow(std::uint64_t e) const {
  mpz_class r, ez;
  mpz_import(ez.get_mpz_t(), 1, 1, sizeof(e), 0, 0, &e);
  mpz_powm(r.get_mpz_t(), residue_.get_mpz_t(), ez.get_mpz_t(), ring_->modulus().get_mpz_t());
  return PAdicInt(ring_, r);
}

PAdicInt PAdicInt::reduced_to(int precision) const {
  if (precision > this->precision())
    fail(ErrorCode::kPrecisionExhausted, "cannot raise precision of a p-adic residue");
  return PAdicInt(ZpRing::make(prime(), precision), residue_);
}

std::string PAdicInt::to_string() const {
  return residue_.get_str() + " mod " + std::to_string(prime()) + "^" +
         std::to_string(precision());
}

void PAdicInt::check_same_ring(const PAdicInt& o) const {
  if (prime() != o.prime() || precision() != o.precision())
    fail(ErrorCode::kInvalidArgument, "p-adic operands live in different rings");
}

PAdicInt PAdicInt::operator-() const { return PAdicInt(ring_, -residue_); }

PAdicInt& PAdicInt::operator+=(const PAdicInt& o) {
  check_same_ring(o);
  residue_ += o.residue_;
  if (residue_ >= ring_->modulus()) residue_ -= ring_->modulus();
  return *this;
}

PAdicInt& PAdicInt::operator-=(const PAdicInt& o) {
  check_same_ring(o);
  residue_ -= o.residue_;
  if (residue_ < 0) residue_ += ring_->modulus();
  return *this;
}

PAdicInt& PAdicInt::operator*=(const PAdicInt& o) {
  check_same_ring(o);
  residue_ = ring_->reduce(residue_ * o.residue_);
  return *this;
}

bool operator==(const PAdicInt& a, const PAdicInt& b) {
  return a.prime() == b.prime() && a.precision() == b.precision() && a.residue_ == b.residue_;
}

PAdicInt teichmuller(std::int64_t a, const ZpRingPtr& ring) {
  const auto p = static_cast<std::int64_t>(ring->prime());
  std::int64_t r = ((a % p) + p) % p;
  if (r == 0) fail(ErrorCode::kDomain, "Teichmueller lift of 0 mod p");
  PAdicInt x(ring, r);
  for (;;) {
    PAdicInt next = x.pow(ring->prime());
    if (next == x) return x;
    x = next;
  }
}

PAdicInt gamma_factorial(std::uint64_t m, const ZpRingPtr& ring) {
  const std::uint64_t p = ring->prime();
  mpz_class acc = 1;
  for (std::uint64_t j = 1; j < m; ++j) {
    if (j % p == 0) continue;
    acc *= static_cast<unsigned long>(j);
    acc = ring->reduce(acc);
  }
  if (m % 2 == 1) acc = -acc;
  return PAdicInt(ring, acc);
}

mpz_class gamma_argument_integer(const Rational& x, const ZpRing& ring) {
  const auto p = static_cast<std::int64_t>(ring.prime());
  const std::int64_t d = x.denominator();
  if ((p - 1) % d != 0)
    fail(ErrorCode::kDomain, "gamma argument " + to_string(x) + ": denominator does not divide p-1 = " +
                                 std::to_string(p - 1));
  mpz_class dinv(static_cast<long>(d));
  mpz_invert(dinv.get_mpz_t(), dinv.get_mpz_t(), ring.modulus().get_mpz_t());
  return ring.reduce(mpz_class(static_cast<long>(x.numerator())) * dinv);
}

namespace {

using Poly = std::vector<mpz_class>;

void poly_mul_truncated(Poly& acc, const Poly& b, const ZpRing& ring) {
  const std::size_t len = acc.size();
  Poly out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (acc[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += acc[i] * b[j];
  }
  for (auto& c : out) c = ring.reduce(c);
  acc = std::move(out);
}

// c(pY + i) truncated to the length of c.
Poly substitute_affine(const Poly& c, const mpz_class& i, const ZpRing& ring) {
  Poly a = c;
  const std::size_t len = a.size();
  for (std::size_t k = 0; k + 1 < len; ++k)
    for (std::size_t j = len - 1; j > k; --j) a[j - 1] = ring.reduce(a[j - 1] + i * a[j]);
  mpz_class pw = 1;
  for (std::size_t u = 0; u < len; ++u) {
    a[u] = ring.reduce(a[u] * pw);
    pw *= ring.prime_z();
  }
  return a;
}

}  // namespace

GammaEvaluator::GammaEvaluator(ZpRingPtr ring) : ring_(std::move(ring)) {
  const ZpRing& r = *ring_;
  const int n = r.precision();
  const std::uint64_t p = r.prime();
  if (n < 2) return;
  Poly b1(n, 0);
  b1[0] = 1;
  for (std::uint64_t i = 1; i < p; ++i) {
    Poly lin(n, 0);
    lin[0] = static_cast<unsigned long>(i);
    lin[1] = r.prime_z();
    poly_mul_truncated(b1, lin, r);
  }
  blocks_.push_back(std::move(b1));
  for (int level = 2; level < n; ++level) {
    Poly acc(n, 0);
    acc[0] = 1;
    for (std::uint64_t i = 0; i < p; ++i)
      poly_mul_truncated(acc, substitute_affine(blocks_.back(), mpz_class(static_cast<unsigned long>(i)), r), r);
    blocks_.push_back(std::move(acc));
  }
}

mpz_class GammaEvaluator::eval_block(int level, const mpz_class& y) const {
  const Poly& c = blocks_[level - 1];
  mpz_class acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = ring_->reduce(acc * y + c[k]);
  return acc;
}

PAdicInt GammaEvaluator::at_integer(const mpz_class& m_in) const {
  const ZpRing& r = *ring_;
  const mpz_class m = r.reduce(m_in);
  const int n = r.precision();
  std::vector<unsigned long> digits(n, 0);
  {
    mpz_class t = m;
    for (int k = 0; k < n; ++k) {
      digits[k] = mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(r.prime()));
    }
  }
  mpz_class acc = 1;
  mpz_class hi = 0;
  for (int level = n - 1; level >= 1; --level) {
    for (unsigned long i = 0; i < digits[level]; ++i) acc = r.reduce(acc * eval_block(level, hi * r.prime_z() + i));
    hi = hi * r.prime_z() + digits[level];
  }
  const mpz_class start = hi * r.prime_z();
  for (unsigned long i = 0; i < digits[0]; ++i) {
    if (i == 0) continue;  // start itself is divisible by p
    acc = r.reduce(acc * (start + i));
  }
  if (mpz_odd_p(m.get_mpz_t())) acc = -acc;
  return PAdicInt(ring_, acc);
}

PAdicInt GammaEvaluator::at(const Rational& x) const {
  return at_integer(gamma_argument_integer(x, *ring_));
}

PAdicInt gamma_at(const Rational& x, const ZpRingPtr& ring) { return GammaEvaluator(ring).at(x); }

namespace {

constexpr std::uint64_t kMaxSweepLength = std::uint64_t{1} << 40;

std::map<Rational, PAdicInt> sweep_gamma(const std::vector<Rational>& args, const ZpRingPtr& ring,
                                         unsigned threads) {
  const ZpRing& r = *ring;
  if (!r.modulus().fits_ulong_p() || r.modulus() > mpz_class("9223372036854775807"))
    fail(ErrorCode::kCapacity, "sweep strategy needs p^N < 2^63; use the block-polynomial strategy");
  const std::uint64_t mod = r.modulus().get_ui();
  const std::uint64_t p = r.prime();
  std::vector<std::pair<std::uint64_t, Rational>> targets;
  for (const auto& x : args) targets.emplace_back(gamma_argument_integer(x, r).get_ui(), x);
  std::sort(targets.begin(), targets.end());
  const std::uint64_t top = targets.empty() ? 0 : targets.back().first;
  if (top > kMaxSweepLength) fail(ErrorCode::kCapacity, "sweep length exceeds 2^40 multiplications");

  // prefix(m) = prod of units in [1, m).
  const unsigned workers = resolve_thread_count(threads);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(top, workers * 4ULL));
  std::vector<std::uint64_t> totals(chunks, 1);
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> partial(chunks);
  parallel_chunks(top, chunks, workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto it = std::partition_point(targets.begin(), targets.end(),
                                   [b](const auto& t) { return t.first < b; });
    unsigned __int128 acc = 1;
    for (std::uint64_t j = b; j < e; ++j) {
      while (it != targets.end() && it->first == j) {
        partial[c].emplace_back(j, static_cast<std::uint64_t>(acc));
        ++it;
      }
      if (j % p != 0) acc = (acc * j) % mod;
    }
    totals[c] = static_cast<std::uint64_t>(acc);
  });
  std::map<std::uint64_t, std::uint64_t> prefix;
  unsigned __int128 before = 1;
  for (std::size_t c = 0; c < chunks; ++c) {
    for (auto [m, part] : partial[c]) prefix[m] = static_cast<std::uint64_t>((before * part) % mod);
    before = (before * totals[c]) % mod;
  }
  prefix[top] = static_cast<std::uint64_t>(before);
  std::map<Rational, PAdicInt> out;
  for (const auto& [m, x] : targets) {
    mpz_class v(static_cast<unsigned long>(m == 0 ? 1 : prefix.at(m)));
    if (m % 2 == 1) v = -v;
    out.emplace(x, PAdicInt(ring, v));
  }
  return out;
}

}  // namespace

std::map<Rational, PAdicInt> batch_gamma(const std::vector<Rational>& args, const ZpRingPtr& ring,
                                         GammaStrategy strategy, unsigned threads) {
  if (strategy == GammaStrategy::kSweep) return sweep_gamma(args, ring, threads);
  GammaEvaluator eval(ring);
  std::map<Rational, PAdicInt> out;
  for (const auto& x : args)
    if (!out.count(x)) out.emplace(x, eval.at(x));
  return out;
}

}  // namespace bhst
