#include "bhst/point_count.hpp"

#include "bhst/error.hpp"
#include "bhst/parallel.hpp"

#include <chrono>
#include <numeric>

namespace bhst {

const char* count_method_name(CountMethod m) {
  switch (m) {
    case CountMethod::kBrute: return "brute";
    case CountMethod::kDiagonalConvolution: return "diagonal-convolution";
    case CountMethod::kWeil: return "weil";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEqual: return "equal";
    case Verdict::kCongruentOnly: return "congruent-only";
    case Verdict::kMismatch: return "mismatch";
  }
  return "?";
}

namespace {

std::uint64_t require_prime(const BHMatrix& a) {
  if (a.p() == 0) fail(ErrorCode::kInvalidArgument, "matrix has no prime attached");
  if (a.p() >= (std::uint64_t{1} << 31)) fail(ErrorCode::kCapacity, "point counting needs p < 2^31");
  return a.p();
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return r;
}

// r(v) = #{x in F_p (nonzero only if requested) : x^e = v}.
std::vector<std::uint64_t> power_histogram(std::uint64_t e, std::uint64_t p, bool include_zero) {
  std::vector<std::uint64_t> r(p, 0);
  for (std::uint64_t x = include_zero ? 0 : 1; x < p; ++x) ++r[powmod(x, e, p)];
  return r;
}

std::vector<std::uint64_t> convolve(const std::vector<std::uint64_t>& f, const std::vector<std::uint64_t>& g,
                                    std::uint64_t p) {
  std::vector<std::uint64_t> out(p, 0);
  std::vector<std::uint64_t> support;
  for (std::uint64_t v = 0; v < p; ++v)
    if (g[v]) support.push_back(v);
  for (std::uint64_t u = 0; u < p; ++u) {
    if (!f[u]) continue;
    for (std::uint64_t v : support) {
      std::uint64_t w = u + v;
      if (w >= p) w -= p;
      out[w] += f[u] * g[v];
    }
  }
  return out;
}

}  // namespace

std::uint64_t affine_count_brute(const BHMatrix& a, std::uint64_t budget, unsigned threads, std::size_t chunks) {
  const std::uint64_t p = require_prime(a);
  const int n = a.n();
  if (n == 0) return 1;
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  if (total > budget)
    fail(ErrorCode::kCapacity, "brute-force count needs p^n = " + std::to_string(static_cast<double>(total)) +
                                   " evaluations, above the budget " + std::to_string(budget) +
                                   "; use the diagonal path or a smaller p");
  // Solve for the variable occurring in the fewest monomials.
  int last = 0;
  int best = n + 1;
  for (int j = 0; j < n; ++j) {
    int cnt = 0;
    for (int k = 0; k < n; ++k) cnt += a(k, j) != 0;
    if (cnt < best) best = cnt, last = j;
  }
  std::vector<int> others;
  for (int j = 0; j < n; ++j)
    if (j != last) others.push_back(j);
  std::vector<int> with_last, without_last;
  for (int k = 0; k < n; ++k) (a(k, last) != 0 ? with_last : without_last).push_back(k);

  std::int64_t max_exp = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) max_exp = std::max(max_exp, a(k, j));
  std::vector<std::vector<std::uint64_t>> pw(max_exp + 1, std::vector<std::uint64_t>(p));
  for (std::int64_t e = 0; e <= max_exp; ++e)
    for (std::uint64_t x = 0; x < p; ++x) pw[e][x] = powmod(x, e, p);
  std::vector<std::uint64_t> inv(p, 0);
  for (std::uint64_t x = 1; x < p; ++x) inv[x] = powmod(x, p - 2, p);
  const bool single = with_last.size() == 1;
  const std::int64_t single_exp = single ? a(with_last[0], last) : 0;
  const std::vector<std::uint64_t> hist = single ? power_histogram(single_exp, p, true) : std::vector<std::uint64_t>{};

  const std::uint64_t prefixes = static_cast<std::uint64_t>(total / p);
  const unsigned workers = resolve_thread_count(threads);
  if (chunks == 0) chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(prefixes, workers * 8ULL));
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(prefixes, chunks, workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::vector<std::uint64_t> x(n, 0);
    {
      std::uint64_t t = b;
      for (int o : others) {
        x[o] = t % p;
        t /= p;
      }
    }
    std::vector<std::uint64_t> coef(with_last.size());
    std::uint64_t count = 0;
    for (std::uint64_t idx = b; idx < e; ++idx) {
      std::uint64_t rest = 0;
      for (int k : without_last) {
        std::uint64_t m = 1;
        for (int j : others)
          if (a(k, j)) m = m * pw[a(k, j)][x[j]] % p;
        rest += m;
      }
      rest %= p;
      for (std::size_t t = 0; t < with_last.size(); ++t) {
        const int k = with_last[t];
        std::uint64_t m = 1;
        for (int j : others)
          if (a(k, j)) m = m * pw[a(k, j)][x[j]] % p;
        coef[t] = m;
      }
      if (single) {
        if (coef[0] == 0) count += rest == 0 ? p : 0;
        else count += hist[(p - rest) % p * inv[coef[0]] % p];
      } else {
        for (std::uint64_t y = 0; y < p; ++y) {
          std::uint64_t v = rest;
          for (std::size_t t = 0; t < with_last.size(); ++t) v += coef[t] * pw[a(with_last[t], last)][y] % p;
          if (v % p == 0) ++count;
        }
      }
      for (int o : others) {  // odometer
        if (++x[o] < p) break;
        x[o] = 0;
      }
    }
    partial[c] = count;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t affine_count_diagonal(const BHMatrix& a) {
  const std::uint64_t p = require_prime(a);
  if (!a.is_diagonal()) fail(ErrorCode::kUnsupported, "diagonal convolution needs a diagonal matrix");
  if (a.n() == 0) return 1;
  std::vector<std::uint64_t> dist = power_histogram(a(0, 0), p, true);
  for (int i = 1; i < a.n(); ++i) dist = convolve(dist, power_histogram(a(i, i), p, true), p);
  return dist[0];
}

std::uint64_t projective_count(std::uint64_t affine, std::uint64_t p) {
  if (affine == 0 || (affine - 1) % (p - 1) != 0)
    fail(ErrorCode::kInternal, "affine count " + std::to_string(affine) + " is not 1 mod p-1");
  return (affine - 1) / (p - 1);
}

NuReport nu_via_stabilizers(const BHMatrix& a) {
  const std::uint64_t p = require_prime(a);
  if (a.n() != 4 || !a.is_diagonal() || a.cy_check() != CyClass::kStrict)
    fail(ErrorCode::kUnsupported, "stabilizer count needs a diagonal strict-CY matrix with n = 4");
  const IntVector& w = a.scaled_weights();
  NuReport out;
  // A rational point with support S has stabilizer mu_g, g = gcd(w_S); each
  // such point has exactly p-1 affine representatives.
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::int64_t g = 0;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) g = std::gcd(g, w[i]);
    if (g <= 1) continue;
    std::vector<std::uint64_t> dist;
    for (int i = 0; i < 4; ++i) {
      if (!(mask >> i & 1)) continue;
      auto h = power_histogram(a(i, i), p, false);
      dist = dist.empty() ? h : convolve(dist, h, p);
    }
    const std::uint64_t exact_support = dist[0];
    if (exact_support % (p - 1) != 0) fail(ErrorCode::kInternal, "support count not divisible by p-1");
    const auto points = static_cast<std::int64_t>(exact_support / (p - 1));
    if (points == 0) continue;
    out.points_by_stabilizer[g] += points;
    out.nu += (g - 1) * points;
  }
  return out;
}

namespace {

bool is_j_group(const BHMatrix& a, const Subgroup& g) {
  const Subgroup j = j_subgroup(a);
  return g.side() == Side::kRow && g.elements() == j.elements();
}

}  // namespace

CountReport crepant_count(const BHMatrix& a, const Subgroup& g, std::uint64_t budget, unsigned threads) {
  const std::uint64_t p = require_prime(a);
  if (!is_j_group(a, g))
    fail(ErrorCode::kUnsupported, "crepant counts are implemented for G = <J> only");
  CountReport r;
  r.matrix = a.entries();
  r.p = p;
  if (a.n() == 3) {
    if (a.is_diagonal()) {
      r.affine = affine_count_diagonal(a);
      r.method = CountMethod::kDiagonalConvolution;
    } else {
      r.affine = affine_count_brute(a, budget, threads);
      r.method = CountMethod::kBrute;
    }
    r.projective = projective_count(r.affine, p);
    r.crepant = r.projective;
    return r;
  }
  if (a.n() == 4 && a.is_diagonal()) {
    r.affine = affine_count_diagonal(a);
    r.method = CountMethod::kDiagonalConvolution;
    r.projective = projective_count(r.affine, p);
    r.nu = nu_via_stabilizers(a).nu;
    r.crepant = r.projective + static_cast<std::uint64_t>(*r.nu) * p;
    return r;
  }
  fail(ErrorCode::kUnsupported, "crepant counts need n = 3, or n = 4 with a diagonal matrix");
}

std::int64_t weil_count(const BHMatrix& a, int precision) {
  if (!a.is_diagonal()) fail(ErrorCode::kUnsupported, "the Gauss-sum count needs a diagonal matrix");
  const std::uint64_t p = require_prime(a);
  const int n = a.n();
  const auto e = static_cast<std::int64_t>(p - 1);
  for (int i = 0; i < n; ++i)
    if (e % a(i, i) != 0) fail(ErrorCode::kDomain, "exponent " + std::to_string(a(i, i)) + " does not divide p-1");
  if (precision <= 0) precision = n + 2;
  const SplittingCoefficients coeffs(p, precision + 2, SplittingCoefficients::index_for_precision(p, precision + 2));
  const ZpRingPtr& ring = coeffs.working_ring();
  std::map<std::int64_t, EisensteinElement> cache;
  auto g = [&](std::int64_t t) -> const EisensteinElement& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, gauss_sum(t, coeffs)).first;
    return it->second;
  };
  EisensteinElement sum = EisensteinElement::zero(ring);
  std::vector<std::int64_t> beta(n, 1);
  bool done = n == 0;
  while (!done) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += Rational(beta[i], a(i, i));
    if (s.denominator() == 1) {
      EisensteinElement prod = EisensteinElement::one(ring);
      for (int i = 0; i < n; ++i) prod = prod * g(e * beta[i] / a(i, i));
      sum = sum + prod;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++beta[i] < a(i, i)) break;
      beta[i] = 1;
    }
    done = i == n;
  }
  mpz_class base = 0, pk = 1;
  for (int k = 0; k + 2 <= n; ++k) {
    base += pk;
    pk *= static_cast<unsigned long>(p);
  }
  EisensteinElement total = sum.divided_by(mpz_class(static_cast<unsigned long>(p))) +
                            EisensteinElement::from_integer(ring, base);
  auto value = total.to_padic(precision);
  if (!value) fail(ErrorCode::kInternal, "Gauss-sum count is not a p-adic integer; convention error");
  mpz_class v = value->residue();
  const mpz_class& mod = value->ring()->modulus();
  if (v > mod / 2) v -= mod;
  if (!v.fits_slong_p()) fail(ErrorCode::kCapacity, "count exceeds 64 bits");
  return v.get_si();
}

VerificationReport verify_conjecture(const StateSpace& space, int precision, std::uint64_t budget,
                                     unsigned threads) {
  using clock = std::chrono::steady_clock;
  const BHMatrix& a = space.matrix();
  if (a.n() < 3) fail(ErrorCode::kUnsupported, "verification needs n >= 3");
  if (a.cy_check() != CyClass::kStrict) fail(ErrorCode::kHypothesis, "verification needs the strict CY condition");
  VerificationReport r;
  auto t0 = clock::now();
  r.count = crepant_count(a, space.group(), budget, threads);
  auto t1 = clock::now();
  r.supertrace = supertrace_padic(space, precision);
  auto t2 = clock::now();
  r.count_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.supertrace_seconds = std::chrono::duration<double>(t2 - t1).count();
  const mpz_class crepant(static_cast<unsigned long>(*r.count.crepant));
  const mpz_class pz(static_cast<unsigned long>(a.p()));
  if (r.supertrace.lifted && *r.supertrace.lifted == crepant) {
    r.verdict = Verdict::kEqual;
  } else {
    mpz_class st_mod = r.supertrace.residue % pz;
    mpz_class x_mod = mpz_class(static_cast<unsigned long>(r.count.projective)) % pz;
    r.verdict = st_mod == x_mod ? Verdict::kCongruentOnly : Verdict::kMismatch;
  }
  return r;
}

}  // namespace bhst
