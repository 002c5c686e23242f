#include "bhst/error.hpp"
#include "bhst/parallel.hpp"
#include "bhst/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

namespace bhst {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNegativeEntry: return "negative_entry";
    case ErrorCode::kSingularMatrix: return "singular_matrix";
    case ErrorCode::kNoAtomDecomposition: return "no_atom_decomposition";
    case ErrorCode::kDeterminantNotDividing: return "det_not_dividing";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kPrecisionExhausted: return "precision_exhausted";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kHypothesis: return "hypothesis";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BHST_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_of(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }

Rational frac_part(const Rational& r) { return r - Rational(floor_of(r)); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (...) {
      fail(ErrorCode::kParse, "not a rational number: '" + text + "'");
    }
    if (used != s.size()) fail(ErrorCode::kParse, "not a rational number: '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::kParse, "zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

IntMatrix transpose(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix t(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j][i] = m[i][j];
  return t;
}

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        constexpr __int128 kLimit = static_cast<__int128>(1) << 100;
        if (a[i][j] > kLimit || a[i][j] < -kLimit)
          fail(ErrorCode::kCapacity, "determinant computation overflow");
      }
    prev = a[k][k];
  }
  __int128 d = sign * a[n - 1][n - 1];
  if (d > INT64_MAX || d < INT64_MIN) fail(ErrorCode::kCapacity, "determinant exceeds 64 bits");
  return static_cast<std::int64_t>(d);
}

RationalMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(n, RationalVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) fail(ErrorCode::kSingularMatrix, "matrix is singular");
    std::swap(a[piv], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RationalMatrix out(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

RationalVector row_times(const RationalVector& v, const RationalMatrix& m) {
  RationalVector out(m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * m[i][j];
  return out;
}

RationalVector row_times(const IntVector& v, const RationalMatrix& m) {
  RationalVector r(v.begin(), v.end());
  return row_times(r, m);
}

RationalVector row_times(const RationalVector& v, const IntMatrix& m) {
  RationalVector out(m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * m[i][j];
  return out;
}

std::int64_t lcm_of_denominators(const RationalVector& v) {
  std::int64_t l = 1;
  for (const auto& x : v) l = std::lcm(l, x.denominator());
  return l;
}

}  // namespace bhst
