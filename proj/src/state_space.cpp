#include "bhst/state_space.hpp"

#include "bhst/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bhst {

Rational milnor_number(const BHMatrix& a) {
  Rational prod = 1;
  for (const auto& q : a.weights()) prod *= (Rational(1) / q - 1);
  return prod;
}

namespace {

constexpr std::uint64_t kFallbackPrime = 1000003;

// Rank profile of a dense matrix over F_p; returns pivot columns.
std::vector<std::size_t> pivot_columns(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols,
                                       std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto inv = [&](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return result;
  };
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t iv = inv(rows[r][c]);
    for (auto& x : rows[r]) x = mulmod(x, iv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j])) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

MilnorBasis milnor_basis(const BHMatrix& a, std::uint64_t p) {
  if (p == 0) p = a.p() != 0 ? a.p() : kFallbackPrime;
  const int n = a.n();
  const RationalVector& q = a.weights();
  Rational socle = 0;
  for (const auto& x : q) socle += Rational(1) - 2 * x;

  // All monomials of weighted degree <= socle, lexicographically descending.
  std::vector<IntVector> monos;
  IntVector cur(n, 0);
  std::function<void(int, Rational)> rec = [&](int i, Rational left) {
    if (i == n) {
      monos.push_back(cur);
      return;
    }
    const std::int64_t top = left < 0 ? -1 : floor_of(left / q[i]);
    for (std::int64_t b = top; b >= 0; --b) {
      cur[i] = b;
      rec(i + 1, left - q[i] * b);
    }
    cur[i] = 0;
  };
  rec(0, socle);
  std::sort(monos.begin(), monos.end(), std::greater<>());

  auto degree = [&](const IntVector& b) {
    Rational d = 0;
    for (int i = 0; i < n; ++i) d += q[i] * b[i];
    return d;
  };
  using Key = std::pair<Rational, SectorElement>;
  std::map<Key, std::vector<std::size_t>> pieces;  // key -> monomial indices
  std::map<IntVector, std::size_t> index_of;
  std::vector<Key> key_of(monos.size());
  for (std::size_t k = 0; k < monos.size(); ++k) {
    key_of[k] = {degree(monos[k]), SectorElement::from_lift(a, Side::kColumn, monos[k])};
    pieces[key_of[k]].push_back(k);
    index_of[monos[k]] = k;
  }
  // Jacobian ideal: x^alpha * dW/dx_i for every alpha, i landing below the socle.
  std::map<Key, std::vector<std::map<std::size_t, std::int64_t>>> ideal_rows;
  for (const auto& alpha : monos) {
    const Rational da = degree(alpha);
    for (int i = 0; i < n; ++i) {
      if (da + Rational(1) - q[i] > socle) continue;
      std::map<std::size_t, std::int64_t> poly;
      for (int k = 0; k < n; ++k) {
        const std::int64_t c = a(k, i);
        if (c == 0) continue;
        IntVector e = alpha;
        for (int j = 0; j < n; ++j) e[j] += a(k, j);
        e[i] -= 1;
        auto it = index_of.find(e);
        require(it != index_of.end(), "Jacobian monomial lies in the enumerated range");
        poly[it->second] += c;
      }
      if (poly.empty()) continue;
      ideal_rows[key_of[poly.begin()->first]].push_back(std::move(poly));
    }
  }
  MilnorBasis out;
  out.matrix = a.entries();
  for (const auto& [key, cols] : pieces) {
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t c = 0; c < cols.size(); ++c) col_pos[cols[c]] = c;
    std::vector<std::vector<std::uint64_t>> rows;
    if (auto it = ideal_rows.find(key); it != ideal_rows.end()) {
      for (const auto& poly : it->second) {
        std::vector<std::uint64_t> row(cols.size(), 0);
        for (const auto& [idx, c] : poly) {
          auto pos = col_pos.find(idx);
          require(pos != col_pos.end(), "ideal generator is homogeneous for the bigrading");
          const auto pp = static_cast<std::int64_t>(p);
          row[pos->second] = static_cast<std::uint64_t>(((c % pp) + pp) % pp);
        }
        rows.push_back(std::move(row));
      }
    }
    const auto piv = pivot_columns(std::move(rows), cols.size(), p);
    std::vector<bool> is_piv(cols.size(), false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!is_piv[c]) out.basis.push_back({monos[cols[c]], key.first, key.second});
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [](const MilnorMonomial& x, const MilnorMonomial& y) { return x.exponents < y.exponents; });
  const Rational expected = milnor_number(a);
  if (expected.denominator() != 1 || expected.numerator() != static_cast<std::int64_t>(out.basis.size()))
    fail(ErrorCode::kInternal, "Milnor ring of " + format_matrix(a.entries()) + " has dimension " +
                                   std::to_string(out.basis.size()) + ", expected " + to_string(expected));
  return out;
}

int SectorGenerator::sign() const {
  require(age_dual.denominator() == 1, "dual age of a contributing sector is an integer");
  return ((dim + age_dual.numerator()) % 2 == 0) ? 1 : -1;
}

Rational SectorGenerator::p_exponent() const { return age + age_dual - 1; }

RationalVector SectorGenerator::gamma_args() const {
  RationalVector out;
  for (int i = 0; i < gamma.n(); ++i)
    if (gamma.numerators()[i] != 0) out.push_back(gamma.frac(i));
  return out;
}

std::string SectorGenerator::monomial_string() const {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const char* var, const IntVector& e) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) os << "*";
      os << var << (i + 1);
      if (e[i] != 1) os << "^" << e[i];
      any = true;
    }
  };
  put("x", gamma_exponents);
  put("y", lambda_exponents);
  for (int i : theta_set) {
    if (any) os << "*";
    os << "theta" << (i + 1);
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

std::string SectorGenerator::contribution_string() const {
  std::vector<std::string> factors;
  const Rational e = p_exponent();
  if (e == 1) factors.push_back("p");
  else if (e != 0) factors.push_back("p^" + to_string(e));
  for (const auto& g : gamma_args()) factors.push_back("Gamma_p(" + to_string(g) + ")");
  std::string body;
  for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
  if (body.empty()) body = "1";
  return (sign() < 0 ? "-" : "") + body;
}

StateSpace::StateSpace(const BHMatrix& a, const Subgroup& g)
    : a_(a), g_(g), gt_(transpose_subgroup(a, g)) {
  if (g.side() != Side::kRow) fail(ErrorCode::kInvalidArgument, "state space needs a subgroup of G_A");
  j_in_g_ = g_.contains(SectorElement::from_lift(a_, Side::kRow, IntVector(a_.n(), 1)));
  j_in_gt_ = gt_.contains(SectorElement::from_lift(a_, Side::kColumn, IntVector(a_.n(), 1)));
  const int n = a_.n();
  for (const auto& lambda : g_.elements()) {
    for (const auto& gamma : gt_.elements()) {
      if (delta(gamma, lambda) == 0) continue;
      SectorGenerator s;
      s.gamma = gamma;
      s.lambda = lambda;
      s.gamma_exponents = gamma.canonical_lift(a_);
      s.lambda_exponents = lambda.canonical_lift(a_);
      s.theta_set = lambda.fixed_set();
      s.age = lambda.age();
      s.age_dual = gamma.age();
      s.dim = lambda.dim_fixed();
      s.s = s.age + s.age_dual - 1;
      s.r = Rational(s.dim) + s.age - s.age_dual - 1;
      s.q_vee = n - s.dim;
      s.q = static_cast<int>(s.theta_set.size()) + s.q_vee;
      require(s.q == n, "q(lambda, I) = n for every generator");
      if (j_hypothesis()) require(s.age + s.age_dual >= 1, "contributing sectors have age + dual age >= 1");
      generators_.push_back(std::move(s));
    }
  }
}

const StateSpace::Restricted& StateSpace::restricted_for(const std::vector<int>& fixed) const {
  if (auto it = cache_.find(fixed); it != cache_.end()) return it->second;
  Restricted r;
  r.fixed = fixed;
  r.denom = a_.abs_det();
  if (fixed.empty()) {
    r.class_dims[{}] = 1;
  } else {
    const BHMatrix sub = a_.restrict(fixed);
    const MilnorBasis basis = milnor_basis(sub, a_.p());
    for (const auto& m : basis.basis) {
      IntVector shifted = m.exponents;
      for (auto& x : shifted) x += 1;
      const SectorElement c = SectorElement::from_lift(sub, Side::kColumn, shifted);
      std::vector<std::int64_t> key(fixed.size());
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        const Rational scaled = c.frac(static_cast<int>(i)) * r.denom;
        require(scaled.denominator() == 1, "restricted denominators divide det A");
        key[i] = scaled.numerator();
      }
      ++r.class_dims[key];
    }
  }
  return cache_.emplace(fixed, std::move(r)).first->second;
}

int StateSpace::delta(const SectorElement& gamma, const SectorElement& lambda) const {
  const std::vector<int> fixed = lambda.fixed_set();
  std::vector<bool> in(a_.n(), false);
  for (int i : fixed) in[i] = true;
  std::vector<std::int64_t> key;
  for (int i = 0; i < a_.n(); ++i) {
    if (in[i]) key.push_back(gamma.numerators()[i]);
    else if (gamma.numerators()[i] != 0) return 0;
  }
  const Restricted& r = restricted_for(fixed);
  auto it = r.class_dims.find(key);
  if (it == r.class_dims.end()) return 0;
  require(it->second <= 1, "sector cohomology is at most one-dimensional");
  return it->second;
}

std::map<std::pair<Rational, Rational>, int> StateSpace::hodge_diamond() const {
  std::map<std::pair<Rational, Rational>, int> d;
  for (const auto& g : generators_) ++d[{g.r, g.s}];
  return d;
}

}  // namespace bhst
