#include "bhst/group.hpp"

#include "bhst/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace bhst {

const char* side_name(Side s) { return s == Side::kRow ? "row" : "column"; }

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// frac of an integer vector: lift * A^{-T} (row) or lift * A^{-1} (column),
// as numerators over |det A|.
std::vector<std::int64_t> frac_numerators(const BHMatrix& a, Side side, const IntVector& lift) {
  const int n = a.n();
  if (static_cast<int>(lift.size()) != n)
    fail(ErrorCode::kInvalidArgument, "group element has " + std::to_string(lift.size()) +
                                          " components, expected " + std::to_string(n));
  const std::int64_t d = a.abs_det();
  std::vector<std::int64_t> num(n, 0);
  for (int j = 0; j < n; ++j) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) {
      if (lift[i] == 0) continue;
      // (A^{-T})_{ij} = (A^{-1})_{ji}
      s += Rational(lift[i]) * (side == Side::kRow ? a.inverse()[j][i] : a.inverse()[i][j]);
    }
    Rational scaled = s * d;
    require(scaled.denominator() == 1, "denominators of A^{-1} divide det A");
    num[j] = mod_pos(scaled.numerator(), d);
  }
  return num;
}

}  // namespace

SectorElement::SectorElement(Side side, std::int64_t denom, std::vector<std::int64_t> num)
    : side_(side), denom_(denom), num_(std::move(num)) {
  for (auto& x : num_) x = mod_pos(x, denom_);
}

SectorElement SectorElement::from_lift(const BHMatrix& a, Side side, const IntVector& lift) {
  return SectorElement(side, a.abs_det(), frac_numerators(a, side, lift));
}

SectorElement SectorElement::identity(const BHMatrix& a, Side side) {
  return SectorElement(side, a.abs_det(), std::vector<std::int64_t>(a.n(), 0));
}

RationalVector SectorElement::frac() const {
  RationalVector f(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) f[i] = Rational(num_[i], denom_);
  return f;
}

Rational SectorElement::age() const {
  std::int64_t s = 0;
  for (auto x : num_) s += x;
  return Rational(s, denom_);
}

int SectorElement::dim_fixed() const {
  return static_cast<int>(std::count(num_.begin(), num_.end(), 0));
}

std::vector<int> SectorElement::fixed_set() const {
  std::vector<int> f;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] == 0) f.push_back(static_cast<int>(i));
  return f;
}

bool SectorElement::is_identity() const {
  return std::all_of(num_.begin(), num_.end(), [](std::int64_t x) { return x == 0; });
}

IntVector SectorElement::canonical_lift(const BHMatrix& a) const {
  const int n = a.n();
  IntVector lift(n, 0);
  for (int j = 0; j < n; ++j) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) {
      // row: (frac * A^T)_j = sum_i frac_i A_{ji}; column: sum_i frac_i A_{ij}
      const std::int64_t e = side_ == Side::kRow ? a(j, i) : a(i, j);
      if (e != 0) s += frac(i) * e;
    }
    require(s.denominator() == 1, "canonical lift is integral");
    lift[j] = s.numerator();
  }
  return lift;
}

SectorElement SectorElement::operator+(const SectorElement& o) const {
  if (side_ != o.side_ || denom_ != o.denom_ || num_.size() != o.num_.size())
    fail(ErrorCode::kInvalidArgument, "adding elements of different groups");
  std::vector<std::int64_t> s(num_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = num_[i] + o.num_[i];
  return SectorElement(side_, denom_, std::move(s));
}

SectorElement SectorElement::operator-() const {
  std::vector<std::int64_t> s(num_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -num_[i];
  return SectorElement(side_, denom_, std::move(s));
}

SmithForm smith_normal_form(const IntMatrix& m_in) {
  const int n = static_cast<int>(m_in.size());
  IntMatrix m = m_in;
  IntMatrix v(n, IntVector(n, 0)), vinv(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) v[i][i] = vinv[i][i] = 1;

  auto col_addmul = [&](int dst, int src, std::int64_t q) {  // col_dst -= q col_src
    for (int i = 0; i < n; ++i) {
      m[i][dst] -= q * m[i][src];
      v[i][dst] -= q * v[i][src];
    }
    for (int j = 0; j < n; ++j) vinv[src][j] += q * vinv[dst][j];
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < n; ++i) {
      std::swap(m[i][a], m[i][b]);
      std::swap(v[i][a], v[i][b]);
    }
    std::swap(vinv[a], vinv[b]);
  };
  auto row_addmul = [&](int dst, int src, std::int64_t q) {
    for (int j = 0; j < n; ++j) m[dst][j] -= q * m[src][j];
  };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pr = -1, pc = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (m[i][j] != 0 && (pr < 0 || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) pr = i, pc = j;
      if (pr < 0) break;
      std::swap(m[t], m[pr]);
      if (pc != t) col_swap(t, pc);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        row_addmul(i, t, m[i][t] / m[t][t]);
        if (m[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        col_addmul(j, t, m[t][j] / m[t][t]);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < n && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_addmul(t, bad, -1);  // row_t += row_bad
    }
    if (m[t][t] < 0)
      for (int j = 0; j < n; ++j) m[t][j] = -m[t][j];
  }
  SmithForm out;
  for (int i = 0; i < n; ++i) out.divisors.push_back(m[i][i]);
  out.v = std::move(v);
  out.v_inverse = std::move(vinv);
  return out;
}

Subgroup Subgroup::from_elements(Side side, std::vector<SectorElement> gens,
                                 std::vector<SectorElement> elements, std::vector<std::int64_t> factors) {
  Subgroup g;
  g.side_ = side;
  g.generators_ = std::move(gens);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  g.elements_ = std::move(elements);
  g.factors_ = std::move(factors);
  return g;
}

bool Subgroup::contains(const SectorElement& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Subgroup group_of(const BHMatrix& a, Side side) {
  if (a.abs_det() > kMaxGroupOrder)
    fail(ErrorCode::kCapacity, "|det A| = " + std::to_string(a.abs_det()) + " exceeds the group size limit " +
                                   std::to_string(kMaxGroupOrder));
  // Row side: Z^n / Z^n A^T; column side: Z^n / Z^n A.
  const IntMatrix lattice = side == Side::kRow ? transpose(a.entries()) : a.entries();
  const SmithForm snf = smith_normal_form(lattice);
  std::vector<SectorElement> gens;
  std::vector<std::int64_t> orders;
  for (int i = 0; i < a.n(); ++i) {
    if (snf.divisors[i] <= 1) continue;
    gens.push_back(SectorElement::from_lift(a, side, snf.v_inverse[i]));
    orders.push_back(snf.divisors[i]);
  }
  std::vector<SectorElement> elements{SectorElement::identity(a, side)};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<SectorElement> next;
    next.reserve(elements.size() * orders[g]);
    for (const auto& x : elements) {
      SectorElement y = x;
      for (std::int64_t k = 0; k < orders[g]; ++k) {
        next.push_back(y);
        y = y + gens[g];
      }
    }
    elements = std::move(next);
  }
  Subgroup out = Subgroup::from_elements(side, gens, elements, orders);
  require(static_cast<std::int64_t>(out.order()) == a.abs_det(), "group order equals |det A|");
  return out;
}

Subgroup subgroup_of_elements(Side side, const std::vector<SectorElement>& gens) {
  std::set<SectorElement> seen;
  std::deque<SectorElement> queue;
  if (gens.empty()) fail(ErrorCode::kInvalidArgument, "subgroup needs a template element");
  SectorElement zero = gens.front() + (-gens.front());
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    SectorElement x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      SectorElement y = x + g;
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return Subgroup::from_elements(side, gens, std::vector<SectorElement>(seen.begin(), seen.end()));
}

Subgroup subgroup(const BHMatrix& a, Side side, const std::vector<IntVector>& generator_lifts) {
  std::vector<SectorElement> gens;
  for (const auto& l : generator_lifts) gens.push_back(SectorElement::from_lift(a, side, l));
  if (gens.empty())
    return Subgroup::from_elements(side, {}, {SectorElement::identity(a, side)});
  return subgroup_of_elements(side, gens);
}

Subgroup j_subgroup(const BHMatrix& a) { return subgroup(a, Side::kRow, {IntVector(a.n(), 1)}); }

Rational pairing(const BHMatrix& a, const SectorElement& gamma, const SectorElement& lambda) {
  if (gamma.side() != Side::kColumn || lambda.side() != Side::kRow)
    fail(ErrorCode::kInvalidArgument, "pairing needs a column-side and a row-side element");
  // gamma A^{-1} lambda^T = frac_gamma A frac_lambda^T for canonical lifts.
  const int n = a.n();
  const std::int64_t d = a.abs_det();
  __int128 s = 0;
  for (int i = 0; i < n; ++i) {
    if (gamma.numerators()[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      s += static_cast<__int128>(gamma.numerators()[i]) * a(i, j) * lambda.numerators()[j];
  }
  const __int128 dd = static_cast<__int128>(d) * d;
  s %= dd;
  if (s < 0) s += dd;
  return frac_part(Rational(static_cast<std::int64_t>(s), 1) / Rational(d) / Rational(d));
}

Subgroup transpose_subgroup(const BHMatrix& a, const Subgroup& g) {
  const Side other = g.side() == Side::kRow ? Side::kColumn : Side::kRow;
  const Subgroup full = group_of(a, other);
  const std::vector<SectorElement>& probe = g.generators().empty() ? g.elements() : g.generators();
  std::vector<SectorElement> keep;
  for (const auto& x : full.elements()) {
    bool ok = true;
    for (const auto& y : probe) {
      const Rational pr = g.side() == Side::kRow ? pairing(a, x, y) : pairing(a, y, x);
      if (pr != 0) {
        ok = false;
        break;
      }
    }
    if (ok) keep.push_back(x);
  }
  return Subgroup::from_elements(other, {}, std::move(keep));
}

}  // namespace bhst
