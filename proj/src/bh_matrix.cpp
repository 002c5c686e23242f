#include "bhst/bh_matrix.hpp"

#include "bhst/error.hpp"
#include "bhst/padic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace bhst {

const char* atom_kind_name(AtomKind kind) {
  switch (kind) {
    case AtomKind::kFermat: return "fermat";
    case AtomKind::kChain: return "chain";
    case AtomKind::kLoop: return "loop";
  }
  return "?";
}

const char* cy_class_name(CyClass c) {
  switch (c) {
    case CyClass::kStrict: return "strict_cy";
    case CyClass::kIntegerCy: return "integer_cy";
    case CyClass::kNeither: return "neither";
  }
  return "?";
}

namespace {

void check_shape(const IntMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n)
      fail(ErrorCode::kInvalidArgument, "matrix row " + std::to_string(i + 1) + " has " +
                                            std::to_string(a[i].size()) + " entries, expected " +
                                            std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] < 0)
        fail(ErrorCode::kNegativeEntry, "matrix entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") = " + std::to_string(a[i][j]) +
                                            " is negative");
  }
}

}  // namespace

// Each row must be x_c^{a} or x_c^{a} x_d with a >= 2: its "main" column c and
// optional pointer d. Main columns form a permutation and pointers have
// in-degree <= 1, so the pointer graph splits into paths (chains, Fermat when
// of length one) and cycles (loops). The decomposition is forced by the rows.
std::vector<Atom> decompose_atoms(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> row_of_main(n, -1);
  std::vector<int> pointer(n, -1);  // indexed by main variable
  std::vector<std::int64_t> exponent(n, 0);
  for (int i = 0; i < n; ++i) {
    int main_col = -1, ptr = -1;
    for (int j = 0; j < n; ++j) {
      const std::int64_t v = a[i][j];
      if (v == 0) continue;
      if (v >= 2) {
        if (main_col >= 0)
          fail(ErrorCode::kNoAtomDecomposition, "row " + std::to_string(i + 1) +
                                                    " has two exponents >= 2; not a chain/loop/Fermat row");
        main_col = j;
      } else {
        if (ptr >= 0)
          fail(ErrorCode::kNoAtomDecomposition,
               "row " + std::to_string(i + 1) + " has more than one exponent equal to 1");
        ptr = j;
      }
    }
    if (main_col < 0)
      fail(ErrorCode::kNoAtomDecomposition,
           "row " + std::to_string(i + 1) + " has no exponent >= 2 (degenerate atom)");
    if (row_of_main[main_col] >= 0)
      fail(ErrorCode::kNoAtomDecomposition, "variable x" + std::to_string(main_col + 1) +
                                                " carries the leading exponent of rows " +
                                                std::to_string(row_of_main[main_col] + 1) + " and " +
                                                std::to_string(i + 1));
    row_of_main[main_col] = i;
    pointer[main_col] = ptr;
    exponent[main_col] = a[i][main_col];
  }
  std::vector<int> indegree(n, 0);
  for (int v = 0; v < n; ++v)
    if (pointer[v] >= 0 && ++indegree[pointer[v]] > 1)
      fail(ErrorCode::kNoAtomDecomposition,
           "variable x" + std::to_string(pointer[v] + 1) + " is the linear factor of two rows");

  std::vector<Atom> atoms;
  std::vector<bool> used(n, false);
  for (int start = 0; start < n; ++start) {
    if (indegree[start] != 0 || used[start]) continue;
    Atom atom;
    for (int v = start; v >= 0; v = pointer[v]) {
      atom.variables.push_back(v);
      atom.exponents.push_back(exponent[v]);
      used[v] = true;
    }
    atom.kind = atom.variables.size() == 1 ? AtomKind::kFermat : AtomKind::kChain;
    atoms.push_back(std::move(atom));
  }
  for (int start = 0; start < n; ++start) {
    if (used[start]) continue;
    Atom atom{AtomKind::kLoop, {}, {}};
    int v = start;
    do {
      atom.variables.push_back(v);
      atom.exponents.push_back(exponent[v]);
      used[v] = true;
      v = pointer[v];
    } while (v != start);
    // Start the loop at its smallest variable.
    atoms.push_back(std::move(atom));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    return *std::min_element(x.variables.begin(), x.variables.end()) <
           *std::min_element(y.variables.begin(), y.variables.end());
  });
  return atoms;
}

IntMatrix reassemble(const std::vector<Atom>& atoms, int n) {
  IntMatrix a(n, IntVector(n, 0));
  // Rows are placed by their main variable; BHMatrix keeps the original row order.
  for (const auto& atom : atoms) {
    const std::size_t len = atom.variables.size();
    for (std::size_t k = 0; k < len; ++k) {
      const int v = atom.variables[k];
      a[v][v] = atom.exponents[k];
      if (k + 1 < len) a[v][atom.variables[k + 1]] = 1;
      else if (atom.kind == AtomKind::kLoop && len > 1) a[v][atom.variables[0]] = 1;
    }
  }
  return a;
}

BHMatrix BHMatrix::validate(const IntMatrix& entries, std::uint64_t p, Admissibility mode) {
  check_shape(entries);
  BHMatrix m;
  m.entries_ = entries;
  m.p_ = p;
  m.mode_ = mode;
  const int n = static_cast<int>(entries.size());
  m.det_ = determinant(entries);
  if (m.det_ == 0) fail(ErrorCode::kSingularMatrix, "matrix " + format_matrix(entries) + " is singular");
  m.atoms_ = decompose_atoms(entries);
  m.inv_ = bhst::inverse(entries);
  m.q_.assign(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.q_[i] += m.inv_[i][j];
  for (int i = 0; i < n; ++i)
    if (m.q_[i] <= 0) fail(ErrorCode::kInternal, "non-positive weight q_" + std::to_string(i + 1));
  m.m_ = lcm_of_denominators(m.q_);
  m.w_.resize(n);
  for (int i = 0; i < n; ++i) m.w_[i] = (m.q_[i] * m.m_).numerator();

  if (p != 0) {
    if (!is_prime(p) || p == 2)
      fail(ErrorCode::kDomain, "p = " + std::to_string(p) + " is not an odd prime");
    if (mode == Admissibility::kStrict) {
      if ((p - 1) % static_cast<std::uint64_t>(m.abs_det()) != 0)
        fail(ErrorCode::kDeterminantNotDividing, "det(A) = " + std::to_string(m.det_) +
                                                     " does not divide p-1 = " + std::to_string(p - 1));
    } else {
      std::int64_t l = 1;
      for (int i = 0; i < n; ++i) l = std::lcm(l, entries[i][i]);
      l = std::lcm(l, m.m_);
      if ((p - 1) % static_cast<std::uint64_t>(l) != 0)
        fail(ErrorCode::kDeterminantNotDividing, "relaxed admissibility needs " + std::to_string(l) +
                                                     " | p-1 = " + std::to_string(p - 1));
    }
  }
  return m;
}

bool BHMatrix::is_diagonal() const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (i != j && entries_[i][j] != 0) return false;
  return true;
}

Rational BHMatrix::cy_value() const {
  Rational s = 0;
  for (const auto& x : q_) s += x;
  return s;
}

CyClass BHMatrix::cy_check() const {
  const Rational v = cy_value();
  if (v == 1) return CyClass::kStrict;
  if (v.denominator() == 1) return CyClass::kIntegerCy;
  return CyClass::kNeither;
}

BHMatrix BHMatrix::transpose() const {
  return validate(bhst::transpose(entries_), p_, mode_);
}

BHMatrix BHMatrix::restrict(const std::vector<int>& fixed) const {
  std::vector<bool> in(n(), false);
  for (int i : fixed) {
    if (i < 0 || i >= n()) fail(ErrorCode::kInvalidArgument, "restriction index out of range");
    in[i] = true;
  }
  for (int i : fixed)
    for (int j = 0; j < n(); ++j)
      if (!in[j] && entries_[i][j] != 0)
        fail(ErrorCode::kInternal, "restriction to the fixed locus is not Berglund-Huebsch: row " +
                                       std::to_string(i + 1) + " involves x" + std::to_string(j + 1));
  IntMatrix sub(fixed.size(), IntVector(fixed.size()));
  for (std::size_t a = 0; a < fixed.size(); ++a)
    for (std::size_t b = 0; b < fixed.size(); ++b) sub[a][b] = entries_[fixed[a]][fixed[b]];
  try {
    return validate(sub, 0);
  } catch (const Error& e) {
    fail(ErrorCode::kInternal, std::string("restricted potential is invalid: ") + e.what());
  }
}

BHMatrix BHMatrix::with_prime(std::uint64_t p) const { return validate(entries_, p, mode_); }

std::string BHMatrix::potential_string() const {
  std::ostringstream os;
  for (int i = 0; i < n(); ++i) {
    if (i) os << " + ";
    bool first = true;
    for (int j = 0; j < n(); ++j) {
      if (entries_[i][j] == 0) continue;
      if (!first) os << "*";
      os << "x" << (j + 1);
      if (entries_[i][j] > 1) os << "^" << entries_[i][j];
      first = false;
    }
  }
  return os.str();
}

std::uint64_t auto_prime(const IntMatrix& entries) {
  BHMatrix a = BHMatrix::validate(entries, 0);
  const auto d = static_cast<std::uint64_t>(a.abs_det());
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t p = k * d + 1;
    if (p > 2 && is_prime(p)) return p;
  }
}

IntMatrix parse_matrix(const std::string& text) {
  IntMatrix rows;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c)
      fail(ErrorCode::kParse, std::string("matrix text: expected '") + c + "' at offset " + std::to_string(i));
    ++i;
  };
  expect('[');
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
    return rows;
  }
  for (;;) {
    expect('[');
    IntVector row;
    for (;;) {
      skip();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) fail(ErrorCode::kParse, "matrix text: expected an integer at offset " + std::to_string(start));
      row.push_back(std::stoll(text.substr(start, i - start)));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
    rows.push_back(std::move(row));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    expect(']');
    break;
  }
  skip();
  if (i != text.size()) fail(ErrorCode::kParse, "matrix text: trailing characters at offset " + std::to_string(i));
  return rows;
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ",";
      os << m[i][j];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace bhst
