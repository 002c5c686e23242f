#include "bhst/catalog.hpp"

#include "bhst/bh_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace bhst {

const char* catalog_family_name(CatalogFamily f) {
  switch (f) {
    case CatalogFamily::kElliptic: return "elliptic";
    case CatalogFamily::kK3: return "k3";
    case CatalogFamily::kExample: return "example";
  }
  return "?";
}

std::int64_t CatalogEntry::nu_registry() const {
  std::int64_t nu = 0;
  for (const auto& s : singularities) nu += static_cast<std::int64_t>(s.multiplicity) * s.contribution;
  return nu;
}

namespace {

IntMatrix diag(std::initializer_list<std::int64_t> d) {
  const std::size_t n = d.size();
  IntMatrix m(n, IntVector(n, 0));
  std::size_t i = 0;
  for (auto x : d) {
    m[i][i] = x;
    ++i;
  }
  return m;
}

CatalogEntry elliptic(const std::string& label, int index, IntMatrix m, std::uint64_t p, std::string note = {}) {
  return {"elliptic-" + label + "-" + std::to_string(index), CatalogFamily::kElliptic, label, std::move(m), p, {},
          std::move(note)};
}

CatalogEntry k3(std::initializer_list<std::int64_t> exps, std::vector<SingularityRow> sing) {
  std::string name = "k3";
  for (auto e : exps) name += "-" + std::to_string(e);
  IntMatrix m = diag(exps);
  const std::uint64_t p = auto_prime(m);
  return {name, CatalogFamily::kK3, "", std::move(m), p, std::move(sing),
          sing.empty() ? "quasi-smooth with no singular points" : ""};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> v;
  // Elliptic curves, G = <J>; the label is the multiset J A^{-1}:
  // I = (1/3,1/3,1/3), II = (1/2,1/4,1/4), III = (1/2,1/3,1/6).
  v.push_back(elliptic("I", 1, diag({3, 3, 3}), 109));
  v.push_back(elliptic("I", 2, {{3, 1, 0}, {0, 2, 0}, {0, 0, 3}}, 109));
  v.push_back(elliptic("I", 3, {{2, 1, 0}, {1, 2, 0}, {0, 0, 3}}, 109,
                       "det 9; often listed under type II as well, but J A^{-1} = (1/3,1/3,1/3)"));
  v.push_back(elliptic("I", 4, {{3, 1, 0}, {0, 2, 1}, {0, 0, 2}}, 109));
  v.push_back(elliptic("I", 5, {{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}, 109));
  v.push_back(elliptic("II", 1, diag({2, 4, 4}), 97));
  v.push_back(elliptic("II", 2, {{2, 1, 0}, {0, 2, 0}, {0, 0, 4}}, 97));
  v.push_back(elliptic("II", 3, {{4, 1, 0}, {0, 3, 0}, {0, 0, 2}}, 97));
  v.push_back(elliptic("II", 4, {{3, 1, 0}, {1, 3, 0}, {0, 0, 2}}, 97));
  v.push_back(elliptic("II", 5, {{2, 1, 0}, {0, 2, 1}, {0, 0, 3}}, 97,
                       "chain x1^2*x2 + x2^2*x3 + x3^3, the type II class completing the enumeration"));
  v.push_back(elliptic("III", 1, diag({2, 3, 6}), 73));
  v.push_back(elliptic("III", 2, {{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, 73));
  v.push_back(elliptic("III", 3, {{3, 1, 0}, {0, 4, 0}, {0, 0, 2}}, 73));

  // Diagonal K3 surfaces with the A_{m,m-1} points of X_A: (m, multiplicity, m-1).
  v.push_back(k3({2, 3, 7, 42}, {{7, 1, 6}, {3, 1, 2}, {2, 1, 1}}));
  v.push_back(k3({2, 3, 10, 15}, {{5, 1, 4}, {3, 2, 2}, {2, 3, 1}}));
  v.push_back(k3({2, 3, 8, 24}, {{4, 1, 3}, {3, 2, 2}}));
  v.push_back(k3({2, 4, 5, 20}, {{5, 2, 4}, {2, 1, 1}}));
  v.push_back(k3({2, 3, 9, 18}, {{3, 1, 2}, {2, 3, 1}}));
  v.push_back(k3({2, 3, 12, 12}, {{2, 1, 1}}));
  v.push_back(k3({2, 4, 6, 12}, {{3, 2, 2}, {2, 2, 1}}));
  v.push_back(k3({3, 3, 4, 12}, {{4, 3, 3}}));
  v.push_back(k3({3, 4, 4, 6}, {{3, 4, 2}, {2, 3, 1}}));
  v.push_back(k3({2, 5, 5, 10}, {{2, 5, 1}}));
  v.push_back(k3({2, 4, 8, 8}, {{2, 2, 1}}));
  v.push_back(k3({3, 3, 6, 6}, {{2, 3, 1}}));
  v.push_back(k3({4, 4, 4, 4}, {}));
  v.push_back(k3({2, 6, 6, 6}, {}));

  v.push_back({"chain-2-3", CatalogFamily::kExample, "", {{2, 1}, {0, 3}}, 7, {}, "x1^2*x2 + x2^3"});
  v.push_back({"loop-2-2-3", CatalogFamily::kExample, "", {{2, 1, 0}, {0, 2, 1}, {1, 0, 3}}, 53, {},
               "G_A cyclic of order 13"});
  v.push_back({"chain-fermat-19", CatalogFamily::kExample, "", {{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, 19, {},
               "ST mod 19 = 9"});
  v.push_back({"chain-fermat-19-transpose", CatalogFamily::kExample, "", {{2, 0, 0}, {1, 3, 0}, {0, 0, 3}}, 19,
               {}, "ST mod 19 = 8"});
  return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<CatalogEntry> catalog_family(CatalogFamily f) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog_entries())
    if (e.family == f) out.push_back(e);
  return out;
}

std::optional<CatalogEntry> find_k3(const std::vector<std::int64_t>& exponents) {
  for (const auto& e : catalog_entries()) {
    if (e.family != CatalogFamily::kK3) continue;
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < e.matrix.size(); ++i) d.push_back(e.matrix[i][i]);
    if (d == exponents) return e;
  }
  return std::nullopt;
}

std::optional<CatalogEntry> find_by_name(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  return std::nullopt;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t catalog_checksum() {
  std::ostringstream os;
  for (const auto& e : catalog_entries()) {
    os << e.name << '|' << catalog_family_name(e.family) << '|' << e.label << '|' << format_matrix(e.matrix) << '|'
       << e.verification_prime;
    for (const auto& s : e.singularities) os << '|' << s.type << ',' << s.multiplicity << ',' << s.contribution;
    os << '\n';
  }
  return fnv1a(os.str());
}

}  // namespace bhst
