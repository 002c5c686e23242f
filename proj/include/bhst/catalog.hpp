// Built-in matrices. K3 entries carry their singularity data.
#pragma once

#include "bhst/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bhst {

enum class CatalogFamily { kElliptic, kK3, kExample };
const char* catalog_family_name(CatalogFamily f);

struct SingularityRow {
  int type;          // A_{type, type-1}
  int multiplicity;  // number of points of that type
  int contribution;  // (-2)-curves per point, type - 1
};

struct CatalogEntry {
  std::string name;
  CatalogFamily family;
  std::string label;  // elliptic type in roman numerals
  IntMatrix matrix;
  std::uint64_t verification_prime = 0;
  std::vector<SingularityRow> singularities;  // K3 entries only
  std::string note;

  std::int64_t nu_registry() const;
};

const std::vector<CatalogEntry>& catalog_entries();
std::vector<CatalogEntry> catalog_family(CatalogFamily f);
// K3 entry by its diagonal exponents, e.g. {2,3,10,15}.
std::optional<CatalogEntry> find_k3(const std::vector<std::int64_t>& exponents);
std::optional<CatalogEntry> find_by_name(const std::string& name);
// FNV-1a over a canonical rendering of every entry.
std::uint64_t catalog_checksum();
std::uint64_t fnv1a(const std::string& data);

}  // namespace bhst
