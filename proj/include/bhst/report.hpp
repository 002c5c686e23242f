// JSON rendering of every report type.
#pragma once

#include "bhst/catalog.hpp"
#include "bhst/point_count.hpp"

#include <json.hpp>

namespace bhst {

using Json = nlohmann::json;

extern const char* const kToolVersion;

Json matrix_info_json(const BHMatrix& a);
Json generator_json(const SectorGenerator& g);
Json sectors_json(const StateSpace& s);
Json hodge_json(const StateSpace& s);
Json supertrace_json(const SupertraceResult& r);
Json mod_p_json(const ModPSupertrace& r);
Json count_json(const CountReport& r);
Json verification_json(const VerificationReport& r);
Json catalog_entry_json(const CatalogEntry& e);

// Inverse conversions used by the round-trip property.
CountReport count_from_json(const Json& j);
SupertraceResult supertrace_from_json(const Json& j);
VerificationReport verification_from_json(const Json& j);

// Adds tool version and an FNV-1a hash of the canonical input.
Json envelope(const std::string& command, const Json& input, Json result);

}  // namespace bhst
