#include "bhst/report.hpp"

#include "bhst/error.hpp"

#include <cstdio>

namespace bhst {

const char* const kToolVersion = "1.0.0";

namespace {

Json rational_list(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

RationalVector parse_rational_list(const Json& j) {
  RationalVector out;
  for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

Json element_json(const SectorElement& e) {
  return {{"side", side_name(e.side())}, {"denominator", e.denom()}, {"numerators", e.numerators()},
          {"frac", rational_list(e.frac())}};
}

SectorElement element_from_json(const Json& j) {
  const Side side = j.at("side").get<std::string>() == side_name(Side::kRow) ? Side::kRow : Side::kColumn;
  return SectorElement(side, j.at("denominator").get<std::int64_t>(),
                       j.at("numerators").get<std::vector<std::int64_t>>());
}

SectorGenerator generator_from_json(const Json& j) {
  SectorGenerator g;
  g.gamma = element_from_json(j.at("gamma"));
  g.lambda = element_from_json(j.at("lambda"));
  g.gamma_exponents = j.at("gamma_exponents").get<IntVector>();
  g.lambda_exponents = j.at("lambda_exponents").get<IntVector>();
  for (int i : j.at("theta").get<std::vector<int>>()) g.theta_set.push_back(i - 1);
  g.age = parse_rational(j.at("age").get<std::string>());
  g.age_dual = parse_rational(j.at("age_dual").get<std::string>());
  g.dim = j.at("dim").get<int>();
  g.r = parse_rational(j.at("r").get<std::string>());
  g.s = parse_rational(j.at("s").get<std::string>());
  g.q = j.at("q").get<int>();
  g.q_vee = j.at("q_vee").get<int>();
  return g;
}

Json mpz_json(const mpz_class& x) { return x.get_str(); }
mpz_class mpz_from_json(const Json& j) { return mpz_class(j.get<std::string>()); }

Json atom_json(const Atom& a) {
  std::vector<int> vars;
  for (int v : a.variables) vars.push_back(v + 1);
  return {{"kind", atom_kind_name(a.kind)}, {"variables", vars}, {"exponents", a.exponents}};
}

}  // namespace

Json matrix_info_json(const BHMatrix& a) {
  Json atoms = Json::array();
  for (const auto& at : a.atoms()) atoms.push_back(atom_json(at));
  Json j = {{"matrix", a.entries()},
            {"potential", a.potential_string()},
            {"p", a.p()},
            {"det", a.det()},
            {"weights", rational_list(a.weights())},
            {"scaled_weights", a.scaled_weights()},
            {"weight_scale", a.weight_scale()},
            {"cy_value", to_string(a.cy_value())},
            {"cy_class", cy_class_name(a.cy_check())},
            {"atoms", atoms},
            {"admissibility", a.admissibility() == Admissibility::kStrict ? "strict" : "relaxed"}};
  if (a.p() != 0) j["admissible"] = (a.p() - 1) % static_cast<std::uint64_t>(a.abs_det()) == 0;
  return j;
}

Json generator_json(const SectorGenerator& g) {
  std::vector<int> theta;
  for (int i : g.theta_set) theta.push_back(i + 1);
  return {{"monomial", g.monomial_string()},
          {"gamma", element_json(g.gamma)},
          {"lambda", element_json(g.lambda)},
          {"gamma_exponents", g.gamma_exponents},
          {"lambda_exponents", g.lambda_exponents},
          {"theta", theta},
          {"age", to_string(g.age)},
          {"age_dual", to_string(g.age_dual)},
          {"dim", g.dim},
          {"r", to_string(g.r)},
          {"s", to_string(g.s)},
          {"q", g.q},
          {"q_vee", g.q_vee},
          {"sign", g.sign()},
          {"p_exponent", to_string(g.p_exponent())},
          {"contribution", g.contribution_string()}};
}

Json sectors_json(const StateSpace& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(generator_json(g));
  Json group = Json::array();
  for (const auto& e : s.group().generators()) group.push_back(rational_list(e.frac()));
  return {{"matrix", s.matrix().entries()},
          {"group_order", s.group().order()},
          {"group_generators", group},
          {"transpose_group_order", s.transpose_group().order()},
          {"j_hypothesis", s.j_hypothesis()},
          {"generator_count", s.generators().size()},
          {"generators", gens}};
}

Json hodge_json(const StateSpace& s) {
  Json cells = Json::array();
  std::size_t total = 0;
  for (const auto& [rs, count] : s.hodge_diamond()) {
    cells.push_back({{"r", to_string(rs.first)}, {"s", to_string(rs.second)}, {"count", count}});
    total += static_cast<std::size_t>(count);
  }
  return {{"matrix", s.matrix().entries()}, {"cells", cells}, {"total", total}};
}

Json supertrace_json(const SupertraceResult& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"generator", generator_json(t.generator)},
                     {"sign", t.sign},
                     {"p_exponent", t.p_exponent},
                     {"gamma_args", rational_list(t.gamma_args)},
                     {"value", mpz_json(t.value)}});
  return {{"p", r.p},
          {"precision", r.precision},
          {"residue", mpz_json(r.residue)},
          {"lifted", r.lifted ? Json(mpz_json(*r.lifted)) : Json(nullptr)},
          {"terms", terms}};
}

SupertraceResult supertrace_from_json(const Json& j) {
  SupertraceResult r;
  r.p = j.at("p").get<std::uint64_t>();
  r.precision = j.at("precision").get<int>();
  r.residue = mpz_from_json(j.at("residue"));
  if (!j.at("lifted").is_null()) r.lifted = mpz_from_json(j.at("lifted"));
  for (const auto& t : j.at("terms")) {
    SupertraceTerm term;
    term.generator = generator_from_json(t.at("generator"));
    term.sign = t.at("sign").get<int>();
    term.p_exponent = t.at("p_exponent").get<int>();
    term.gamma_args = parse_rational_list(t.at("gamma_args"));
    term.value = mpz_from_json(t.at("value"));
    r.terms.push_back(std::move(term));
  }
  return r;
}

Json mod_p_json(const ModPSupertrace& r) {
  return {{"p", r.p}, {"gamma_form", r.gamma_form}, {"multinomial_form", r.multinomial_form}};
}

Json count_json(const CountReport& r) {
  return {{"matrix", r.matrix},
          {"p", r.p},
          {"affine", r.affine},
          {"projective", r.projective},
          {"method", count_method_name(r.method)},
          {"nu", r.nu ? Json(*r.nu) : Json(nullptr)},
          {"crepant", r.crepant ? Json(*r.crepant) : Json(nullptr)}};
}

CountReport count_from_json(const Json& j) {
  CountReport r;
  r.matrix = j.at("matrix").get<IntMatrix>();
  r.p = j.at("p").get<std::uint64_t>();
  r.affine = j.at("affine").get<std::uint64_t>();
  r.projective = j.at("projective").get<std::uint64_t>();
  const auto method = j.at("method").get<std::string>();
  bool known = false;
  for (CountMethod m : {CountMethod::kBrute, CountMethod::kDiagonalConvolution, CountMethod::kWeil})
    if (method == count_method_name(m)) {
      r.method = m;
      known = true;
    }
  if (!known) fail(ErrorCode::kParse, "unknown count method " + method);
  if (!j.at("nu").is_null()) r.nu = j.at("nu").get<std::int64_t>();
  if (!j.at("crepant").is_null()) r.crepant = j.at("crepant").get<std::uint64_t>();
  return r;
}

Json verification_json(const VerificationReport& r) {
  return {{"count", count_json(r.count)},
          {"supertrace", supertrace_json(r.supertrace)},
          {"verdict", verdict_name(r.verdict)},
          {"count_seconds", r.count_seconds},
          {"supertrace_seconds", r.supertrace_seconds}};
}

VerificationReport verification_from_json(const Json& j) {
  VerificationReport r;
  r.count = count_from_json(j.at("count"));
  r.supertrace = supertrace_from_json(j.at("supertrace"));
  const auto v = j.at("verdict").get<std::string>();
  bool known = false;
  for (Verdict x : {Verdict::kEqual, Verdict::kCongruentOnly, Verdict::kMismatch})
    if (v == verdict_name(x)) {
      r.verdict = x;
      known = true;
    }
  if (!known) fail(ErrorCode::kParse, "unknown verdict " + v);
  r.count_seconds = j.at("count_seconds").get<double>();
  r.supertrace_seconds = j.at("supertrace_seconds").get<double>();
  return r;
}

Json catalog_entry_json(const CatalogEntry& e) {
  Json sing = Json::array();
  for (const auto& s : e.singularities)
    sing.push_back({{"type", "A_{" + std::to_string(s.type) + "," + std::to_string(s.type - 1) + "}"},
                    {"multiplicity", s.multiplicity},
                    {"curves", s.contribution}});
  Json j = {{"name", e.name},
            {"family", catalog_family_name(e.family)},
            {"matrix", e.matrix},
            {"matrix_text", format_matrix(e.matrix)},
            {"prime", e.verification_prime},
            {"note", e.note}};
  if (!e.label.empty()) j["type"] = e.label;
  if (e.family == CatalogFamily::kK3) {
    j["singularities"] = sing;
    j["nu"] = e.nu_registry();
  }
  return j;
}

Json envelope(const std::string& command, const Json& input, Json result) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(input.dump())));
  return {{"tool", "bhst"}, {"version", kToolVersion}, {"command", command},
          {"input", input}, {"input_hash", hash}, {"result", std::move(result)}};
}

}  // namespace bhst
