// Command-line front end. Talks to the library only through the C interface.
#include <bhst/bhst.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(bhst_status s, const std::string& what)
      : std::runtime_error(std::string(bhst_status_name(s)) + ": " + what), status(s) {}
  bhst_status status;
};

void check(bhst_status s, const char* context) {
  if (s != BHST_OK) throw ApiError(s, std::string(context) + ": " + bhst_last_error());
}

struct MatrixDeleter {
  void operator()(bhst_matrix* m) const { bhst_matrix_free(m); }
};
struct GroupDeleter {
  void operator()(bhst_group* g) const { bhst_group_free(g); }
};
using MatrixPtr = std::unique_ptr<bhst_matrix, MatrixDeleter>;
using GroupPtr = std::unique_ptr<bhst_group, GroupDeleter>;

Json take_json(char* raw) {
  std::string text(raw);
  bhst_string_free(raw);
  return Json::parse(text);
}

// Flag values, optionally seeded from a JSON job.
struct Options {
  std::string job;
  std::string matrix;
  std::string prime;
  std::string group = "J";
  std::string precision = "auto";
  std::string format = "json";
  std::string catalog;
  std::string potential;
  std::string name;
  int index = 0;
  bool mod_p = false;
  std::string arg;
  std::int64_t t = 0;
  std::string family = "all";
};

std::string json_scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void apply_job(Options& o, CLI::App& sub) {
  if (o.job.empty()) return;
  std::string text;
  if (o.job == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(o.job);
    if (!in) throw UsageError("cannot open job file " + o.job);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("job: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("job: top level must be an object");
  auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
  auto field = [&](const char* key) -> const Json* { return j.contains(key) ? &j.at(key) : nullptr; };
  if (const Json* m = field("matrix"); m && unset("--matrix")) {
    if (!m->is_array()) throw UsageError("job.matrix: expected an array of integer rows");
    o.matrix = m->dump();
  }
  if (const Json* p = field("p"); p && unset("--p")) {
    if (!p->is_number_unsigned() && !p->is_string()) throw UsageError("job.p: expected a prime or \"auto\"");
    o.prime = json_scalar_text(*p);
  }
  if (const Json* g = field("group"); g && unset("--group")) {
    if (!g->is_string() && !g->is_array()) throw UsageError("job.group: expected \"J\", \"all\" or generators");
    o.group = json_scalar_text(*g);
  }
  if (const Json* n = field("precision"); n && unset("--precision")) {
    if (!n->is_number_integer() && !n->is_string()) throw UsageError("job.precision: expected an integer or \"auto\"");
    o.precision = json_scalar_text(*n);
  }
  if (const Json* v = field("mod_p"); v && unset("--mod-p")) {
    if (!v->is_boolean()) throw UsageError("job.mod_p: expected a boolean");
    o.mod_p = v->get<bool>();
  }
  if (const Json* v = field("arg"); v && unset("--arg")) o.arg = json_scalar_text(*v);
  if (const Json* v = field("t"); v && unset("--t")) {
    if (!v->is_number_integer()) throw UsageError("job.t: expected an integer");
    o.t = v->get<std::int64_t>();
  }
  if (const Json* v = field("catalog"); v && unset("--catalog")) o.catalog = json_scalar_text(*v);
  if (const Json* v = field("potential"); v && unset("--potential")) o.potential = json_scalar_text(*v);
  if (const Json* v = field("name"); v && unset("--name")) o.name = json_scalar_text(*v);
  if (const Json* v = field("index"); v && unset("--index")) {
    if (!v->is_number_integer()) throw UsageError("job.index: expected an integer");
    o.index = v->get<int>();
  }
}

std::optional<std::uint64_t> parse_prime(const std::string& text) {
  if (text.empty() || text == "auto" || text == "auto-smallest-admissible") return std::nullopt;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v == 0) throw UsageError("--p: expected a prime or \"auto\", got \"" + text + "\"");
  return v;
}

int parse_precision(const std::string& text) {
  if (text.empty() || text == "auto") return 0;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v <= 0)
    throw UsageError("--precision: expected a positive integer or \"auto\", got \"" + text + "\"");
  return v;
}

struct Resolved {
  std::string matrix_text;
  std::uint64_t p = 0;  // 0 = smallest admissible
};

Resolved resolve_matrix(const Options& o) {
  Resolved r;
  const auto explicit_prime = parse_prime(o.prime);
  std::optional<std::uint64_t> catalog_prime;
  if (!o.matrix.empty()) {
    r.matrix_text = o.matrix;
  } else if (!o.catalog.empty() || !o.potential.empty() || !o.name.empty()) {
    std::string key = !o.name.empty() ? o.name : o.potential;
    if (key.empty()) {
      if (o.index <= 0) throw UsageError("--catalog needs --potential, --name or --index");
      char* raw = nullptr;
      check(bhst_catalog_json(o.catalog.c_str(), &raw), "catalog");
      const Json entries = take_json(raw).at("result").at("entries");
      if (static_cast<std::size_t>(o.index) > entries.size())
        throw UsageError("--index: catalog " + o.catalog + " has " + std::to_string(entries.size()) + " entries");
      key = entries.at(o.index - 1).at("name").get<std::string>();
    }
    char* text = nullptr;
    std::uint64_t prime = 0;
    check(bhst_catalog_lookup(key.c_str(), &text, &prime), "catalog lookup");
    r.matrix_text = text;
    bhst_string_free(text);
    catalog_prime = prime;
  } else {
    throw UsageError("no matrix: pass --matrix, a catalog selector or --job");
  }
  if (explicit_prime) r.p = *explicit_prime;
  else if (o.prime.empty() && catalog_prime) r.p = *catalog_prime;
  return r;
}

MatrixPtr make_matrix(const Options& o) {
  const Resolved r = resolve_matrix(o);
  bhst_matrix* m = nullptr;
  check(bhst_matrix_parse(r.matrix_text.c_str(), r.p, &m), "matrix");
  return MatrixPtr(m);
}

GroupPtr make_group(const bhst_matrix* m, const std::string& spec) {
  bhst_group* g = nullptr;
  if (spec == "J" || spec == "j") {
    check(bhst_group_create(m, BHST_GROUP_J, nullptr, 0, &g), "group");
  } else if (spec == "all") {
    check(bhst_group_create(m, BHST_GROUP_ALL, nullptr, 0, &g), "group");
  } else {
    Json gens;
    try {
      gens = Json::parse(spec);
    } catch (const Json::parse_error&) {
      throw UsageError("--group: expected J, all or [[...],...], got \"" + spec + "\"");
    }
    const std::size_t n = bhst_matrix_dim(m);
    std::vector<std::int64_t> flat;
    for (const auto& row : gens) {
      if (!row.is_array() || row.size() != n)
        throw UsageError("--group: every generator needs " + std::to_string(n) + " integers");
      for (const auto& x : row) flat.push_back(x.get<std::int64_t>());
    }
    check(bhst_group_create(m, BHST_GROUP_GENERATORS, flat.data(), gens.size(), &g), "group");
  }
  return GroupPtr(g);
}

// ---- output ---------------------------------------------------------------

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) flatten(v, key, out);
    else out.emplace_back(key, cell(v));
  }
}

bool is_record_list(const Json& v) { return v.is_array() && !v.empty() && v.front().is_object(); }

// Scalars of the result as key/value pairs; the first list of records as rows.
void split(const Json& result, std::vector<std::pair<std::string, std::string>>& scalars, Json& records) {
  for (const auto& [k, v] : result.items()) {
    if (is_record_list(v) && records.is_null()) {
      records = v;
    } else if (v.is_object()) {
      Json inner = Json::object();
      for (const auto& [k2, v2] : v.items()) {
        if (is_record_list(v2) && records.is_null()) records = v2;
        else inner[k2] = v2;
      }
      flatten(inner, k, scalars);
    } else if (!is_record_list(v)) {
      scalars.emplace_back(k, cell(v));
    }
  }
}

std::vector<std::pair<std::string, std::string>> record_row(const Json& rec) {
  std::vector<std::pair<std::string, std::string>> row;
  flatten(rec, "", row);
  return row;
}

void print_table(const Json& env, std::ostream& os) {
  std::vector<std::pair<std::string, std::string>> scalars;
  Json records;
  split(env.at("result"), scalars, records);
  std::size_t w = 0;
  for (const auto& [k, v] : scalars) w = std::max(w, k.size());
  for (const auto& [k, v] : scalars) os << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  if (records.is_null()) return;
  // Keep the columns a human wants: short ones.
  std::vector<std::string> cols;
  for (const auto& [k, v] : record_row(records.front()))
    if (k.find('.') == std::string::npos && v.size() <= 60) cols.push_back(k);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> widths;
  for (const auto& c : cols) widths.push_back(c.size());
  for (const auto& rec : records) {
    std::vector<std::string> r;
    const auto flat = record_row(rec);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string v;
      for (const auto& [k, x] : flat)
        if (k == cols[i]) v = x;
      widths[i] = std::max(widths[i], v.size());
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  os << '\n';
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << r[i] << std::string(widths[i] - r[i].size() + 2, ' ');
    os << '\n';
  };
  line(cols);
  for (const auto& r : rows) line(r);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void print_csv(const Json& env, std::ostream& os) {
  std::vector<std::pair<std::string, std::string>> scalars;
  Json records;
  split(env.at("result"), scalars, records);
  if (records.is_null()) {
    os << "key,value\n";
    for (const auto& [k, v] : scalars) os << csv_field(k) << ',' << csv_field(v) << '\n';
    return;
  }
  const auto head = record_row(records.front());
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << csv_field(head[i].first);
  os << '\n';
  for (const auto& rec : records) {
    const auto row = record_row(rec);
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i].second);
    os << '\n';
  }
}

void emit(const Json& env, const std::string& format) {
  if (format == "table") print_table(env, std::cout);
  else if (format == "csv") print_csv(env, std::cout);
  else std::cout << env.dump(2) << '\n';
}

// ---- commands -------------------------------------------------------------

int run_command(const std::string& cmd, const Options& o) {
  char* raw = nullptr;
  if (cmd == "gamma") {
    if (o.arg.empty()) throw UsageError("gamma needs --arg c/d");
    const auto p = parse_prime(o.prime);
    if (!p) throw UsageError("gamma needs an explicit --p");
    check(bhst_gamma_json(*p, o.arg.c_str(), parse_precision(o.precision), &raw), "gamma");
  } else if (cmd == "gauss") {
    const auto p = parse_prime(o.prime);
    if (!p) throw UsageError("gauss needs an explicit --p");
    check(bhst_gauss_json(*p, o.t, parse_precision(o.precision), &raw), "gauss");
  } else if (cmd == "catalog") {
    check(bhst_catalog_json(o.family.c_str(), &raw), "catalog");
  } else {
    const MatrixPtr m = make_matrix(o);
    if (cmd == "validate") {
      check(bhst_validate_json(m.get(), &raw), "validate");
    } else if (cmd == "st" && o.mod_p) {
      if (o.group != "J" && o.group != "j") throw UsageError("--mod-p is defined for --group J only");
      check(bhst_supertrace_mod_p_json(m.get(), &raw), "st");
    } else {
      const GroupPtr g = make_group(m.get(), o.group);
      const int n = parse_precision(o.precision);
      if (cmd == "sectors") check(bhst_sectors_json(m.get(), g.get(), &raw), "sectors");
      else if (cmd == "hodge") check(bhst_hodge_json(m.get(), g.get(), &raw), "hodge");
      else if (cmd == "st") check(bhst_supertrace_json(m.get(), g.get(), n, &raw), "st");
      else if (cmd == "count") check(bhst_count_json(m.get(), g.get(), &raw), "count");
      else if (cmd == "verify") {
        bhst_verdict verdict = BHST_VERDICT_MISMATCH;
        check(bhst_verify_json(m.get(), g.get(), n, &raw, &verdict), "verify");
        emit(take_json(raw), o.format);
        return verdict == BHST_VERDICT_EQUAL ? kExitOk : kExitMismatch;
      }
    }
  }
  emit(take_json(raw), o.format);
  return kExitOk;
}

void add_matrix_options(CLI::App* sub, Options& o) {
  sub->add_option("--matrix", o.matrix, "Matrix as [[a,b],[c,d]]");
  sub->add_option("--p,--prime", o.prime, "Prime, or auto for the smallest admissible one");
  sub->add_option("--group", o.group, "J, all, or generator exponent vectors [[...],...]")->capture_default_str();
  sub->add_option("--precision", o.precision, "p-adic precision N, or auto")->capture_default_str();
  sub->add_option("--catalog", o.catalog, "Catalog family: elliptic, k3 or examples");
  sub->add_option("--potential", o.potential, "Diagonal K3 exponents, e.g. 2,3,10,15");
  sub->add_option("--name", o.name, "Catalog entry name");
  sub->add_option("--index", o.index, "1-based position inside --catalog");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berglund-Huebsch p-adic supertraces and point counts"};
  app.set_version_flag("--version", std::string(bhst_version()));
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
    bool matrix;
  };
  const Spec specs[] = {{"validate", "Check a matrix and print its invariants", true},
                        {"sectors", "List the generators of the state space", true},
                        {"hodge", "Hodge numbers by bidegree", true},
                        {"st", "p-adic supertrace", true},
                        {"count", "Point count over F_p", true},
                        {"verify", "Compare the supertrace with the point count", true},
                        {"gamma", "Morita p-adic gamma function at a rational", false},
                        {"gauss", "Gauss sum G_t as a Dwork-series element", false},
                        {"catalog", "List built-in matrices", false}};
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--format", o.format, "json, table or csv")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
    sub->add_option("--job", o.job, "JSON job file, or - for stdin");
    if (s.matrix) add_matrix_options(sub, o);
    const std::string name = s.name;
    if (name == "st") sub->add_flag("--mod-p", o.mod_p, "Closed mod-p form for G = <J>");
    if (name == "gamma" || name == "gauss") {
      sub->add_option("--p,--prime", o.prime, "Prime")->required();
      sub->add_option("--precision", o.precision, "p-adic precision N");
    }
    if (name == "gamma") sub->add_option("--arg", o.arg, "Argument c/d with d | p-1");
    if (name == "gauss") sub->add_option("--t", o.t, "Index t");
    if (name == "catalog") {
      sub->add_option("family", o.family, "elliptic, k3, examples or all")
          ->check(CLI::IsMember({"elliptic", "k3", "examples", "all"}))
          ->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    apply_job(o, *sub);
    return run_command(sub->get_name(), o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
