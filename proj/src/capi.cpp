#include "bhst/bhst.h"

#include "bhst/error.hpp"
#include "bhst/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

struct bhst_matrix {
  bhst::BHMatrix a;
};

struct bhst_group {
  bhst::Subgroup g;
  bhst::Json description;
};

namespace {

thread_local std::string g_last_error;

bhst_status set_error(bhst_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
bhst_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BHST_OK;
  } catch (const bhst::Error& e) {
    return set_error(static_cast<bhst_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(BHST_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BHST_E_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BHST_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(BHST_E_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* ptr, const char* what) {
  if (!ptr) bhst::fail(bhst::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

void emit(char** out, const std::string& command, const bhst::Json& input, bhst::Json result) {
  *out = dup_string(bhst::envelope(command, input, std::move(result)).dump());
}

bhst::Json matrix_input(const bhst_matrix* m) { return {{"matrix", m->a.entries()}, {"p", m->a.p()}}; }

bhst::Json group_input(const bhst_matrix* m, const bhst_group* g) {
  bhst::Json j = matrix_input(m);
  j["group"] = g->description;
  return j;
}

bhst::IntMatrix read_square(const int64_t* entries, size_t n) {
  need(entries, "entries");
  if (n == 0) bhst::fail(bhst::ErrorCode::kInvalidArgument, "matrix dimension must be positive");
  bhst::IntMatrix m(n, bhst::IntVector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = entries[i * n + j];
  return m;
}

bhst::BHMatrix build_matrix(const bhst::IntMatrix& entries, uint64_t p) {
  // Structural errors are reported before any prime check.
  bhst::BHMatrix::validate(entries, 0);
  if (p == 0) p = bhst::auto_prime(entries);
  return bhst::BHMatrix::validate(entries, p);
}

void need_pair(const bhst_matrix* m, const bhst_group* g) {
  need(m, "matrix");
  need(g, "group");
}

}  // namespace

extern "C" {

const char* bhst_version(void) { return bhst::kToolVersion; }

const char* bhst_last_error(void) { return g_last_error.c_str(); }

const char* bhst_status_name(bhst_status status) {
  if (status == BHST_OK) return "ok";
  if (status < BHST_E_INVALID_ARGUMENT || status > BHST_E_PARSE) return "unknown";
  return bhst::error_code_name(static_cast<bhst::ErrorCode>(static_cast<int>(status)));
}

void bhst_string_free(char* s) { std::free(s); }

bhst_status bhst_matrix_create(const int64_t* entries, size_t n, uint64_t p, bhst_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new bhst_matrix{build_matrix(read_square(entries, n), p)};
  });
}

bhst_status bhst_matrix_parse(const char* text, uint64_t p, bhst_matrix** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    *out = new bhst_matrix{build_matrix(bhst::parse_matrix(text), p)};
  });
}

void bhst_matrix_free(bhst_matrix* m) { delete m; }

uint64_t bhst_matrix_prime(const bhst_matrix* m) { return m ? m->a.p() : 0; }

size_t bhst_matrix_dim(const bhst_matrix* m) { return m ? static_cast<size_t>(m->a.n()) : 0; }

bhst_status bhst_auto_prime(const int64_t* entries, size_t n, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = bhst::auto_prime(read_square(entries, n));
  });
}

bhst_status bhst_group_create(const bhst_matrix* m, bhst_group_kind kind, const int64_t* generators,
                              size_t count, bhst_group** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = nullptr;
    const auto& a = m->a;
    switch (kind) {
      case BHST_GROUP_J:
        *out = new bhst_group{bhst::j_subgroup(a), "J"};
        return;
      case BHST_GROUP_ALL:
        *out = new bhst_group{bhst::group_of(a, bhst::Side::kRow), "all"};
        return;
      case BHST_GROUP_GENERATORS: {
        if (count > 0) need(generators, "generators");
        std::vector<bhst::IntVector> lifts;
        for (size_t k = 0; k < count; ++k)
          lifts.emplace_back(generators + k * a.n(), generators + (k + 1) * a.n());
        *out = new bhst_group{bhst::subgroup(a, bhst::Side::kRow, lifts), lifts};
        return;
      }
    }
    bhst::fail(bhst::ErrorCode::kInvalidArgument, "unknown group kind");
  });
}

void bhst_group_free(bhst_group* g) { delete g; }

size_t bhst_group_order(const bhst_group* g) { return g ? g->g.order() : 0; }

bhst_status bhst_validate_json(const bhst_matrix* m, char** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    emit(out, "validate", matrix_input(m), bhst::matrix_info_json(m->a));
  });
}

bhst_status bhst_sectors_json(const bhst_matrix* m, const bhst_group* g, char** out) {
  return guarded([&] {
    need_pair(m, g);
    need(out, "out");
    const bhst::StateSpace space(m->a, g->g);
    emit(out, "sectors", group_input(m, g), bhst::sectors_json(space));
  });
}

bhst_status bhst_hodge_json(const bhst_matrix* m, const bhst_group* g, char** out) {
  return guarded([&] {
    need_pair(m, g);
    need(out, "out");
    const bhst::StateSpace space(m->a, g->g);
    emit(out, "hodge", group_input(m, g), bhst::hodge_json(space));
  });
}

bhst_status bhst_supertrace_json(const bhst_matrix* m, const bhst_group* g, int precision, char** out) {
  return guarded([&] {
    need_pair(m, g);
    need(out, "out");
    const bhst::StateSpace space(m->a, g->g);
    if (precision < 0) bhst::fail(bhst::ErrorCode::kInvalidArgument, "precision must be non-negative");
    const int n = precision > 0 ? precision : bhst::default_precision(m->a, space.generators().size());
    auto input = group_input(m, g);
    input["precision"] = precision;
    emit(out, "st", input, bhst::supertrace_json(bhst::supertrace_padic(space, n)));
  });
}

bhst_status bhst_supertrace_mod_p_json(const bhst_matrix* m, char** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    emit(out, "st-mod-p", matrix_input(m), bhst::mod_p_json(bhst::supertrace_mod_p(m->a)));
  });
}

bhst_status bhst_count_json(const bhst_matrix* m, const bhst_group* g, char** out) {
  return guarded([&] {
    need_pair(m, g);
    need(out, "out");
    const auto& a = m->a;
    bhst::CountReport r;
    const bool crepant = g->g.elements() == bhst::j_subgroup(a).elements() &&
                         (a.n() == 3 || (a.n() == 4 && a.is_diagonal()));
    if (crepant) {
      r = bhst::crepant_count(a, g->g);
    } else {
      r.matrix = a.entries();
      r.p = a.p();
      if (a.is_diagonal()) {
        r.affine = bhst::affine_count_diagonal(a);
        r.method = bhst::CountMethod::kDiagonalConvolution;
      } else {
        r.affine = bhst::affine_count_brute(a);
        r.method = bhst::CountMethod::kBrute;
      }
      r.projective = bhst::projective_count(r.affine, a.p());
    }
    emit(out, "count", group_input(m, g), bhst::count_json(r));
  });
}

bhst_status bhst_verify_json(const bhst_matrix* m, const bhst_group* g, int precision, char** out,
                             bhst_verdict* verdict) {
  return guarded([&] {
    need_pair(m, g);
    need(out, "out");
    if (precision < 0) bhst::fail(bhst::ErrorCode::kInvalidArgument, "precision must be non-negative");
    const bhst::StateSpace space(m->a, g->g);
    const auto r = bhst::verify_conjecture(space, precision);
    if (verdict) *verdict = static_cast<bhst_verdict>(static_cast<int>(r.verdict));
    auto input = group_input(m, g);
    input["precision"] = precision;
    emit(out, "verify", input, bhst::verification_json(r));
  });
}

bhst_status bhst_gamma_json(uint64_t p, const char* arg, int precision, char** out) {
  return guarded([&] {
    need(arg, "arg");
    need(out, "out");
    if (precision <= 0) precision = 8;
    const auto ring = bhst::ZpRing::make(p, precision);
    const bhst::Rational x = bhst::parse_rational(arg);
    const auto value = bhst::gamma_at(x, ring);
    bhst::Json input = {{"p", p}, {"arg", arg}, {"precision", precision}};
    emit(out, "gamma", input,
         {{"p", p},
          {"precision", precision},
          {"arg", bhst::to_string(x)},
          {"integer_argument", bhst::gamma_argument_integer(x, *ring).get_str()},
          {"value", value.residue().get_str()},
          {"mod_p", mpz_class(value.residue() % ring->prime_z()).get_str()}});
  });
}

bhst_status bhst_gauss_json(uint64_t p, int64_t t, int precision, char** out) {
  return guarded([&] {
    need(out, "out");
    if (precision <= 0) precision = 6;
    const auto g = bhst::gauss_sum(t, p, precision);
    bhst::Json input = {{"p", p}, {"t", t}, {"precision", precision}};
    bhst::Json result = {{"p", p}, {"t", t}, {"precision", precision}, {"value", g.to_string()}};
    result["pi_valuation"] = g.is_zero() ? bhst::Json(nullptr) : bhst::Json(g.pi_valuation());
    emit(out, "gauss", input, result);
  });
}

bhst_status bhst_catalog_json(const char* family, char** out) {
  return guarded([&] {
    need(out, "out");
    const std::string f = family ? family : "all";
    bhst::Json list = bhst::Json::array();
    for (const auto& e : bhst::catalog_entries()) {
      const bool keep = f == "all" || (f == "elliptic" && e.family == bhst::CatalogFamily::kElliptic) ||
                        (f == "k3" && e.family == bhst::CatalogFamily::kK3) ||
                        (f == "examples" && e.family == bhst::CatalogFamily::kExample);
      if (keep) list.push_back(bhst::catalog_entry_json(e));
    }
    if (f != "all" && f != "elliptic" && f != "k3" && f != "examples")
      bhst::fail(bhst::ErrorCode::kInvalidArgument, "unknown catalog family " + f);
    char sum[17];
    std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(bhst::catalog_checksum()));
    emit(out, "catalog", {{"family", f}}, {{"entries", list}, {"checksum", sum}});
  });
}

bhst_status bhst_catalog_lookup(const char* key, char** matrix_text, uint64_t* prime) {
  return guarded([&] {
    need(key, "key");
    need(matrix_text, "matrix_text");
    need(prime, "prime");
    std::optional<bhst::CatalogEntry> e = bhst::find_by_name(key);
    if (!e) {
      std::vector<std::int64_t> exps;
      std::stringstream ss(key);
      std::string tok;
      try {
        while (std::getline(ss, tok, ',')) exps.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        exps.clear();
      }
      if (!exps.empty()) e = bhst::find_k3(exps);
    }
    if (!e) bhst::fail(bhst::ErrorCode::kInvalidArgument, std::string("no catalog entry ") + key);
    *matrix_text = dup_string(bhst::format_matrix(e->matrix));
    *prime = e->verification_prime;
  });
}

}  // extern "C"
