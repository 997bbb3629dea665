#include "gkoszul.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bounds.hpp"
#include "division.hpp"
#include "io.hpp"
#include "sections.hpp"
#include "verify.hpp"

using namespace gkoszul;

struct gk_morphism {
  gkoszul::MorphismData data;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** report, const json& doc) {
  if (report) *report = dup_string(doc.dump(2));
}

int emit_error(char** report, const std::string& message) {
  emit(report, json{{"tool", "gkoszul"},
                    {"version", kToolVersion},
                    {"kind", "Error"},
                    {"error", message}});
  return GK_ERROR;
}

json parse_document(const char* text, const char* what) {
  if (!text) throw std::invalid_argument(std::string(what) + " is null");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

template <typename Fn>
int guarded(char** report, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return emit_error(report, e.what());
  } catch (...) {
    return emit_error(report, "unknown internal error");
  }
}

std::uint64_t u64_field(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    long long x = v.get<long long>();
    if (x < 0) throw std::invalid_argument(std::string("\"") + key + "\" must be nonnegative");
    return static_cast<std::uint64_t>(x);
  }
  throw std::invalid_argument(std::string("\"") + key + "\" must be an integer");
}

int int_field_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw std::invalid_argument(std::string("\"") + key + "\" must be an integer");
  return j[key].get<int>();
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(std::string("missing integer field \"") + key + "\"");
  return j[key].get<int>();
}

MorphismData morphism_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string("missing morphism field \"") + key + "\"");
  return morphism_from_json(j[key]);
}

std::vector<Poly> column_field(const json& j, const char* key, int nv, int size) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string("missing column field \"") + key + "\"");
  std::vector<Poly> col = column_from_json(j[key], nv);
  if (size >= 0 && static_cast<int>(col.size()) != size)
    throw std::invalid_argument(std::string("\"") + key + "\" must list " +
                                std::to_string(size) + " polynomial(s)");
  return col;
}

std::optional<int> cap_field(const json& j) {
  if (!j.contains("cap") || j["cap"].is_null()) return std::nullopt;
  const json& c = j["cap"];
  if (c.is_string()) {
    if (c.get<std::string>() == "auto") return std::nullopt;
    throw std::invalid_argument("\"cap\" must be an integer or \"auto\"");
  }
  if (!c.is_number_integer())
    throw std::invalid_argument("\"cap\" must be an integer or \"auto\"");
  return c.get<int>();
}

}  // namespace

extern "C" {

const char* gk_version(void) { return kToolVersion; }

void gk_string_free(char* s) { std::free(s); }

gk_morphism* gk_morphism_parse(const char* json_text, char** error) {
  if (error) *error = nullptr;
  try {
    json j = parse_document(json_text, "morphism document");
    auto* handle = new gk_morphism{morphism_from_json(j)};
    return handle;
  } catch (const std::exception& e) {
    if (error) *error = dup_string(e.what());
    return nullptr;
  }
}

void gk_morphism_free(gk_morphism* f) { delete f; }

int gk_morphism_n(const gk_morphism* f) { return f ? f->data.n : -1; }
int gk_morphism_m(const gk_morphism* f) { return f ? f->data.m : -1; }
int gk_morphism_r(const gk_morphism* f) { return f ? f->data.r : -1; }

int gk_verify(const gk_morphism* f, const char* identity, const char* options_json,
              char** report) {
  return guarded(report, [&]() -> int {
    if (!f) throw std::invalid_argument("morphism handle is null");
    if (!identity) throw std::invalid_argument("identity name is null");
    const MorphismData& m = f->data;
    json opts = options_json ? parse_document(options_json, "options document")
                             : json::object();
    if (!opts.is_object()) throw std::invalid_argument("options must be a JSON object");

    std::uint64_t seed = u64_field(opts, "seed", 0);
    int count = int_field_or(opts, "count", 50);
    int points = int_field_or(opts, "points", 20);

    std::string id = identity;
    json input{{"identity", id}, {"f", morphism_to_json(m)}};

    IdentityCheck check;
    if (id == "cauchy-binet") {
      check = verify_cauchy_binet(m);
    } else if (id == "cramer") {
      check = verify_cramer(m);
    } else if (id == "homotopy") {
      check = verify_homotopy(m);
    } else if (id == "omskriv") {
      std::vector<std::vector<Poly>> phis;
      if (opts.contains("phis")) {
        if (!opts["phis"].is_array())
          throw std::invalid_argument("\"phis\" must be a list of target columns");
        for (const auto& col : opts["phis"]) {
          phis.push_back(column_from_json(col, m.n));
          if (static_cast<int>(phis.back().size()) != m.r)
            throw std::invalid_argument("each target column must list r polynomials");
        }
        input["phis"] = opts["phis"];
      }
      check = verify_omskriv(m, std::move(phis));
    } else if (id == "omv") {
      std::vector<Poly> psi = column_field(opts, "psi", m.n, m.m);
      input["psi"] = opts["psi"];
      check = verify_omv(m, psi);
    } else if (id == "complex-squares") {
      input["seed"] = seed;
      input["count"] = count;
      check = verify_complex_squares(m, seed, count);
    } else if (id == "exactness") {
      input["seed"] = seed;
      input["points"] = points;
      check = verify_exactness(m, seed, points);
    } else {
      throw std::invalid_argument("unknown identity \"" + id + "\"");
    }

    json rep = report_envelope("IdentityCheck", input);
    rep["identity"] = check.identity;
    rep["pass"] = check.pass;
    rep["checks"] = check.checks;
    rep["detail"] = check.detail;
    emit(report, rep);
    return check.pass ? GK_OK : GK_NEGATIVE;
  });
}

int gk_divide(const char* problem_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(problem_json, "problem document");
    DivisionProblem prob;
    prob.P = morphism_field(j, "P");
    prob.phi = column_field(j, "phi", prob.P.n, prob.P.r);
    prob.cap = cap_field(j);
    DivisionOutcome out = solve_division(prob);
    emit(report, division_report(prob, out));
    return out.feasible ? GK_OK : GK_NEGATIVE;
  });
}

int gk_noether(const char* problem_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(problem_json, "problem document");
    MorphismData P = morphism_field(j, "P");
    std::vector<Poly> phi = column_field(j, "phi", P.n, P.r);
    DivisionOutcome out = noether_solve(P, phi);
    DivisionProblem echo{P, phi, out.cap};
    json rep = division_report(echo, out);
    rep["mode"] = "noether";
    emit(report, rep);
    return out.feasible ? GK_OK : GK_NEGATIVE;
  });
}

int gk_nullstellensatz(const char* problem_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(problem_json, "problem document");
    MorphismData P = morphism_field(j, "P");
    NullstellensatzOutcome out = nullstellensatz_solve(P, cap_field(j));
    emit(report, nullstellensatz_report(P, out));
    return out.feasible ? GK_OK : GK_NEGATIVE;
  });
}

int gk_bounds(const char* query_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(query_json, "query document");
    int n = require_int(j, "n");
    int r = require_int(j, "r");
    if (!j.contains("degrees") || !j["degrees"].is_array())
      throw std::invalid_argument("missing \"degrees\" array");
    std::vector<int> degrees;
    for (const auto& d : j["degrees"]) {
      if (!d.is_number_integer() || d.get<int>() < 0)
        throw std::invalid_argument("degrees must be nonnegative integers");
      degrees.push_back(d.get<int>());
    }

    json input{{"n", n}, {"r", r}, {"degrees", degrees}};
    if (j.contains("m")) input["m"] = require_int(j, "m");
    if (j.contains("rho")) input["rho"] = require_int(j, "rho");
    if (j.contains("d")) input["d"] = require_int(j, "d");
    json rep = report_envelope("DegreeBounds", input);

    MacaulayBound mb = macaulay_bound(n, r, degrees);
    rep["macaulay"] = json{{"value", mb.value},
                           {"clamped", mb.clamped},
                           {"usedDegrees", mb.used_degrees},
                           {"padded", mb.padded}};

    if (j.contains("m") && j.contains("rho")) {
      VillkorResult vc = villkor_check(n, r, require_int(j, "m"), degrees, require_int(j, "rho"));
      rep["solvabilityCondition"] =
          json{{"satisfied", vc.satisfied}, {"clause", vc.clause}, {"reason", vc.reason}};
    }

    if (j.contains("d")) {
      int m = require_int(j, "m");  // the exponent bound needs the column count
      KollarExponent ke = kollar_exponent(n, m, r, require_int(j, "d"));
      rep["exponentBound"] = json{{"M", ke.M.get_str()},
                                  {"degreeBound", ke.degree_bound.get_str()}};
    }

    emit(report, rep);
    return GK_OK;
  });
}

int gk_sample(const char* request_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(request_json, "request document");
    if (!j.contains("quantity") || !j["quantity"].is_string())
      throw std::invalid_argument("missing \"quantity\"");
    std::string quantity = j["quantity"].get<std::string>();
    std::uint64_t seed = u64_field(j, "seed", 0);
    int count = int_field_or(j, "count", 1000);

    SampleReport rep;
    json input;
    if (quantity == "lojasiewicz-ratio") {
      MorphismData P = morphism_field(j, "P");
      int M = int_field_or(j, "M", 0);
      input = json{{"quantity", quantity}, {"P", morphism_to_json(P)},
                   {"M", M},               {"seed", seed},
                   {"count", count}};
      rep = lojasiewicz_sample(P, M, seed, count);
    } else if (quantity == "briancon-skoda-ratio") {
      MorphismData F = morphism_field(j, "f");
      std::vector<Poly> phi = column_field(j, "phi", F.n, F.r);
      int mu = int_field_or(j, "mu", -1);
      input = json{{"quantity", quantity}, {"f", morphism_to_json(F)},
                   {"phi", column_to_json(phi)},
                   {"mu", mu},             {"seed", seed},
                   {"count", count}};
      rep = briancon_skoda_ratio(F, phi, mu, seed, count);
    } else {
      throw std::invalid_argument("unknown quantity \"" + quantity + "\"");
    }

    emit(report, sample_report_to_json(input, rep));
    return rep.stable ? GK_OK : GK_NEGATIVE;
  });
}

int gk_probe(const char* request_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(request_json, "request document");
    MorphismData f = morphism_field(j, "f");
    std::uint64_t seed = u64_field(j, "seed", 0);
    int trials = int_field_or(j, "trials", 8);
    CodimProbe probe = codim_probe(f, seed, trials);
    emit(report, codim_report(f, seed, trials, probe));
    return GK_OK;
  });
}

int gk_fuhrmann(const char* request_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(request_json, "request document");
    MorphismData f = morphism_field(j, "f");
    std::vector<Poly> phi = column_field(j, "phi", f.n, f.r);
    if (!j.contains("H") || !j["H"].is_array() ||
        static_cast<int>(j["H"].size()) != f.r)
      throw std::invalid_argument("\"H\" must list one row solution per row of f");

    std::vector<std::map<std::uint32_t, Poly>> H(f.r);
    for (int row = 0; row < f.r; ++row) {
      const json& terms = j["H"][row];
      if (!terms.is_array())
        throw std::invalid_argument("each row solution must be a list of terms");
      for (const auto& term : terms) {
        if (!term.is_object() || !term.contains("ext") || !term.contains("coeff"))
          throw std::invalid_argument("row-solution terms need \"ext\" and \"coeff\"");
        if (!term["ext"].is_array() || static_cast<int>(term["ext"].size()) != f.r)
          throw std::invalid_argument("\"ext\" must list r column indices");
        std::uint32_t mask = 0;
        for (const auto& idx : term["ext"]) {
          if (!idx.is_number_integer() || idx.get<int>() < 1 || idx.get<int>() > f.m)
            throw std::invalid_argument("\"ext\" index out of range");
          std::uint32_t bit = 1u << (idx.get<int>() - 1);
          if (mask & bit) throw std::invalid_argument("\"ext\" lists a repeated index");
          mask |= bit;
        }
        Poly c = poly_from_json(term["coeff"], f.n);
        auto [it, fresh] = H[row].emplace(mask, c);
        if (!fresh) it->second += c;
      }
    }

    FuhrmannResult res = fuhrmann_lift(f, H, phi);
    json input{{"f", morphism_to_json(f)}, {"phi", column_to_json(phi)}, {"H", j["H"]}};
    emit(report, fuhrmann_report(input, res));
    return res.verified ? GK_OK : GK_ERROR;
  });
}

int gk_revalidate(const char* report_json, char** report) {
  return guarded(report, [&]() -> int {
    json j = parse_document(report_json, "report document");
    std::string reason;
    bool ok = revalidate_certificate(j, &reason);
    json rep{{"tool", "gkoszul"},
             {"version", kToolVersion},
             {"kind", "Revalidation"},
             {"valid", ok}};
    if (!ok) rep["reason"] = reason;
    if (j.contains("kind")) rep["checkedKind"] = j["kind"];
    if (j.contains("inputHash")) rep["checkedInputHash"] = j["inputHash"];
    emit(report, rep);
    return ok ? GK_OK : GK_NEGATIVE;
  });
}

}  // extern "C"
