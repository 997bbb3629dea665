#include "io.hpp"

#include <sstream>
#include <stdexcept>

namespace gkoszul {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("malformed document: " + what);
}

mpz_class mpz_from_json(const json& j, const std::string& what) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_integer()) {
    s = std::to_string(j.get<long long>());
  } else {
    require(false, what + " must be a decimal string or integer");
  }
  require(!s.empty(), what + " is empty");
  try {
    return mpz_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed document: " + what + " is not a decimal integer");
  }
}

mpq_class mpq_from_parts(const json& num, const json& den, const std::string& what) {
  mpz_class n = mpz_from_json(num, what + " numerator");
  mpz_class d = mpz_from_json(den, what + " denominator");
  require(d != 0, what + " has zero denominator");
  mpq_class q(n);
  q /= mpq_class(d);
  return q;
}

std::vector<int> exponents_from_json(const json& j, int nv, const std::string& what) {
  require(j.is_array(), what + " must be an exponent array");
  require(static_cast<int>(j.size()) == nv, what + " must list one exponent per variable");
  std::vector<int> e;
  for (const auto& v : j) {
    require(v.is_number_integer(), what + " exponents must be integers");
    long long x = v.get<long long>();
    require(x >= 0 && x <= 0xffff, what + " exponent out of range");
    e.push_back(static_cast<int>(x));
  }
  return e;
}

std::vector<int> index_list_from_json(const json& j, int limit, const std::string& what) {
  require(j.is_array(), what + " must be an index list");
  std::vector<int> out;
  for (const auto& v : j) {
    require(v.is_number_integer(), what + " indices must be integers");
    long long x = v.get<long long>();
    require(x >= 1 && x <= limit, what + " index out of range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

json mask_to_index_list(std::uint32_t mask) {
  json out = json::array();
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

std::uint32_t mask_from_index_list(const json& j, int limit, const std::string& what) {
  std::uint32_t mask = 0;
  for (int idx : index_list_from_json(j, limit, what)) {
    std::uint32_t bit = 1u << (idx - 1);
    require(!(mask & bit), what + " lists a repeated index");
    mask |= bit;
  }
  return mask;
}

std::string qslot_to_string(const BasisWord& w) {
  std::string s;
  if (w.qout) s = "eps" + std::to_string(w.qout);
  if (w.qin) {
    if (!s.empty()) s += " ";
    s += "eps" + std::to_string(w.qin) + "*";
  }
  return s;
}

void qslot_from_string(const std::string& s, int r, BasisWord& w) {
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    bool starred = tok.back() == '*';
    if (starred) tok.pop_back();
    require(tok.size() > 3 && tok.compare(0, 3, "eps") == 0, "qslot token must be eps<index>");
    int idx = 0;
    for (std::size_t i = 3; i < tok.size(); ++i) {
      require(tok[i] >= '0' && tok[i] <= '9', "qslot token must be eps<index>");
      idx = idx * 10 + (tok[i] - '0');
    }
    require(idx >= 1 && idx <= r, "qslot index out of range");
    if (starred) {
      require(w.qin == 0, "qslot lists two starred factors");
      w.qin = static_cast<std::uint8_t>(idx);
    } else {
      require(w.qout == 0, "qslot lists two unstarred factors");
      w.qout = static_cast<std::uint8_t>(idx);
    }
  }
}

int int_field(const json& j, const std::string& key) {
  require(j.contains(key), "missing field \"" + key + "\"");
  require(j[key].is_number_integer(), "field \"" + key + "\" must be an integer");
  return j[key].get<int>();
}

}  // namespace

json coeff_to_json(const GaussianRational& c) {
  return json::array({c.re.get_num().get_str(), c.re.get_den().get_str(),
                      c.im.get_num().get_str(), c.im.get_den().get_str()});
}

GaussianRational coeff_from_json(const json& j) {
  require(j.is_array() && j.size() == 4,
          "coefficient must be [re_num, re_den, im_num, im_den]");
  return GaussianRational(mpq_from_parts(j[0], j[1], "coefficient real part"),
                          mpq_from_parts(j[2], j[3], "coefficient imaginary part"));
}

json poly_to_json(const Poly& p) {
  json out = json::array();
  int nv = p.nvars();
  for (const auto& [mono, c] : p.terms()) {
    json term;
    term["coeff"] = coeff_to_json(c);
    json ze = json::array(), we = json::array();
    bool any_w = false;
    for (int i = 0; i < nv; ++i) {
      ze.push_back(mono.e[i]);
      we.push_back(mono.e[nv + i]);
      if (mono.e[nv + i]) any_w = true;
    }
    term["z"] = ze;
    if (any_w) term["w"] = we;
    out.push_back(term);
  }
  return out;
}

Poly poly_from_json(const json& j, int nv) {
  require(nv >= 0 && nv <= 8, "variable count out of range");
  require(j.is_array(), "polynomial must be a list of terms");
  Poly p(nv);
  for (const auto& term : j) {
    require(term.is_object(), "polynomial term must be an object");
    require(term.contains("coeff"), "polynomial term lacks \"coeff\"");
    require(term.contains("z"), "polynomial term lacks \"z\"");
    GaussianRational c = coeff_from_json(term["coeff"]);
    std::vector<int> ze = exponents_from_json(term["z"], nv, "\"z\"");
    std::vector<int> we(nv, 0);
    if (term.contains("w")) we = exponents_from_json(term["w"], nv, "\"w\"");
    Monomial mono(2 * nv);
    for (int i = 0; i < nv; ++i) {
      mono.e[i] = static_cast<std::uint16_t>(ze[i]);
      mono.e[nv + i] = static_cast<std::uint16_t>(we[i]);
    }
    p.add_term(mono, c);
  }
  return p;
}

json rf_to_json(const RationalFunction& f) {
  return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RationalFunction rf_from_json(const json& j, int nv) {
  require(j.is_object() && j.contains("num"), "rational function must be {num, den}");
  Poly num = poly_from_json(j["num"], nv);
  Poly den = j.contains("den") ? poly_from_json(j["den"], nv)
                               : Poly::constant(nv, GaussianRational(1));
  require(!den.is_zero(), "rational function has zero denominator");
  return RationalFunction(std::move(num), std::move(den));
}

json morphism_to_json(const MorphismData& f) {
  json cols = json::array();
  for (int j = 0; j < f.m; ++j) {
    json col = json::array();
    for (int i = 0; i < f.r; ++i) col.push_back(poly_to_json(f.entries[i][j]));
    cols.push_back(col);
  }
  return json{{"n", f.n}, {"m", f.m}, {"r", f.r}, {"columns", cols}, {"degrees", f.coldeg}};
}

MorphismData morphism_from_json(const json& j) {
  require(j.is_object(), "morphism must be an object");
  MorphismData f;
  f.n = int_field(j, "n");
  f.m = int_field(j, "m");
  f.r = int_field(j, "r");
  require(f.n >= 1 && f.n <= 8, "\"n\" out of range");
  require(f.m >= 1 && f.m <= 16, "\"m\" out of range");
  require(f.r >= 1 && f.r <= 8, "\"r\" out of range");
  require(j.contains("columns") && j["columns"].is_array(), "missing \"columns\" array");
  require(static_cast<int>(j["columns"].size()) == f.m, "\"columns\" must list m columns");
  f.entries.assign(f.r, std::vector<Poly>(f.m, Poly(f.n)));
  for (int c = 0; c < f.m; ++c) {
    const json& col = j["columns"][c];
    require(col.is_array() && static_cast<int>(col.size()) == f.r,
            "each column must list r entries");
    for (int i = 0; i < f.r; ++i) f.entries[i][c] = poly_from_json(col[i], f.n);
  }
  require(j.contains("degrees") && j["degrees"].is_array(), "missing \"degrees\" array");
  require(static_cast<int>(j["degrees"].size()) == f.m, "\"degrees\" must list m values");
  for (const auto& d : j["degrees"]) {
    require(d.is_number_integer() && d.get<int>() >= 0, "degrees must be nonnegative integers");
    f.coldeg.push_back(d.get<int>());
  }
  f.validate();
  return f;
}

json column_to_json(const std::vector<Poly>& col) {
  json out = json::array();
  for (const auto& p : col) out.push_back(poly_to_json(p));
  return out;
}

std::vector<Poly> column_from_json(const json& j, int nv) {
  require(j.is_array(), "column must be a list of polynomials");
  std::vector<Poly> out;
  for (const auto& p : j) out.push_back(poly_from_json(p, nv));
  return out;
}

json element_to_json(const GradedElement& x) {
  json out = json::array();
  for (const auto& [w, c] : x.terms()) {
    json term;
    term["form"] = mask_to_index_list(w.form);
    term["ext"] = mask_to_index_list(w.ext);
    json sym = json::array();
    for (int i = 0; i < x.r(); ++i) sym.push_back(w.sym[i]);
    term["sym"] = sym;
    term["detq"] = w.detq;
    term["qslot"] = qslot_to_string(w);
    term["coeff"] = rf_to_json(c);
    out.push_back(term);
  }
  return out;
}

GradedElement element_from_json(const json& j, int n, int m, int r) {
  require(j.is_array(), "graded element must be a list of terms");
  GradedElement x(n, m, r);
  for (const auto& term : j) {
    require(term.is_object(), "graded term must be an object");
    BasisWord w;
    if (term.contains("form")) w.form = mask_from_index_list(term["form"], n, "\"form\"");
    if (term.contains("ext")) w.ext = mask_from_index_list(term["ext"], m, "\"ext\"");
    if (term.contains("sym")) {
      require(term["sym"].is_array() && static_cast<int>(term["sym"].size()) <= 8,
              "\"sym\" must list at most 8 exponents");
      int i = 0;
      for (const auto& v : term["sym"]) {
        require(v.is_number_integer() && v.get<int>() >= 0 && v.get<int>() <= 255,
                "\"sym\" exponent out of range");
        require(i < r || v.get<int>() == 0, "\"sym\" exponent beyond rank r");
        if (i < 8) w.sym[i] = static_cast<std::uint8_t>(v.get<int>());
        ++i;
      }
    }
    if (term.contains("detq")) {
      require(term["detq"].is_boolean(), "\"detq\" must be a boolean");
      w.detq = term["detq"].get<bool>();
    }
    if (term.contains("qslot")) {
      require(term["qslot"].is_string(), "\"qslot\" must be a string");
      qslot_from_string(term["qslot"].get<std::string>(), r, w);
    }
    require(term.contains("coeff"), "graded term lacks \"coeff\"");
    x.add_term(w, rf_from_json(term["coeff"], n));
  }
  return x;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string input_hash_hex(const json& input) {
  std::uint64_t h = fnv1a64(input.dump());
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
  return out.str();
}

json report_envelope(const std::string& kind, const json& input) {
  return json{{"tool", "gkoszul"},
              {"version", kToolVersion},
              {"kind", kind},
              {"inputHash", input_hash_hex(input)},
              {"input", input}};
}

json division_report(const DivisionProblem& prob, const DivisionOutcome& out) {
  json input{{"P", morphism_to_json(prob.P)}, {"phi", column_to_json(prob.phi)}};
  input["cap"] = prob.cap ? json(*prob.cap) : json("auto");
  json rep = report_envelope(out.feasible ? "DivisionCertificate" : "Infeasible", input);
  rep["feasible"] = out.feasible;
  rep["rho"] = out.rho;
  rep["cap"] = out.cap;
  rep["capAuto"] = out.cap_auto;
  rep["capHeuristic"] = out.cap_heuristic;
  if (out.feasible) {
    rep["Q"] = column_to_json(out.Q);
    rep["termDegrees"] = out.term_degrees;
    rep["boundUsed"] = out.bound_used;
    rep["verified"] = out.verified;
  }
  if (!out.notes.empty()) rep["notes"] = out.notes;
  return rep;
}

json nullstellensatz_report(const MorphismData& P, const NullstellensatzOutcome& out) {
  json input{{"P", morphism_to_json(P)}};
  input["cap"] = out.cap_auto ? json("auto") : json(out.cap);
  json rep =
      report_envelope(out.feasible ? "NullstellensatzCertificate" : "Infeasible", input);
  rep["feasible"] = out.feasible;
  rep["cap"] = out.cap;
  rep["capAuto"] = out.cap_auto;
  rep["capHeuristic"] = out.cap_heuristic;
  if (out.feasible) {
    json q = json::array();
    for (const auto& row : out.Q) q.push_back(column_to_json(row));
    rep["Q"] = q;  // m rows of r entries
    rep["termDegrees"] = out.term_degrees;
    rep["boundUsed"] = out.bound_used;
    rep["verified"] = out.verified;
  }
  return rep;
}

namespace {

json rational_to_json(const mpq_class& v) {
  return coeff_to_json(GaussianRational(v));
}

json point_to_json(const std::vector<GaussianRational>& pt) {
  json out = json::array();
  for (const auto& c : pt) out.push_back(coeff_to_json(c));
  return out;
}

}  // namespace

json sample_report_to_json(const json& input, const SampleReport& rep) {
  json out = report_envelope("SampleReport", input);
  out["seed"] = rep.seed;
  out["count"] = rep.count;
  out["accepted"] = rep.accepted;
  out["rejected"] = rep.rejected;
  out["quantity"] = rep.quantity;
  out["minValue"] = rational_to_json(rep.min_value);
  out["maxValue"] = rational_to_json(rep.max_value);
  out["witnessMin"] = point_to_json(rep.witness_min);
  out["witnessMax"] = point_to_json(rep.witness_max);
  json stages = json::array();
  for (const auto& v : rep.stage_extremes) stages.push_back(rational_to_json(v));
  out["stageExtremes"] = stages;
  json sw = json::array();
  for (const auto& pt : rep.stage_witnesses) sw.push_back(point_to_json(pt));
  out["stageWitnesses"] = sw;
  out["stable"] = rep.stable;
  out["note"] = rep.note;
  return out;
}

json codim_report(const MorphismData& f, std::uint64_t seed, int trials,
                  const CodimProbe& probe) {
  json input{{"f", morphism_to_json(f)}, {"seed", seed}, {"trials", trials}};
  json rep = report_envelope("CodimProbe", input);
  rep["estimate"] = probe.estimate;
  rep["zEmpty"] = probe.z_empty;
  rep["exact"] = probe.exact;
  rep["heuristic"] = probe.heuristic;
  rep["trials"] = probe.trials;
  rep["note"] = probe.note;
  return rep;
}

json fuhrmann_report(const json& input, const FuhrmannResult& res) {
  json rep = report_envelope("FuhrmannLift", input);
  rep["psi"] = column_to_json(res.psi);
  rep["verified"] = res.verified;
  return rep;
}

bool revalidate_certificate(const json& report, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  require(report.is_object() && report.contains("kind") && report["kind"].is_string(),
          "report lacks a \"kind\"");
  require(report.contains("input"), "report lacks the echoed \"input\"");
  std::string kind = report["kind"].get<std::string>();

  require(report.contains("inputHash") && report["inputHash"].is_string(),
          "report lacks \"inputHash\"");
  if (report["inputHash"].get<std::string>() != input_hash_hex(report["input"]))
    return fail("input hash does not match the echoed input");

  if (kind == "Infeasible") return true;  // a well-formed negative carries no solution

  if (kind == "DivisionCertificate") {
    MorphismData P = morphism_from_json(report["input"].at("P"));
    std::vector<Poly> phi = column_from_json(report["input"].at("phi"), P.n);
    if (static_cast<int>(phi.size()) != P.r) return fail("target column has wrong length");
    std::vector<Poly> Q = column_from_json(report.at("Q"), P.n);
    if (static_cast<int>(Q.size()) != P.m) return fail("solution column has wrong length");
    int bound = report.at("boundUsed").get<int>();
    for (int i = 0; i < P.r; ++i) {
      Poly acc(P.n);
      for (int j = 0; j < P.m; ++j) acc += P.entries[i][j] * Q[j];
      if (acc != phi[i]) return fail("P*Q does not reproduce the target in row " +
                                     std::to_string(i + 1));
    }
    for (int j = 0; j < P.m; ++j) {
      for (int i = 0; i < P.r; ++i) {
        Poly prod = P.entries[i][j] * Q[j];
        if (prod.degree_z() > bound)
          return fail("term degree exceeds boundUsed in column " + std::to_string(j + 1));
      }
    }
    return true;
  }

  if (kind == "NullstellensatzCertificate") {
    MorphismData P = morphism_from_json(report["input"].at("P"));
    const json& qj = report.at("Q");
    require(qj.is_array() && static_cast<int>(qj.size()) == P.m,
            "\"Q\" must list m rows");
    std::vector<std::vector<Poly>> Q;
    for (const auto& row : qj) {
      Q.push_back(column_from_json(row, P.n));
      if (static_cast<int>(Q.back().size()) != P.r) return fail("\"Q\" row has wrong length");
    }
    for (int i = 0; i < P.r; ++i)
      for (int k = 0; k < P.r; ++k) {
        Poly acc(P.n);
        for (int j = 0; j < P.m; ++j) acc += P.entries[i][j] * Q[j][k];
        Poly expect = i == k ? Poly::constant(P.n, GaussianRational(1)) : Poly(P.n);
        if (acc != expect)
          return fail("P*Q is not the identity at entry (" + std::to_string(i + 1) + ", " +
                      std::to_string(k + 1) + ")");
      }
    return true;
  }

  if (kind == "FuhrmannLift") {
    MorphismData f = morphism_from_json(report["input"].at("f"));
    std::vector<Poly> phi = column_from_json(report["input"].at("phi"), f.n);
    if (static_cast<int>(phi.size()) != f.r) return fail("target column has wrong length");
    std::vector<Poly> psi = column_from_json(report.at("psi"), f.n);
    if (static_cast<int>(psi.size()) != f.m) return fail("lift column has wrong length");
    for (int i = 0; i < f.r; ++i) {
      Poly acc(f.n);
      for (int j = 0; j < f.m; ++j) acc += f.entries[i][j] * psi[j];
      if (acc != phi[i])
        return fail("f*psi does not reproduce the target in row " + std::to_string(i + 1));
    }
    return true;
  }

  throw std::invalid_argument("malformed document: unknown report kind \"" + kind + "\"");
}

}  // namespace gkoszul
