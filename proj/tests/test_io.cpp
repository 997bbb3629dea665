#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "io.hpp"
#include "sections.hpp"
#include "test_support.hpp"
#include "verify.hpp"

using namespace gkoszul;
using namespace gkoszul::testing;

namespace {

GaussianRational gr(long rn, long rd, long in, long id) {
  mpq_class re(rn, rd), im(in, id);
  re.canonicalize();
  im.canonicalize();
  return GaussianRational(re, im);
}

MorphismData row_morphism(int n, std::vector<Poly> entries, std::vector<int> coldeg) {
  MorphismData f;
  f.n = n;
  f.m = static_cast<int>(entries.size());
  f.r = 1;
  f.entries = {std::move(entries)};
  f.coldeg = std::move(coldeg);
  f.validate();
  return f;
}

}  // namespace

TEST_CASE("coefficient interchange") {
  SUBCASE("round-trip") {
    for (auto c : {gr(0, 1, 0, 1), gr(-3, 7, 22, 5), gr(1, 1, -1, 1)}) {
      json j = coeff_to_json(c);
      CHECK(coeff_from_json(j) == c);
      CHECK(j.size() == 4);
      CHECK(j[0].is_string());
    }
  }

  SUBCASE("integer slots are accepted") {
    CHECK(coeff_from_json(json::array({3, 2, 0, 1})) == gr(3, 2, 0, 1));
  }

  SUBCASE("malformed coefficients are rejected") {
    CHECK_THROWS_AS(coeff_from_json(json::array({"1", "2"})), std::invalid_argument);
    CHECK_THROWS_AS(coeff_from_json(json::array({"1", "0", "0", "1"})), std::invalid_argument);
    CHECK_THROWS_AS(coeff_from_json(json::array({"x", "1", "0", "1"})), std::invalid_argument);
    CHECK_THROWS_AS(coeff_from_json(json::object()), std::invalid_argument);
  }
}

TEST_CASE("polynomial interchange") {
  SUBCASE("round-trip with and without conjugate exponents") {
    Poly p = zv(2, 1) * zv(2, 1) + wv(2, 2).scaled(gr(1, 2, -3, 1));
    json j = poly_to_json(p);
    CHECK(poly_from_json(j, 2) == p);

    Poly holo = zv(2, 1) * zv(2, 2) + pc(2, 5);
    json jh = poly_to_json(holo);
    for (const auto& term : jh) CHECK(!term.contains("w"));  // omitted when zero
    CHECK(poly_from_json(jh, 2) == holo);

    CHECK(poly_from_json(json::array(), 2) == Poly(2));
    CHECK(poly_to_json(Poly(2)) == json::array());
  }

  SUBCASE("duplicate monomials accumulate") {
    json j = json::array();
    j.push_back({{"coeff", {"1", "1", "0", "1"}}, {"z", {1, 0}}});
    j.push_back({{"coeff", {"2", "1", "0", "1"}}, {"z", {1, 0}}});
    CHECK(poly_from_json(j, 2) == zv(2, 1).scaled(GaussianRational(3)));
  }

  SUBCASE("malformed polynomials are rejected") {
    CHECK_THROWS_AS(poly_from_json(json::object(), 2), std::invalid_argument);
    json missing_z = json::array({{{"coeff", {"1", "1", "0", "1"}}}});
    CHECK_THROWS_AS(poly_from_json(missing_z, 2), std::invalid_argument);
    json short_exps = json::array({{{"coeff", {"1", "1", "0", "1"}}, {"z", {1}}}});
    CHECK_THROWS_AS(poly_from_json(short_exps, 2), std::invalid_argument);
    json negative = json::array({{{"coeff", {"1", "1", "0", "1"}}, {"z", {-1, 0}}}});
    CHECK_THROWS_AS(poly_from_json(negative, 2), std::invalid_argument);
  }

  SUBCASE("rational functions carry num and den") {
    RationalFunction rf(zv(1, 1) * zv(1, 1), zv(1, 1) + pc(1, 1));
    CHECK(rf_from_json(rf_to_json(rf), 1) == rf);
    CHECK(rf_from_json(json{{"num", poly_to_json(zv(1, 1))}}, 1) ==
          RationalFunction::from_poly(zv(1, 1)));
    CHECK_THROWS_AS(rf_from_json(json{{"num", json::array()}, {"den", json::array()}}, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("morphism interchange") {
  SUBCASE("round-trip over the corpus") {
    for (const auto& f : {running_example(), coordinate_pair()}) {
      json j = morphism_to_json(f);
      MorphismData back = morphism_from_json(j);
      CHECK(back.n == f.n);
      CHECK(back.m == f.m);
      CHECK(back.r == f.r);
      CHECK(back.entries == f.entries);
      CHECK(back.coldeg == f.coldeg);
    }
  }

  SUBCASE("columns are column-major") {
    json j = morphism_to_json(running_example());
    // Column 1 of the worked example is (z1, 0).
    CHECK(poly_from_json(j["columns"][0][0], 2) == zv(2, 1));
    CHECK(poly_from_json(j["columns"][0][1], 2) == Poly(2));
  }

  SUBCASE("malformed morphisms are rejected") {
    json j = morphism_to_json(coordinate_pair());
    json bad = j;
    bad["degrees"] = {1, 2};  // increasing
    CHECK_THROWS_AS(morphism_from_json(bad), std::invalid_argument);
    bad = j;
    bad["columns"].erase(1);
    CHECK_THROWS_AS(morphism_from_json(bad), std::invalid_argument);
    bad = j;
    bad.erase("r");
    CHECK_THROWS_AS(morphism_from_json(bad), std::invalid_argument);
  }
}

TEST_CASE("graded element interchange") {
  SUBCASE("round-trip across slot shapes") {
    GradedElement x(2, 3, 2);
    BasisWord w1;
    w1.ext = 0b011;
    w1.detq = true;
    w1.qin = 2;
    x.add_term(w1, RationalFunction(zv(2, 1), zv(2, 2) + pc(2, 1)));
    BasisWord w2;
    w2.form = 0b10;
    w2.qout = 1;
    x.add_term(w2, RationalFunction::constant(2, gr(1, 3, -2, 7)));
    BasisWord w3;
    w3.ext = 0b111;
    w3.detq = true;
    w3.sym[1] = 2;
    x.add_term(w3, RationalFunction::from_poly(wv(2, 1)));

    json j = element_to_json(x);
    CHECK(element_from_json(j, 2, 3, 2) == x);
  }

  SUBCASE("qslot strings name the extra Q factors") {
    GradedElement x(1, 2, 2);
    BasisWord w;
    w.qout = 1;
    w.qin = 2;
    x.add_term(w, RationalFunction::constant(1, GaussianRational(1)));
    json j = element_to_json(x);
    CHECK(j[0]["qslot"] == "eps1 eps2*");
    CHECK(element_from_json(j, 1, 2, 2) == x);
  }

  SUBCASE("malformed elements are rejected") {
    json coeff_one;
    coeff_one["num"] = poly_to_json(pc(1, 1));

    json term;
    term["coeff"] = coeff_one;
    term["ext"] = json::array({1, 1});  // repeated index
    CHECK_THROWS_AS(element_from_json(json::array({term}), 1, 2, 1), std::invalid_argument);

    term["ext"] = json::array({5});  // out of range for m = 2
    CHECK_THROWS_AS(element_from_json(json::array({term}), 1, 2, 1), std::invalid_argument);

    term["ext"] = json::array({1});
    term["qslot"] = "theta1";  // not an eps token
    CHECK_THROWS_AS(element_from_json(json::array({term}), 1, 2, 1), std::invalid_argument);
  }
}

TEST_CASE("report envelope and input hash") {
  json input{{"P", morphism_to_json(coordinate_pair())}, {"cap", "auto"}};
  std::string h = input_hash_hex(input);
  CHECK(h.size() == 16);
  CHECK(h == input_hash_hex(input));
  json other = input;
  other["cap"] = 3;
  CHECK(h != input_hash_hex(other));

  json env = report_envelope("SampleReport", input);
  CHECK(env["tool"] == "gkoszul");
  CHECK(env["version"] == kToolVersion);
  CHECK(env["kind"] == "SampleReport");
  CHECK(env["inputHash"] == h);
  CHECK(env["input"] == input);

  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("certificates re-validate from their documents") {
  SUBCASE("division certificate") {
    DivisionProblem prob;
    prob.P = coordinate_pair();
    prob.phi = {zv(2, 1) * zv(2, 1) + zv(2, 2) * zv(2, 2)};
    DivisionOutcome out = solve_division(prob);
    REQUIRE(out.feasible);
    json rep = division_report(prob, out);
    CHECK(rep["kind"] == "DivisionCertificate");
    CHECK(rep["boundUsed"] == 2);
    std::string why;
    CHECK(revalidate_certificate(rep, &why));

    json tampered = rep;
    tampered["Q"][0] = poly_to_json(zv(2, 2));
    CHECK_FALSE(revalidate_certificate(tampered, &why));
    CHECK(why.find("does not reproduce the target") != std::string::npos);

    tampered = rep;
    tampered["input"]["cap"] = 5;
    CHECK_FALSE(revalidate_certificate(tampered, &why));
    CHECK(why.find("hash") != std::string::npos);

    tampered = rep;
    tampered["boundUsed"] = 0;
    CHECK_FALSE(revalidate_certificate(tampered, &why));
    CHECK(why.find("exceeds boundUsed") != std::string::npos);
  }

  SUBCASE("infeasible documents are well-formed negatives") {
    DivisionProblem prob;
    prob.P = row_morphism(2, {zv(2, 1) * zv(2, 1), zv(2, 2) * zv(2, 2)}, {2, 2});
    prob.phi = {zv(2, 1) * zv(2, 2)};
    prob.cap = 6;
    DivisionOutcome out = solve_division(prob);
    REQUIRE(!out.feasible);
    json rep = division_report(prob, out);
    CHECK(rep["kind"] == "Infeasible");
    CHECK(rep["cap"] == 6);
    CHECK(!rep.contains("Q"));
    std::string why;
    CHECK(revalidate_certificate(rep, &why));
  }

  SUBCASE("identity-matrix certificate") {
    Poly one = pc(2, 1);
    MorphismData P = row_morphism(2, {one - zv(2, 1) * zv(2, 2), zv(2, 1), zv(2, 2)}, {2, 1, 1});
    NullstellensatzOutcome out = nullstellensatz_solve(P, std::nullopt);
    REQUIRE(out.feasible);
    json rep = nullstellensatz_report(P, out);
    CHECK(rep["kind"] == "NullstellensatzCertificate");
    std::string why;
    CHECK(revalidate_certificate(rep, &why));

    json tampered = rep;
    tampered["Q"][0][0] = poly_to_json(pc(2, 7));
    CHECK_FALSE(revalidate_certificate(tampered, &why));
    CHECK(why.find("identity") != std::string::npos);
  }

  SUBCASE("lift document") {
    MorphismData f = running_example();
    std::vector<std::map<std::uint32_t, Poly>> H(2);
    H[0][0b011] = pc(2, 1);
    std::vector<Poly> phi = {zv(2, 1) * zv(2, 1), Poly(2)};
    FuhrmannResult res = fuhrmann_lift(f, H, phi);
    REQUIRE(res.verified);
    json input{{"f", morphism_to_json(f)}, {"phi", column_to_json(phi)}};
    json rep = fuhrmann_report(input, res);
    std::string why;
    CHECK(revalidate_certificate(rep, &why));

    json tampered = rep;
    tampered["psi"][0] = poly_to_json(zv(2, 2));
    CHECK_FALSE(revalidate_certificate(tampered, &why));
  }

  SUBCASE("unknown kinds are malformed, not negatives") {
    json rep = report_envelope("Mystery", json::object());
    CHECK_THROWS_AS(revalidate_certificate(rep, nullptr), std::invalid_argument);
  }
}

TEST_CASE("sampler and probe documents") {
  MorphismData f = coordinate_pair();
  SampleReport sr = lojasiewicz_sample(f, 1, 7, 40);
  json input{{"P", morphism_to_json(f)}, {"M", 1}, {"seed", 7}, {"count", 40}};
  json j = sample_report_to_json(input, sr);
  CHECK(j["kind"] == "SampleReport");
  CHECK(j["quantity"] == "lojasiewicz-ratio");
  CHECK(j["stageExtremes"].size() == 3);
  CHECK(j["stageWitnesses"].size() == 3);
  CHECK(j["accepted"] == 40);
  CHECK(coeff_from_json(j["minValue"]) == GaussianRational(mpq_class(sr.min_value)));

  CodimProbe probe = codim_probe(f, 5, 4);
  json pj = codim_report(f, 5, 4, probe);
  CHECK(pj["kind"] == "CodimProbe");
  CHECK(pj["estimate"] == 2);
  CHECK(pj["heuristic"] == true);
}

TEST_CASE("identity drivers over the worked examples") {
  SUBCASE("passing checks") {
    for (const auto& f : {running_example(), coordinate_pair()}) {
      CHECK(verify_cauchy_binet(f).pass);
      CHECK(verify_cramer(f).pass);
      CHECK(verify_homotopy(f).pass);
      CHECK(verify_omskriv(f, {}).pass);
      CHECK(verify_complex_squares(f, 17, 10).pass);
      CHECK(verify_exactness(f, 17, 5).pass);
    }
    std::vector<Poly> syzygy = {zv(2, 2), -zv(2, 1)};
    MorphismData row = row_morphism(2, {zv(2, 1), zv(2, 2)}, {1, 1});
    IdentityCheck omv = verify_omv(row, syzygy);
    CHECK(omv.pass);
    CHECK(omv.detail.find("syzygy") != std::string::npos);
    CHECK(verify_omv(running_example(), {pc(2, 1), Poly(2), Poly(2)}).pass);
  }

  SUBCASE("degenerate inputs throw rather than report a failed identity") {
    MorphismData sq;
    sq.n = 1;
    sq.m = 1;
    sq.r = 1;
    sq.entries = {{zv(1, 1)}};
    sq.coldeg = {1};
    CHECK_THROWS_AS(verify_omskriv(sq, {}), std::invalid_argument);
    CHECK_THROWS_AS(verify_complex_squares(sq, 1, 5), std::invalid_argument);

    MorphismData zero;
    zero.n = 1;
    zero.m = 1;
    zero.r = 1;
    zero.entries = {{Poly(1)}};
    zero.coldeg = {0};
    CHECK_THROWS_AS(verify_cramer(zero), std::domain_error);
    CHECK_THROWS_AS(verify_exactness(zero, 1, 3), std::domain_error);
  }
}
