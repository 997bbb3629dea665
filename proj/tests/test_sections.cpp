#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sections.hpp"
#include "test_support.hpp"

using namespace gkoszul;
using namespace gkoszul::testing;

namespace {

// Banded morphism in two variables: row j carries (z1, z2) in slots j, j+1.
MorphismData banded_shift(int m, int r) {
  MorphismData f;
  f.n = 2;
  f.m = m;
  f.r = r;
  f.entries.assign(r, std::vector<Poly>(m, Poly(2)));
  for (int j = 0; j < r; ++j) {
    f.entries[j][j] = zv(2, 1);
    f.entries[j][j + 1] = zv(2, 2);
  }
  f.coldeg.assign(m, 1);
  f.validate();
  return f;
}

MorphismData banded_rank3() { return banded_shift(4, 3); }

// Two disjoint (z1, z2) blocks: rank 2 on 4 generators.
MorphismData split_rank2() {
  MorphismData f;
  f.n = 2;
  f.m = 4;
  f.r = 2;
  Poly zero(2);
  f.entries = {{zv(2, 1), zv(2, 2), zero, zero},
               {zero, zero, zv(2, 1), zv(2, 2)}};
  f.coldeg = {1, 1, 1, 1};
  f.validate();
  return f;
}

MorphismData identity_morphism(int n, int r) {
  MorphismData f;
  f.n = n;
  f.m = r;
  f.r = r;
  f.entries.assign(r, std::vector<Poly>(r, Poly(n)));
  for (int j = 0; j < r; ++j) f.entries[j][j] = pc(n, 1);
  f.coldeg.assign(r, 0);
  f.validate();
  return f;
}

MorphismData three_coordinates() {
  MorphismData f;
  f.n = 3;
  f.m = 3;
  f.r = 1;
  f.entries = {{zv(3, 1), zv(3, 2), zv(3, 3)}};
  f.coldeg = {1, 1, 1};
  f.validate();
  return f;
}

GradedElement with_detq(const GradedElement& x) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    BasisWord nw = w;
    nw.detq = true;
    out.add_term(nw, c);
  }
  return out;
}

GradedElement wedge_sigma_columns(const DerivedSections& ds) {
  GradedElement acc = ds.sigma_cols[0];
  for (std::size_t l = 1; l < ds.sigma_cols.size(); ++l) acc = wedge(acc, ds.sigma_cols[l]);
  return with_detq(acc);
}

Poly cauchy_binet_sum(const std::map<std::uint32_t, Poly>& minors, int n) {
  Poly acc(n);
  for (const auto& [mask, mf] : minors) acc += mf * mf.conjugate();
  return acc;
}

std::vector<std::vector<Poly>> random_square(SplitMix64& rng, int n, int size) {
  std::vector<std::vector<Poly>> a(size, std::vector<Poly>(size, Poly(n)));
  for (auto& row : a)
    for (auto& e : row) e = random_poly(rng, n, 1, 2);
  return a;
}

}  // namespace

TEST_CASE("determinant sections enumerate maximal minors") {
  SUBCASE("rank one lists the entries") {
    MorphismData f = coordinate_pair();
    auto minors = determinant_section(f);
    REQUIRE(minors.size() == 2);
    CHECK(minors.at(1u) == zv(2, 1));
    CHECK(minors.at(2u) == zv(2, 2));
  }
  SUBCASE("running shift morphism") {
    MorphismData f = running_example();
    auto minors = determinant_section(f);
    REQUIRE(minors.size() == 3);
    CHECK(minors.at(0b011u) == zv(2, 1) * zv(2, 1));
    CHECK(minors.at(0b101u) == zv(2, 1) * zv(2, 2));
    CHECK(minors.at(0b110u) == zv(2, 2) * zv(2, 2));
  }
  SUBCASE("identity morphism has the single minor 1") {
    MorphismData f = identity_morphism(1, 2);
    auto minors = determinant_section(f);
    REQUIRE(minors.size() == 1);
    CHECK(minors.at(0b11u) == pc(1, 1));
  }
}

TEST_CASE("gram determinant equals the minor norm sum") {
  for (const MorphismData& f :
       {coordinate_pair(), running_example(), banded_rank3(), split_rank2()}) {
    CHECK(gram_det_poly(f) == cauchy_binet_sum(determinant_section(f), f.n));
  }
  SUBCASE("random morphisms") {
    SplitMix64 rng(0xb1e7u);
    for (int t = 0; t < 8; ++t) {
      MorphismData f = random_morphism(rng, 2, 3, 2, 1);
      CHECK(gram_det_poly(f) == cauchy_binet_sum(determinant_section(f), f.n));
    }
  }
  SUBCASE("square case factors through the determinant") {
    SplitMix64 rng(0x5a5au);
    for (int t = 0; t < 6; ++t) {
      MorphismData f = random_morphism(rng, 2, 2, 2, 1);
      Poly d = determinant_section(f).at(0b11u);
      CHECK(gram_det_poly(f) == d * d.conjugate());
    }
  }
}

TEST_CASE("adjugate satisfies the Cramer identity") {
  SUBCASE("two by two closed form") {
    Poly a = zv(2, 1), b = zv(2, 2), c = wv(2, 1), d = wv(2, 2);
    auto adj = adjugate({{a, b}, {c, d}});
    CHECK(adj[0][0] == d);
    CHECK(adj[0][1] == -b);
    CHECK(adj[1][0] == -c);
    CHECK(adj[1][1] == a);
  }
  SUBCASE("one by one is the constant 1") {
    auto adj = adjugate({{zv(1, 1)}});
    CHECK(adj[0][0] == pc(1, 1));
  }
  SUBCASE("random matrices") {
    SplitMix64 rng(0xad9u);
    for (int t = 0; t < 50; ++t) {
      int size = 2 + static_cast<int>(rng.next_below(2));
      auto a = random_square(rng, 2, size);
      auto adj = adjugate(a);
      Poly det = det_poly(a);
      for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k) {
          Poly acc(2);
          for (int j = 0; j < size; ++j) acc += a[i][j] * adj[j][k];
          CHECK(acc == (i == k ? det : Poly(2)));
        }
    }
  }
}

TEST_CASE("minimal sections of the coordinate pair") {
  MorphismData f = coordinate_pair();
  DerivedSections ds = minimal_sections(f);
  Poly g = zv(2, 1) * wv(2, 1) + zv(2, 2) * wv(2, 2);
  CHECK(ds.gram_det == g);
  CHECK(ds.adj_gram[0][0] == pc(2, 1));
  CHECK(ds.s[0][0] == wv(2, 1));
  CHECK(ds.s[1][0] == wv(2, 2));

  GradedElement expected(2, 2, 1);
  for (int i = 0; i < 2; ++i) {
    BasisWord w;
    w.ext = 1u << i;
    w.qin = 1;
    expected.add_term(w, RationalFunction(wv(2, i + 1), g));
  }
  CHECK(ds.sigma == expected);
}

TEST_CASE("minimal sections of the identity morphism") {
  MorphismData f = identity_morphism(1, 2);
  DerivedSections ds = minimal_sections(f);
  CHECK(ds.gram_det == pc(1, 1));
  GradedElement sig(1, 2, 2);
  for (int l = 0; l < 2; ++l) {
    BasisWord w;
    w.ext = 1u << l;
    w.qin = static_cast<std::uint8_t>(l + 1);
    sig.add_term(w, RationalFunction::constant(1, GaussianRational(1)));
  }
  CHECK(ds.sigma == sig);
  BasisWord sw;
  sw.ext = 0b11u;
  sw.detq = true;
  CHECK(ds.S_section == GradedElement::from_word(1, 2, 2, sw,
                                                 RationalFunction::constant(1, GaussianRational(1))));
}

TEST_CASE("minimal sections of the running shift morphism") {
  MorphismData f = running_example();
  DerivedSections ds = minimal_sections(f);
  Poly z1 = zv(2, 1), z2 = zv(2, 2), w1 = wv(2, 1), w2 = wv(2, 2);
  Poly g11 = z1 * w1 + z2 * w2;
  CHECK(ds.gram[0][0] == g11);
  CHECK(ds.gram[0][1] == z2 * w1);
  CHECK(ds.gram[1][0] == z1 * w2);
  CHECK(ds.gram[1][1] == g11);
  CHECK(ds.gram_det == g11 * g11 - z1 * z2 * w1 * w2);

  CHECK(ds.s[0][0] == z1 * w1 * w1 + z2 * w1 * w2);
  CHECK(ds.s[1][0] == z2 * w2 * w2);
  CHECK(ds.s[2][0] == -(z1 * w2 * w2));
  CHECK(ds.s[0][1] == -(z2 * w1 * w1));
  CHECK(ds.s[1][1] == z1 * w1 * w1);
  CHECK(ds.s[2][1] == z1 * w1 * w2 + z2 * w2 * w2);
}

TEST_CASE("defining identities of the two minimal sections") {
  for (const MorphismData& f :
       {coordinate_pair(), running_example(), banded_rank3(), split_rank2(),
        three_coordinates(), identity_morphism(2, 3)}) {
    DerivedSections ds = minimal_sections(f);
    // f s = det(ff*) I on Q.
    for (int j = 0; j < f.r; ++j)
      for (int l = 0; l < f.r; ++l) {
        Poly acc(f.n);
        for (int i = 0; i < f.m; ++i) acc += f.entries[j][i] * ds.s[i][l];
        CHECK(acc == (j == l ? ds.gram_det : Poly(f.n)));
      }
    // Full contraction of S against the rows recovers det(ff*).
    GradedElement contracted = delta_F(f, ds.S_section);
    CHECK(contracted ==
          GradedElement::scalar(f.n, f.m, f.r, RationalFunction::from_poly(ds.gram_det)));
    // The normalized sections compose: f sigma = identity on Q.
    CHECK(apply_f(f, ds.sigma) == identity_Q(f.n, f.m, f.r));
  }
}

TEST_CASE("the two minimal sections determine each other") {
  for (const MorphismData& f :
       {coordinate_pair(), running_example(), banded_rank3(), split_rank2(),
        three_coordinates(), identity_morphism(2, 3), identity_morphism(1, 4),
        identity_morphism(1, 5), banded_shift(5, 4)}) {
    DerivedSections ds = minimal_sections(f);
    CHECK(s_from_S(f, ds) == ds.s);
    CHECK(ds.cap_sigma == wedge_sigma_columns(ds));
  }
  SUBCASE("random morphisms") {
    SplitMix64 rng(0x515eu);
    int done = 0;
    while (done < 6) {
      MorphismData f = random_morphism(rng, 2, 3, 2, 1);
      if (gram_det_poly(f).is_zero()) continue;
      DerivedSections ds = minimal_sections(f);
      CHECK(s_from_S(f, ds) == ds.s);
      CHECK(ds.cap_sigma == wedge_sigma_columns(ds));
      ++done;
    }
  }
}

TEST_CASE("homotopy forms") {
  SUBCASE("square morphism stops at the inverse") {
    MorphismData f = identity_morphism(1, 2);
    DerivedSections ds = minimal_sections(f);
    CHECK(u_form(f, ds, 1) == ds.sigma);
    CHECK_THROWS_AS(u_form(f, ds, 2), std::invalid_argument);
    CHECK_THROWS_AS(u_form(f, ds, 0), std::invalid_argument);
  }
  SUBCASE("coordinate pair level two in closed form") {
    MorphismData f = coordinate_pair();
    DerivedSections ds = minimal_sections(f);
    Poly g = ds.gram_det;
    Poly g2 = g * g;
    GradedElement expected(2, 2, 1);
    BasisWord w;
    w.ext = 0b11u;
    w.detq = true;
    w.qin = 1;
    w.form = 0b01u;
    expected.add_term(w, RationalFunction(wv(2, 2), g2));
    w.form = 0b10u;
    expected.add_term(w, RationalFunction(-wv(2, 1), g2));
    CHECK(u_form(f, ds, 2) == expected);
    CHECK_THROWS_AS(u_form(f, ds, 3), std::invalid_argument);
  }
  SUBCASE("degree bookkeeping and denominator bound") {
    for (const MorphismData& f : {running_example(), three_coordinates(), split_rank2()}) {
      DerivedSections ds = minimal_sections(f);
      int top = std::min(f.n + 1, f.m - f.r + 1);
      for (int k = 1; k <= top; ++k) {
        GradedElement u = u_form(f, ds, k);
        for (const auto& [word, c] : u.terms()) {
          CHECK(word.form_degree() == k - 1);
          CHECK(word.ext_degree() == (k == 1 ? 1 : f.r + k - 1));
          CHECK(word.sym_degree() == std::max(0, k - 2));
          CHECK(word.detq == (k >= 2));
          CHECK(word.qin != 0);
          CHECK(word.qout == 0);
          CHECK(divide_exact(pow(ds.gram_det, static_cast<unsigned>(k)), c.den()).has_value());
        }
      }
    }
    CHECK(!u_form(running_example(), 2).is_zero());
    CHECK(!u_form(three_coordinates(), 3).is_zero());
  }
}

TEST_CASE("division homotopy telescopes to the identity on Q") {
  SUBCASE("single function") {
    MorphismData f;
    f.n = 1;
    f.m = 1;
    f.r = 1;
    f.entries = {{zv(1, 1)}};
    f.coldeg = {1};
    f.validate();
    CHECK(homotopy_residual(f).is_zero());
  }
  SUBCASE("coordinate pair") { CHECK(homotopy_residual(coordinate_pair()).is_zero()); }
  SUBCASE("running shift morphism") { CHECK(homotopy_residual(running_example()).is_zero()); }
  SUBCASE("three coordinates, full antiholomorphic depth") {
    CHECK(homotopy_residual(three_coordinates()).is_zero());
  }
  SUBCASE("split rank two") { CHECK(homotopy_residual(split_rank2()).is_zero()); }
  SUBCASE("banded rank three") { CHECK(homotopy_residual(banded_rank3()).is_zero()); }
}

TEST_CASE("level shift rewrite of the contracted homotopy forms") {
  SUBCASE("coordinate pair") {
    MorphismData f = coordinate_pair();
    CHECK(omskriv_residual(f, {pc(2, 1)}, 2).is_zero());
    CHECK(omskriv_residual(f, {zv(2, 1)}, 2).is_zero());
  }
  SUBCASE("running shift morphism") {
    MorphismData f = running_example();
    CHECK(omskriv_residual(f, {zv(2, 1), zv(2, 2)}, 2).is_zero());
    CHECK(omskriv_residual(f, {pc(2, 1), Poly(2)}, 2).is_zero());
  }
  SUBCASE("three coordinates at depth three") {
    MorphismData f = three_coordinates();
    CHECK(omskriv_residual(f, {zv(3, 2)}, 3).is_zero());
  }
  SUBCASE("square morphism has no level two") {
    MorphismData f = identity_morphism(1, 2);
    CHECK_THROWS_AS(omskriv_residual(f, {pc(1, 1), pc(1, 1)}, 2), std::invalid_argument);
  }
  SUBCASE("antiholomorphic column is rejected") {
    MorphismData f = coordinate_pair();
    CHECK_THROWS_AS(omskriv_residual(f, {wv(2, 1)}, 2), std::invalid_argument);
  }
}

TEST_CASE("top level primitives") {
  SUBCASE("syzygy column yields a closed constant primitive") {
    MorphismData f = coordinate_pair();
    GradedElement prim = omv_primitive(f, {zv(2, 2), -zv(2, 1)});
    BasisWord w;
    w.ext = 0b11u;
    w.detq = true;
    CHECK(prim == GradedElement::from_word(2, 2, 1, w,
                                           RationalFunction::constant(2, GaussianRational(-1))));
    CHECK(dbar(prim).is_zero());
  }
  SUBCASE("zero column maps to zero") {
    MorphismData f = coordinate_pair();
    CHECK(omv_primitive(f, {Poly(2), Poly(2)}).is_zero());
  }
  SUBCASE("the primitive property itself") {
    for (const MorphismData& f : {coordinate_pair(), running_example()}) {
      std::vector<std::vector<Poly>> columns;
      columns.push_back([&] {
        std::vector<Poly> psi(f.m, Poly(f.n));
        psi[0] = pc(f.n, 1);
        return psi;
      }());
      columns.push_back([&] {
        std::vector<Poly> psi(f.m, Poly(f.n));
        psi[f.m - 1] = zv(f.n, 1);
        return psi;
      }());
      for (const auto& psi : columns) {
        std::vector<Poly> fpsi(f.r, Poly(f.n));
        for (int j = 0; j < f.r; ++j)
          for (int i = 0; i < f.m; ++i) fpsi[j] += f.entries[j][i] * psi[i];
        int top = f.m - f.r + 1;
        GradedElement lhs = dbar(omv_primitive(f, psi));
        GradedElement rhs = contract_hom(u_form(f, top), fpsi);
        CHECK(lhs == rhs);
      }
    }
  }
  SUBCASE("gates") {
    CHECK_THROWS_AS(omv_primitive(identity_morphism(1, 2), {pc(1, 1), pc(1, 1)}),
                    std::invalid_argument);
    MorphismData f;
    f.n = 1;
    f.m = 2;
    f.r = 1;
    f.entries = {{zv(1, 1), zv(1, 1)}};
    f.coldeg = {1, 1};
    f.validate();
    CHECK_THROWS_AS(omv_primitive(f, {pc(1, 1), pc(1, 1)}), std::invalid_argument);
  }
}

TEST_CASE("pointwise norm against the gram adjugate") {
  SUBCASE("rank one reduces to the squared modulus") {
    MorphismData f = coordinate_pair();
    Poly phi = zv(2, 1) + pc(2, 2);
    RationalFunction nrm = pointwise_norm(f, {phi});
    CHECK(nrm == RationalFunction::from_poly(phi * phi.conjugate()));
  }
  SUBCASE("zero column") {
    CHECK(pointwise_norm(coordinate_pair(), {Poly(2)}).is_zero());
  }
  SUBCASE("running shift morphism, first unit column") {
    MorphismData f = running_example();
    DerivedSections ds = minimal_sections(f);
    RationalFunction nrm = pointwise_norm(f, {pc(2, 1), Poly(2)});
    CHECK(nrm == RationalFunction::from_poly(ds.adj_gram[0][0]));
  }
  SUBCASE("values are self conjugate") {
    MorphismData f = running_example();
    RationalFunction nrm = pointwise_norm(f, {zv(2, 1), zv(2, 2)});
    CHECK(nrm.conjugate() == nrm);
  }
}
