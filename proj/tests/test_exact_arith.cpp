#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussian_rational.hpp"
#include "poly.hpp"
#include "rational_function.hpp"
#include "rng.hpp"

using namespace gkoszul;

namespace {

GaussianRational random_gr(SplitMix64& rng) {
  mpq_class re(static_cast<long>(rng.next_range(-9, 9)), static_cast<long>(rng.next_range(1, 9)));
  mpq_class im(static_cast<long>(rng.next_range(-9, 9)), static_cast<long>(rng.next_range(1, 9)));
  re.canonicalize();
  im.canonicalize();
  return GaussianRational(re, im);
}

Poly random_poly(SplitMix64& rng, int nv, int max_terms, int max_deg) {
  Poly p(nv);
  int nt = static_cast<int>(rng.next_range(0, max_terms));
  for (int t = 0; t < nt; ++t) {
    Monomial m(2 * nv);
    for (int s = 0; s < 2 * nv; ++s)
      m.e[s] = static_cast<std::uint16_t>(rng.next_range(0, max_deg));
    p.add_term(m, random_gr(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("complex rational field operations") {
  GaussianRational a(mpq_class(2, 3), mpq_class(1, 2));
  GaussianRational b(mpq_class(-1, 5), mpq_class(4, 7));
  CHECK((a + b) - b == a);
  CHECK(a * b == b * a);
  CHECK((a * b) * a.inverse() == b);
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
  CHECK(a.conj().conj() == a);
  CHECK((a * b).conj() == a.conj() * b.conj());
  CHECK(a.norm() == (a * a.conj()).re);
  CHECK_THROWS_AS(GaussianRational().inverse(), std::domain_error);

  SplitMix64 rng(12345);
  for (int k = 0; k < 200; ++k) {
    GaussianRational x = random_gr(rng), y = random_gr(rng), z = random_gr(rng);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK((x + y).conj() == x.conj() + y.conj());
    if (!z.is_zero()) CHECK((x / z) * z == x);
  }
}

TEST_CASE("rational string parsing") {
  CHECK(rational_from_strings("3", "4") == mpq_class(3, 4));
  CHECK(rational_from_strings("-6", "8") == mpq_class(-3, 4));
  CHECK(rational_from_strings("123456789012345678901234567890", "1") ==
        mpq_class("123456789012345678901234567890"));
  CHECK_THROWS_AS(rational_from_strings("1", "0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_strings("abc", "1"), std::invalid_argument);
}

TEST_CASE("monomial ordering is graded then lexicographic") {
  // z1^2 vs z1*z2: same degree, z1^2 wins on the first slot.
  Monomial a(4), b(4), c(4);
  a.e[0] = 2;
  b.e[0] = 1;
  b.e[1] = 1;
  c.e[1] = 1;
  CHECK(b < a);
  CHECK(c < b);
  CHECK(c < a);
  // Lower total degree always sorts first; at equal degree z1 beats z2.
  Monomial d(4);
  d.e[0] = 1;
  CHECK(c < d);
  CHECK(d < b);
}

TEST_CASE("polynomial ring operations") {
  int nv = 2;
  Poly z1 = Poly::variable_z(nv, 1);
  Poly z2 = Poly::variable_z(nv, 2);
  Poly w1 = Poly::variable_w(nv, 1);
  Poly one = Poly::constant(nv, GaussianRational(1));

  Poly p = z1 * z1 + z2.scaled(GaussianRational(3)) + one;
  CHECK(p.total_degree() == 2);
  CHECK(p.to_string() == "1*z1^2 + 3*z2 + 1");

  SplitMix64 rng(777);
  for (int k = 0; k < 60; ++k) {
    Poly a = random_poly(rng, nv, 5, 3);
    Poly b = random_poly(rng, nv, 5, 3);
    Poly c = random_poly(rng, nv, 5, 3);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a.conjugate().conjugate() == a);
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
  }

  // Conjugation swaps the z and w alphabets and conjugates coefficients.
  Poly q = z1.scaled(GaussianRational::i()) + w1 * z2;
  Poly qc = q.conjugate();
  Poly expect = Poly::variable_w(nv, 1).scaled(-GaussianRational::i()) +
                Poly::variable_z(nv, 1) * Poly::variable_w(nv, 2);
  CHECK(qc == expect);
}

TEST_CASE("evaluation treats w as the conjugate point") {
  int nv = 2;
  Poly p = Poly::variable_z(nv, 1) * Poly::variable_w(nv, 1);
  // |1+i|^2 = 2
  GaussianRational pt(mpq_class(1), mpq_class(1));
  CHECK(p.evaluate({pt, GaussianRational()}) == GaussianRational(2));

  Poly q = Poly::variable_z(nv, 1) + Poly::variable_w(nv, 2).scaled(GaussianRational::i());
  GaussianRational v = q.evaluate({GaussianRational(2), GaussianRational::i()});
  // z1 + i*conj(z2) = 2 + i*(-i) = 3
  CHECK(v == GaussianRational(3));
}

TEST_CASE("derivatives are linear and satisfy the product rule") {
  int nv = 2;
  SplitMix64 rng(31);
  for (int k = 0; k < 40; ++k) {
    Poly a = random_poly(rng, nv, 4, 3);
    Poly b = random_poly(rng, nv, 4, 3);
    for (int j = 1; j <= nv; ++j) {
      CHECK((a * b).derivative_w(j) == a.derivative_w(j) * b + a * b.derivative_w(j));
      CHECK((a + b).derivative_z(j) == a.derivative_z(j) + b.derivative_z(j));
    }
  }
  Poly p = pow(Poly::variable_w(nv, 1), 3);
  Poly expect = (Poly::variable_w(nv, 1) * Poly::variable_w(nv, 1)).scaled(GaussianRational(3));
  CHECK(p.derivative_w(1) == expect);
  CHECK(p.derivative_z(1).is_zero());
}

TEST_CASE("exact division and gcd") {
  int nv = 2;
  Poly z1 = Poly::variable_z(nv, 1);
  Poly z2 = Poly::variable_z(nv, 2);
  Poly one = Poly::constant(nv, GaussianRational(1));

  auto q = divide_exact(z1 * z1 - z2 * z2, z1 - z2);
  REQUIRE(q.has_value());
  CHECK(*q == z1 + z2);
  CHECK(!divide_exact(z1 * z1 + one, z2).has_value());

  // gcd recovers a planted common factor up to normalization.
  Poly g = z1 + z2.scaled(GaussianRational(2)) + one;
  Poly a = g * (z1 * z1 + one);
  Poly b = g * (z2 + one).scaled(GaussianRational(mpq_class(5, 3), mpq_class(0)));
  Poly got = gcd_poly(a, b);
  CHECK(got == g);

  // Coprime inputs give the constant 1.
  CHECK(gcd_poly(z1 + one, z2 + one).is_constant());
  CHECK(gcd_poly(z1 + one, z2 + one) == one);

  // Randomized: gcd(g*u, g*v) is divisible by g.
  SplitMix64 rng(99);
  for (int k = 0; k < 25; ++k) {
    Poly gg = random_poly(rng, nv, 3, 2);
    Poly u = random_poly(rng, nv, 3, 2);
    Poly v = random_poly(rng, nv, 3, 2);
    if (gg.is_zero() || u.is_zero() || v.is_zero()) continue;
    Poly d = gcd_poly(gg * u, gg * v);
    CHECK(divide_exact(d, gcd_poly(gg, Poly::constant(nv, GaussianRational(1)) * gg)).has_value());
    CHECK(divide_exact(gg * u, d).has_value());
    CHECK(divide_exact(gg * v, d).has_value());
  }
}

TEST_CASE("rational functions reduce and keep a monic denominator") {
  int nv = 2;
  Poly z1 = Poly::variable_z(nv, 1);
  Poly z2 = Poly::variable_z(nv, 2);
  Poly one = Poly::constant(nv, GaussianRational(1));

  RationalFunction f(z1 * z1 - z2 * z2, (z1 - z2).scaled(GaussianRational(2)));
  CHECK(f.is_poly());
  CHECK(f.num() == (z1 + z2).scaled(GaussianRational(mpq_class(1, 2), mpq_class(0))));

  RationalFunction g(one, z1.scaled(GaussianRational(3)));
  CHECK(g.den() == z1);
  CHECK(g.num() == Poly::constant(nv, GaussianRational(mpq_class(1, 3), mpq_class(0))));

  RationalFunction a(z1, z2);
  RationalFunction b(z2, z1);
  CHECK((a * b) == RationalFunction::constant(nv, GaussianRational(1)));
  CHECK((a + (-a)).is_zero());
  CHECK((a + (-a)).den() == one);

  SplitMix64 rng(4242);
  for (int k = 0; k < 15; ++k) {
    Poly pn = random_poly(rng, nv, 3, 2);
    Poly pd = random_poly(rng, nv, 3, 2);
    Poly qn = random_poly(rng, nv, 3, 2);
    Poly qd = random_poly(rng, nv, 3, 2);
    if (pd.is_zero() || qd.is_zero()) continue;
    RationalFunction p(pn, pd), q(qn, qd);
    CHECK(p * q == q * p);
    CHECK(p + q == q + p);
    CHECK((p + q) - q == p);
    if (!q.is_zero()) CHECK((p / q) * q == p);
  }
}

TEST_CASE("rational function calculus") {
  int nv = 1;
  Poly z1 = Poly::variable_z(nv, 1);
  Poly w1 = Poly::variable_w(nv, 1);

  // d/dw1 of 1/(z1 w1) = -1/(z1 w1^2)
  RationalFunction f(Poly::constant(nv, GaussianRational(1)), z1 * w1);
  RationalFunction df = f.derivative_w(1);
  RationalFunction expect(Poly::constant(nv, GaussianRational(-1)), z1 * w1 * w1);
  CHECK(df == expect);

  // Quotient rule against a hand expansion: d/dw (w^2 / (1 + w)) = (w^2 + 2w)/(1+w)^2
  Poly onep = Poly::constant(nv, GaussianRational(1));
  RationalFunction g(w1 * w1, onep + w1);
  RationalFunction dg = g.derivative_w(1);
  RationalFunction want(w1 * w1 + w1.scaled(GaussianRational(2)), (onep + w1) * (onep + w1));
  CHECK(dg == want);

  // Conjugation is an involutive field map.
  RationalFunction h(z1.scaled(GaussianRational::i()) + onep, w1 + onep);
  CHECK(h.conjugate().conjugate() == h);
  CHECK((h * g).conjugate() == h.conjugate() * g.conjugate());

  // Evaluation with w = conj z, and pole detection.
  RationalFunction e(onep, z1 * w1);
  GaussianRational at = e.evaluate({GaussianRational(1, 1)});
  CHECK(at == GaussianRational(mpq_class(1, 2), mpq_class(0)));
  CHECK_THROWS_AS(e.evaluate({GaussianRational()}), std::domain_error);
}

TEST_CASE("substitution along a parametrized line") {
  int nv = 2;
  Poly p = Poly::variable_z(nv, 1) * Poly::variable_z(nv, 2) +
           Poly::variable_z(nv, 1).scaled(GaussianRational(2));
  // z1 -> t, z2 -> 3t in a 1-variable ring
  Poly t = Poly::variable_z(1, 1);
  Poly img = p.substitute_z({t, t.scaled(GaussianRational(3))}, 1);
  Poly want = t * t.scaled(GaussianRational(3)) + t.scaled(GaussianRational(2));
  CHECK(img == want);
  Poly hasw = Poly::variable_w(nv, 1);
  CHECK_THROWS_AS(hasw.substitute_z({t, t}, 1), std::invalid_argument);
}
