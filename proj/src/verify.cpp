#include "verify.hpp"

#include <sstream>

#include "bounds.hpp"
#include "graded.hpp"
#include "rng.hpp"
#include "sections.hpp"

namespace gkoszul {

namespace {

IdentityCheck pass_result(std::string identity, int checks, std::string detail) {
  IdentityCheck out;
  out.identity = std::move(identity);
  out.pass = true;
  out.checks = checks;
  out.detail = std::move(detail);
  return out;
}

IdentityCheck fail_result(std::string identity, int checks, std::string detail) {
  IdentityCheck out;
  out.identity = std::move(identity);
  out.pass = false;
  out.checks = checks;
  out.detail = std::move(detail);
  return out;
}

std::vector<std::vector<Poly>> unit_columns(int nv, int r) {
  std::vector<std::vector<Poly>> cols;
  for (int k = 0; k < r; ++k) {
    std::vector<Poly> col(r, Poly(nv));
    col[k] = Poly::constant(nv, GaussianRational(1));
    cols.push_back(std::move(col));
  }
  return cols;
}

Poly random_small_poly(SplitMix64& rng, int nv) {
  Poly p(nv);
  int nt = static_cast<int>(rng.next_range(1, 2));
  for (int t = 0; t < nt; ++t) {
    Monomial mono(2 * nv);
    for (int s = 0; s < 2 * nv; ++s)
      mono.e[s] = static_cast<std::uint16_t>(rng.next_range(0, 1));
    mpq_class re(static_cast<long>(rng.next_range(-3, 3)));
    mpq_class im(static_cast<long>(rng.next_range(-3, 3)));
    p.add_term(mono, GaussianRational(re, im));
  }
  return p;
}

std::uint32_t random_mask(SplitMix64& rng, int width, int weight) {
  std::uint32_t mask = 0;
  while (__builtin_popcount(mask) < weight)
    mask |= 1u << rng.next_below(static_cast<std::uint64_t>(width));
  return mask;
}

// A random homogeneous element at the given complex level, with form factors
// and polynomial coefficients, to exercise the square-zero property.
GradedElement random_level_element(SplitMix64& rng, const MorphismData& f, int level) {
  GradedElement x(f.n, f.m, f.r);
  BasisWord w;
  if (level == 1) {
    w.ext = random_mask(rng, f.m, 1);
  } else {
    w.detq = true;
    w.ext = random_mask(rng, f.m, f.r + level - 1);
    for (int s = 0; s < level - 2; ++s)
      w.sym[rng.next_below(static_cast<std::uint64_t>(f.r))] += 1;
  }
  w.form = random_mask(rng, f.n, static_cast<int>(rng.next_range(0, f.n)));
  x.add_term(w, RationalFunction::from_poly(random_small_poly(rng, f.n)));
  return x;
}

}  // namespace

IdentityCheck verify_cauchy_binet(const MorphismData& f) {
  f.validate();
  Poly sum(f.n);
  for (const auto& [mask, F] : determinant_section(f)) sum += F * F.conjugate();
  if (gram_det_poly(f) != sum)
    return fail_result("cauchy-binet", 1,
                       "det(ff*) differs from the sum of squared maximal minors");
  return pass_result("cauchy-binet", 1, "det(ff*) equals the sum of squared maximal minors");
}

IdentityCheck verify_cramer(const MorphismData& f) {
  f.validate();
  DerivedSections ds = minimal_sections(f);  // degenerate input throws
  int checks = 0;
  for (int i = 0; i < f.r; ++i)
    for (int k = 0; k < f.r; ++k) {
      Poly acc(f.n);
      for (int j = 0; j < f.m; ++j) acc += f.entries[i][j] * ds.s[j][k];
      Poly expect = i == k ? ds.gram_det : Poly(f.n);
      ++checks;
      if (acc != expect) {
        std::ostringstream why;
        why << "f*s misses det(ff*)*I at entry (" << i + 1 << ", " << k + 1 << ")";
        return fail_result("cramer", checks, why.str());
      }
    }
  ++checks;
  GradedElement collapsed = delta_F(f, ds.S_section);
  if (collapsed != GradedElement::scalar(f.n, f.m, f.r, RationalFunction::from_poly(ds.gram_det)))
    return fail_result("cramer", checks,
                       "collapsing the top section does not recover det(ff*)");
  ++checks;
  if (apply_f(f, ds.sigma) != identity_Q(f.n, f.m, f.r))
    return fail_result("cramer", checks, "f*sigma is not the identity on Q");
  return pass_result("cramer", checks,
                     "f*s = det(ff*)*I, the top-section collapse and f*sigma = I all hold");
}

IdentityCheck verify_homotopy(const MorphismData& f) {
  f.validate();
  GradedElement res = homotopy_residual(f);  // degenerate input throws
  if (!res.is_zero())
    return fail_result("homotopy", 1,
                       "(delta - dbar) of the homotopy sum differs from the identity on Q");
  int top = std::min(f.n + 1, f.m - f.r + 1);
  std::ostringstream what;
  what << "(delta - dbar) telescopes to the identity on Q through level " << top;
  return pass_result("homotopy", 1, what.str());
}

IdentityCheck verify_omskriv(const MorphismData& f, std::vector<std::vector<Poly>> phis) {
  f.validate();
  if (f.m == f.r) throw std::invalid_argument("rewrite levels need m > r");
  if (phis.empty()) phis = unit_columns(f.n, f.r);
  int top = std::min(f.n + 1, f.m - f.r + 1);
  int checks = 0;
  for (std::size_t c = 0; c < phis.size(); ++c)
    for (int k = 2; k <= top; ++k) {
      ++checks;
      GradedElement res = omskriv_residual(f, phis[c], k);
      if (!res.is_zero()) {
        std::ostringstream why;
        why << "rewrite residual nonzero at level " << k << " for target column " << c + 1;
        return fail_result("omskriv", checks, why.str());
      }
    }
  std::ostringstream what;
  what << "contracted homotopy forms match their rewrite at levels 2.." << top << " for "
       << phis.size() << " target column(s)";
  return pass_result("omskriv", checks, what.str());
}

IdentityCheck verify_omv(const MorphismData& f, const std::vector<Poly>& psi) {
  f.validate();
  if (static_cast<int>(psi.size()) != f.m)
    throw std::invalid_argument("psi must have one entry per column of f");
  GradedElement prim = omv_primitive(f, psi);  // range gates throw
  std::vector<Poly> fpsi;
  for (int i = 0; i < f.r; ++i) {
    Poly acc(f.n);
    for (int j = 0; j < f.m; ++j) acc += f.entries[i][j] * psi[j];
    fpsi.push_back(std::move(acc));
  }
  int top = f.m - f.r + 1;
  GradedElement rhs = contract_hom(u_form(f, top), fpsi);
  if (dbar(prim) != rhs)
    return fail_result("omv", 1,
                       "dbar of the primitive differs from the contracted top homotopy form");
  bool syzygy = true;
  for (const auto& p : fpsi)
    if (!p.is_zero()) syzygy = false;
  std::string what = "dbar of the primitive equals the contracted top homotopy form of f*psi";
  if (syzygy) what += "; psi is a syzygy, so the primitive is dbar-closed";
  return pass_result("omv", 1, what);
}

IdentityCheck verify_complex_squares(const MorphismData& f, std::uint64_t seed, int count) {
  f.validate();
  if (count < 1) throw std::invalid_argument("element count must be positive");
  if (f.m == f.r) throw std::invalid_argument("the ranks admit no level above E_1");
  SplitMix64 rng(seed);
  int top_level = std::min(f.m - f.r + 1, 4);
  int checks = 0;
  for (int level = 2; level <= top_level; ++level)
    for (int t = 0; t < count; ++t) {
      GradedElement x = random_level_element(rng, f, level);
      ++checks;
      if (!differential_full(f, differential_full(f, x)).is_zero()) {
        std::ostringstream why;
        why << "the differential fails to square to zero on a level-" << level
            << " element (seed " << seed << ", draw " << t + 1 << ")";
        return fail_result("complex-squares", checks, why.str());
      }
    }
  std::ostringstream what;
  what << "the differential squares to zero on " << checks
       << " random elements across levels 2.." << top_level;
  return pass_result("complex-squares", checks, what.str());
}

IdentityCheck verify_exactness(const MorphismData& f, std::uint64_t seed, int points) {
  f.validate();
  if (points < 1) throw std::invalid_argument("point count must be positive");
  Poly gram = gram_det_poly(f);
  if (gram.is_zero())
    throw std::domain_error("nowhere surjective: det(ff*) vanishes identically");
  int accepted = 0;
  int checks = 0;
  int batch = 0;
  std::uint64_t stream = seed;
  while (accepted < points && batch < 100) {
    for (const auto& pt : sample_points(f.n, stream, points)) {
      if (accepted >= points) break;
      if (gram.evaluate(pt).is_zero()) continue;
      ++accepted;
      for (ExactnessLevel level : {ExactnessLevel::AtE, ExactnessLevel::AtE2}) {
        ExactnessReport rep = exactness_at_point(f, pt, level);
        ++checks;
        if (!rep.exact) {
          std::ostringstream why;
          why << "rank verdict refutes exactness at "
              << (level == ExactnessLevel::AtE ? "E" : "the first derived level")
              << ": incoming " << rep.rank_incoming << " + outgoing " << rep.rank_outgoing
              << " != fiber dimension " << rep.dim_middle;
          return fail_result("exactness", checks, why.str());
        }
      }
    }
    ++batch;
    ++stream;
  }
  if (accepted < points)
    throw std::domain_error("could not find enough points where f is surjective");
  std::ostringstream what;
  what << "rank verdicts confirm exactness at E and the first derived level at " << accepted
       << " surjective rational points";
  return pass_result("exactness", checks, what.str());
}

}  // namespace gkoszul
