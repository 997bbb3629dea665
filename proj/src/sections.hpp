#pragma once

#include <map>

#include "graded.hpp"

namespace gkoszul {

// Everything derived from f under trivial metrics: maximal minors, the gram
// matrix ff* and its adjugate, the minimal sections s, S and their
// normalizations sigma = s/det(ff*), capSigma = S/det(ff*).
struct DerivedSections {
  std::map<std::uint32_t, Poly> minors;    // column mask with r bits -> minor
  std::vector<std::vector<Poly>> gram;     // r x r, (j,k) = sum_i f_j^i conj(f_k^i)
  Poly gram_det;
  std::vector<std::vector<Poly>> adj_gram;
  std::vector<std::vector<Poly>> s;        // m x r, s = f* adj(ff*)
  GradedElement s_section;                 // sum s[i][l] e_i (x) eps_l* hom slot
  GradedElement S_section;                 // sum conj(F_I) e_I (x) detq
  GradedElement sigma;                     // s_section / gram_det
  GradedElement cap_sigma;                 // S_section / gram_det
  std::vector<GradedElement> sigma_cols;   // columns of sigma as plain E vectors

  DerivedSections() : gram_det(0), s_section(1, 1, 1), S_section(1, 1, 1),
                      sigma(1, 1, 1), cap_sigma(1, 1, 1) {}
};

// All maximal minors, keyed by the ascending column subset as a bitmask.
std::map<std::uint32_t, Poly> determinant_section(const MorphismData& f);

Poly gram_det_poly(const MorphismData& f);

// Transposed comatrix; A * adj(A) = det(A) * I. adj of a 1x1 matrix is [1].
std::vector<std::vector<Poly>> adjugate(const std::vector<std::vector<Poly>>& a);

Poly det_poly(const std::vector<std::vector<Poly>>& a);

// Throws std::domain_error("nowhere surjective...") when det(ff*) = 0.
DerivedSections minimal_sections(const MorphismData& f);

// Identity of Q as a graded element: sum eps_l (x) eps_l* hom slot.
GradedElement identity_Q(int n, int m, int r);

// The level-k piece of the division homotopy, 1 <= k <= min(n+1, m-r+1).
GradedElement u_form(const MorphismData& f, const DerivedSections& ds, int k);
GradedElement u_form(const MorphismData& f, int k);

// (delta - dbar) applied to the full homotopy sum, minus identity_Q. Zero.
GradedElement homotopy_residual(const MorphismData& f);

// Pair the hom slot against a holomorphic Q-column: eps_j* against phi_j.
GradedElement contract_hom(const GradedElement& x, const std::vector<Poly>& phi);

// u_k phi minus (-1)^{r+1} (dbar sigma)^(k-2) (x) dbar capSigma (x) sigma phi.
GradedElement omskriv_residual(const MorphismData& f, const std::vector<Poly>& phi, int k);

// psi ∧ sigma_1 ∧ … ∧ sigma_r ∧ (dbar sigma)^(m-r-1) (x) detq; its dbar equals
// the top u-form applied to f psi. Requires r < m and m-r+1 <= n.
GradedElement omv_primitive(const MorphismData& f, const std::vector<Poly>& psi);

// <adj(ff*) phi, phi>: exact squared pointwise norm of a Q-column.
RationalFunction pointwise_norm(const MorphismData& f, const std::vector<Poly>& phi);

// Recovers s from S by r-1 paired contractions (rows against det Q* factors),
// divided by (r-1)!. Independent cross-check of the two minimal sections.
std::vector<std::vector<Poly>> s_from_S(const MorphismData& f, const DerivedSections& ds);

}  // namespace gkoszul
