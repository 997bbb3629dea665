#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morphism.hpp"

namespace gkoszul {

// Outcome of one exact identity check. On failure `detail` names the
// offending component; on success it summarizes what was checked.
struct IdentityCheck {
  std::string identity;
  bool pass = false;
  int checks = 0;
  std::string detail;
};

// det(ff*) equals the sum of squared moduli of the maximal minors.
IdentityCheck verify_cauchy_binet(const MorphismData& f);

// f s = det(ff*) I_Q, the detq collapse of the top section equals det(ff*),
// and f sigma = I_Q.
IdentityCheck verify_cramer(const MorphismData& f);

// (delta - dbar) applied to the homotopy sum equals the identity on Q.
IdentityCheck verify_homotopy(const MorphismData& f);

// The contracted homotopy forms against each target column agree with their
// closed-form rewrite at every level. Empty phis defaults to the unit columns.
IdentityCheck verify_omskriv(const MorphismData& f, std::vector<std::vector<Poly>> phis);

// dbar of the top-level primitive built from psi equals the contracted top
// homotopy form of f psi; for a syzygy both sides vanish.
IdentityCheck verify_omv(const MorphismData& f, const std::vector<Poly>& psi);

// The differential squares to zero on seeded random elements at every level
// the ranks admit.
IdentityCheck verify_complex_squares(const MorphismData& f, std::uint64_t seed, int count);

// Rank verdicts at E and at the first derived level, checked at seeded
// rational points where f is surjective.
IdentityCheck verify_exactness(const MorphismData& f, std::uint64_t seed, int points);

}  // namespace gkoszul
