#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graded.hpp"
#include "morphism.hpp"

namespace gkoszul {

// ---------------------------------------------------------------------------
// Homogenization. The projective variable z0 is inserted as variable 1 of the
// output ring; the affine variables shift to indices 2..n+1. Each column j is
// padded with z0 powers up to its declared degree.
// ---------------------------------------------------------------------------

Poly homogenize_poly(const Poly& p, int target_degree);
MorphismData homogenize_morphism(const MorphismData& f);
std::vector<Poly> homogenize_column(const std::vector<Poly>& phi, int target_degree);

// Substitutes z0 = 1 and drops the first variable, undoing homogenize_poly.
Poly dehomogenize_poly(const Poly& p);
MorphismData dehomogenize_morphism(const MorphismData& f);

// ---------------------------------------------------------------------------
// Degree bounds.
// ---------------------------------------------------------------------------

struct MacaulayBound {
  int value = 0;        // max(0, sum of the first min(m, n+r) degrees - n)
  bool clamped = false; // true when the raw sum fell below zero
  int used_degrees = 0; // how many declared degrees entered the sum
  bool padded = false;  // true when m < n+r (fewer degrees than the formula wants)
};

// Degree bound for solutions of PQ = I_r; degrees must be sorted descending.
MacaulayBound macaulay_bound(int n, int r, const std::vector<int>& degrees);

struct VillkorResult {
  bool satisfied = false;
  int clause = 0;       // 1: m <= n+r-1; 2: rho >= degree sum - n; 0: neither
  std::string reason;
};

// Solvability condition for degree-bounded division: either the generator
// count is small (m <= n+r-1) or the target degree rho clears the Macaulay sum.
VillkorResult villkor_check(int n, int r, int m, const std::vector<int>& degrees, int rho);

// ---------------------------------------------------------------------------
// Degree-bounded division PQ = Phi by exact coefficient matching.
// ---------------------------------------------------------------------------

struct DivisionProblem {
  MorphismData P;
  std::vector<Poly> phi;        // r entries, z-only
  std::optional<int> cap;       // empty = derive automatically
};

struct DivisionOutcome {
  bool feasible = false;
  std::vector<Poly> Q;          // m entries when feasible
  std::vector<int> term_degrees;// deg of column j times Q_j; -1 for zero
  int bound_used = -1;          // least degree D at which the system solved
  int rho = 0;                  // max degree of phi
  int cap = 0;                  // cap actually enforced
  bool cap_auto = false;        // cap was derived, not given
  bool cap_heuristic = false;   // derived cap used the generous fallback
  bool verified = false;        // re-multiplication matched phi exactly
  std::string notes;
};

// All monomials in nv variables of total degree <= bound, in a fixed order.
std::vector<Monomial> monomials_up_to(int nv, int bound);

// Iterative deepening over D = rho..cap; at each D the ansatz deg Q_j <=
// D - d_j is solved as one exact linear system. Infeasible(cap) only means no
// solution exists with max_j deg(P^j Q_j) <= cap.
DivisionOutcome solve_division(const DivisionProblem& prob);

// solve_division with the cap pinned to deg(phi).
DivisionOutcome noether_solve(const MorphismData& P, const std::vector<Poly>& phi);

struct NullstellensatzOutcome {
  bool feasible = false;
  std::vector<std::vector<Poly>> Q; // m x r when feasible
  std::vector<int> term_degrees;    // per column j, max over the r unit targets
  int bound_used = -1;
  int cap = 0;
  bool cap_auto = false;
  bool cap_heuristic = false;
  bool verified = false;
};

// Solves PQ = I_r one unit column at a time and aggregates.
NullstellensatzOutcome nullstellensatz_solve(const MorphismData& P, std::optional<int> cap);

// ---------------------------------------------------------------------------
// Fuhrmann lift: from solutions H^j of F·H^j = phi_j (one per row, in the
// r-th exterior power of E) to a single column psi with f psi = phi.
// ---------------------------------------------------------------------------

struct FuhrmannResult {
  std::vector<Poly> psi;  // m entries
  bool verified = false;  // f psi == phi, re-checked exactly
};

// H[j] maps a column mask of weight r to its coefficient; the precondition
// sum_I F_I H^j_I = phi_j is checked and a violation names the failing row.
FuhrmannResult fuhrmann_lift(const MorphismData& f,
                             const std::vector<std::map<std::uint32_t, Poly>>& H,
                             const std::vector<Poly>& phi);

}  // namespace gkoszul
