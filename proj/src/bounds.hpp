#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morphism.hpp"
#include "rng.hpp"

namespace gkoszul {

// ---------------------------------------------------------------------------
// Closed-form exponent bound for equal column degrees.
// ---------------------------------------------------------------------------

struct KollarExponent {
  mpz_class M;             // (r d)^{min(n, C(m, r))}
  mpz_class degree_bound;  // M * min(n, m - r + 1)
};

// Requires r*d >= 3 and equal declared degrees d.
KollarExponent kollar_exponent(int n, int m, int r, int d);

// ---------------------------------------------------------------------------
// Seeded rational sampling.
// ---------------------------------------------------------------------------

// Deterministic stream of rational points: index i belongs to family i mod 9
// (0 = dyadic grid on the unit polydisc; k = 1..8 = shell of radius 2^k with
// one coordinate pinned to modulus exactly 2^k).
std::vector<std::vector<GaussianRational>> sample_points(int n, std::uint64_t seed, int count);

struct SampleReport {
  std::uint64_t seed = 0;
  int count = 0;     // requested sample count
  int accepted = 0;  // points that passed the domain precondition
  int rejected = 0;
  std::string quantity;
  mpq_class min_value;
  mpq_class max_value;
  std::vector<GaussianRational> witness_min;
  std::vector<GaussianRational> witness_max;
  // Running extreme after count/4, count/2 and count accepted samples, with
  // the witness points; the heuristic verdicts below compare these stages.
  std::vector<mpq_class> stage_extremes;
  std::vector<std::vector<GaussianRational>> stage_witnesses;
  bool stable = false;  // stage extreme moved < 5% across both doublings
  std::string note;
};

// Left side of the minor growth inequality at one rational point:
// sum over column sets I of |F_I(z)|^2 / (1 + |z|^2)^{sum of degrees in I}.
mpq_class lojasiewicz_lhs(const MorphismData& P, const std::vector<GaussianRational>& point);

// Samples lhs * (1 + |z|^2)^M; the prefix-stage minima drive the verdict. An
// unstable, shrinking minimum is reported as "no positive lower bound
// observed"; this is evidence, never proof.
SampleReport lojasiewicz_sample(const MorphismData& P, int M, std::uint64_t seed, int count);

// Samples pointwise_norm(f, phi) / gram_det^mu at points off the degeneracy
// locus (gram_det = 0 samples are rejected and counted). mu < 0 selects the
// default min(n, m - r + 1). A stable maximum is evidence of boundedness.
SampleReport briancon_skoda_ratio(const MorphismData& f, const std::vector<Poly>& phi, int mu,
                                  std::uint64_t seed, int count);

// ---------------------------------------------------------------------------
// Heuristic codimension probe for the locus where f drops rank.
// ---------------------------------------------------------------------------

struct CodimProbe {
  int estimate = 0;      // clamped to [1, m - r + 1]
  bool z_empty = false;  // unit certificate on the minors: locus empty
  bool exact = false;    // estimate backed by a certificate or gcd witness
  bool heuristic = false;
  int trials = 0;
  std::string note;
};

// Stages: unit-ideal certificate on the minors (empty locus); univariate gcds
// of the minors along random rational lines (codimension-1 detection);
// otherwise the generic estimate min(n, m - r + 1), labeled heuristic.
CodimProbe codim_probe(const MorphismData& f, std::uint64_t seed, int trials);

}  // namespace gkoszul
