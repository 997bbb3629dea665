#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "morphism.hpp"
#include "rational_function.hpp"

namespace gkoszul {

// One basis monomial of Λ(Θ ⊕ E) ⊗ S(Q*) ⊗ (det Q*)^{0,1}, with up to one
// extra Q factor (qout) and one extra Q* factor (qin) for Hom-valued data.
// form: bitmask of θ indices in 1..n (antiholomorphic coframe, odd)
// ext:  bitmask of e indices in 1..m (frame of E, odd)
// sym:  divided-power exponents of ε_1*..ε_r* (even)
// detq: single ε_1*∧…∧ε_r* factor (even twist)
// qout/qin: 0 means absent, else the index in 1..r (even)
struct BasisWord {
  std::uint32_t form = 0;
  std::uint32_t ext = 0;
  std::array<std::uint8_t, 8> sym{};
  bool detq = false;
  std::uint8_t qout = 0;
  std::uint8_t qin = 0;

  int form_degree() const { return __builtin_popcount(form); }
  int ext_degree() const { return __builtin_popcount(ext); }
  int sym_degree() const {
    int s = 0;
    for (auto v : sym) s += v;
    return s;
  }
  // Parity that drives every Koszul sign.
  int parity() const { return (form_degree() + ext_degree()) & 1; }

  auto key() const { return std::tie(form, ext, sym, detq, qout, qin); }
  bool operator<(const BasisWord& o) const { return key() < o.key(); }
  bool operator==(const BasisWord& o) const { return key() == o.key(); }
};

class GradedElement {
 public:
  GradedElement(int n, int m, int r);

  int n() const { return n_; }
  int m() const { return m_; }
  int r() const { return r_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisWord, RationalFunction>& terms() const { return terms_; }

  void add_term(const BasisWord& w, const RationalFunction& c);

  GradedElement operator+(const GradedElement& o) const;
  GradedElement operator-(const GradedElement& o) const;
  GradedElement operator-() const;
  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement scaled(const RationalFunction& c) const;

  // Terms with the given form degree, ext degree and total sym degree.
  GradedElement component(int form_deg, int ext_deg, int sym_deg) const;

  bool operator==(const GradedElement& o) const;
  bool operator!=(const GradedElement& o) const { return !(*this == o); }
  std::string to_string() const;

  static GradedElement scalar(int n, int m, int r, const RationalFunction& c);
  static GradedElement from_word(int n, int m, int r, const BasisWord& w,
                                 const RationalFunction& c);

 private:
  void check_compatible(const GradedElement& o) const;
  int n_, m_, r_;
  std::map<BasisWord, RationalFunction> terms_;
};

// Product in the graded algebra. Anticommuting overlaps vanish; divided-power
// sym factors multiply with binomial coefficients; a second detq, qout or qin
// factor on one word is rejected.
GradedElement wedge(const GradedElement& a, const GradedElement& b);

// Σ_j (∂coeff/∂w_j) θ_j ∧ word. Square-zero odd derivation.
GradedElement dbar(const GradedElement& x);

// Interior multiplication by a row η ∈ E*: odd antiderivation of ext degree -1.
GradedElement interior_ext(const std::vector<RationalFunction>& eta, const GradedElement& x);
GradedElement interior_ext(const std::vector<Poly>& eta, const GradedElement& x);

// Level of a homogeneous word in the complex: 0 for Q-valued words, 1 for a
// bare E factor, k >= 2 for Λ^{r+k-1}E ⊗ S^{k-2}Q* ⊗ det Q*. The qin slot and
// the form part are carried along at any level. Returns -1 if the shape fits
// no level.
int word_level(const BasisWord& w, int r);

// Differential E_{k+1} -> E_k for k+1 >= 3: interior multiplication with each
// row paired against removal of one sym exponent.
GradedElement delta_complex(const MorphismData& f, const GradedElement& x);

// E_2 -> E_1: nested interior multiplication by rows r..1 (row 1 innermost),
// consuming the detq factor.
GradedElement delta_F(const MorphismData& f, const GradedElement& x);

// E_1 -> E_0 = Q: apply the morphism, Σ_j interior by row j tensored with ε_j.
GradedElement apply_f(const MorphismData& f, const GradedElement& x);

// Dispatches each homogeneous level of x through apply_f / delta_F /
// delta_complex; level-0 words map to zero.
GradedElement differential_full(const MorphismData& f, const GradedElement& x);

enum class ExactnessLevel { AtE, AtE2 };

struct ExactnessReport {
  ExactnessLevel level;
  int dim_middle;      // fiber dimension of the middle space
  int rank_incoming;   // rank of the differential arriving there
  int rank_outgoing;   // rank of the differential leaving it
  bool exact;          // rank_incoming + rank_outgoing == dim_middle
};

// Exact rank check of the complex at a point where f is surjective
// (det(ff*) != 0 there; otherwise a domain error is thrown).
ExactnessReport exactness_at_point(const MorphismData& f,
                                   const std::vector<GaussianRational>& point,
                                   ExactnessLevel level);

}  // namespace gkoszul
