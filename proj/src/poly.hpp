#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaussian_rational.hpp"
#include "monomial.hpp"

namespace gkoszul {

// Sparse multivariate polynomial over Q(i) in 2n variables: z_1..z_n and the
// formal conjugates w_1..w_n. Identities involving conjugation are proved in
// this ring; they then hold on the slice w = conj(z). Terms are kept in graded
// lexicographic order with no zero coefficients.
class Poly {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  explicit Poly(int nv = 0);

  static Poly constant(int nv, const GaussianRational& c);
  static Poly variable_z(int nv, int j);  // 1-based
  static Poly variable_w(int nv, int j);  // 1-based
  static Poly from_term(int nv, const Monomial& m, const GaussianRational& c);

  int nvars() const { return nv_; }
  int slot_count() const { return 2 * nv_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const TermMap& terms() const { return terms_; }

  // Total degree over all slots; -1 for the zero polynomial.
  int total_degree() const;
  // Total degree of the z-part only; -1 for zero.
  int degree_z() const;
  bool depends_on_w() const;

  const Monomial& leading_monomial() const;
  const GaussianRational& leading_coeff() const;
  GaussianRational coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const GaussianRational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const GaussianRational& c) const;

  Poly conjugate() const;
  Poly derivative_z(int j) const;  // 1-based
  Poly derivative_w(int j) const;  // 1-based

  // Evaluation on the slice w = conj(z); point has n entries.
  GaussianRational evaluate(const std::vector<GaussianRational>& z) const;
  // Evaluation with independent z and w values.
  GaussianRational evaluate_zw(const std::vector<GaussianRational>& z,
                               const std::vector<GaussianRational>& w) const;

  // Substitutes images[i] for z_{i+1}; requires a w-free polynomial and
  // w-free images over new_nv base variables.
  Poly substitute_z(const std::vector<Poly>& images, int new_nv) const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nv_ == b.nv_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  int nv_;
  TermMap terms_;

  void check_compatible(const Poly& o) const;
};

inline Poly operator+(Poly a, const Poly& b) { return a += b; }
inline Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly pow(const Poly& a, unsigned k);

// Exact quotient, or nullopt if b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Monic gcd under the graded-lex order (primitive pseudo-remainder sequences
// with recursive content extraction).
Poly gcd_poly(const Poly& a, const Poly& b);

}  // namespace gkoszul
