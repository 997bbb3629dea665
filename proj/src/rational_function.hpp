#pragma once

#include "poly.hpp"

namespace gkoszul {

// Quotient of polynomials, kept reduced with a monic denominator.
class RationalFunction {
 public:
  explicit RationalFunction(int nv = 0)
      : num_(nv), den_(Poly::constant(nv, GaussianRational(1))) {}
  RationalFunction(Poly num, Poly den);
  static RationalFunction from_poly(Poly p) {
    RationalFunction r(p.nvars());
    r.num_ = std::move(p);
    return r;
  }
  static RationalFunction constant(int nv, const GaussianRational& c) {
    return from_poly(Poly::constant(nv, c));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction scaled(const GaussianRational& c) const;
  RationalFunction conjugate() const;
  RationalFunction derivative_w(int j) const;
  GaussianRational evaluate(const std::vector<GaussianRational>& z) const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  void normalize();
  Poly num_, den_;
};

}  // namespace gkoszul
