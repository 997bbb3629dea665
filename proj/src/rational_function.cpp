#include "rational_function.hpp"

#include <sstream>

namespace gkoszul {

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars())
    throw std::invalid_argument("numerator and denominator variable count mismatch");
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), GaussianRational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd_poly(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  GaussianRational lc = den_.leading_coeff();
  if (!lc.is_one()) {
    GaussianRational inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(nvars());
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  // Common-factor split keeps the intermediate products small.
  Poly g = gcd_poly(den_, o.den_);
  if (g.is_constant()) return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly da = *divide_exact(den_, g);
  Poly db = *divide_exact(o.den_, g);
  return RationalFunction(num_ * db + o.num_ * da, da * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(nvars());
  Poly na = num_, db = o.den_;
  Poly g1 = gcd_poly(na, db);
  if (!g1.is_constant()) {
    na = *divide_exact(na, g1);
    db = *divide_exact(db, g1);
  }
  Poly nb = o.num_, da = den_;
  Poly g2 = gcd_poly(nb, da);
  if (!g2.is_constant()) {
    nb = *divide_exact(nb, g2);
    da = *divide_exact(da, g2);
  }
  RationalFunction r(nvars());
  r.num_ = na * nb;
  r.den_ = da * db;
  GaussianRational lc = r.den_.leading_coeff();
  if (!lc.is_one()) {
    GaussianRational inv = lc.inverse();
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  RationalFunction inv(o.nvars());
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  GaussianRational lc = inv.den_.leading_coeff();
  if (!lc.is_one()) {
    GaussianRational s = lc.inverse();
    inv.num_ = inv.num_.scaled(s);
    inv.den_ = inv.den_.scaled(s);
  }
  return *this * inv;
}

RationalFunction RationalFunction::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return RationalFunction(nvars());
  RationalFunction r(nvars());
  r.num_ = num_.scaled(c);
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::conjugate() const {
  return RationalFunction(num_.conjugate(), den_.conjugate());
}

RationalFunction RationalFunction::derivative_w(int j) const {
  if (den_.is_constant())
    return from_poly(num_.derivative_w(j).scaled(den_.leading_coeff().inverse()));
  Poly dn = num_.derivative_w(j);
  Poly dd = den_.derivative_w(j);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  // Quotient rule with the common factor v = gcd(den, den') split off up
  // front: (dn*den - num*dd) / den^2 == (dn*u - num*w) / (u*den) where
  // den = u*v and dd = w*v.  Splitting first keeps the constructor's
  // normalization away from the large spurious factor v that the raw
  // numerator would otherwise share with den^2 (e.g. v = g^(t-1) when
  // den = g^t).
  Poly v = gcd_poly(den_, dd);
  if (v.is_constant())
    return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
  Poly u = *divide_exact(den_, v);
  Poly w = *divide_exact(dd, v);
  return RationalFunction(dn * u - num_ * w, u * den_);
}

GaussianRational RationalFunction::evaluate(const std::vector<GaussianRational>& z) const {
  GaussianRational d = den_.evaluate(z);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_.evaluate(z) * d.inverse();
}

std::string RationalFunction::to_string() const {
  if (is_poly()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ") / (" << den_.to_string() << ")";
  return os.str();
}

}  // namespace gkoszul
