#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gkoszul {

// Element of Q(i). Both parts are exact rationals. Invariant: every mpq_class
// handed to a constructor is canonical (reduced, positive denominator); GMP
// arithmetic preserves this, and string parsing canonicalizes at the boundary.
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}
  GaussianRational(mpq_class r) : re(std::move(r)), im(0) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  // |v|^2 as an exact rational.
  mpq_class norm() const { return re * re + im * im; }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class nre = re * o.re - im * o.im;
    mpq_class nim = re * o.im + im * o.re;
    re = std::move(nre);
    im = std::move(nim);
    return *this;
  }

  GaussianRational inverse() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    return GaussianRational(re / n, -im / n);
  }

  std::string to_string() const;
};

inline GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
inline GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
inline GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  return a * b.inverse();
}
inline bool operator==(const GaussianRational& a, const GaussianRational& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

inline std::string GaussianRational::to_string() const {
  if (im == 0) return re.get_str();
  std::string s = "(" + re.get_str();
  s += im < 0 ? "-" : "+";
  mpq_class a = abs(im);
  s += a.get_str() + "i)";
  return s;
}

// Parses decimal numerator/denominator strings into an exact rational.
inline mpq_class rational_from_strings(const std::string& num, const std::string& den) {
  mpz_class n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
    throw std::invalid_argument("malformed rational component '" + num + "/" + den + "'");
  if (d == 0) throw std::invalid_argument("zero denominator in rational");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace gkoszul
