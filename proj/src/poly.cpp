#include "poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

namespace gkoszul {

Poly::Poly(int nv) : nv_(nv) {
  if (nv < 0 || 2 * nv > Monomial::kMaxSlots)
    throw std::invalid_argument("base variable count out of range");
}

Poly Poly::constant(int nv, const GaussianRational& c) {
  Poly p(nv);
  if (!c.is_zero()) p.terms_.emplace(Monomial(2 * nv), c);
  return p;
}

Poly Poly::variable_z(int nv, int j) {
  if (j < 1 || j > nv) throw std::invalid_argument("z index out of range");
  Monomial m(2 * nv);
  m.e[j - 1] = 1;
  return from_term(nv, m, GaussianRational(1));
}

Poly Poly::variable_w(int nv, int j) {
  if (j < 1 || j > nv) throw std::invalid_argument("w index out of range");
  Monomial m(2 * nv);
  m.e[nv + j - 1] = 1;
  return from_term(nv, m, GaussianRational(1));
}

Poly Poly::from_term(int nv, const Monomial& m, const GaussianRational& c) {
  if (m.slots != 2 * nv) throw std::invalid_argument("monomial slot mismatch");
  Poly p(nv);
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::degree_z() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int dz = 0;
    for (int i = 0; i < nv_; ++i) dz += m.e[i];
    d = std::max(d, dz);
  }
  return d;
}

bool Poly::depends_on_w() const {
  for (const auto& [m, c] : terms_)
    for (int i = nv_; i < 2 * nv_; ++i)
      if (m.e[i]) return true;
  return false;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const GaussianRational& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

GaussianRational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Poly::add_term(const Monomial& m, const GaussianRational& c) {
  if (m.slots != 2 * nv_) throw std::invalid_argument("monomial slot mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& o) const {
  if (nv_ != o.nv_) throw std::invalid_argument("polynomial variable count mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly r(nv_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_compatible(o);
  Poly r(nv_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::scaled(const GaussianRational& c) const {
  Poly r(nv_);
  if (c.is_zero()) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
  return r;
}

Poly Poly::conjugate() const {
  Poly r(nv_);
  for (const auto& [m, c] : terms_) {
    Monomial s(2 * nv_);
    for (int i = 0; i < nv_; ++i) {
      s.e[i] = m.e[nv_ + i];
      s.e[nv_ + i] = m.e[i];
    }
    r.terms_.emplace(s, c.conj());
  }
  return r;
}

static Poly derivative_slot(const Poly& p, int slot) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[slot] == 0) continue;
    Monomial s = m;
    s.e[slot] -= 1;
    r.add_term(s, c * GaussianRational(static_cast<long>(m.e[slot])));
  }
  return r;
}

Poly Poly::derivative_z(int j) const {
  if (j < 1 || j > nv_) throw std::invalid_argument("z index out of range");
  return derivative_slot(*this, j - 1);
}

Poly Poly::derivative_w(int j) const {
  if (j < 1 || j > nv_) throw std::invalid_argument("w index out of range");
  return derivative_slot(*this, nv_ + j - 1);
}

static GaussianRational power_of(const GaussianRational& v, unsigned k) {
  GaussianRational acc(1);
  GaussianRational base = v;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

GaussianRational Poly::evaluate(const std::vector<GaussianRational>& z) const {
  std::vector<GaussianRational> w;
  w.reserve(z.size());
  for (const auto& v : z) w.push_back(v.conj());
  return evaluate_zw(z, w);
}

GaussianRational Poly::evaluate_zw(const std::vector<GaussianRational>& z,
                                   const std::vector<GaussianRational>& w) const {
  if (static_cast<int>(z.size()) != nv_ || static_cast<int>(w.size()) != nv_)
    throw std::invalid_argument("evaluation point has wrong length");
  GaussianRational acc;
  for (const auto& [m, c] : terms_) {
    GaussianRational t = c;
    for (int i = 0; i < nv_; ++i) {
      if (m.e[i]) t *= power_of(z[i], m.e[i]);
      if (m.e[nv_ + i]) t *= power_of(w[i], m.e[nv_ + i]);
    }
    acc += t;
  }
  return acc;
}

Poly Poly::substitute_z(const std::vector<Poly>& images, int new_nv) const {
  if (depends_on_w()) throw std::invalid_argument("substitution requires a w-free polynomial");
  if (static_cast<int>(images.size()) != nv_)
    throw std::invalid_argument("substitution image count mismatch");
  Poly r(new_nv);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(new_nv, c);
    for (int i = 0; i < nv_; ++i)
      if (m.e[i]) t = t * pow(images[i], m.e[i]);
    r += t;
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.to_string();
    for (int i = 0; i < nv_; ++i) {
      if (it->first.e[i]) {
        os << "*z" << (i + 1);
        if (it->first.e[i] > 1) os << "^" << it->first.e[i];
      }
    }
    for (int i = 0; i < nv_; ++i) {
      if (it->first.e[nv_ + i]) {
        os << "*w" << (i + 1);
        if (it->first.e[nv_ + i] > 1) os << "^" << it->first.e[nv_ + i];
      }
    }
  }
  return os.str();
}

Poly pow(const Poly& a, unsigned k) {
  Poly acc = Poly::constant(a.nvars(), GaussianRational(1));
  for (unsigned i = 0; i < k; ++i) acc = acc * a;
  return acc;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly q(a.nvars());
  Poly r = a;
  const Monomial& lb = b.leading_monomial();
  GaussianRational lbc_inv = b.leading_coeff().inverse();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Monomial qm = lr.quotient(lb);
    GaussianRational qc = r.leading_coeff() * lbc_inv;
    Poly qt = Poly::from_term(a.nvars(), qm, qc);
    q += qt;
    r -= qt * b;
  }
  return q;
}

namespace {

int deg_in(const Poly& p, int slot) {
  int d = -1;
  for (const auto& [m, c] : p.terms()) d = std::max(d, static_cast<int>(m.e[slot]));
  return d;
}

// Coefficient of slot^k, with that slot's exponent cleared.
Poly coeff_of(const Poly& p, int slot, int k) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[slot] != k) continue;
    Monomial s = m;
    s.e[slot] = 0;
    r.add_term(s, c);
  }
  return r;
}

Poly mul_slot_pow(const Poly& p, int slot, int k) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Monomial s = m;
    s.e[slot] = static_cast<std::uint16_t>(s.e[slot] + k);
    r.add_term(s, c);
  }
  return r;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading_coeff().inverse());
}

Poly extract_monomial_content(Poly& p) {
  Monomial g = p.terms().begin()->first;
  for (const auto& [m, c] : p.terms()) g = Monomial::componentwise_min(g, m);
  if (g.is_constant()) return Poly::from_term(p.nvars(), g, GaussianRational(1));
  Poly shifted(p.nvars());
  for (const auto& [m, c] : p.terms()) shifted.add_term(m.quotient(g), c);
  Poly content = Poly::from_term(p.nvars(), g, GaussianRational(1));
  p = shifted;
  return content;
}

Poly gcd_core(Poly a, Poly b);

// Gcd of the coefficients of p viewed as univariate in `slot`.
Poly content_in(const Poly& p, int slot) {
  Poly c(p.nvars());
  int d = deg_in(p, slot);
  for (int k = 0; k <= d; ++k) {
    Poly ck = coeff_of(p, slot, k);
    if (ck.is_zero()) continue;
    c = c.is_zero() ? make_monic(ck) : gcd_core(c, ck);
    if (c.is_constant()) return Poly::constant(p.nvars(), GaussianRational(1));
  }
  return c;
}

// Remainder of lc(v)^(deg u - deg v + 1) * u modulo v, univariate in `slot`.
// The fixed exponent is what makes the subresultant divisors exact.
Poly pseudo_remainder(Poly u, const Poly& v, int slot) {
  int dv = deg_in(v, slot);
  Poly lcv = coeff_of(v, slot, dv);
  int steps_needed = deg_in(u, slot) - dv + 1;
  int steps = 0;
  while (!u.is_zero()) {
    int du = deg_in(u, slot);
    if (du < dv) break;
    Poly lcu = coeff_of(u, slot, du);
    u = lcv * u - mul_slot_pow(lcu * v, slot, du - dv);
    ++steps;
  }
  for (; steps < steps_needed; ++steps) u = lcv * u;
  return u;
}

// Degree of the last nonzero entry after running Euclid on two coefficient
// vectors over Q(i); -1 for the zero polynomial.
int univariate_gcd_degree(std::vector<GaussianRational> u, std::vector<GaussianRational> v) {
  auto deg_of = [](const std::vector<GaussianRational>& p) {
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
      if (!p[d].is_zero()) return d;
    return -1;
  };
  for (;;) {
    int du = deg_of(u), dv = deg_of(v);
    if (dv < 0) return du;
    if (du < dv) {
      std::swap(u, v);
      continue;
    }
    GaussianRational f = u[du] * v[dv].inverse();
    for (int k = 0; k <= dv; ++k)
      u[du - dv + k] = u[du - dv + k] - f * v[k];
    u[du] = GaussianRational();
  }
}

// Image of p with every slot except `keep` evaluated at q, as a coefficient
// vector in the kept slot.
std::vector<GaussianRational> image_in_slot(const Poly& p, int keep,
                                            const std::vector<GaussianRational>& q, int deg) {
  std::vector<GaussianRational> out(static_cast<std::size_t>(deg) + 1);
  for (const auto& [m, c] : p.terms()) {
    GaussianRational v = c;
    for (int t = 0; t < p.slot_count(); ++t) {
      if (t == keep) continue;
      for (int e = 0; e < m.e[t]; ++e) v = v * q[t];
    }
    out[m.e[keep]] = out[m.e[keep]] + v;
  }
  return out;
}

// Exact one-sided test: true only when gcd(a, b) is certainly constant.
// For each slot where both inputs have positive degree, all other slots are
// evaluated at a point where both leading coefficients survive; the gcd of
// the two univariate images then bounds the true gcd's degree in that slot
// (the leading coefficient of a product is the product of the leading
// coefficients, so a divisor's top term cannot vanish at such a point).
// Every bound zero forces a constant gcd; anything inconclusive — no usable
// point, or a nonconstant image gcd — returns false and the caller runs the
// full subresultant chain.
bool gcd_certainly_constant(const Poly& a, const Poly& b) {
  static const long kPoints[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int npoints = static_cast<int>(sizeof(kPoints) / sizeof(kPoints[0]));
  int slots = a.slot_count();
  for (int s = 0; s < slots; ++s) {
    int da = deg_in(a, s), db = deg_in(b, s);
    if (da <= 0 || db <= 0) continue;  // the gcd has degree 0 here already
    bool settled = false;
    for (int attempt = 0; attempt < 4 && !settled; ++attempt) {
      std::vector<GaussianRational> q(slots);
      for (int t = 0; t < slots; ++t)
        q[t] = GaussianRational(kPoints[(t + attempt * 3) % npoints]);
      std::vector<GaussianRational> ia = image_in_slot(a, s, q, da);
      std::vector<GaussianRational> ib = image_in_slot(b, s, q, db);
      if (ia[da].is_zero() || ib[db].is_zero()) continue;  // degree dropped; retry
      if (univariate_gcd_degree(std::move(ia), std::move(ib)) > 0) return false;
      settled = true;
    }
    if (!settled) return false;
  }
  return true;
}

Poly gcd_core(Poly a, Poly b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  Poly mono_a = extract_monomial_content(a);
  Poly mono_b = extract_monomial_content(b);
  Poly mono = Poly::from_term(
      a.nvars(), Monomial::componentwise_min(mono_a.leading_monomial(), mono_b.leading_monomial()),
      GaussianRational(1));
  if (a.is_constant() || b.is_constant()) return mono;
  if (a == b || divide_exact(b, a)) return make_monic(mono * a);
  if (divide_exact(a, b)) return make_monic(mono * b);
  if (gcd_certainly_constant(a, b)) return mono;

  // Main variable: a slot where both have positive degree, smallest max-degree.
  int slot = -1, best = -1;
  for (int s = 0; s < a.slot_count(); ++s) {
    int da = deg_in(a, s), db = deg_in(b, s);
    if (da <= 0 || db <= 0) continue;
    int score = std::max(da, db);
    if (slot < 0 || score < best) {
      slot = s;
      best = score;
    }
  }
  if (slot < 0) return mono;  // disjoint variable supports

  Poly ca = content_in(a, slot);
  Poly cb = content_in(b, slot);
  Poly c = gcd_core(ca, cb);
  Poly u = *divide_exact(a, ca);
  Poly v = *divide_exact(b, cb);
  if (deg_in(u, slot) < deg_in(v, slot)) std::swap(u, v);

  // Subresultant remainder sequence: spurious growth is removed by exact
  // division with the tracked g*h^delta factor instead of content gcds.
  Poly one = Poly::constant(a.nvars(), GaussianRational(1));
  Poly g = one, h = one;
  for (;;) {
    if (deg_in(v, slot) == 0) return make_monic(mono * c);
    int delta = deg_in(u, slot) - deg_in(v, slot);
    Poly r = pseudo_remainder(u, v, slot);
    u = v;
    if (r.is_zero()) break;
    v = *divide_exact(r, g * pow(h, static_cast<unsigned>(delta)));
    g = coeff_of(u, slot, deg_in(u, slot));
    if (delta > 0)
      h = *divide_exact(pow(g, static_cast<unsigned>(delta)),
                        pow(h, static_cast<unsigned>(delta - 1)));
  }
  Poly pc = content_in(u, slot);
  u = *divide_exact(u, pc);
  return make_monic(mono * c * u);
}

}  // namespace

Poly gcd_poly(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("gcd variable count mismatch");
  return gcd_core(a, b);
}

}  // namespace gkoszul
