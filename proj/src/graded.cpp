#include "graded.hpp"

#include <sstream>

#include "linsolve.hpp"

namespace gkoszul {

GradedElement::GradedElement(int n, int m, int r) : n_(n), m_(m), r_(r) {
  if (n < 1 || n > 8 || m < 1 || m > 16 || r < 1 || r > 8 || r > m)
    throw std::invalid_argument("rank data out of range");
}

void GradedElement::check_compatible(const GradedElement& o) const {
  if (n_ != o.n_ || m_ != o.m_ || r_ != o.r_)
    throw std::invalid_argument("rank data mismatch between graded elements");
}

void GradedElement::add_term(const BasisWord& w, const RationalFunction& c) {
  if (c.is_zero()) return;
  if (w.form >> n_ || w.ext >> m_) throw std::invalid_argument("generator index out of range");
  if (w.qout > r_ || w.qin > r_) throw std::invalid_argument("Q factor index out of range");
  for (int i = r_; i < 8; ++i)
    if (w.sym[i]) throw std::invalid_argument("sym exponent index out of range");
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
  GradedElement r = *this;
  r += o;
  return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const {
  GradedElement r = *this;
  r -= o;
  return r;
}

GradedElement GradedElement::operator-() const {
  GradedElement r(n_, m_, r_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

GradedElement GradedElement::scaled(const RationalFunction& c) const {
  GradedElement r(n_, m_, r_);
  if (c.is_zero()) return r;
  for (const auto& [w, cc] : terms_) {
    RationalFunction p = cc * c;
    if (!p.is_zero()) r.terms_.emplace(w, std::move(p));
  }
  return r;
}

GradedElement GradedElement::component(int form_deg, int ext_deg, int sym_deg) const {
  GradedElement r(n_, m_, r_);
  for (const auto& [w, c] : terms_)
    if (w.form_degree() == form_deg && w.ext_degree() == ext_deg && w.sym_degree() == sym_deg)
      r.terms_.emplace(w, c);
  return r;
}

bool GradedElement::operator==(const GradedElement& o) const {
  return n_ == o.n_ && m_ == o.m_ && r_ == o.r_ && terms_ == o.terms_;
}

GradedElement GradedElement::scalar(int n, int m, int r, const RationalFunction& c) {
  GradedElement x(n, m, r);
  x.add_term(BasisWord{}, c);
  return x;
}

GradedElement GradedElement::from_word(int n, int m, int r, const BasisWord& w,
                                       const RationalFunction& c) {
  GradedElement x(n, m, r);
  x.add_term(w, c);
  return x;
}

std::string GradedElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [w, c] : terms_) {
    if (!first_term) os << "  +  ";
    first_term = false;
    os << "(" << c.to_string() << ")";
    for (int j = 1; j <= n_; ++j)
      if (w.form & (1u << (j - 1))) os << " th" << j;
    for (int i = 1; i <= m_; ++i)
      if (w.ext & (1u << (i - 1))) os << " e" << i;
    for (int j = 1; j <= r_; ++j)
      if (w.sym[j - 1]) {
        os << " (eps" << j << "*)^" << static_cast<int>(w.sym[j - 1]);
      }
    if (w.detq) os << " detq*";
    if (w.qout) os << " eps" << static_cast<int>(w.qout);
    if (w.qin) os << " eps" << static_cast<int>(w.qin) << "*";
  }
  return os.str();
}

namespace {

// Pairs (a in A, b in B) with b < a; parity of the shuffle interleaving B into A.
int inversions(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  while (b) {
    int bit = __builtin_ctz(b);
    b &= b - 1;
    inv += __builtin_popcount(a >> (bit + 1));
  }
  return inv;
}

GaussianRational binomial_product(const std::array<std::uint8_t, 8>& a,
                                  const std::array<std::uint8_t, 8>& b) {
  mpz_class acc(1), bin;
  for (int i = 0; i < 8; ++i) {
    if (a[i] == 0 || b[i] == 0) continue;
    mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(a[i]) + b[i], a[i]);
    acc *= bin;
  }
  return GaussianRational(mpq_class(acc));
}

}  // namespace

GradedElement wedge(const GradedElement& a, const GradedElement& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.r() != b.r())
    throw std::invalid_argument("rank data mismatch between graded elements");
  GradedElement out(a.n(), a.m(), a.r());
  for (const auto& [x, cx] : a.terms()) {
    for (const auto& [y, cy] : b.terms()) {
      if (x.form & y.form) continue;
      if (x.ext & y.ext) continue;
      if (x.detq && y.detq) throw std::invalid_argument("product carries two detq factors");
      if (x.qout && y.qout) throw std::invalid_argument("product carries two Q factors");
      if (x.qin && y.qin) throw std::invalid_argument("product carries two Q* hom slots");
      int sgn = inversions(x.form, y.form) + inversions(x.ext, y.ext) +
                x.ext_degree() * y.form_degree();
      BasisWord w;
      w.form = x.form | y.form;
      w.ext = x.ext | y.ext;
      for (int i = 0; i < 8; ++i) w.sym[i] = static_cast<std::uint8_t>(x.sym[i] + y.sym[i]);
      w.detq = x.detq || y.detq;
      w.qout = x.qout ? x.qout : y.qout;
      w.qin = x.qin ? x.qin : y.qin;
      GaussianRational factor = binomial_product(x.sym, y.sym);
      if (sgn & 1) factor = -factor;
      out.add_term(w, (cx * cy).scaled(factor));
    }
  }
  return out;
}

GradedElement dbar(const GradedElement& x) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    for (int j = 1; j <= x.n(); ++j) {
      std::uint32_t bit = 1u << (j - 1);
      if (w.form & bit) continue;
      RationalFunction dc = c.derivative_w(j);
      if (dc.is_zero()) continue;
      BasisWord nw = w;
      nw.form |= bit;
      int sgn = __builtin_popcount(w.form & (bit - 1));
      out.add_term(nw, (sgn & 1) ? -dc : dc);
    }
  }
  return out;
}

namespace {

// One term of δ_η: contract each ext generator, antiderivation signs included.
void accumulate_interior(GradedElement& out, const std::vector<RationalFunction>& eta,
                         const BasisWord& w, const RationalFunction& c) {
  int base = w.form_degree();
  std::uint32_t ext = w.ext;
  while (ext) {
    int bit = __builtin_ctz(ext);
    ext &= ext - 1;
    const RationalFunction& ei = eta[bit];
    if (ei.is_zero()) continue;
    int before = __builtin_popcount(w.ext & ((1u << bit) - 1));
    BasisWord nw = w;
    nw.ext &= ~(1u << bit);
    RationalFunction term = c * ei;
    if ((base + before) & 1) term = -term;
    out.add_term(nw, term);
  }
}

std::vector<RationalFunction> lift_row(const std::vector<Poly>& row) {
  std::vector<RationalFunction> out;
  out.reserve(row.size());
  for (const auto& p : row) out.push_back(RationalFunction::from_poly(p));
  return out;
}

}  // namespace

GradedElement interior_ext(const std::vector<RationalFunction>& eta, const GradedElement& x) {
  if (static_cast<int>(eta.size()) != x.m())
    throw std::invalid_argument("interior row length must equal rank of E");
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) accumulate_interior(out, eta, w, c);
  return out;
}

GradedElement interior_ext(const std::vector<Poly>& eta, const GradedElement& x) {
  return interior_ext(lift_row(eta), x);
}

int word_level(const BasisWord& w, int r) {
  if (w.qout) {
    if (w.ext || w.detq || w.sym_degree()) return -1;
    return 0;
  }
  if (w.detq) {
    int k = w.ext_degree() - r + 1;
    if (k >= 2 && w.sym_degree() == k - 2) return k;
    return -1;
  }
  if (w.ext_degree() == 1 && w.sym_degree() == 0) return 1;
  return -1;
}

namespace {

void check_ranks(const MorphismData& f, const GradedElement& x) {
  if (f.n != x.n() || f.m != x.m() || f.r != x.r())
    throw std::invalid_argument("morphism rank data does not match element");
}

std::vector<std::vector<RationalFunction>> lifted_rows(const MorphismData& f) {
  std::vector<std::vector<RationalFunction>> rows;
  rows.reserve(f.r);
  for (const auto& row : f.entries) rows.push_back(lift_row(row));
  return rows;
}

void delta_complex_word(const std::vector<std::vector<RationalFunction>>& rows, int r,
                        const BasisWord& w, const RationalFunction& c, GradedElement& out) {
  for (int j = 0; j < r; ++j) {
    if (w.sym[j] == 0) continue;
    BasisWord nw = w;
    nw.sym[j] -= 1;
    accumulate_interior(out, rows[j], nw, c);
  }
}

void delta_F_word(const std::vector<std::vector<RationalFunction>>& rows, int r,
                  const BasisWord& w, const RationalFunction& c, GradedElement& out) {
  BasisWord nw = w;
  nw.detq = false;
  GradedElement cur = GradedElement::from_word(out.n(), out.m(), out.r(), nw, c);
  for (int j = 0; j < r; ++j) {
    GradedElement next(out.n(), out.m(), out.r());
    for (const auto& [ww, cc] : cur.terms()) accumulate_interior(next, rows[j], ww, cc);
    cur = std::move(next);
  }
  out += cur;
}

void apply_f_word(const std::vector<std::vector<RationalFunction>>& rows, int r,
                  const BasisWord& w, const RationalFunction& c, GradedElement& out) {
  for (int j = 0; j < r; ++j) {
    BasisWord nw = w;
    nw.qout = static_cast<std::uint8_t>(j + 1);
    accumulate_interior(out, rows[j], nw, c);
  }
}

}  // namespace

GradedElement delta_complex(const MorphismData& f, const GradedElement& x) {
  check_ranks(f, x);
  auto rows = lifted_rows(f);
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    if (!w.detq || w.sym_degree() < 1 || w.qout)
      throw std::invalid_argument("element is not at a level admitting the sym differential");
    delta_complex_word(rows, x.r(), w, c, out);
  }
  return out;
}

GradedElement delta_F(const MorphismData& f, const GradedElement& x) {
  check_ranks(f, x);
  auto rows = lifted_rows(f);
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    if (!w.detq || w.sym_degree() != 0 || w.qout)
      throw std::invalid_argument("element is not at the determinant-section level");
    delta_F_word(rows, x.r(), w, c, out);
  }
  return out;
}

GradedElement apply_f(const MorphismData& f, const GradedElement& x) {
  check_ranks(f, x);
  auto rows = lifted_rows(f);
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    if (w.detq || w.qout || w.sym_degree() != 0 || w.ext_degree() != 1)
      throw std::invalid_argument("element is not at the bundle level of E");
    apply_f_word(rows, x.r(), w, c, out);
  }
  return out;
}

GradedElement differential_full(const MorphismData& f, const GradedElement& x) {
  check_ranks(f, x);
  auto rows = lifted_rows(f);
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    if (w.qout) continue;  // Q-valued words are in the last spot of the complex
    if (w.detq && w.sym_degree() >= 1)
      delta_complex_word(rows, x.r(), w, c, out);
    else if (w.detq)
      delta_F_word(rows, x.r(), w, c, out);
    else if (w.ext_degree() == 1 && w.sym_degree() == 0)
      apply_f_word(rows, x.r(), w, c, out);
    else if (w.ext_degree() == 0 && w.sym_degree() == 0)
      continue;  // scalar-form words: nothing of E to consume
    else
      throw std::invalid_argument("element mixes shapes outside the complex");
  }
  return out;
}

namespace {

// Fiber element of ΛE at a point: mask of e indices -> value.
using NumElt = std::map<std::uint32_t, GaussianRational>;

NumElt interior_num(const std::vector<GaussianRational>& row, const NumElt& x) {
  NumElt out;
  for (const auto& [mask, c] : x) {
    std::uint32_t ext = mask;
    while (ext) {
      int bit = __builtin_ctz(ext);
      ext &= ext - 1;
      if (row[bit].is_zero()) continue;
      int before = __builtin_popcount(mask & ((1u << bit) - 1));
      GaussianRational v = c * row[bit];
      if (before & 1) v = -v;
      std::uint32_t nm = mask & ~(1u << bit);
      auto [it, inserted] = out.emplace(nm, v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

std::vector<std::uint32_t> masks_of_weight(int m, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > m) return out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
    if (__builtin_popcount(mask) == k) out.push_back(mask);
  return out;
}

}  // namespace

ExactnessReport exactness_at_point(const MorphismData& f,
                                   const std::vector<GaussianRational>& point,
                                   ExactnessLevel level) {
  f.validate();
  if (static_cast<int>(point.size()) != f.n)
    throw std::invalid_argument("point dimension mismatch");

  // Numeric matrix of f at the point.
  std::vector<std::vector<GaussianRational>> A(f.r, std::vector<GaussianRational>(f.m));
  for (int j = 0; j < f.r; ++j)
    for (int i = 0; i < f.m; ++i) A[j][i] = f.entries[j][i].evaluate(point);

  Matrix gram(f.r, std::vector<GaussianRational>(f.r));
  for (int j = 0; j < f.r; ++j)
    for (int k = 0; k < f.r; ++k) {
      GaussianRational s;
      for (int i = 0; i < f.m; ++i) s += A[j][i] * A[k][i].conj();
      gram[j][k] = s;
    }
  if (matrix_det(gram).is_zero())
    throw std::domain_error("det(ff*) = 0 at the point; the morphism is not surjective there");

  auto e2_basis = masks_of_weight(f.m, f.r + 1);
  std::map<std::uint32_t, int> e2_index;
  for (int i = 0; i < static_cast<int>(e2_basis.size()); ++i) e2_index[e2_basis[i]] = i;

  // Matrix of the determinant-level differential E_2 -> E, columns over e2_basis.
  Matrix d2(f.m, std::vector<GaussianRational>(e2_basis.size()));
  for (int col = 0; col < static_cast<int>(e2_basis.size()); ++col) {
    NumElt cur{{e2_basis[col], GaussianRational(1)}};
    for (int j = 0; j < f.r; ++j) cur = interior_num(A[j], cur);
    for (const auto& [mask, v] : cur) d2[__builtin_ctz(mask)][col] = v;
  }
  int rank_d2 = matrix_rank(d2);

  ExactnessReport rep{};
  rep.level = level;
  if (level == ExactnessLevel::AtE) {
    rep.dim_middle = f.m;
    rep.rank_incoming = rank_d2;
    rep.rank_outgoing = matrix_rank(A);
    rep.exact = rep.rank_incoming + rep.rank_outgoing == rep.dim_middle;
    return rep;
  }

  // Incoming differential E_3 -> E_2; source basis (mask of weight r+2) x row.
  auto e3_masks = masks_of_weight(f.m, f.r + 2);
  Matrix d3(e2_basis.size(),
            std::vector<GaussianRational>(e3_masks.size() * static_cast<std::size_t>(f.r)));
  int col = 0;
  for (auto mask : e3_masks)
    for (int j = 0; j < f.r; ++j, ++col) {
      NumElt img = interior_num(A[j], NumElt{{mask, GaussianRational(1)}});
      for (const auto& [tm, v] : img) d3[e2_index.at(tm)][col] = v;
    }
  rep.dim_middle = static_cast<int>(e2_basis.size());
  rep.rank_incoming = e2_basis.empty() ? 0 : matrix_rank(d3);
  rep.rank_outgoing = rank_d2;
  rep.exact = rep.rank_incoming + rep.rank_outgoing == rep.dim_middle;
  return rep;
}

}  // namespace gkoszul
