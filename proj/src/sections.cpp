#include "sections.hpp"

namespace gkoszul {

namespace {

std::vector<std::vector<Poly>> strike(const std::vector<std::vector<Poly>>& a, int row, int col) {
  std::vector<std::vector<Poly>> out;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (i == row) continue;
    std::vector<Poly> r;
    for (int j = 0; j < static_cast<int>(a[i].size()); ++j)
      if (j != col) r.push_back(a[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

GradedElement dress_detq(GradedElement x) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    BasisWord nw = w;
    nw.detq = true;
    out.add_term(nw, c);
  }
  return out;
}

GradedElement dress_sym(const GradedElement& x, int l) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    BasisWord nw = w;
    nw.sym[l] = static_cast<std::uint8_t>(nw.sym[l] + 1);
    out.add_term(nw, c);
  }
  return out;
}

GradedElement dress_qin(const GradedElement& x, int l) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    BasisWord nw = w;
    nw.qin = static_cast<std::uint8_t>(l + 1);
    out.add_term(nw, c);
  }
  return out;
}

// sigma_1 ∧ … ∧ sigma_r with the det Q* marker.
GradedElement cap_sigma_block(const DerivedSections& ds) {
  GradedElement acc = ds.sigma_cols[0];
  for (std::size_t l = 1; l < ds.sigma_cols.size(); ++l) acc = wedge(acc, ds.sigma_cols[l]);
  return dress_detq(std::move(acc));
}

// Σ_l dbar(sigma_l) carrying eps_l* in the chosen slot kind.
GradedElement dbar_sigma_sym(const DerivedSections& ds) {
  GradedElement acc(ds.sigma.n(), ds.sigma.m(), ds.sigma.r());
  for (std::size_t l = 0; l < ds.sigma_cols.size(); ++l)
    acc += dress_sym(dbar(ds.sigma_cols[l]), static_cast<int>(l));
  return acc;
}

GradedElement dbar_sigma_hom(const DerivedSections& ds) {
  GradedElement acc(ds.sigma.n(), ds.sigma.m(), ds.sigma.r());
  for (std::size_t l = 0; l < ds.sigma_cols.size(); ++l)
    acc += dress_qin(dbar(ds.sigma_cols[l]), static_cast<int>(l));
  return acc;
}

// (dbar sigma)^p in the divided-power basis: p-fold product over p!.
GradedElement dbar_sigma_power(const DerivedSections& ds, int p) {
  GradedElement acc = GradedElement::scalar(ds.sigma.n(), ds.sigma.m(), ds.sigma.r(),
                                            RationalFunction::constant(ds.sigma.n(), GaussianRational(1)));
  if (p == 0) return acc;
  GradedElement base = dbar_sigma_sym(ds);
  mpz_class fact(1);
  for (int i = 1; i <= p; ++i) {
    acc = wedge(acc, base);
    fact *= i;
  }
  mpq_class inv(1);
  inv /= mpq_class(fact);
  return acc.scaled(RationalFunction::constant(ds.sigma.n(), GaussianRational(inv)));
}

void check_q_column(const MorphismData& f, const std::vector<Poly>& phi) {
  if (static_cast<int>(phi.size()) != f.r)
    throw std::invalid_argument("column length must equal rank of Q");
  for (const auto& p : phi) {
    if (p.nvars() != f.n) throw std::invalid_argument("column variable count mismatch");
    if (p.depends_on_w()) throw std::invalid_argument("column must be holomorphic (z only)");
  }
}

}  // namespace

Poly det_poly(const std::vector<std::vector<Poly>>& a) {
  int nn = static_cast<int>(a.size());
  if (nn == 0) throw std::invalid_argument("determinant of an empty matrix");
  if (nn == 1) return a[0][0];
  int nv = a[0][0].nvars();
  Poly acc(nv);
  for (int j = 0; j < nn; ++j) {
    if (a[0][j].is_zero()) continue;
    Poly cof = a[0][j] * det_poly(strike(a, 0, j));
    if (j & 1) acc -= cof;
    else acc += cof;
  }
  return acc;
}

std::map<std::uint32_t, Poly> determinant_section(const MorphismData& f) {
  f.validate();
  std::map<std::uint32_t, Poly> out;
  for (std::uint32_t mask = 0; mask < (1u << f.m); ++mask) {
    if (__builtin_popcount(mask) != f.r) continue;
    std::vector<int> cols;
    for (int i = 0; i < f.m; ++i)
      if (mask & (1u << i)) cols.push_back(i);
    std::vector<std::vector<Poly>> sub(f.r, std::vector<Poly>(f.r, Poly(f.n)));
    for (int k = 0; k < f.r; ++k)
      for (int j = 0; j < f.r; ++j) sub[k][j] = f.entries[k][cols[j]];
    out.emplace(mask, det_poly(sub));
  }
  return out;
}

Poly gram_det_poly(const MorphismData& f) {
  f.validate();
  std::vector<std::vector<Poly>> gram(f.r, std::vector<Poly>(f.r, Poly(f.n)));
  for (int j = 0; j < f.r; ++j)
    for (int k = 0; k < f.r; ++k) {
      Poly acc(f.n);
      for (int i = 0; i < f.m; ++i) acc += f.entries[j][i] * f.entries[k][i].conjugate();
      gram[j][k] = acc;
    }
  return det_poly(gram);
}

std::vector<std::vector<Poly>> adjugate(const std::vector<std::vector<Poly>>& a) {
  int nn = static_cast<int>(a.size());
  if (nn == 0) throw std::invalid_argument("adjugate of an empty matrix");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != nn)
      throw std::invalid_argument("adjugate of a non-square matrix");
  int nv = a[0][0].nvars();
  std::vector<std::vector<Poly>> out(nn, std::vector<Poly>(nn, Poly(nv)));
  if (nn == 1) {
    out[0][0] = Poly::constant(nv, GaussianRational(1));
    return out;
  }
  for (int j = 0; j < nn; ++j)
    for (int l = 0; l < nn; ++l) {
      Poly minor = det_poly(strike(a, l, j));
      out[j][l] = ((j + l) & 1) ? -minor : minor;
    }
  return out;
}

DerivedSections minimal_sections(const MorphismData& f) {
  f.validate();
  DerivedSections ds;
  ds.minors = determinant_section(f);

  ds.gram.assign(f.r, std::vector<Poly>(f.r, Poly(f.n)));
  for (int j = 0; j < f.r; ++j)
    for (int k = 0; k < f.r; ++k) {
      Poly acc(f.n);
      for (int i = 0; i < f.m; ++i) acc += f.entries[j][i] * f.entries[k][i].conjugate();
      ds.gram[j][k] = acc;
    }
  ds.gram_det = det_poly(ds.gram);
  if (ds.gram_det.is_zero())
    throw std::domain_error("nowhere surjective: det(ff*) vanishes identically");
  ds.adj_gram = adjugate(ds.gram);

  ds.s.assign(f.m, std::vector<Poly>(f.r, Poly(f.n)));
  for (int i = 0; i < f.m; ++i)
    for (int l = 0; l < f.r; ++l) {
      Poly acc(f.n);
      for (int j = 0; j < f.r; ++j) acc += f.entries[j][i].conjugate() * ds.adj_gram[j][l];
      ds.s[i][l] = acc;
    }

  ds.s_section = GradedElement(f.n, f.m, f.r);
  ds.sigma = GradedElement(f.n, f.m, f.r);
  ds.sigma_cols.assign(f.r, GradedElement(f.n, f.m, f.r));
  for (int i = 0; i < f.m; ++i)
    for (int l = 0; l < f.r; ++l) {
      if (ds.s[i][l].is_zero()) continue;
      BasisWord w;
      w.ext = 1u << i;
      w.qin = static_cast<std::uint8_t>(l + 1);
      ds.s_section.add_term(w, RationalFunction::from_poly(ds.s[i][l]));
      RationalFunction norm(ds.s[i][l], ds.gram_det);
      ds.sigma.add_term(w, norm);
      BasisWord bare;
      bare.ext = 1u << i;
      ds.sigma_cols[l].add_term(bare, norm);
    }

  ds.S_section = GradedElement(f.n, f.m, f.r);
  ds.cap_sigma = GradedElement(f.n, f.m, f.r);
  for (const auto& [mask, minor] : ds.minors) {
    if (minor.is_zero()) continue;
    BasisWord w;
    w.ext = mask;
    w.detq = true;
    Poly cm = minor.conjugate();
    ds.S_section.add_term(w, RationalFunction::from_poly(cm));
    ds.cap_sigma.add_term(w, RationalFunction(cm, ds.gram_det));
  }
  return ds;
}

GradedElement identity_Q(int n, int m, int r) {
  GradedElement x(n, m, r);
  for (int l = 1; l <= r; ++l) {
    BasisWord w;
    w.qout = static_cast<std::uint8_t>(l);
    w.qin = static_cast<std::uint8_t>(l);
    x.add_term(w, RationalFunction::constant(n, GaussianRational(1)));
  }
  return x;
}

GradedElement u_form(const MorphismData& f, const DerivedSections& ds, int k) {
  int top = std::min(f.n + 1, f.m - f.r + 1);
  if (k < 1 || k > top)
    throw std::invalid_argument("homotopy level out of range for this morphism");
  if (k == 1) return ds.sigma;
  GradedElement block = cap_sigma_block(ds);
  if (k > 2) block = wedge(block, dbar_sigma_power(ds, k - 2));
  return wedge(block, dbar_sigma_hom(ds));
}

GradedElement u_form(const MorphismData& f, int k) {
  return u_form(f, minimal_sections(f), k);
}

GradedElement homotopy_residual(const MorphismData& f) {
  DerivedSections ds = minimal_sections(f);
  int top = std::min(f.n + 1, f.m - f.r + 1);
  GradedElement total(f.n, f.m, f.r);
  for (int k = 1; k <= top; ++k) total += u_form(f, ds, k);
  return differential_full(f, total) - dbar(total) - identity_Q(f.n, f.m, f.r);
}

GradedElement contract_hom(const GradedElement& x, const std::vector<Poly>& phi) {
  GradedElement out(x.n(), x.m(), x.r());
  for (const auto& [w, c] : x.terms()) {
    if (!w.qin) throw std::invalid_argument("element has no hom slot to pair against");
    BasisWord nw = w;
    nw.qin = 0;
    out.add_term(nw, c * RationalFunction::from_poly(phi[w.qin - 1]));
  }
  return out;
}

GradedElement omskriv_residual(const MorphismData& f, const std::vector<Poly>& phi, int k) {
  check_q_column(f, phi);
  DerivedSections ds = minimal_sections(f);
  int top = std::min(f.n + 1, f.m - f.r + 1);
  if (k < 2 || k > top)
    throw std::invalid_argument("rewrite level out of range for this morphism");
  GradedElement lhs = contract_hom(u_form(f, ds, k), phi);

  GradedElement sigma_phi(f.n, f.m, f.r);
  for (int l = 0; l < f.r; ++l)
    sigma_phi += ds.sigma_cols[l].scaled(RationalFunction::from_poly(phi[l]));
  GradedElement rhs = wedge(dbar_sigma_power(ds, k - 2),
                            wedge(dbar(cap_sigma_block(ds)), sigma_phi));
  if ((f.r + 1) & 1) rhs = -rhs;
  return lhs - rhs;
}

GradedElement omv_primitive(const MorphismData& f, const std::vector<Poly>& psi) {
  f.validate();
  if (static_cast<int>(psi.size()) != f.m)
    throw std::invalid_argument("column length must equal rank of E");
  for (const auto& p : psi) {
    if (p.nvars() != f.n) throw std::invalid_argument("column variable count mismatch");
    if (p.depends_on_w()) throw std::invalid_argument("column must be holomorphic (z only)");
  }
  if (f.m <= f.r) throw std::invalid_argument("no positive top level: rank of E must exceed rank of Q");
  if (f.m - f.r + 1 > f.n)
    throw std::invalid_argument("top level exceeds the antiholomorphic degree of the base");
  DerivedSections ds = minimal_sections(f);

  GradedElement psi_elt(f.n, f.m, f.r);
  for (int i = 0; i < f.m; ++i) {
    if (psi[i].is_zero()) continue;
    BasisWord w;
    w.ext = 1u << i;
    psi_elt.add_term(w, RationalFunction::from_poly(psi[i]));
  }
  // The leading sign makes dbar(primitive) equal the contracted top homotopy
  // form of f*psi in the canonical word order used here.
  return -wedge(psi_elt, wedge(cap_sigma_block(ds), dbar_sigma_power(ds, f.m - f.r - 1)));
}

RationalFunction pointwise_norm(const MorphismData& f, const std::vector<Poly>& phi) {
  check_q_column(f, phi);
  DerivedSections ds = minimal_sections(f);
  Poly acc(f.n);
  for (int j = 0; j < f.r; ++j)
    for (int l = 0; l < f.r; ++l) acc += ds.adj_gram[j][l] * phi[l] * phi[j].conjugate();
  return RationalFunction::from_poly(acc);
}

std::vector<std::vector<Poly>> s_from_S(const MorphismData& f, const DerivedSections& ds) {
  // Words e_I ∧ eps*_J over one merged odd alphabet, coefficients in Poly.
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  std::map<Key, Poly> cur;
  std::uint32_t full_q = (1u << f.r) - 1;
  for (const auto& [mask, minor] : ds.minors) {
    Poly cm = minor.conjugate();
    if (!cm.is_zero()) cur.emplace(Key{mask, full_q}, cm);
  }
  for (int step = 0; step < f.r - 1; ++step) {
    std::map<Key, Poly> next;
    for (const auto& [key, coeff] : cur) {
      auto [ext, qm] = key;
      for (int j = 0; j < f.r; ++j) {
        std::uint32_t qbit = 1u << j;
        if (!(qm & qbit)) continue;
        // eps_j* sits after the whole e block and the earlier eps* factors.
        int eps_pos = __builtin_popcount(ext) + __builtin_popcount(qm & (qbit - 1));
        std::uint32_t ext_left = ext;
        while (ext_left) {
          int i = __builtin_ctz(ext_left);
          ext_left &= ext_left - 1;
          const Poly& entry = f.entries[j][i];
          if (entry.is_zero()) continue;
          int e_pos = __builtin_popcount(ext & ((1u << i) - 1));
          Poly term = coeff * entry;
          if ((eps_pos + e_pos) & 1) term = -term;
          Key nk{ext & ~(1u << i), qm & ~qbit};
          auto [it, inserted] = next.emplace(nk, term);
          if (!inserted) {
            it->second += term;
            if (it->second.is_zero()) next.erase(it);
          }
        }
      }
    }
    cur = std::move(next);
  }
  mpz_class fact(1);
  for (int i = 2; i < f.r; ++i) fact *= i;
  mpq_class inv(1);
  inv /= mpq_class(fact);
  // Contracting a pair out of a word shaped e-block-then-eps-block costs a
  // sign that alternates with the remaining eps length; summed over the r-1
  // steps it compensates as below, recovering the matrix-form section.
  if ((f.r * (f.r + 1) / 2 - 1) % 2) inv = -inv;
  GaussianRational scale{mpq_class(inv)};
  std::vector<std::vector<Poly>> out(f.m, std::vector<Poly>(f.r, Poly(f.n)));
  for (const auto& [key, coeff] : cur) {
    auto [ext, qm] = key;
    out[__builtin_ctz(ext)][__builtin_ctz(qm)] = coeff.scaled(scale);
  }
  return out;
}

}  // namespace gkoszul
