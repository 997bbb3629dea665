#include "division.hpp"

#include <algorithm>

#include "linsolve.hpp"
#include "sections.hpp"

namespace gkoszul {

namespace {

void require_z_only(const Poly& p, const char* what) {
  if (p.depends_on_w())
    throw std::invalid_argument(std::string(what) + " must be holomorphic (z only)");
}

int column_degree(const MorphismData& P, const std::vector<Poly>& Q, int j) {
  int deg = -1;
  for (int k = 0; k < P.r; ++k) {
    Poly prod = P.entries[k][j] * Q[j];
    deg = std::max(deg, prod.degree_z());
  }
  return deg;
}

int padded_degree_sum(int n, int r, int m, const std::vector<int>& degrees) {
  int used = std::min(m, n + r);
  int sum = 0;
  for (int i = 0; i < used; ++i) sum += degrees[i];
  return sum;
}

void check_descending(const std::vector<int>& degrees) {
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i - 1] < degrees[i])
      throw std::invalid_argument("degrees must be sorted descending");
}

}  // namespace

Poly homogenize_poly(const Poly& p, int target_degree) {
  require_z_only(p, "homogenization input");
  int n = p.nvars();
  if (n + 1 > 8) throw std::invalid_argument("too many variables to homogenize");
  if (p.degree_z() > target_degree)
    throw std::invalid_argument("declared degree is below the actual degree");
  Poly out(n + 1);
  for (const auto& [mon, c] : p.terms()) {
    Monomial nm(2 * (n + 1));
    int total = 0;
    for (int i = 0; i < n; ++i) {
      nm.e[i + 1] = mon.e[i];
      total += mon.e[i];
    }
    nm.e[0] = static_cast<std::uint16_t>(target_degree - total);
    out.add_term(nm, c);
  }
  return out;
}

MorphismData homogenize_morphism(const MorphismData& f) {
  f.validate();
  MorphismData out;
  out.n = f.n + 1;
  out.m = f.m;
  out.r = f.r;
  out.coldeg = f.coldeg;
  out.entries.assign(f.r, std::vector<Poly>(f.m, Poly(f.n + 1)));
  for (int k = 0; k < f.r; ++k)
    for (int j = 0; j < f.m; ++j)
      out.entries[k][j] = homogenize_poly(f.entries[k][j], f.coldeg[j]);
  out.validate();
  return out;
}

std::vector<Poly> homogenize_column(const std::vector<Poly>& phi, int target_degree) {
  std::vector<Poly> out;
  out.reserve(phi.size());
  for (const auto& p : phi) out.push_back(homogenize_poly(p, target_degree));
  return out;
}

Poly dehomogenize_poly(const Poly& p) {
  require_z_only(p, "dehomogenization input");
  int n = p.nvars() - 1;
  if (n < 1) throw std::invalid_argument("nothing left after removing the projective variable");
  Poly out(n);
  for (const auto& [mon, c] : p.terms()) {
    Monomial nm(2 * n);
    for (int i = 0; i < n; ++i) nm.e[i] = mon.e[i + 1];
    out.add_term(nm, c);
  }
  return out;
}

MorphismData dehomogenize_morphism(const MorphismData& f) {
  MorphismData out;
  out.n = f.n - 1;
  out.m = f.m;
  out.r = f.r;
  out.coldeg = f.coldeg;
  out.entries.assign(f.r, std::vector<Poly>(f.m, Poly(f.n - 1)));
  for (int k = 0; k < f.r; ++k)
    for (int j = 0; j < f.m; ++j) out.entries[k][j] = dehomogenize_poly(f.entries[k][j]);
  out.validate();
  return out;
}

MacaulayBound macaulay_bound(int n, int r, const std::vector<int>& degrees) {
  check_descending(degrees);
  int m = static_cast<int>(degrees.size());
  MacaulayBound b;
  b.used_degrees = std::min(m, n + r);
  b.padded = m < n + r;
  int raw = padded_degree_sum(n, r, m, degrees) - n;
  b.clamped = raw < 0;
  b.value = std::max(0, raw);
  return b;
}

VillkorResult villkor_check(int n, int r, int m, const std::vector<int>& degrees, int rho) {
  check_descending(degrees);
  VillkorResult v;
  if (m <= n + r - 1) {
    v.satisfied = true;
    v.clause = 1;
    v.reason = "generator count m <= n + r - 1";
    return v;
  }
  int sum = padded_degree_sum(n, r, m, degrees) - n;
  if (rho >= sum) {
    v.satisfied = true;
    v.clause = 2;
    v.reason = "target degree clears the Macaulay sum";
    return v;
  }
  v.satisfied = false;
  v.clause = 0;
  v.reason = "target degree below the Macaulay sum and m > n + r - 1";
  return v;
}

std::vector<Monomial> monomials_up_to(int nv, int bound) {
  std::vector<Monomial> out;
  if (bound < 0) return out;
  Monomial cur(2 * nv);
  // Depth-first over slots, lowest index varying slowest; fixed, total order.
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == nv) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur.e[slot] = static_cast<std::uint16_t>(e);
      self(self, slot + 1, remaining - e);
    }
    cur.e[slot] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

DivisionOutcome solve_division(const DivisionProblem& prob) {
  const MorphismData& P = prob.P;
  P.validate();
  if (static_cast<int>(prob.phi.size()) != P.r)
    throw std::invalid_argument("right-hand column length must equal the row count");
  int rho = 0;
  for (const auto& p : prob.phi) {
    if (p.nvars() != P.n) throw std::invalid_argument("right-hand column variable count mismatch");
    require_z_only(p, "right-hand column");
    rho = std::max(rho, p.degree_z());
  }

  DivisionOutcome out;
  out.rho = rho;
  std::vector<int> sorted_deg = P.coldeg;
  std::sort(sorted_deg.begin(), sorted_deg.end(), std::greater<int>());
  if (prob.cap) {
    out.cap = *prob.cap;
  } else {
    out.cap_auto = true;
    if (P.m >= P.n + P.r) {
      out.cap = std::max(rho, macaulay_bound(P.n, P.r, sorted_deg).value);
    } else {
      int sum = 0;
      for (int d : P.coldeg) sum += d;
      out.cap = rho + sum;
      out.cap_heuristic = true;
      out.notes = "cap derived heuristically as deg(phi) plus the sum of column degrees";
    }
  }

  for (int D = rho; D <= out.cap; ++D) {
    // Ansatz deg Q_j <= D - d_j; unknowns are the monomial coefficients.
    std::vector<std::vector<Monomial>> ansatz(P.m);
    std::vector<int> offset(P.m, 0);
    int unknowns = 0;
    for (int j = 0; j < P.m; ++j) {
      offset[j] = unknowns;
      ansatz[j] = monomials_up_to(P.n, D - P.coldeg[j]);
      unknowns += static_cast<int>(ansatz[j].size());
    }
    if (unknowns == 0 && rho > 0) continue;

    std::map<std::pair<int, Monomial>, int> row_of;
    auto row_index = [&](int k, const Monomial& mon) {
      auto [it, fresh] = row_of.emplace(std::make_pair(k, mon), static_cast<int>(row_of.size()));
      (void)fresh;
      return it->second;
    };
    std::vector<std::vector<std::pair<int, GaussianRational>>> sparse;
    auto at = [&](int row, int col) -> GaussianRational& {
      if (row >= static_cast<int>(sparse.size())) sparse.resize(row + 1);
      for (auto& [c, v] : sparse[row])
        if (c == col) return v;
      sparse[row].emplace_back(col, GaussianRational(0));
      return sparse[row].back().second;
    };
    for (int j = 0; j < P.m; ++j)
      for (std::size_t u = 0; u < ansatz[j].size(); ++u)
        for (int k = 0; k < P.r; ++k)
          for (const auto& [mon, c] : P.entries[k][j].terms()) {
            int row = row_index(k, mon * ansatz[j][u]);
            at(row, offset[j] + static_cast<int>(u)) += c;
          }
    for (int k = 0; k < P.r; ++k)
      for (const auto& [mon, c] : prob.phi[k].terms()) row_index(k, mon);

    int rows = static_cast<int>(row_of.size());
    Matrix A(rows, std::vector<GaussianRational>(unknowns, GaussianRational(0)));
    std::vector<GaussianRational> b(rows, GaussianRational(0));
    for (int row = 0; row < static_cast<int>(sparse.size()); ++row)
      for (const auto& [col, v] : sparse[row]) A[row][col] = v;
    for (const auto& [key, row] : row_of) {
      const auto& [k, mon] = key;
      b[row] = prob.phi[k].coeff(mon);
    }

    std::optional<std::vector<GaussianRational>> sol;
    if (rows == 0)
      sol.emplace(unknowns, GaussianRational(0));
    else
      sol = solve_linear(A, b);
    if (!sol) continue;

    out.feasible = true;
    out.bound_used = D;
    out.Q.assign(P.m, Poly(P.n));
    for (int j = 0; j < P.m; ++j)
      for (std::size_t u = 0; u < ansatz[j].size(); ++u)
        out.Q[j].add_term(ansatz[j][u], (*sol)[offset[j] + u]);
    out.term_degrees.resize(P.m);
    bool ok = true;
    for (int k = 0; k < P.r; ++k) {
      Poly acc(P.n);
      for (int j = 0; j < P.m; ++j) acc += P.entries[k][j] * out.Q[j];
      if (acc != prob.phi[k]) ok = false;
    }
    for (int j = 0; j < P.m; ++j) out.term_degrees[j] = column_degree(P, out.Q, j);
    out.verified = ok;
    return out;
  }
  return out;
}

DivisionOutcome noether_solve(const MorphismData& P, const std::vector<Poly>& phi) {
  int rho = 0;
  for (const auto& p : phi) rho = std::max(rho, p.degree_z());
  DivisionProblem prob{P, phi, rho};
  DivisionOutcome out = solve_division(prob);
  out.notes = "cap pinned to deg(phi); assumes the minors vanish in codimension m-r+1 "
              "with no component at infinity (caller assertion, not machine-checked)";
  return out;
}

NullstellensatzOutcome nullstellensatz_solve(const MorphismData& P, std::optional<int> cap) {
  P.validate();
  NullstellensatzOutcome out;
  std::vector<int> sorted_deg = P.coldeg;
  std::sort(sorted_deg.begin(), sorted_deg.end(), std::greater<int>());
  int effective_cap;
  if (cap) {
    effective_cap = *cap;
  } else {
    out.cap_auto = true;
    if (P.m >= P.n + P.r) {
      effective_cap = macaulay_bound(P.n, P.r, sorted_deg).value;
    } else {
      effective_cap = 0;
      for (int d : P.coldeg) effective_cap += d;
      out.cap_heuristic = true;
    }
  }
  out.cap = effective_cap;

  out.Q.assign(P.m, std::vector<Poly>(P.r, Poly(P.n)));
  out.term_degrees.assign(P.m, -1);
  out.feasible = true;
  out.verified = true;
  for (int l = 0; l < P.r; ++l) {
    std::vector<Poly> unit(P.r, Poly(P.n));
    unit[l] = Poly::constant(P.n, GaussianRational(1));
    DivisionProblem prob{P, unit, effective_cap};
    DivisionOutcome col = solve_division(prob);
    if (!col.feasible) {
      out.feasible = false;
      out.verified = false;
      out.Q.clear();
      out.term_degrees.clear();
      out.bound_used = -1;
      return out;
    }
    for (int j = 0; j < P.m; ++j) {
      out.Q[j][l] = col.Q[j];
      out.term_degrees[j] = std::max(out.term_degrees[j], col.term_degrees[j]);
    }
    out.bound_used = std::max(out.bound_used, col.bound_used);
    out.verified = out.verified && col.verified;
  }
  return out;
}

FuhrmannResult fuhrmann_lift(const MorphismData& f,
                             const std::vector<std::map<std::uint32_t, Poly>>& H,
                             const std::vector<Poly>& phi) {
  f.validate();
  if (static_cast<int>(H.size()) != f.r)
    throw std::invalid_argument("one exterior solution per row is required");
  if (static_cast<int>(phi.size()) != f.r)
    throw std::invalid_argument("target column length must equal the row count");
  for (const auto& p : phi) {
    if (p.nvars() != f.n) throw std::invalid_argument("target column variable count mismatch");
    require_z_only(p, "target column");
  }
  auto minors = determinant_section(f);
  for (int j = 0; j < f.r; ++j) {
    Poly pairing(f.n);
    for (const auto& [mask, coeff] : H[j]) {
      if (__builtin_popcount(mask) != f.r || mask >= (1u << f.m))
        throw std::invalid_argument("exterior solution carries an invalid column set");
      require_z_only(coeff, "exterior solution");
      pairing += minors.at(mask) * coeff;
    }
    if (pairing != phi[j])
      throw std::invalid_argument("pairing against the minors misses the target at row " +
                                  std::to_string(j + 1));
  }

  GradedElement psi_elt(f.n, f.m, f.r);
  for (int j = 0; j < f.r; ++j) {
    GradedElement x(f.n, f.m, f.r);
    for (const auto& [mask, coeff] : H[j]) {
      if (coeff.is_zero()) continue;
      BasisWord w;
      w.ext = mask;
      x.add_term(w, RationalFunction::from_poly(coeff));
    }
    // Contract every row except j, lowest row innermost.
    for (int t = 0; t < f.r; ++t) {
      if (t == j) continue;
      x = interior_ext(f.entries[t], x);
    }
    if ((j + 1 + f.r) & 1) x = -x;
    psi_elt += x;
  }

  FuhrmannResult res;
  res.psi.assign(f.m, Poly(f.n));
  for (const auto& [w, c] : psi_elt.terms()) {
    if (!c.is_poly())
      throw std::invalid_argument("lift produced a non-polynomial coefficient");
    res.psi[__builtin_ctz(w.ext)] = c.num();
  }
  res.verified = true;
  for (int k = 0; k < f.r; ++k) {
    Poly acc(f.n);
    for (int i = 0; i < f.m; ++i) acc += f.entries[k][i] * res.psi[i];
    if (acc != phi[k]) res.verified = false;
  }
  return res;
}

}  // namespace gkoszul
