#include "linsolve.hpp"

#include <stdexcept>

namespace gkoszul {

int matrix_rank(Matrix a) {
  if (a.empty()) return 0;
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  GaussianRational prev(1);
  int rank = 0;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
      a[i][col] = GaussianRational();
    }
    prev = a[row][col];
    ++rank;
    ++row;
  }
  return rank;
}

GaussianRational matrix_det(Matrix a) {
  int nn = static_cast<int>(a.size());
  if (nn == 0) return GaussianRational(1);
  if (static_cast<int>(a[0].size()) != nn) throw std::invalid_argument("determinant of a non-square matrix");
  GaussianRational prev(1);
  int sign = 1;
  for (int k = 0; k < nn - 1; ++k) {
    if (a[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < nn; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return GaussianRational();
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < nn; ++i) {
      for (int j = k + 1; j < nn; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = GaussianRational();
    }
    prev = a[k][k];
  }
  GaussianRational d = a[nn - 1][nn - 1];
  return sign < 0 ? -d : d;
}

std::optional<std::vector<GaussianRational>> solve_linear(Matrix a,
                                                          std::vector<GaussianRational> b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("right-hand side length mismatch");
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    std::swap(b[row], b[piv]);
    GaussianRational inv = a[row][col].inverse();
    for (int j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      GaussianRational factor = a[i][col];
      for (int j = col; j < cols; ++j) a[i][j] -= factor * a[row][j];
      b[i] -= factor * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<GaussianRational> x(cols);
  for (int i = 0; i < row; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace gkoszul
