#pragma once

#include <vector>

#include "poly.hpp"

namespace gkoszul {

// Polynomial matrix of a morphism E -> Q: r rows (sections of E*), m columns.
// Entries depend on z only. coldeg are declared column degree caps, weakly
// decreasing.
struct MorphismData {
  int n = 0;
  int m = 0;
  int r = 0;
  std::vector<std::vector<Poly>> entries;  // entries[j][i], row j in 0..r-1
  std::vector<int> coldeg;                 // size m

  void validate() const {
    if (n < 1 || n > 8) throw std::invalid_argument("base dimension out of range (1..8)");
    if (m < 1 || m > 16) throw std::invalid_argument("rank of E out of range (1..16)");
    if (r < 1 || r > 8 || r > m) throw std::invalid_argument("rank of Q out of range (1..min(m,8))");
    if (static_cast<int>(entries.size()) != r) throw std::invalid_argument("row count mismatch");
    if (static_cast<int>(coldeg.size()) != m) throw std::invalid_argument("column degree count mismatch");
    for (int i = 0; i + 1 < m; ++i)
      if (coldeg[i] < coldeg[i + 1])
        throw std::invalid_argument("column degrees must be weakly decreasing");
    for (const auto& row : entries) {
      if (static_cast<int>(row.size()) != m) throw std::invalid_argument("column count mismatch");
      for (int i = 0; i < m; ++i) {
        if (row[i].nvars() != n) throw std::invalid_argument("entry variable count mismatch");
        if (row[i].depends_on_w())
          throw std::invalid_argument("matrix entries must be holomorphic (z only)");
        if (row[i].total_degree() > coldeg[i])
          throw std::invalid_argument("entry degree exceeds declared column degree");
      }
    }
  }
};

}  // namespace gkoszul
