#pragma once

#include <optional>
#include <vector>

#include "gaussian_rational.hpp"

namespace gkoszul {

using Matrix = std::vector<std::vector<GaussianRational>>;

// Fraction-free (Bareiss) elimination; exact over Q(i).
int matrix_rank(Matrix a);
GaussianRational matrix_det(Matrix a);

// One solution of A x = b with free variables set to zero, or nullopt if the
// system is inconsistent. Exact Gauss-Jordan.
std::optional<std::vector<GaussianRational>> solve_linear(Matrix a,
                                                          std::vector<GaussianRational> b);

}  // namespace gkoszul
