#pragma once

#include <optional>
#include <vector>

#include "secondary/rational.hpp"

namespace secondary {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  ///< row-major, rectangular

/// Exact rank by Gaussian elimination.
int rank_of(QMat a);

/// Any exact solution of A x = b, or nullopt if inconsistent.
std::optional<QVec> solve_any(QMat a, QVec b);

/// Basis of the null space of A (free-variable unit vectors, back-substituted).
std::vector<QVec> kernel_basis(QMat a);

/// Sign of det(A) for a square matrix: -1, 0 or +1.
int det_sign(QMat a);

}  // namespace secondary
