#pragma once

#include <optional>
#include <vector>

#include "secondary/linalg.hpp"

namespace secondary {

enum class RelOp { Eq, Ge };

/// coeffs . x (Eq|Ge) rhs over free rational variables.
struct LinearConstraint {
    QVec coeffs;
    RelOp op;
    Rational rhs;
};

/// Exact feasibility of a finite rational system; returns a witness satisfying
/// every constraint exactly, or nullopt. Phase-1 primal simplex with Bland's
/// anti-cycling rule; free variables are split into differences of nonnegatives.
std::optional<QVec> lp_feasible(int num_vars, const std::vector<LinearConstraint>& constraints);

}  // namespace secondary
