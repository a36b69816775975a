#pragma once

#include "conelab/common.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace conelab {

// maximize objective . x  subject to  eq_lhs x = eq_rhs  and per-variable
// lower bounds (nullopt = unbounded below). No upper bounds; callers encode
// them with slack variables.
struct LpProblem {
    Vector objective;
    Matrix eq_lhs;
    Vector eq_rhs;
    std::vector<std::optional<double>> lower_bounds;
};

struct LpOptimal {
    Vector solution;
    double value = 0.0;
};
struct LpInfeasible {};
struct LpUnbounded {};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

inline bool lp_is_optimal(const LpOutcome& o) { return std::holds_alternative<LpOptimal>(o); }
inline bool lp_is_infeasible(const LpOutcome& o) { return std::holds_alternative<LpInfeasible>(o); }
inline bool lp_is_unbounded(const LpOutcome& o) { return std::holds_alternative<LpUnbounded>(o); }

// Dense two-phase simplex, Bland's rule throughout. Deterministic for a
// given input. Throws Error("SCALE_EXCEEDED") beyond 512 variables or rows.
LpOutcome lp_solve(const LpProblem& p, double tol = 1e-9);

// Phase-1 residual: minimum L1 mismatch of eq_lhs x = eq_rhs over the bound
// constraints. Zero (up to tol) iff the system is feasible.
double lp_min_infeasibility(const Matrix& eq_lhs, const Vector& eq_rhs,
                            const std::vector<std::optional<double>>& lower_bounds,
                            double tol = 1e-9);

} // namespace conelab
