#pragma once

#include "heron/problem.hpp"

namespace heron {

/// Projected-gradient fixed-point certificate for the smoothed problem.
/// residual == 0 exactly at constrained minimizers of D_eps.
struct OptimalityReport {
    double residual;
    double eps_used;
    double probe_step;
    double tolerance;
    bool certified;  // residual <= tolerance
};

/// residual = ||x - P_S(x - probe_step * grad D_eps(x) / W(x))||_inf with
/// W(x) = sum_j weight_j / sqrt(d(x, C_j)^2 + eps). The W normalization is
/// the natural step length of the majorization update, so at probe_step 1
/// the residual equals the sup-norm displacement of one MM step; any
/// positive step has the same zero set (the variational-inequality
/// solutions), this one also keeps the residual meaningfully scaled when an
/// optimum sits on a target boundary and the raw gradient does not vanish.
///
/// Requires x feasible within 1e-10, eps > 0, probe_step > 0.
OptimalityReport optimality_residual(const HeronProblem& p, const Vector& x, double eps,
                                     double probe_step = 1.0, double tolerance = 1e-6);

/// Central differences of D_eps per coordinate; verification oracle for
/// HeronProblem::gradient_eps. Requires eps > 0 and h > 0.
Vector finite_difference_gradient(const HeronProblem& p, const Vector& x, double eps,
                                  double h = 1e-6);

struct GridSearchResult {
    Vector minimizer;
    double objective;
};

/// Exhaustive minimizer of D over the grid points of [box_lower, box_upper]
/// that lie within one grid spacing of the constraint set. No pruning;
/// ties break to the lexicographically smallest grid index. Limited to
/// d <= 3 and resolution <= 2001 per axis.
GridSearchResult grid_search_oracle(const HeronProblem& p, const Vector& box_lower,
                                    const Vector& box_upper, int resolution);

}  // namespace heron
