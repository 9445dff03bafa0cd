#pragma once

#include <vector>

#include "heron/convex_set.hpp"

namespace heron {

/// One target set C_i with its positive weight.
struct TargetTerm {
    ConvexSet set;
    double weight;
};

/// A generalized Heron instance: minimize sum_i weight_i * d(x, C_i) over
/// the constraint set S.
///
/// Construction validates dimensions and weights. Whether a minimizer is
/// guaranteed to exist (constraint or some target bounded) is reported by
/// coercive(); evaluation is permitted either way, the solvers refuse
/// non-coercive instances.
class HeronProblem {
public:
    HeronProblem(ConvexSet constraint, std::vector<TargetTerm> targets);

    Index dim() const { return constraint_.dim(); }
    const ConvexSet& constraint() const { return constraint_; }
    const std::vector<TargetTerm>& targets() const { return targets_; }
    Index target_count() const { return static_cast<Index>(targets_.size()); }

    bool coercive() const;

    /// Sum of weights, the Lipschitz constant of the objective.
    double weight_sum() const;

    /// D(x) = sum_i weight_i * d(x, C_i). x need not be feasible.
    double objective(const Vector& x) const;

    /// D_eps(x) = sum_i weight_i * sqrt(d(x, C_i)^2 + eps). Equals
    /// objective(x) exactly when eps == 0. Requires eps >= 0.
    double objective_eps(const Vector& x, double eps) const;

    /// Gradient of D_eps; requires eps > 0 (D_0 may be nonsmooth).
    /// Terms with x inside C_i contribute zero.
    Vector gradient_eps(const Vector& x, double eps) const;

private:
    ConvexSet constraint_;
    std::vector<TargetTerm> targets_;
};

}  // namespace heron
