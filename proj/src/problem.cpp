#include "heron/problem.hpp"

#include <cmath>
#include <string>

namespace heron {

HeronProblem::HeronProblem(ConvexSet constraint, std::vector<TargetTerm> targets)
    : constraint_(std::move(constraint)), targets_(std::move(targets)) {
    if (targets_.empty()) {
        throw std::invalid_argument("problem: needs at least one target set");
    }
    for (size_t i = 0; i < targets_.size(); ++i) {
        const TargetTerm& t = targets_[i];
        if (t.set.dim() != constraint_.dim()) {
            throw std::invalid_argument("problem: target " + std::to_string(i + 1) +
                                        " has dimension " + std::to_string(t.set.dim()) +
                                        ", constraint has " + std::to_string(constraint_.dim()));
        }
        if (!(t.weight > 0.0) || !std::isfinite(t.weight)) {
            throw std::invalid_argument("problem: target " + std::to_string(i + 1) +
                                        " weight must be positive and finite");
        }
    }
}

bool HeronProblem::coercive() const {
    if (constraint_.bounded()) return true;
    for (const TargetTerm& t : targets_) {
        if (t.set.bounded()) return true;
    }
    return false;
}

double HeronProblem::weight_sum() const {
    double s = 0.0;
    for (const TargetTerm& t : targets_) s += t.weight;
    return s;
}

double HeronProblem::objective(const Vector& x) const {
    detail::check_dim(constraint_, x, "objective");
    Vector p(x.size());
    double sum = 0.0;
    for (const TargetTerm& t : targets_) {
        project_into(t.set, x, p);
        sum += t.weight * (x - p).norm();
    }
    return sum;
}

double HeronProblem::objective_eps(const Vector& x, double eps) const {
    detail::check_dim(constraint_, x, "objective_eps");
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("objective_eps: eps must be >= 0");
    }
    if (eps == 0.0) return objective(x);
    Vector p(x.size());
    double sum = 0.0;
    for (const TargetTerm& t : targets_) {
        project_into(t.set, x, p);
        const double d = (x - p).norm();
        sum += t.weight * std::sqrt(d * d + eps);
    }
    return sum;
}

Vector HeronProblem::gradient_eps(const Vector& x, double eps) const {
    detail::check_dim(constraint_, x, "gradient_eps");
    if (!(eps > 0.0)) {
        throw std::invalid_argument("gradient_eps: eps must be > 0");
    }
    Vector p(x.size());
    Vector g = Vector::Zero(x.size());
    for (const TargetTerm& t : targets_) {
        project_into(t.set, x, p);
        const double d = (x - p).norm();
        // x - p vanishes for points inside the set, so those terms are zero
        g += (t.weight / std::sqrt(d * d + eps)) * (x - p);
    }
    return g;
}

}  // namespace heron
