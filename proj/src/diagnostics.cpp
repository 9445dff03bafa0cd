#include "heron/diagnostics.hpp"

#include <array>
#include <cmath>

namespace heron {

OptimalityReport optimality_residual(const HeronProblem& p, const Vector& x, double eps,
                                     double probe_step, double tolerance) {
    detail::check_dim(p.constraint(), x, "optimality_residual");
    if (!(eps > 0.0)) {
        throw std::invalid_argument("optimality_residual: eps must be > 0");
    }
    if (!(probe_step > 0.0)) {
        throw std::invalid_argument("optimality_residual: probe_step must be > 0");
    }
    if (!(tolerance >= 0.0)) {
        throw std::invalid_argument("optimality_residual: tolerance must be >= 0");
    }
    if (distance(p.constraint(), x) > 1e-10) {
        throw std::invalid_argument("optimality_residual: x must lie in the constraint set "
                                    "(within 1e-10)");
    }

    Vector proj(x.size());
    Vector gradient = Vector::Zero(x.size());
    double weight_total = 0.0;
    for (const TargetTerm& t : p.targets()) {
        project_into(t.set, x, proj);
        const double d = (x - proj).norm();
        const double w = t.weight / std::sqrt(d * d + eps);
        gradient.noalias() += w * (x - proj);
        weight_total += w;
    }

    const Vector probe = x - (probe_step / weight_total) * gradient;
    project_into(p.constraint(), probe, proj);
    const double residual = (x - proj).lpNorm<Eigen::Infinity>();
    return OptimalityReport{residual, eps, probe_step, tolerance, residual <= tolerance};
}

Vector finite_difference_gradient(const HeronProblem& p, const Vector& x, double eps, double h) {
    detail::check_dim(p.constraint(), x, "finite_difference_gradient");
    if (!(eps > 0.0)) {
        throw std::invalid_argument("finite_difference_gradient: eps must be > 0");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite_difference_gradient: h must be > 0");
    }
    Vector g(x.size());
    Vector probe = x;
    for (Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = p.objective_eps(probe, eps);
        probe[i] = x[i] - h;
        const double fm = p.objective_eps(probe, eps);
        probe[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

GridSearchResult grid_search_oracle(const HeronProblem& p, const Vector& box_lower,
                                    const Vector& box_upper, int resolution) {
    const Index d = p.dim();
    detail::check_dim(p.constraint(), box_lower, "grid_search_oracle");
    detail::check_dim(p.constraint(), box_upper, "grid_search_oracle");
    detail::check_finite(box_lower, "grid_search_oracle");
    detail::check_finite(box_upper, "grid_search_oracle");
    if (d > 3) {
        throw std::invalid_argument("grid_search_oracle: exhaustive search is limited to d <= 3");
    }
    if (resolution < 2 || resolution > 2001) {
        throw std::invalid_argument("grid_search_oracle: resolution must lie in [2, 2001]");
    }
    if ((box_lower.array() > box_upper.array()).any()) {
        throw std::invalid_argument("grid_search_oracle: requires box_lower <= box_upper");
    }

    double spacing = 0.0;
    for (Index i = 0; i < d; ++i) {
        spacing = std::max(spacing, (box_upper[i] - box_lower[i]) / (resolution - 1));
    }

    std::array<int, 3> counts{1, 1, 1};
    for (Index i = 0; i < d; ++i) counts[static_cast<size_t>(i)] = resolution;

    Vector x(d), proj(d);
    bool found = false;
    double best = 0.0;
    Vector best_x(d);
    const auto axis_value = [&](Index axis, int idx) {
        return idx == resolution - 1
                   ? box_upper[axis]
                   : box_lower[axis] + idx * (box_upper[axis] - box_lower[axis]) /
                                           (resolution - 1);
    };

    for (int i0 = 0; i0 < counts[0]; ++i0) {
        x[0] = axis_value(0, i0);
        for (int i1 = 0; i1 < counts[1]; ++i1) {
            if (d > 1) x[1] = axis_value(1, i1);
            for (int i2 = 0; i2 < counts[2]; ++i2) {
                if (d > 2) x[2] = axis_value(2, i2);

                project_into(p.constraint(), x, proj);
                if ((x - proj).norm() > spacing) continue;

                double value = 0.0;
                for (const TargetTerm& t : p.targets()) {
                    project_into(t.set, x, proj);
                    value += t.weight * (x - proj).norm();
                }
                // strict comparison keeps the lexicographically first argmin
                if (!found || value < best) {
                    found = true;
                    best = value;
                    best_x = x;
                }
            }
        }
    }

    if (!found) {
        throw std::runtime_error("grid_search_oracle: no grid point lies within one spacing "
                                 "of the constraint set");
    }
    return GridSearchResult{std::move(best_x), best};
}

}  // namespace heron
