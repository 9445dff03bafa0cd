#include "heron/mm.hpp"

#include <cmath>

namespace heron {

namespace {
constexpr double kSingularDistance = 1e-13;
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max-iterations";
        case SolveStatus::SingularWeight: return "singular-weight";
    }
    return "unknown";
}

namespace detail {

void mm_step_into(const HeronProblem& p, const Vector& x, double eps, Vector& out,
                  Vector& proj, Vector& combo) {
    combo.setZero();
    double weight_total = 0.0;
    const auto& targets = p.targets();
    for (size_t i = 0; i < targets.size(); ++i) {
        project_into(targets[i].set, x, proj);
        const double d = (x - proj).norm();
        double w;
        if (eps == 0.0) {
            if (d < kSingularDistance) {
                throw SingularWeightError(static_cast<Index>(i));
            }
            w = targets[i].weight / d;
        } else {
            w = targets[i].weight / std::sqrt(d * d + eps);
        }
        combo.noalias() += w * proj;
        weight_total += w;
    }
    combo /= weight_total;
    project_into(p.constraint(), combo, out);
}

void validate_config(const SolverConfig& cfg) {
    if (cfg.max_iterations < 1) {
        throw std::invalid_argument("solver: max_iterations must be >= 1");
    }
    if (!(cfg.step_tolerance > 0.0)) {
        throw std::invalid_argument("solver: step_tolerance must be > 0");
    }
    if (const auto* leg = std::get_if<PowerLeg>(&cfg.schedule)) {
        if (!(leg->start > 0.0)) {
            throw std::invalid_argument("schedule: start must be > 0");
        }
        if (!(leg->decay > 0.0 && leg->decay < 1.0)) {
            throw std::invalid_argument("schedule: decay must lie in (0, 1)");
        }
        if (!(leg->floor >= 0.0) || leg->floor > leg->start) {
            throw std::invalid_argument("schedule: requires 0 <= floor <= start");
        }
        if (!(leg->inner_tol > 0.0)) {
            throw std::invalid_argument("schedule: inner_tol must be > 0");
        }
    } else {
        const auto& fixed = std::get<FixedEps>(cfg.schedule);
        if (!(fixed.value >= 0.0)) {
            throw std::invalid_argument("schedule: fixed eps must be >= 0");
        }
    }
}

void check_solvable(const HeronProblem& p, const Vector& x0, const char* op) {
    check_dim(p.constraint(), x0, op);
    check_finite(x0, op);
    if (!p.coercive()) {
        throw std::invalid_argument(std::string(op) +
                                    ": neither the constraint nor any target set is bounded, "
                                    "a minimizer may not exist");
    }
}

namespace {

struct SolveState {
    Vector x;
    int iteration = 1;  // index of x, 1-based
    Trajectory* trajectory = nullptr;

    void record(const HeronProblem& p, double eps, double step_norm) {
        if (trajectory == nullptr) return;
        trajectory->records.push_back(TrajectoryRecord{
            iteration, x, eps, p.objective(x), p.objective_eps(x, eps), step_norm});
    }
};

// Runs the fixed-eps loop on an existing state; used by both the public
// fixed-eps solve and the continuation legs.
SolveStatus run_fixed_leg(const HeronProblem& p, SolveState& st, double eps, double tol,
                          int max_iteration_index) {
    Vector next(st.x.size());
    Vector proj(st.x.size());
    Vector combo(st.x.size());
    while (st.iteration < max_iteration_index) {
        try {
            mm_step_into(p, st.x, eps, next, proj, combo);
        } catch (const SingularWeightError&) {
            return SolveStatus::SingularWeight;
        }
        const double step = (next - st.x).lpNorm<Eigen::Infinity>();
        st.x.swap(next);
        ++st.iteration;
        st.record(p, eps, step);
        if (step <= tol) {
            return SolveStatus::Converged;
        }
    }
    return SolveStatus::MaxIterations;
}

}  // namespace
}  // namespace detail

Vector mm_step(const HeronProblem& p, const Vector& x, double eps) {
    detail::check_dim(p.constraint(), x, "mm_step");
    detail::check_finite(x, "mm_step");
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("mm_step: eps must be >= 0");
    }
    Vector out(x.size()), proj(x.size()), combo(x.size());
    detail::mm_step_into(p, x, eps, out, proj, combo);
    return out;
}

SolveResult mm_solve_fixed_eps(const HeronProblem& p, const Vector& x0, double eps,
                               const SolverConfig& cfg) {
    detail::validate_config(cfg);
    detail::check_solvable(p, x0, "mm_solve_fixed_eps");
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("mm_solve_fixed_eps: eps must be >= 0");
    }

    SolveResult result{project(p.constraint(), x0), SolveStatus::MaxIterations, 1, std::nullopt};
    if (cfg.record_trajectory) result.trajectory.emplace();

    detail::SolveState st{result.x, 1, result.trajectory ? &*result.trajectory : nullptr};
    st.record(p, eps, 0.0);
    const SolveStatus status = detail::run_fixed_leg(p, st, eps, cfg.step_tolerance,
                                                     cfg.max_iterations);
    result.x = std::move(st.x);
    result.status = status;
    result.iterations = st.iteration;
    return result;
}

SolveResult mm_solve_continuation(const HeronProblem& p, const Vector& x0,
                                  const SolverConfig& cfg) {
    detail::validate_config(cfg);
    detail::check_solvable(p, x0, "mm_solve_continuation");
    const auto* schedule = std::get_if<PowerLeg>(&cfg.schedule);
    if (schedule == nullptr) {
        throw std::invalid_argument("mm_solve_continuation: schedule must be PowerLeg");
    }

    SolveResult result{project(p.constraint(), x0), SolveStatus::MaxIterations, 1, std::nullopt};
    if (cfg.record_trajectory) result.trajectory.emplace();

    detail::SolveState st{result.x, 1, result.trajectory ? &*result.trajectory : nullptr};
    st.record(p, schedule->start, 0.0);

    SolveStatus status = SolveStatus::MaxIterations;
    for (int leg = 1;; ++leg) {
        double eps = schedule->start * std::pow(schedule->decay, leg - 1);
        const bool is_floor_leg = eps <= schedule->floor;
        if (is_floor_leg) eps = schedule->floor;
        status = detail::run_fixed_leg(p, st, eps, schedule->inner_tol, cfg.max_iterations);
        if (status == SolveStatus::MaxIterations) break;
        if (is_floor_leg) {
            if (schedule->floor > 0.0) {
                // final unperturbed leg; a singular weight means an iterate
                // landed on a target set, in which case the floor-leg answer
                // already is the limit point
                Vector floor_answer = st.x;
                const int floor_iteration = st.iteration;
                const size_t floor_records =
                    st.trajectory ? st.trajectory->records.size() : 0;
                status = detail::run_fixed_leg(p, st, 0.0, cfg.step_tolerance,
                                               cfg.max_iterations);
                if (status == SolveStatus::SingularWeight) {
                    st.x = std::move(floor_answer);
                    st.iteration = floor_iteration;
                    if (st.trajectory) st.trajectory->records.resize(floor_records);
                    status = SolveStatus::Converged;
                }
            }
            break;
        }
    }

    result.x = std::move(st.x);
    result.status = status;
    result.iterations = st.iteration;
    return result;
}

SolveResult mm_solve(const HeronProblem& p, const Vector& x0, const SolverConfig& cfg) {
    if (const auto* fixed = std::get_if<FixedEps>(&cfg.schedule)) {
        return mm_solve_fixed_eps(p, x0, fixed->value, cfg);
    }
    return mm_solve_continuation(p, x0, cfg);
}

}  // namespace heron
