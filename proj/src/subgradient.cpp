#include "heron/subgradient.hpp"

#include <cmath>

namespace heron {

namespace {

constexpr double kMembershipDistance = 1e-13;

void subgradient_step_into(const HeronProblem& p, const Vector& x, double eta, Vector& out,
                           Vector& proj, Vector& descent) {
    descent = x;
    const auto& targets = p.targets();
    for (const TargetTerm& t : targets) {
        project_into(t.set, x, proj);
        const double d = (x - proj).norm();
        if (d > kMembershipDistance) {
            descent.noalias() -= (eta * t.weight / d) * (x - proj);
        }
    }
    project_into(p.constraint(), descent, out);
}

double step_size(const StepSizeRule& rule, int m) {
    if (const auto* harmonic = std::get_if<HarmonicStep>(&rule)) {
        return harmonic->scale / static_cast<double>(m);
    }
    const auto& custom = std::get<CustomSteps>(rule);
    return custom.steps[static_cast<size_t>(m - 1)];
}

void validate_rule(const StepSizeRule& rule) {
    if (const auto* harmonic = std::get_if<HarmonicStep>(&rule)) {
        if (!(harmonic->scale > 0.0)) {
            throw std::invalid_argument("step rule: scale must be > 0");
        }
        return;
    }
    const auto& custom = std::get<CustomSteps>(rule);
    if (custom.steps.empty()) {
        throw std::invalid_argument("step rule: custom step list is empty");
    }
    for (double s : custom.steps) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("step rule: all step sizes must be positive and finite");
        }
    }
}

}  // namespace

namespace detail {

// Records iterate 1..10 and then every multiple of the power of ten one
// decade below the index, which keeps all the usual table rows (10^j and
// their small multiples) while staying around a hundred records per decade.
bool is_checkpoint(int iteration) {
    if (iteration <= 10) return true;
    int decade = 1;
    while (iteration >= decade * 100) decade *= 10;
    return iteration % decade == 0;
}

}  // namespace detail

Vector subgradient_step(const HeronProblem& p, const Vector& x, double eta) {
    detail::check_dim(p.constraint(), x, "subgradient_step");
    detail::check_finite(x, "subgradient_step");
    if (!(eta > 0.0)) {
        throw std::invalid_argument("subgradient_step: eta must be > 0");
    }
    Vector out(x.size()), proj(x.size()), descent(x.size());
    subgradient_step_into(p, x, eta, out, proj, descent);
    return out;
}

SolveResult subgradient_solve(const HeronProblem& p, const Vector& x0, const StepSizeRule& rule,
                              const SolverConfig& cfg, std::optional<double> stop_step_norm) {
    detail::validate_config(cfg);
    detail::check_solvable(p, x0, "subgradient_solve");
    validate_rule(rule);
    if (stop_step_norm && !(*stop_step_norm > 0.0)) {
        throw std::invalid_argument("subgradient_solve: stop_step_norm must be > 0");
    }

    int budget = cfg.max_iterations;
    if (const auto* custom = std::get_if<CustomSteps>(&rule)) {
        const auto list_budget = static_cast<long long>(custom->steps.size()) + 1;
        if (list_budget < budget) budget = static_cast<int>(list_budget);
    }

    SolveResult result{project(p.constraint(), x0), SolveStatus::MaxIterations, 1, std::nullopt};
    if (cfg.record_trajectory) result.trajectory.emplace();

    Vector x = result.x;
    Vector next(x.size()), proj(x.size()), descent(x.size());
    auto record = [&](int iteration, double step_norm) {
        if (!result.trajectory) return;
        result.trajectory->records.push_back(
            TrajectoryRecord{iteration, x, 0.0, p.objective(x), p.objective(x), step_norm});
    };

    record(1, 0.0);
    int iteration = 1;
    SolveStatus status = SolveStatus::MaxIterations;
    while (iteration < budget) {
        subgradient_step_into(p, x, step_size(rule, iteration), next, proj, descent);
        const double step = (next - x).lpNorm<Eigen::Infinity>();
        x.swap(next);
        ++iteration;
        if (detail::is_checkpoint(iteration) || iteration == budget ||
            (stop_step_norm && step <= *stop_step_norm)) {
            record(iteration, step);
        }
        if (stop_step_norm && step <= *stop_step_norm) {
            status = SolveStatus::Converged;
            break;
        }
    }

    result.x = std::move(x);
    result.status = status;
    result.iterations = iteration;
    return result;
}

}  // namespace heron
