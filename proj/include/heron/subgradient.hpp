#pragma once

#include "heron/mm.hpp"

namespace heron {

/// eta_m = scale / m, the classic divergent-sum / square-summable rule.
struct HarmonicStep {
    double scale = 1.0;
};

/// Explicit positive step sizes; the solve stops when the list runs out.
struct CustomSteps {
    std::vector<double> steps;
};

using StepSizeRule = std::variant<HarmonicStep, CustomSteps>;

/// One projected-subgradient update
///   P_S[x - eta * sum_i weight_i * v_i],
/// v_i = (x - P_{C_i}(x)) / d(x, C_i), or zero when x lies in C_i.
Vector subgradient_step(const HeronProblem& p, const Vector& x, double eta);

/// Run from P_S(x0) for the full iterate budget (subgradient steps are not
/// monotone, so there is no early stop unless `stop_step_norm` is given).
/// Trajectories are recorded at logarithmically spaced checkpoints plus the
/// final iterate, to stay bounded at million-iterate budgets.
SolveResult subgradient_solve(const HeronProblem& p, const Vector& x0, const StepSizeRule& rule,
                              const SolverConfig& cfg,
                              std::optional<double> stop_step_norm = std::nullopt);

namespace detail {
bool is_checkpoint(int iteration);
}

}  // namespace heron
