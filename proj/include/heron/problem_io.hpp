#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "heron/mm.hpp"
#include "heron/subgradient.hpp"

namespace heron {

enum class ParseErrorCode {
    MissingHeader,
    UnsupportedVersion,
    MissingDimension,
    MalformedNumber,
    UnknownSetKind,
    UnknownKey,
    DuplicateKey,
    MissingKey,
    DimensionMismatch,
    NonpositiveWeight,
    NonpositiveRadius,
    NonpositiveScale,
    BoxBoundsOrder,
    ZeroNormal,
    MissingConstraint,
    NoTargets,
    UnknownMethod,
    InvalidValue,
    StrayLine,
};

const char* to_string(ParseErrorCode code);

/// Position-annotated problem-document error; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorCode code, int line, int column, const std::string& detail);
    ParseErrorCode code() const { return code_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    ParseErrorCode code_;
    int line_;
    int column_;
};

/// Optional `solver` section of a problem document.
struct SolverSettings {
    enum class Method { Mm, Subgradient };
    Method method = Method::Mm;
    std::optional<Vector> start;
    std::optional<double> eps_start;
    std::optional<double> eps_decay;
    std::optional<double> eps_floor;
    std::optional<double> inner_tol;
    std::optional<double> tolerance;
    std::optional<double> step_scale;  // subgradient eta_m = step_scale / m
    std::optional<int> max_iterations;
    bool record_trajectory = false;
};

struct ParsedProblem {
    HeronProblem problem;
    std::optional<SolverSettings> solver;
};

/// Parse the `heron-problem v1` text format (grammar in
/// docs/problem-format.md). Throws ParseError with line/column on the first
/// malformed construct.
ParsedProblem parse_problem(std::string_view text);
ParsedProblem parse_problem_file(const std::string& path);

/// Canonical text form; parse(serialize(p)) reproduces the problem exactly
/// and serialization is idempotent.
std::string serialize_problem(const HeronProblem& problem,
                              const std::optional<SolverSettings>& solver = std::nullopt);

/// Assemble a SolverConfig from document settings. eps-start 0 selects the
/// unperturbed fixed-eps solver; any other eps value configures the
/// continuation schedule around the defaults.
SolverConfig solver_config_from(const SolverSettings& settings);

/// Run the configured method (mm or subgradient) from `start`.
SolveResult run_solver(const HeronProblem& problem, const Vector& start,
                       const SolverSettings& settings);

/// Trajectory CSV: header `iteration,eps,x1..xd,objective,objective_eps,
/// step_norm`, one row per record, 17 significant digits (lossless double
/// round-trip), LF line endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);
void write_trajectory_csv_file(const std::string& path, const Trajectory& trajectory);
Trajectory read_trajectory_csv(std::istream& is);

}  // namespace heron
