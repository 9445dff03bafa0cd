#pragma once

#include <string>
#include <string_view>

#include "heron/problem.hpp"

namespace heron {

/// A named instance from the numerical-experiment catalog, with the
/// starting point used for its reference tables.
struct CatalogEntry {
    std::string name;
    std::string title;
    HeronProblem problem;
    Vector start;
};

/// The four built-in experiment instances:
///   cubes-ball       five unit-half-width cubes, ball constraint, in R^3
///   three-disks      three unit disks, unconstrained, in R^2
///   collinear-disks  two unit disks with a continuum of solutions
///   kuhn             four weighted points that stall the unperturbed update
const std::vector<CatalogEntry>& builtin_examples();

/// Look up one entry by name; throws std::invalid_argument for unknown names.
const CatalogEntry& builtin_example(std::string_view name);

}  // namespace heron
