#include "heron/catalog.hpp"

#include <stdexcept>

namespace heron {

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

ConvexSet cube(const Vector& center) {
    const Vector half = Vector::Ones(center.size());
    return ConvexSet::box(center - half, center + half);
}

std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> entries;

    entries.push_back(CatalogEntry{
        "cubes-ball",
        "five cubes and a ball in R^3",
        HeronProblem(ConvexSet::ball(vec3(0, 2, 0), 1.0),
                     {TargetTerm{cube(vec3(0, -4, 0)), 1.0},
                      TargetTerm{cube(vec3(-4, 2, -3)), 1.0},
                      TargetTerm{cube(vec3(-3, -4, 2)), 1.0},
                      TargetTerm{cube(vec3(-5, 4, 4)), 1.0},
                      TargetTerm{cube(vec3(-1, 8, 1)), 1.0}}),
        vec3(0, 2, 0)});

    entries.push_back(CatalogEntry{
        "three-disks",
        "closest point to three disks in R^2",
        HeronProblem(ConvexSet::whole_space(2),
                     {TargetTerm{ConvexSet::ball(vec2(0, 2), 1.0), 1.0},
                      TargetTerm{ConvexSet::ball(vec2(2, 0), 1.0), 1.0},
                      TargetTerm{ConvexSet::ball(vec2(-2, 0), 1.0), 1.0}}),
        vec2(5, 7)});

    entries.push_back(CatalogEntry{
        "collinear-disks",
        "two disks with a continuum of solutions",
        HeronProblem(ConvexSet::ball(vec2(0, 0), 1.0),
                     {TargetTerm{ConvexSet::ball(vec2(2, 0), 1.0), 1.0},
                      TargetTerm{ConvexSet::ball(vec2(-2, 0), 1.0), 1.0}}),
        vec2(1.5, 0.25)});

    entries.push_back(CatalogEntry{
        "kuhn",
        "Kuhn's stalling example",
        HeronProblem(ConvexSet::whole_space(2),
                     {TargetTerm{ConvexSet::singleton(vec2(59, 0)), 5.0},
                      TargetTerm{ConvexSet::singleton(vec2(20, 0)), 5.0},
                      TargetTerm{ConvexSet::singleton(vec2(-20, 48)), 13.0},
                      TargetTerm{ConvexSet::singleton(vec2(-20, -48)), 13.0}}),
        vec2(44, 0)});

    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_examples() {
    static const std::vector<CatalogEntry> catalog = make_catalog();
    return catalog;
}

const CatalogEntry& builtin_example(std::string_view name) {
    for (const CatalogEntry& entry : builtin_examples()) {
        if (entry.name == name) return entry;
    }
    throw std::invalid_argument("unknown example '" + std::string(name) +
                                "'; available: cubes-ball, three-disks, collinear-disks, kuhn");
}

}  // namespace heron
