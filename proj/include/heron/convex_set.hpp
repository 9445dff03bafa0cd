#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <variant>

namespace heron {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Closed convex sets with exact Euclidean projections.
///
/// Every variant is nonempty, closed and convex by construction; member
/// vectors are validated to be finite and dimension-consistent.
struct Singleton {
    Vector point;
};

struct Ball {
    Vector center;
    double radius;  // > 0
};

struct Box {
    Vector lower;  // lower <= upper componentwise
    Vector upper;
};

/// {x : <normal, x> <= offset}, normal != 0.
struct Halfspace {
    Vector normal;
    double offset;
};

/// {x : <normal, x> = offset}, normal != 0.
struct Hyperplane {
    Vector normal;
    double offset;
};

/// {x >= 0 : sum_i x_i = scale}, scale > 0.
struct Simplex {
    Index dim;
    double scale;
};

/// {x : ||x - center||_1 <= radius}, radius > 0.
struct L1Ball {
    Vector center;
    double radius;
};

/// All of R^d; projection is the identity.
struct WholeSpace {
    Index dim;
};

class ConvexSet {
public:
    using Variant = std::variant<Singleton, Ball, Box, Halfspace, Hyperplane,
                                 Simplex, L1Ball, WholeSpace>;

    explicit ConvexSet(Variant v);

    static ConvexSet singleton(Vector point);
    static ConvexSet ball(Vector center, double radius);
    static ConvexSet box(Vector lower, Vector upper);
    static ConvexSet halfspace(Vector normal, double offset);
    static ConvexSet hyperplane(Vector normal, double offset);
    static ConvexSet simplex(Index dim, double scale);
    static ConvexSet l1_ball(Vector center, double radius);
    static ConvexSet whole_space(Index dim);

    Index dim() const { return dim_; }

    /// True for variants with bounded extent (singleton, ball, box,
    /// simplex, l1 ball); false for halfspace, hyperplane, whole space.
    bool bounded() const;

    const Variant& variant() const { return v_; }
    const char* kind_name() const;

private:
    Variant v_;
    Index dim_;
};

/// Nearest point of `set` to `x`, written into `out`. Core routine used by
/// the solvers; `out` may not alias `x`.
void project_into(const ConvexSet& set, const Vector& x, Vector& out);

/// Nearest point of `set` to `x`. Returns `x` itself when `x` is in the set.
Vector project(const ConvexSet& set, const Vector& x);

/// Euclidean distance ||x - project(set, x)||; exactly 0 for points in the set.
double distance(const ConvexSet& set, const Vector& x);

/// distance(set, x) <= tol. Requires tol >= 0.
bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Sort-and-threshold projection onto {z >= 0 : sum z_i = scale}. O(d log d).
/// Shared kernel for the simplex and l1-ball variants.
Vector project_simplex(const Vector& x, double scale);

namespace detail {
void check_finite(const Vector& v, const char* what);
void check_dim(const ConvexSet& set, const Vector& x, const char* op);
}  // namespace detail

}  // namespace heron
