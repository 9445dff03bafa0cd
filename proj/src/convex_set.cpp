#include "heron/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace heron {

namespace detail {

void check_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": coordinates must be finite");
    }
}

void check_dim(const ConvexSet& set, const Vector& x, const char* op) {
    if (x.size() != set.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (point has " +
                                    std::to_string(x.size()) + ", set has " +
                                    std::to_string(set.dim()) + ")");
    }
}

namespace {

void check_scalar_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + ": must be finite");
    }
}

Index validate(const ConvexSet::Variant& v) {
    return std::visit(
        [](const auto& s) -> Index {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                check_finite(s.point, "singleton");
                if (s.point.size() < 1) throw std::invalid_argument("singleton: dim must be >= 1");
                return s.point.size();
            } else if constexpr (std::is_same_v<T, Ball>) {
                check_finite(s.center, "ball");
                check_scalar_finite(s.radius, "ball radius");
                if (s.center.size() < 1) throw std::invalid_argument("ball: dim must be >= 1");
                if (s.radius <= 0.0) throw std::invalid_argument("ball: radius must be positive");
                return s.center.size();
            } else if constexpr (std::is_same_v<T, Box>) {
                check_finite(s.lower, "box lower");
                check_finite(s.upper, "box upper");
                if (s.lower.size() < 1) throw std::invalid_argument("box: dim must be >= 1");
                if (s.lower.size() != s.upper.size()) {
                    throw std::invalid_argument("box: lower and upper dimensions differ");
                }
                if ((s.lower.array() > s.upper.array()).any()) {
                    throw std::invalid_argument("box: requires lower <= upper componentwise");
                }
                return s.lower.size();
            } else if constexpr (std::is_same_v<T, Halfspace> || std::is_same_v<T, Hyperplane>) {
                check_finite(s.normal, "normal");
                check_scalar_finite(s.offset, "offset");
                if (s.normal.size() < 1) throw std::invalid_argument("normal: dim must be >= 1");
                if (s.normal.squaredNorm() == 0.0) {
                    throw std::invalid_argument("halfspace/hyperplane: normal must be nonzero");
                }
                return s.normal.size();
            } else if constexpr (std::is_same_v<T, Simplex>) {
                check_scalar_finite(s.scale, "simplex scale");
                if (s.dim < 1) throw std::invalid_argument("simplex: dim must be >= 1");
                if (s.scale <= 0.0) throw std::invalid_argument("simplex: scale must be positive");
                return s.dim;
            } else if constexpr (std::is_same_v<T, L1Ball>) {
                check_finite(s.center, "l1 ball");
                check_scalar_finite(s.radius, "l1 ball radius");
                if (s.center.size() < 1) throw std::invalid_argument("l1 ball: dim must be >= 1");
                if (s.radius <= 0.0) throw std::invalid_argument("l1 ball: radius must be positive");
                return s.center.size();
            } else {
                static_assert(std::is_same_v<T, WholeSpace>);
                if (s.dim < 1) throw std::invalid_argument("whole space: dim must be >= 1");
                return s.dim;
            }
        },
        v);
}

}  // namespace
}  // namespace detail

ConvexSet::ConvexSet(Variant v) : v_(std::move(v)), dim_(detail::validate(v_)) {}

ConvexSet ConvexSet::singleton(Vector point) { return ConvexSet(Singleton{std::move(point)}); }
ConvexSet ConvexSet::ball(Vector center, double radius) {
    return ConvexSet(Ball{std::move(center), radius});
}
ConvexSet ConvexSet::box(Vector lower, Vector upper) {
    return ConvexSet(Box{std::move(lower), std::move(upper)});
}
ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
    return ConvexSet(Halfspace{std::move(normal), offset});
}
ConvexSet ConvexSet::hyperplane(Vector normal, double offset) {
    return ConvexSet(Hyperplane{std::move(normal), offset});
}
ConvexSet ConvexSet::simplex(Index dim, double scale) { return ConvexSet(Simplex{dim, scale}); }
ConvexSet ConvexSet::l1_ball(Vector center, double radius) {
    return ConvexSet(L1Ball{std::move(center), radius});
}
ConvexSet ConvexSet::whole_space(Index dim) { return ConvexSet(WholeSpace{dim}); }

bool ConvexSet::bounded() const {
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            return std::is_same_v<T, Singleton> || std::is_same_v<T, Ball> ||
                   std::is_same_v<T, Box> || std::is_same_v<T, Simplex> ||
                   std::is_same_v<T, L1Ball>;
        },
        v_);
}

const char* ConvexSet::kind_name() const {
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Singleton>) return "singleton";
            else if constexpr (std::is_same_v<T, Ball>) return "ball";
            else if constexpr (std::is_same_v<T, Box>) return "box";
            else if constexpr (std::is_same_v<T, Halfspace>) return "halfspace";
            else if constexpr (std::is_same_v<T, Hyperplane>) return "hyperplane";
            else if constexpr (std::is_same_v<T, Simplex>) return "simplex";
            else if constexpr (std::is_same_v<T, L1Ball>) return "l1ball";
            else return "wholespace";
        },
        v_);
}

Vector project_simplex(const Vector& x, double scale) {
    const Index d = x.size();
    std::vector<double> u(x.data(), x.data() + d);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (Index j = 0; j < d; ++j) {
        cumsum += u[static_cast<size_t>(j)];
        const double t = (cumsum - scale) / static_cast<double>(j + 1);
        if (u[static_cast<size_t>(j)] - t > 0.0) {
            tau = t;
        }
    }
    return (x.array() - tau).max(0.0).matrix();
}

void project_into(const ConvexSet& set, const Vector& x, Vector& out) {
    detail::check_dim(set, x, "project");
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                out = s.point;
            } else if constexpr (std::is_same_v<T, Ball>) {
                const double n = (x - s.center).norm();
                if (n <= s.radius) {
                    out = x;
                } else {
                    out = s.center + (s.radius / n) * (x - s.center);
                }
            } else if constexpr (std::is_same_v<T, Box>) {
                out = x.array().max(s.lower.array()).min(s.upper.array()).matrix();
            } else if constexpr (std::is_same_v<T, Halfspace>) {
                const double excess = s.normal.dot(x) - s.offset;
                if (excess <= 0.0) {
                    out = x;
                } else {
                    out = x - (excess / s.normal.squaredNorm()) * s.normal;
                }
            } else if constexpr (std::is_same_v<T, Hyperplane>) {
                const double excess = s.normal.dot(x) - s.offset;
                out = x - (excess / s.normal.squaredNorm()) * s.normal;
            } else if constexpr (std::is_same_v<T, Simplex>) {
                if (x.minCoeff() >= 0.0 && x.sum() == s.scale) {
                    out = x;
                } else {
                    out = project_simplex(x, s.scale);
                }
            } else if constexpr (std::is_same_v<T, L1Ball>) {
                if ((x - s.center).template lpNorm<1>() <= s.radius) {
                    out = x;
                } else {
                    // reduce to a simplex projection of the componentwise
                    // magnitudes, then restore signs
                    const Vector diff = x - s.center;
                    const Vector mag = project_simplex(diff.cwiseAbs(), s.radius);
                    out = s.center + diff.array().sign().matrix().cwiseProduct(mag);
                }
            } else {
                static_assert(std::is_same_v<T, WholeSpace>);
                out = x;
            }
        },
        set.variant());
}

Vector project(const ConvexSet& set, const Vector& x) {
    Vector out(x.size());
    project_into(set, x, out);
    return out;
}

double distance(const ConvexSet& set, const Vector& x) {
    Vector p(x.size());
    project_into(set, x, p);
    return (x - p).norm();
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("contains: tol must be >= 0");
    }
    return distance(set, x) <= tol;
}

}  // namespace heron
