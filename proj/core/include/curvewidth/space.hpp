#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace curvewidth {

enum class Curvature { Euclidean, Spherical, Hyperbolic };

// Model space descriptor: flat R^n, unit sphere S^n, or the upper hyperboloid
// sheet H^n. Curved points live in R^{n+1} ambient coordinates, Euclidean
// points in R^n.
struct Space {
    Curvature kind = Curvature::Euclidean;
    int dim = 2;

    Space() = default;
    Space(Curvature k, int n) : kind(k), dim(n) {
        if (n < 2) throw std::invalid_argument("Space: dim must be >= 2");
        if (n > 6) throw std::invalid_argument("Space: dim must be <= 6");
    }

    int ambient_dim() const { return kind == Curvature::Euclidean ? dim : dim + 1; }
    bool euclidean() const { return kind == Curvature::Euclidean; }
    bool spherical() const { return kind == Curvature::Spherical; }
    bool hyperbolic() const { return kind == Curvature::Hyperbolic; }

    friend bool operator==(const Space& a, const Space& b) {
        return a.kind == b.kind && a.dim == b.dim;
    }
    friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }
};

inline Space euclidean(int n) { return {Curvature::Euclidean, n}; }
inline Space spherical(int n) { return {Curvature::Spherical, n}; }
inline Space hyperbolic(int n) { return {Curvature::Hyperbolic, n}; }

// Metric coefficient f with f' = metric_cos: (t, 1), (sin, cos), (sinh, cosh).
inline double metric_sin(const Space& s, double t) {
    switch (s.kind) {
        case Curvature::Euclidean: return t;
        case Curvature::Spherical: return std::sin(t);
        case Curvature::Hyperbolic: return std::sinh(t);
    }
    return t;
}

inline double metric_cos(const Space& s, double t) {
    switch (s.kind) {
        case Curvature::Euclidean: return 1.0;
        case Curvature::Spherical: return std::cos(t);
        case Curvature::Hyperbolic: return std::cosh(t);
    }
    return 1.0;
}

inline std::string space_name(const Space& s) {
    switch (s.kind) {
        case Curvature::Euclidean: return "euclidean";
        case Curvature::Spherical: return "spherical";
        case Curvature::Hyperbolic: return "hyperbolic";
    }
    return "euclidean";
}

inline Curvature parse_curvature(const std::string& name) {
    if (name == "euclidean") return Curvature::Euclidean;
    if (name == "spherical") return Curvature::Spherical;
    if (name == "hyperbolic") return Curvature::Hyperbolic;
    throw std::invalid_argument("unknown space: " + name);
}

namespace tol {
// Model invariants (membership of a point in its manifold, unit norms).
inline constexpr double invariant = 1e-12;
// Geometric identities verified through composed operations.
inline constexpr double identity = 1e-9;
}  // namespace tol

}  // namespace curvewidth
