#pragma once

#include "curvewidth/geometry.hpp"
#include "curvewidth/report.hpp"
#include "curvewidth/rng.hpp"

namespace curvewidth {

// Point of the affine chart e + e^perp, stored as the n coordinates in
// e^perp. The chart map is x -> x / <x, e>: the Klein disk for H^n and the
// gnomonic chart of the open hemisphere around e for S^n; the identity for
// Euclidean input. Geodesics map to straight chart segments.
struct ChartPoint {
    Space source;
    Vec y;
};

ChartPoint chart_forward(const Point& p);
Point chart_inverse(const ChartPoint& c);

// Axis lengths of the chart image of a ball of radius r tangent to e (center
// along a tangent direction u): `a` along u, `b` for the orthogonal axes.
// Hyperbolic images are oblate (a < b), spherical ones prolate (a > b).
struct EllipsoidAxes {
    double a = 0.0;
    double b = 0.0;
    ChartPoint touch_point;
    Vec axis_dir;
};

EllipsoidAxes ball_image_axes(const Space& space, double r);

// Finite-difference check of the chart differential at random points at
// distance r from e: determinant against the closed form and singular values
// against the displayed sandwich.
CheckReport differential_bounds_check(const Space& space, double r, int trials, CounterRng rng,
                                      double fd_step = 1e-6);

// Jacobian of the chart at z as a dim x dim matrix over an orthonormal
// tangent basis at z (rows indexed by chart coordinates).
std::vector<Vec> chart_jacobian(const Point& z, double fd_step = 1e-6);

// Singular values (ascending) of a small matrix given by columns.
std::vector<double> singular_values(const std::vector<Vec>& columns);

}  // namespace curvewidth
