#pragma once

#include <vector>

#include "curvewidth/space.hpp"
#include "curvewidth/vec.hpp"

namespace curvewidth {

// Point of a model space in ambient coordinates. For S^n and H^n the ambient
// vector has length dim+1 with the reference axis stored at index 0, so the
// hyperboloid bilinear form splits as B(x,y) = x0*y0 - <x',y'>.
struct Point {
    Space space;
    Vec x;
};

struct TangentVector {
    Point base;
    Vec v;
};

// Totally geodesic hyperplane through `base` with unit normal `normal` in the
// tangent space at `base`. side() is positive on the half-space the normal
// points into.
struct Hyperplane {
    Point base;
    Vec normal;
};

double bilinear_form(const Vec& x, const Vec& y);

Point make_point(const Space& space, const Vec& coords);
// Projects near-manifold coordinates back onto the model surface.
Point renormalize(const Space& space, Vec coords);
// The fixed reference point: origin for R^n, the axis point e for S^n/H^n.
Point reference_point(const Space& space);

double tangent_dot(const Space& space, const Vec& u, const Vec& v);
double tangent_norm(const Space& space, const Vec& u);
// Component of an ambient vector lying in the tangent space at `at`.
Vec project_to_tangent(const Point& at, const Vec& ambient);
TangentVector make_tangent(const Point& base, const Vec& v);

double distance(const Point& a, const Point& b, double clamp_tol = tol::identity);

Point geodesic_point(const TangentVector& u, double t);
Point geodesic_point(const Point& z, const Vec& unit_dir, double t);

// Unit tangent at `from` pointing toward `to` along the geodesic.
TangentVector direction(const Point& from, const Point& to);

Point midpoint(const Point& a, const Point& b);

// Angle at y of the geodesic segments [y,x] and [y,z], in [0, pi].
double angle(const Point& x, const Point& y, const Point& z);

double angle_between(const TangentVector& u, const TangentVector& v);

double side(const Hyperplane& h, const Point& p);

Point reflect(const Hyperplane& h, const Point& p);
TangentVector reflect(const Hyperplane& h, const TangentVector& u);

// Oriented so that the normal points from the midpoint toward y.
Hyperplane perpendicular_bisector(const Point& x, const Point& y);

double distance_to_hyperplane(const Point& p, const Hyperplane& h);
Point foot_on_hyperplane(const Point& p, const Hyperplane& h);

// Exterior unit normal at a boundary point of the ball around `center`.
TangentVector ball_outer_normal(const Point& center, const Point& boundary_point);

// Orthonormal basis of the tangent space at p.
std::vector<Vec> tangent_basis(const Point& p);

// Rotate a tangent vector by +pi/2 within a 2-dimensional model space.
Vec rotate_tangent_quarter(const Point& at, const Vec& u);

// Ambient rotation in span{from,to} mapping `from` to `to`; identity on the
// orthogonal complement. Used to recenter spherical charts.
struct PlaneRotation {
    Vec e1, e2;  // orthonormal pair spanning the rotation plane
    double c = 1.0, s = 0.0;
    bool trivial = true;

    Vec apply(const Vec& x) const;
    Vec apply_inverse(const Vec& x) const;
};

PlaneRotation rotation_taking(const Vec& from, const Vec& to);

}  // namespace curvewidth
