#include "curvewidth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvewidth {

namespace {

void require_same_space(const Point& a, const Point& b) {
    if (a.space != b.space) throw std::invalid_argument("points from different spaces");
}

}  // namespace

double bilinear_form(const Vec& x, const Vec& y) {
    if (x.n != y.n) throw std::invalid_argument("bilinear_form: dimension mismatch");
    double s = x[0] * y[0];
    for (int i = 1; i < x.n; ++i) s -= x[i] * y[i];
    return s;
}

Point renormalize(const Space& space, Vec coords) {
    switch (space.kind) {
        case Curvature::Euclidean:
            return {space, coords};
        case Curvature::Spherical: {
            double nrm = norm(coords);
            if (nrm == 0.0) throw std::domain_error("renormalize: zero vector");
            return {space, coords * (1.0 / nrm)};
        }
        case Curvature::Hyperbolic: {
            double q = bilinear_form(coords, coords);
            if (q <= 0.0 || coords[0] <= 0.0)
                throw std::domain_error("renormalize: not a timelike upper-sheet vector");
            return {space, coords * (1.0 / std::sqrt(q))};
        }
    }
    return {space, coords};
}

Point make_point(const Space& space, const Vec& coords) {
    if (coords.n != space.ambient_dim())
        throw std::invalid_argument("make_point: coordinate length mismatch");
    switch (space.kind) {
        case Curvature::Euclidean:
            break;
        case Curvature::Spherical:
            if (std::abs(dot(coords, coords) - 1.0) > tol::invariant)
                throw std::invalid_argument("make_point: not on the unit sphere");
            break;
        case Curvature::Hyperbolic:
            if (std::abs(bilinear_form(coords, coords) - 1.0) > tol::invariant)
                throw std::invalid_argument("make_point: not on the hyperboloid");
            if (coords[0] < 1.0 - tol::invariant)
                throw std::invalid_argument("make_point: not on the upper sheet");
            break;
    }
    return {space, coords};
}

Point reference_point(const Space& space) {
    Vec x(space.ambient_dim());
    if (!space.euclidean()) x[0] = 1.0;
    return {space, x};
}

double tangent_dot(const Space& space, const Vec& u, const Vec& v) {
    if (space.hyperbolic()) return -bilinear_form(u, v);
    return dot(u, v);
}

double tangent_norm(const Space& space, const Vec& u) {
    double q = tangent_dot(space, u, u);
    if (q < 0.0) {
        if (q < -tol::identity) throw std::domain_error("tangent_norm: not spacelike");
        q = 0.0;
    }
    return std::sqrt(q);
}

Vec project_to_tangent(const Point& at, const Vec& ambient) {
    switch (at.space.kind) {
        case Curvature::Euclidean:
            return ambient;
        case Curvature::Spherical:
            return axpy(-dot(ambient, at.x), at.x, ambient);
        case Curvature::Hyperbolic:
            return axpy(-bilinear_form(ambient, at.x), at.x, ambient);
    }
    return ambient;
}

TangentVector make_tangent(const Point& base, const Vec& v) {
    if (v.n != base.x.n) throw std::invalid_argument("make_tangent: dimension mismatch");
    return {base, project_to_tangent(base, v)};
}

double distance(const Point& a, const Point& b, double clamp_tol) {
    require_same_space(a, b);
    switch (a.space.kind) {
        case Curvature::Euclidean:
            return norm(a.x - b.x);
        case Curvature::Spherical: {
            // Chord-based evaluation stays accurate near coincident and
            // antipodal pairs, where acos of the inner product loses half the
            // significant digits.
            double c = dot(a.x, b.x);
            if (c < -1.0 - clamp_tol || c > 1.0 + clamp_tol)
                throw std::domain_error("distance: inner product outside [-1,1]");
            if (c >= 0.0) {
                double chord = norm(a.x - b.x);
                return 2.0 * std::asin(std::clamp(0.5 * chord, 0.0, 1.0));
            }
            double anti = norm(a.x + b.x);
            return 3.14159265358979323846 - 2.0 * std::asin(std::clamp(0.5 * anti, 0.0, 1.0));
        }
        case Curvature::Hyperbolic: {
            // -B(a-b, a-b) = 4 sinh^2(d/2), computed from coordinate
            // differences to avoid cancellation in the form value.
            double c = bilinear_form(a.x, b.x);
            if (c < 1.0 - clamp_tol) throw std::domain_error("distance: form value below 1");
            double q = -bilinear_form(a.x - b.x, a.x - b.x);
            return 2.0 * std::asinh(0.5 * std::sqrt(std::max(q, 0.0)));
        }
    }
    return 0.0;
}

Point geodesic_point(const Point& z, const Vec& unit_dir, double t) {
    switch (z.space.kind) {
        case Curvature::Euclidean:
            return {z.space, axpy(t, unit_dir, z.x)};
        case Curvature::Spherical:
            return renormalize(z.space, z.x * std::cos(t) + unit_dir * std::sin(t));
        case Curvature::Hyperbolic:
            return renormalize(z.space, z.x * std::cosh(t) + unit_dir * std::sinh(t));
    }
    return z;
}

Point geodesic_point(const TangentVector& u, double t) {
    return geodesic_point(u.base, u.v, t);
}

TangentVector direction(const Point& from, const Point& to) {
    require_same_space(from, to);
    double d = distance(from, to);
    if (d < tol::invariant) throw std::domain_error("direction: coincident points");
    if (from.space.spherical() && d > 3.14159265358979323846 - tol::invariant)
        throw std::domain_error("direction: antipodal points");
    Vec w = project_to_tangent(from, to.x - from.x);
    double nrm = tangent_norm(from.space, w);
    if (nrm < 1e-300) throw std::domain_error("direction: degenerate direction");
    return {from, w * (1.0 / nrm)};
}

Point midpoint(const Point& a, const Point& b) {
    double d = distance(a, b);
    if (d < tol::invariant) return a;
    return geodesic_point(direction(a, b), 0.5 * d);
}

double angle_between(const TangentVector& u, const TangentVector& v) {
    const Space& s = u.base.space;
    double nu = tangent_norm(s, u.v);
    double nv = tangent_norm(s, v.v);
    if (nu < 1e-300 || nv < 1e-300) throw std::domain_error("angle_between: zero vector");
    // Half-angle form stays accurate for nearly parallel and nearly opposite
    // vectors.
    Vec a = u.v * (1.0 / nu);
    Vec b = v.v * (1.0 / nv);
    double d = tangent_norm(s, a - b);
    double ssum = tangent_norm(s, a + b);
    return 2.0 * std::atan2(d, ssum);
}

double angle(const Point& x, const Point& y, const Point& z) {
    return angle_between(direction(y, x), direction(y, z));
}

double side(const Hyperplane& h, const Point& p) {
    if (p.space != h.base.space) throw std::invalid_argument("side: space mismatch");
    switch (p.space.kind) {
        case Curvature::Euclidean:
            return dot(p.x - h.base.x, h.normal);
        case Curvature::Spherical:
            return dot(p.x, h.normal);
        case Curvature::Hyperbolic:
            return -bilinear_form(p.x, h.normal);
    }
    return 0.0;
}

Point reflect(const Hyperplane& h, const Point& p) {
    if (p.space != h.base.space) throw std::invalid_argument("reflect: space mismatch");
    switch (p.space.kind) {
        case Curvature::Euclidean:
            return {p.space, axpy(-2.0 * dot(p.x - h.base.x, h.normal), h.normal, p.x)};
        case Curvature::Spherical:
            return renormalize(p.space, axpy(-2.0 * dot(p.x, h.normal), h.normal, p.x));
        case Curvature::Hyperbolic:
            return renormalize(p.space, axpy(2.0 * bilinear_form(p.x, h.normal), h.normal, p.x));
    }
    return p;
}

TangentVector reflect(const Hyperplane& h, const TangentVector& u) {
    Point base = reflect(h, u.base);
    Vec w = u.v;
    switch (u.base.space.kind) {
        case Curvature::Euclidean:
            w = axpy(-2.0 * dot(u.v, h.normal), h.normal, u.v);
            break;
        case Curvature::Spherical:
            w = axpy(-2.0 * dot(u.v, h.normal), h.normal, u.v);
            break;
        case Curvature::Hyperbolic:
            w = axpy(2.0 * bilinear_form(u.v, h.normal), h.normal, u.v);
            break;
    }
    return {base, project_to_tangent(base, w)};
}

Hyperplane perpendicular_bisector(const Point& x, const Point& y) {
    double d = distance(x, y);
    if (d < tol::invariant) throw std::domain_error("perpendicular_bisector: coincident points");
    Point m = midpoint(x, y);
    TangentVector n = direction(m, y);
    return {m, n.v};
}

double distance_to_hyperplane(const Point& p, const Hyperplane& h) {
    double s = side(h, p);
    switch (p.space.kind) {
        case Curvature::Euclidean:
            return std::abs(s);
        case Curvature::Spherical:
            return std::asin(std::clamp(std::abs(s), 0.0, 1.0));
        case Curvature::Hyperbolic:
            return std::asinh(std::abs(s));
    }
    return 0.0;
}

Point foot_on_hyperplane(const Point& p, const Hyperplane& h) {
    switch (p.space.kind) {
        case Curvature::Euclidean:
            return {p.space, axpy(-dot(p.x - h.base.x, h.normal), h.normal, p.x)};
        case Curvature::Spherical: {
            Vec w = axpy(-dot(p.x, h.normal), h.normal, p.x);
            if (norm(w) < tol::invariant)
                throw std::domain_error("foot_on_hyperplane: pole of the hyperplane");
            return renormalize(p.space, w);
        }
        case Curvature::Hyperbolic:
            return renormalize(p.space, axpy(bilinear_form(p.x, h.normal), h.normal, p.x));
    }
    return p;
}

TangentVector ball_outer_normal(const Point& center, const Point& boundary_point) {
    TangentVector toward_center = direction(boundary_point, center);
    return {boundary_point, -toward_center.v};
}

std::vector<Vec> tangent_basis(const Point& p) {
    const Space& s = p.space;
    std::vector<Vec> basis;
    basis.reserve(s.dim);
    const int m = s.ambient_dim();
    for (int i = 0; i < m && static_cast<int>(basis.size()) < s.dim; ++i) {
        Vec e(m);
        e[i] = 1.0;
        Vec w = project_to_tangent(p, e);
        for (const Vec& b : basis) w = axpy(-tangent_dot(s, w, b), b, w);
        double nrm = tangent_norm(s, w);
        if (nrm > 1e-6) basis.push_back(w * (1.0 / nrm));
    }
    if (static_cast<int>(basis.size()) != s.dim)
        throw std::domain_error("tangent_basis: failed to build a full basis");
    return basis;
}

Vec rotate_tangent_quarter(const Point& at, const Vec& u) {
    if (at.space.dim != 2) throw std::invalid_argument("rotate_tangent_quarter: dim 2 only");
    if (at.space.euclidean()) return Vec{-u[1], u[0]};
    // Cross-product style complement within the tangent plane.
    auto basis = tangent_basis(at);
    double c1 = tangent_dot(at.space, u, basis[0]);
    double c2 = tangent_dot(at.space, u, basis[1]);
    return basis[0] * (-c2) + basis[1] * c1;
}

Vec PlaneRotation::apply(const Vec& x) const {
    if (trivial) return x;
    double a = dot(x, e1), b = dot(x, e2);
    Vec y = x;
    y = axpy(-a, e1, y);
    y = axpy(-b, e2, y);
    y = axpy(c * a - s * b, e1, y);
    y = axpy(s * a + c * b, e2, y);
    return y;
}

Vec PlaneRotation::apply_inverse(const Vec& x) const {
    if (trivial) return x;
    double a = dot(x, e1), b = dot(x, e2);
    Vec y = x;
    y = axpy(-a, e1, y);
    y = axpy(-b, e2, y);
    y = axpy(c * a + s * b, e1, y);
    y = axpy(-s * a + c * b, e2, y);
    return y;
}

PlaneRotation rotation_taking(const Vec& from, const Vec& to) {
    PlaneRotation rot;
    Vec f = normalized(from);
    Vec t = normalized(to);
    double c = std::clamp(dot(f, t), -1.0, 1.0);
    if (c > 1.0 - 1e-15) return rot;  // already aligned
    Vec e2 = axpy(-c, f, t);
    double nrm = norm(e2);
    if (nrm < 1e-12) throw std::domain_error("rotation_taking: antipodal inputs");
    rot.e1 = f;
    rot.e2 = e2 * (1.0 / nrm);
    rot.c = c;
    rot.s = std::sqrt(std::max(0.0, 1.0 - c * c));
    rot.trivial = false;
    return rot;
}

}  // namespace curvewidth
