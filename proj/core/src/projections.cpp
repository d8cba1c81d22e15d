#include "curvewidth/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvewidth {

ChartPoint chart_forward(const Point& p) {
    if (p.space.euclidean()) return {p.space, p.x};
    if (p.x[0] <= 0.0) throw std::domain_error("chart_forward: point outside the open hemisphere");
    Vec y(p.x.n - 1);
    for (int i = 1; i < p.x.n; ++i) y[i - 1] = p.x[i] / p.x[0];
    return {p.space, y};
}

Point chart_inverse(const ChartPoint& c) {
    if (c.source.euclidean()) return {c.source, c.y};
    const int m = c.source.ambient_dim();
    double r2 = dot(c.y, c.y);
    double s;
    if (c.source.spherical()) {
        s = std::sqrt(1.0 + r2);
    } else {
        if (r2 >= 1.0) throw std::domain_error("chart_inverse: outside the unit chart disk");
        s = std::sqrt(1.0 - r2);
    }
    Vec x(m);
    x[0] = 1.0 / s;
    for (int i = 1; i < m; ++i) x[i] = c.y[i - 1] / s;
    return renormalize(c.source, x);
}

EllipsoidAxes ball_image_axes(const Space& space, double r) {
    if (space.euclidean()) throw std::invalid_argument("ball_image_axes: curved spaces only");
    if (r <= 0.0) throw std::domain_error("ball_image_axes: radius must be positive");
    constexpr double kPi = 3.14159265358979323846;
    EllipsoidAxes out;
    if (space.hyperbolic()) {
        out.a = std::sinh(2.0 * r) / std::cosh(2.0 * r);
        out.b = 2.0 * std::sinh(r) / std::sqrt(std::cosh(2.0 * r));
    } else {
        if (r >= 0.25 * kPi) throw std::domain_error("ball_image_axes: spherical radius must be < pi/4");
        out.a = std::sin(2.0 * r) / std::cos(2.0 * r);
        out.b = 2.0 * std::sin(r) / std::sqrt(std::cos(2.0 * r));
    }
    out.touch_point = {space, Vec(space.dim)};
    Vec axis(space.dim);
    axis[0] = 1.0;
    out.axis_dir = axis;
    return out;
}

std::vector<Vec> chart_jacobian(const Point& z, double fd_step) {
    auto basis = tangent_basis(z);
    std::vector<Vec> cols;
    cols.reserve(basis.size());
    for (const Vec& b : basis) {
        ChartPoint plus = chart_forward(geodesic_point(z, b, fd_step));
        ChartPoint minus = chart_forward(geodesic_point(z, b, -fd_step));
        cols.push_back((plus.y - minus.y) * (0.5 / fd_step));
    }
    return cols;
}

namespace {

double det_small(const std::vector<Vec>& cols) {
    const int n = static_cast<int>(cols.size());
    if (n == 2) return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0];
    if (n == 3)
        return cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1]) -
               cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1]) +
               cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1]);
    throw std::invalid_argument("det_small: dims 2 and 3 only");
}

}  // namespace

std::vector<double> singular_values(const std::vector<Vec>& cols) {
    // Eigenvalues of the Gram matrix by cyclic Jacobi rotations.
    const int n = static_cast<int>(cols.size());
    double g[3][3] = {};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = dot(cols[i], cols[j]);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += g[p][q] * g[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(g[p][q]) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * g[p][q], g[q][q] - g[p][p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double akp = g[k][p], akq = g[k][q];
                    g[k][p] = c * akp - s * akq;
                    g[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = g[p][k], aqk = g[q][k];
                    g[p][k] = c * apk - s * aqk;
                    g[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> sv;
    for (int i = 0; i < n; ++i) sv.push_back(std::sqrt(std::max(0.0, g[i][i])));
    std::sort(sv.begin(), sv.end());
    return sv;
}

CheckReport differential_bounds_check(const Space& space, double r, int trials, CounterRng rng,
                                      double fd_step) {
    if (space.euclidean())
        throw std::invalid_argument("differential_bounds_check: curved spaces only");
    constexpr double kPi = 3.14159265358979323846;
    if (space.spherical() && r >= 0.5 * kPi)
        throw std::domain_error("differential_bounds_check: r must be < pi/2 on the sphere");

    CheckReport rep;
    rep.check_name = "chart-differential";
    rep.space = space;
    rep.parameters = {{"r", r}, {"fd_step", fd_step}};
    rep.trials = trials;
    rep.seed = rng.state_digest();

    const double mc = metric_cos(space, r);
    const double det_expected = std::pow(mc, -(space.dim + 1.0));
    double sv_lo = space.hyperbolic() ? 1.0 / (mc * mc) : 1.0 / mc;
    double sv_hi = space.hyperbolic() ? 1.0 / mc : 1.0 / (mc * mc);

    const double fd_slack = 256.0 * fd_step;  // central differences are O(step^2), be generous
    Point e = reference_point(space);
    auto basis = tangent_basis(e);
    double worst = std::numeric_limits<double>::infinity();
    double mean = 0.0;
    bool ok = true;
    for (int t = 0; t < trials; ++t) {
        Vec coeff = rng.unit_vector(space.dim);
        Vec dir(space.ambient_dim());
        for (int i = 0; i < space.dim; ++i) dir = axpy(coeff[i], basis[static_cast<size_t>(i)], dir);
        Point z = (r == 0.0) ? e : geodesic_point(e, dir, r);
        auto jac = chart_jacobian(z, fd_step);
        double dval = std::abs(det_small(jac));
        double rel = std::abs(dval - det_expected) / det_expected;
        mean += rel;
        worst = std::min(worst, 1e-6 - rel);
        if (rel > 1e-6) ok = false;
        for (double sv : singular_values(jac)) {
            if (sv < sv_lo - fd_slack || sv > sv_hi + fd_slack) ok = false;
            worst = std::min(worst, std::min(sv - (sv_lo - fd_slack), (sv_hi + fd_slack) - sv));
        }
    }
    rep.measured_mean = mean / std::max(1, trials);
    rep.measured_min = worst;
    rep.bound = 0.0;
    rep.margin = worst;
    rep.pass = ok;
    return rep;
}

}  // namespace curvewidth
