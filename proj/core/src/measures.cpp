#include "curvewidth/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "curvewidth/quadrature.hpp"
#include "curvewidth/solvers.hpp"
#include "curvewidth/threads.hpp"

namespace curvewidth {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr long long kChunk = 1 << 16;
}  // namespace

double kappa(int n) {
    if (n < 0) throw std::invalid_argument("kappa: n must be >= 0");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double ball_volume(const Space& space, double r) {
    if (r < 0.0) throw std::domain_error("ball_volume: negative radius");
    if (space.spherical() && r > kPi) throw std::domain_error("ball_volume: radius beyond pi");
    const int n = space.dim;
    switch (space.kind) {
        case Curvature::Euclidean:
            return kappa(n) * std::pow(r, n);
        case Curvature::Spherical:
            if (n == 2) return 2.0 * kPi * (1.0 - std::cos(r));
            if (n == 3) return 2.0 * kPi * (r - std::sin(r) * std::cos(r));
            break;
        case Curvature::Hyperbolic:
            if (n == 2) return 2.0 * kPi * (std::cosh(r) - 1.0);
            if (n == 3) return 2.0 * kPi * (std::sinh(r) * std::cosh(r) - r);
            break;
    }
    const double c = n * kappa(n);
    return integrate([&](double t) { return c * std::pow(metric_sin(space, t), n - 1); }, 0.0, r);
}

double ball_boundary_area(const Space& space, double r) {
    return space.dim * kappa(space.dim) * std::pow(metric_sin(space, r), space.dim - 1);
}

double ball_volume_inverse(const Space& space, double volume) {
    if (volume <= 0.0) throw std::domain_error("ball_volume_inverse: volume must be positive");
    double hi = 1.0;
    double cap = space.spherical() ? kPi : 1e6;
    if (space.spherical() && volume > ball_volume(space, kPi))
        throw std::domain_error("ball_volume_inverse: exceeds the total spherical volume");
    while (ball_volume(space, hi) < volume && hi < cap) hi = std::min(cap, 2.0 * hi);
    return bisect_increasing([&](double r) { return ball_volume(space, r); }, 0.0, hi, volume,
                             1e-14);
}

BallVolumeBounds ball_volume_bounds(const Space& space, double r, double s) {
    if (!(s > 0.0 && s < r)) throw std::invalid_argument("ball_volume_bounds: need 0 < s < r");
    const int n = space.dim;
    const double nk = n * kappa(n);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BallVolumeBounds out{nan, nan, nan};
    const double v = ball_volume(space, r);
    if (!space.spherical() || r <= 0.5 * kPi)
        out.lower_shrink = v - s * std::pow(metric_sin(space, r), n - 1) * nk;
    if (s < 0.5 * r) {
        if (!space.spherical() || r <= 0.5 * kPi)
            out.upper_shrink = v - s * std::pow(metric_sin(space, 0.5 * r), n - 1) * nk;
        if (!space.spherical() || r <= kPi / 3.0)
            out.upper_grow = v + s * std::pow(metric_sin(space, 1.5 * r), n - 1) * nk;
    }
    return out;
}

double ball_volume_global_upper(const Space& space, double r) {
    if (r <= 0.0) throw std::domain_error("ball_volume_global_upper: radius must be positive");
    if (space.spherical() && r >= 0.5 * kPi)
        throw std::domain_error("ball_volume_global_upper: spherical radius must be < pi/2");
    const double n = space.dim;
    if (space.hyperbolic() && r > 1.0)
        return std::pow(2.0, 0.5 * (3.0 * n + 2.0)) * std::exp((n - 1.0) * r) /
               std::pow(n, 0.5 * (n + 1.0));
    return std::pow(2.0, 3.0 * n) / std::pow(n, 0.5 * (n + 1.0)) * std::pow(r, n);
}

double cap_volume(const Space& space, double t, double delta) {
    if (!(delta > 0.0 && delta <= t)) throw std::domain_error("cap_volume: need 0 < delta <= t");
    if (space.spherical() && t >= 0.5 * kPi)
        throw std::domain_error("cap_volume: spherical t must be < pi/2");
    const int n = space.dim;
    const double kn1 = kappa(n - 1);
    // Slice radius in chart scale at axial coordinate xi, from the
    // right-angle relation of the space.
    auto slice = [&](double xi) {
        switch (space.kind) {
            case Curvature::Euclidean:
                return std::sqrt(std::max(0.0, t * t - xi * xi));
            case Curvature::Spherical: {
                double c = std::cos(xi);
                return std::sqrt(std::max(0.0, c * c - std::cos(t) * std::cos(t))) / c;
            }
            case Curvature::Hyperbolic: {
                double c = std::cosh(xi);
                double ct = std::cosh(t);
                return std::sqrt(std::max(0.0, ct * ct - c * c)) / c;
            }
        }
        return 0.0;
    };
    // Substitute xi = t - w^2 to remove the sqrt singularity at xi = t.
    double wmax = std::sqrt(delta);
    return integrate(
        [&](double w) { return kn1 * std::pow(slice(t - w * w), n - 1) * 2.0 * w; }, 0.0, wmax,
        1e-11);
}

double cap_lower_bound(const Space& space, double t, double delta) {
    const double n = space.dim;
    switch (space.kind) {
        case Curvature::Euclidean:
            if (!(delta > 0.0 && delta <= t))
                throw std::domain_error("cap_lower_bound (euclidean): need 0 < delta <= t");
            return 2.0 * kappa(space.dim - 1) / (n + 1.0) * std::pow(t, 0.5 * (n - 1.0)) *
                   std::pow(delta, 0.5 * (n + 1.0));
        case Curvature::Hyperbolic:
            if (!(delta > 0.0 && delta <= std::min(0.5 * t, 1.0)))
                throw std::domain_error("cap_lower_bound (hyperbolic): need 0 < delta <= min(t/2, 1)");
            return std::pow(n, -0.5 * (n - 1.0)) * std::pow(std::tanh(t - delta), 0.5 * (n - 1.0)) *
                   std::pow(delta, 0.5 * (n + 1.0));
        case Curvature::Spherical:
            if (!(t > 0.0 && t < 0.5 * kPi && delta > 0.0 && delta <= 0.5 * t))
                throw std::domain_error("cap_lower_bound (spherical): need t < pi/2, 0 < delta <= t/2");
            return 1.0 / (std::pow(2.0, n) * std::pow(n, 0.5 * n)) * std::pow(t, 0.5 * (n - 1.0)) *
                   std::pow(delta, 0.5 * (n + 1.0));
    }
    return 0.0;
}

double parallel_deficit_bound(const Space& space, double eps, double D, DeficitVariant variant) {
    if (eps < 0.0) throw std::invalid_argument("parallel_deficit_bound: eps must be >= 0");
    const double n = space.dim;
    if (variant == DeficitVariant::Prop) {
        if (space.hyperbolic()) return eps * std::pow(4.0 * std::cosh(0.75 * D), n - 1.0);
        return eps * std::pow(4.0, n - 1.0);
    }
    if (space.hyperbolic()) return eps * std::pow(4.0, n) * std::pow(std::cosh(D), n);
    return eps * std::pow(4.0, n);
}

StabilityConstants stability_constants(const Space& space, double D) {
    if (D <= 0.0) throw std::domain_error("stability_constants: D must be positive");
    if (space.spherical() && D >= 0.5 * kPi)
        throw std::domain_error("stability_constants: spherical D must be < pi/2");
    const double n = space.dim;
    StabilityConstants sc;
    sc.space = space;
    sc.D = D;

    if (space.hyperbolic() && D > 2.0)
        sc.gamma = n * std::exp(7.0 * D + 8.0);
    else
        sc.gamma = std::exp(21.0) * n * D;

    if (space.spherical() && D >= kPi / 6.0)
        sc.eps_threshold =
            std::exp(-30.0 * n) * std::pow(n, -0.5 * n) * std::pow(0.5 * kPi - D, 3.0 * n + 2.0);
    else if (space.hyperbolic() && D > 2.0)
        sc.eps_threshold = std::exp(-18.0 * D) * std::pow(n, -0.5 * n);
    else
        sc.eps_threshold = std::exp(-28.0 * n) * std::pow(n, -0.5 * n);

    if (space.hyperbolic())
        sc.gamma1_tilde = 1.0 / (std::pow(2.0, 8.0 * n) * std::pow(n, n)) /
                          std::pow(std::sinh(10.0 * D), 0.5 * (n + 2.0));
    else
        sc.gamma1_tilde =
            1.0 / (std::pow(2.0, 12.0 * n) * std::pow(n, n)) / std::pow(D, 0.5 * (n + 2.0));

    if (space.spherical() && D >= kPi / 6.0)
        sc.eta0 = 3.0 / (4.0 * kPi) * (0.5 * kPi - D) * (0.5 * kPi - D);
    else if (space.hyperbolic())
        sc.eta0 = std::min(1.0, 0.5 * D);
    else
        sc.eta0 = 0.5 * D;

    switch (space.kind) {
        case Curvature::Euclidean: sc.gamma0_tilde = 0.25 * std::sqrt(D); break;
        case Curvature::Hyperbolic: sc.gamma0_tilde = 0.25 * std::sqrt(std::tanh(D)); break;
        case Curvature::Spherical: sc.gamma0_tilde = 0.25 * std::sqrt(std::tan(0.5 * D)); break;
    }
    sc.gamma_tilde = space.hyperbolic() ? 1.0 / std::sinh(5.0 * D) : 1.0 / (4.0 * D);
    return sc;
}

namespace {

// Inverse radial CDF for the density f(t)^(n-1) on [0, R].
double radial_inverse(const Space& space, double R, double u) {
    const int n = space.dim;
    if (space.euclidean()) return R * std::pow(u, 1.0 / n);
    if (n == 2) {
        if (space.spherical()) return std::acos(1.0 - u * (1.0 - std::cos(R)));
        return std::acosh(1.0 + u * (std::cosh(R) - 1.0));
    }
    if (n == 3) {
        if (space.spherical()) {
            double total = R - std::sin(R) * std::cos(R);
            return bisect_increasing([](double t) { return t - std::sin(t) * std::cos(t); }, 0.0,
                                     R, u * total, 1e-14);
        }
        double total = std::sinh(R) * std::cosh(R) - R;
        return bisect_increasing([](double t) { return std::sinh(t) * std::cosh(t) - t; }, 0.0, R,
                                 u * total, 1e-14);
    }
    double total = integrate(
        [&](double t) { return std::pow(metric_sin(space, t), n - 1); }, 0.0, R);
    return bisect_increasing(
        [&](double t) {
            return integrate([&](double s) { return std::pow(metric_sin(space, s), n - 1); }, 0.0,
                             t);
        },
        0.0, R, u * total, 1e-12);
}

}  // namespace

Point sample_in_ball(const Point& center, double radius, CounterRng& rng) {
    if (radius <= 0.0) throw std::invalid_argument("sample_in_ball: radius must be positive");
    if (center.space.spherical() && radius > kPi)
        throw std::domain_error("sample_in_ball: spherical radius beyond pi");
    auto basis = tangent_basis(center);
    Vec coeff = rng.unit_vector(center.space.dim);
    double t = radial_inverse(center.space, radius, rng.uniform());
    Vec dir(center.x.n);
    for (int i = 0; i < center.space.dim; ++i) dir = axpy(coeff[i], basis[static_cast<size_t>(i)], dir);
    return geodesic_point(center, dir, t);
}

VolumeEstimate mc_volume(const Body& body, long long samples, CounterRng rng) {
    Ball bb = body.bounding_ball();
    if (bb.radius <= 0.0) throw std::invalid_argument("mc_volume: zero-measure bounding ball");
    if (body.space().spherical() && bb.radius >= kPi)
        throw std::domain_error("mc_volume: spherical bounding radius must be < pi");
    const double vball = ball_volume(body.space(), bb.radius);

    int chunks = static_cast<int>((samples + kChunk - 1) / kChunk);
    auto counts = run_chunked(chunks, [&](int c) -> std::uint64_t {
        CounterRng sub = rng.substream(static_cast<std::uint64_t>(c));
        long long lo = static_cast<long long>(c) * kChunk;
        long long hi = std::min(samples, lo + kChunk);
        std::uint64_t hits = 0;
        for (long long i = lo; i < hi; ++i) {
            Point p = sample_in_ball(bb.center, bb.radius, sub);
            if (body.contains(p)) ++hits;
        }
        return hits;
    });
    std::uint64_t hits = 0;
    for (auto c : counts) hits += c;

    double p = static_cast<double>(hits) / static_cast<double>(samples);
    VolumeEstimate est;
    est.value = vball * p;
    est.stderr_ = vball * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
    est.samples = samples;
    est.method = VolumeMethod::MonteCarlo;
    return est;
}

PairedCounts mc_paired_counts(const Body& body, const Hyperplane& h, long long samples,
                              CounterRng rng) {
    Ball bb = body.bounding_ball();
    // Common bounding ball for the body and its mirror image.
    Point bc = bb.center;
    Point bc_ref = reflect(h, bc);
    Point m = distance(bc, bc_ref) < 1e-14 ? bc : midpoint(bc, bc_ref);
    double R = std::max(distance(m, bc), distance(m, bc_ref)) + bb.radius;

    PairedCounts out;
    out.samples = samples;
    // Indicator rule for the symmetrized set: union side on the plus
    // half-space, intersection side on the minus half-space.
    auto tau = [&](const Point& p, const Point& mirror) {
        bool in_p = body.contains(p);
        bool in_m = body.contains(mirror);
        return side(h, p) >= 0.0 ? (in_p || in_m) : (in_p && in_m);
    };
    for (long long i = 0; i < samples; ++i) {
        Point p = sample_in_ball(m, R, rng);
        Point q = reflect(h, p);
        out.body_hits += (body.contains(p) ? 1 : 0) + (body.contains(q) ? 1 : 0);
        out.symmetrized_hits += (tau(p, q) ? 1 : 0) + (tau(q, p) ? 1 : 0);
    }
    return out;
}

SurfaceAreaEstimate minkowski_surface_area(const Body& body, const std::vector<double>& eps_steps,
                                           long long samples, CounterRng rng) {
    if (eps_steps.empty()) throw std::invalid_argument("minkowski_surface_area: no steps");
    for (size_t i = 1; i < eps_steps.size(); ++i)
        if (eps_steps[i] >= eps_steps[i - 1] || eps_steps[i] <= 0.0)
            throw std::invalid_argument("minkowski_surface_area: steps must be positive decreasing");

    SurfaceAreaEstimate out;
    out.steps = eps_steps;
    const Space& space = body.space();
    Ball bb = body.bounding_ball();
    double Rmax = bb.radius + eps_steps.front();
    double vball = ball_volume(space, Rmax);

    for (size_t k = 0; k < eps_steps.size(); ++k) {
        double eps = eps_steps[k];
        OracleBody par = parallel_body(body, eps);
        CounterRng sub = rng.substream(k);
        long long diff_hits = 0;
        // Common random numbers: count samples in the collar X^(eps) \ X.
        for (long long i = 0; i < samples; ++i) {
            Point p = sample_in_ball(bb.center, Rmax, sub);
            bool in_par = par.contains(p);
            bool in_body = in_par && body.contains(p);
            if (in_par && !in_body) ++diff_hits;
        }
        double pd = static_cast<double>(diff_hits) / static_cast<double>(samples);
        double q = vball * pd / eps;
        double se = vball * std::sqrt(std::max(0.0, pd * (1.0 - pd) / static_cast<double>(samples))) / eps;
        out.quotients.push_back(q);
        out.quotient_stderr.push_back(se);
    }

    // Linear extrapolation of the quotients to step 0.
    const size_t m = eps_steps.size();
    if (m == 1) {
        out.value = out.quotients[0];
        out.stderr_ = out.quotient_stderr[0];
    } else {
        double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < m; ++i) {
            double w = 1.0 / std::max(1e-30, out.quotient_stderr[i] * out.quotient_stderr[i]);
            sw += w;
            sx += w * eps_steps[i];
            sy += w * out.quotients[i];
            sxx += w * eps_steps[i] * eps_steps[i];
            sxy += w * eps_steps[i] * out.quotients[i];
        }
        double det = sw * sxx - sx * sx;
        if (std::abs(det) < 1e-30) {
            out.value = sy / sw;
            out.stderr_ = std::sqrt(1.0 / sw);
        } else {
            out.value = (sxx * sy - sx * sxy) / det;
            out.stderr_ = std::sqrt(std::max(0.0, sxx / det));
        }
    }
    double spread = 0.0;
    for (size_t i = 1; i < m; ++i) spread = std::max(spread, std::abs(out.quotients[i] - out.quotients[0]));
    double max_se = 0.0;
    for (double se : out.quotient_stderr) max_se = std::max(max_se, se);
    out.low_confidence = m >= 2 && max_se > spread;
    return out;
}

namespace {

void put_csv_value(std::ostream& os, double v) {
    if (std::isfinite(v))
        os << v;
    // Out-of-domain bound columns stay empty.
}

}  // namespace

void write_ball_volume_table(std::ostream& os, const Space& space,
                             const std::vector<double>& radii) {
    auto old_precision = os.precision(17);
    os << "r,volume,volume_shrunk,lower_shrink,upper_shrink,volume_grown,upper_grow,global_upper\n";
    for (double r : radii) {
        double s = 0.25 * r;
        BallVolumeBounds b = ball_volume_bounds(space, r, s);
        double global = std::numeric_limits<double>::quiet_NaN();
        if (!space.spherical() || r < 0.5 * kPi) global = ball_volume_global_upper(space, r);
        double grown = std::numeric_limits<double>::quiet_NaN();
        if (!space.spherical() || r + s <= kPi) grown = ball_volume(space, r + s);
        os << r << ',' << ball_volume(space, r) << ',' << ball_volume(space, r - s) << ',';
        put_csv_value(os, b.lower_shrink);
        os << ',';
        put_csv_value(os, b.upper_shrink);
        os << ',';
        put_csv_value(os, grown);
        os << ',';
        put_csv_value(os, b.upper_grow);
        os << ',';
        put_csv_value(os, global);
        os << "\n";
    }
    os.precision(old_precision);
}

void write_cap_grid(std::ostream& os, const Space& space, int grid_t, int grid_delta,
                    double t_max) {
    auto old_precision = os.precision(17);
    os << "t,delta,exact,bound\n";
    for (int i = 1; i <= grid_t; ++i) {
        double t = t_max * i / grid_t;
        double dmax = t;
        if (space.hyperbolic()) dmax = std::min(0.5 * t, 1.0);
        if (space.spherical()) dmax = 0.5 * t;
        for (int j = 1; j <= grid_delta; ++j) {
            double delta = dmax * j / grid_delta;
            os << t << ',' << delta << ',' << cap_volume(space, t, delta) << ','
               << cap_lower_bound(space, t, delta) << "\n";
        }
    }
    os.precision(old_precision);
}

}  // namespace curvewidth
