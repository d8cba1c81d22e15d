#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "curvewidth/measures.hpp"
#include "curvewidth/quadrature.hpp"
#include "oracles.hpp"

using namespace curvewidth;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent route: quadrature of the radial volume element.
double ball_volume_by_quadrature(const Space& s, double r) {
    double c = s.dim * kappa(s.dim);
    return integrate([&](double t) { return c * std::pow(metric_sin(s, t), s.dim - 1); }, 0.0, r,
                     1e-12);
}
}  // namespace

TEST_CASE("unit ball volumes") {
    CHECK(kappa(2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(kappa(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(kappa(0) == doctest::Approx(1.0));
    for (int n = 2; n <= 10; ++n)
        CHECK(kappa(n - 1) / n > std::pow(n, -0.5 * n));
}

TEST_CASE("ball volume closed forms match quadrature") {
    CHECK(ball_volume(euclidean(2), 1.3) == doctest::Approx(kPi * 1.69).epsilon(1e-12));
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2), euclidean(3), spherical(3),
                           hyperbolic(3), spherical(4), hyperbolic(5)}) {
        CAPTURE(space_name(s));
        CAPTURE(s.dim);
        for (double r : {0.3, 1.0, 1.9}) {
            CHECK(ball_volume(s, r) ==
                  doctest::Approx(ball_volume_by_quadrature(s, r)).epsilon(1e-9));
        }
    }
    CHECK(ball_volume(spherical(2), 1.0) == doctest::Approx(2.0 * kPi * (1.0 - std::cos(1.0))));
    CHECK(ball_volume(hyperbolic(2), 1.0) == doctest::Approx(2.0 * kPi * (std::cosh(1.0) - 1.0)));
    CHECK(ball_volume(spherical(2), 0.5 * kPi) == doctest::Approx(2.0 * kPi));

    // Strictly increasing in r.
    for (const Space& s : {euclidean(2), spherical(3), hyperbolic(2)}) {
        double prev = 0.0;
        for (int k = 1; k <= 24; ++k) {
            double v = ball_volume(s, 0.12 * k);
            CHECK(v > prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(ball_volume(spherical(2), 3.5), std::domain_error);
    CHECK(ball_volume_inverse(hyperbolic(2), ball_volume(hyperbolic(2), 1.37)) ==
          doctest::Approx(1.37).epsilon(1e-10));
}

TEST_CASE("affine ball-volume sandwich") {
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2), euclidean(3)}) {
        CAPTURE(space_name(s));
        double r = 1.0, sh = 0.3;
        BallVolumeBounds b = ball_volume_bounds(s, r, sh);
        double shrunk = ball_volume(s, r - sh);
        double grown = ball_volume(s, r + sh);
        CHECK(shrunk >= b.lower_shrink - 1e-12);
        CHECK(shrunk <= b.upper_shrink + 1e-12);
        CHECK(grown <= b.upper_grow + 1e-12);
    }
    // The bounds collapse onto the volume as s -> 0.
    BallVolumeBounds tight = ball_volume_bounds(hyperbolic(2), 1.0, 1e-9);
    double v = ball_volume(hyperbolic(2), 1.0);
    CHECK(tight.lower_shrink == doctest::Approx(v).epsilon(1e-7));
    CHECK(tight.upper_grow == doctest::Approx(v).epsilon(1e-7));
    CHECK_THROWS_AS(ball_volume_bounds(euclidean(2), 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("global ball volume upper bound") {
    CHECK(ball_volume_global_upper(euclidean(2), 1.0) == doctest::Approx(64.0 / std::pow(2.0, 1.5)));
    CHECK(ball_volume_global_upper(euclidean(2), 1.0) >= kPi);
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2), euclidean(3), hyperbolic(3)}) {
        CAPTURE(space_name(s));
        for (double r : {0.2, 0.5, 0.9}) CHECK(ball_volume_global_upper(s, r) >= ball_volume(s, r));
    }
    for (double r : {1.5, 3.0, 5.0})
        CHECK(ball_volume_global_upper(hyperbolic(2), r) >= ball_volume(hyperbolic(2), r));
    CHECK(ball_volume_global_upper(hyperbolic(2), 3.0) ==
          doctest::Approx(std::pow(2.0, 4.0) * std::exp(3.0) / std::pow(2.0, 1.5)));
}

TEST_CASE("cap volume: closed-form and Monte Carlo cross-checks") {
    // Euclidean half-ball.
    CHECK(cap_volume(euclidean(2), 1.0, 1.0) == doctest::Approx(0.5 * kPi).epsilon(1e-9));
    CHECK(cap_volume(euclidean(3), 0.7, 0.7) ==
          doctest::Approx(0.5 * ball_volume(euclidean(3), 0.7)).epsilon(1e-9));

    // Planar circular segment.
    CHECK(cap_volume(euclidean(2), 1.0, 0.2) ==
          doctest::Approx(oracles::segment_area(1.0, 0.2)).epsilon(1e-9));

    // Monte Carlo agreement in all spaces: sample the ball, cut with the
    // hyperplane at axial height t - delta.
    CounterRng rng(101);
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2), euclidean(3), spherical(3),
                           hyperbolic(3)}) {
        CAPTURE(space_name(s));
        double t = s.spherical() ? 0.9 : 1.1;
        double delta = 0.35;
        Point c = reference_point(s);
        Vec axis = tangent_basis(c)[0];
        Point base = geodesic_point(c, axis, t - delta);
        Hyperplane cut{base, -direction(base, c).v};
        long long n = 200000, hits = 0;
        CounterRng sub = rng.substream(static_cast<std::uint64_t>(s.dim * 10 + static_cast<int>(s.kind)));
        for (long long i = 0; i < n; ++i) {
            Point p = sample_in_ball(c, t, sub);
            if (side(cut, p) >= 0.0) ++hits;
        }
        double vball = ball_volume(s, t);
        double frac = static_cast<double>(hits) / n;
        double est = vball * frac;
        double sigma = vball * std::sqrt(frac * (1.0 - frac) / n);
        CHECK(std::abs(cap_volume(s, t, delta) - est) < 3.0 * sigma);
    }
    CHECK_THROWS_AS(cap_volume(euclidean(2), 1.0, 1.2), std::domain_error);
}

TEST_CASE("cap lower bounds sit below the exact volume") {
    CHECK(cap_lower_bound(euclidean(3), 1.0, 0.1) <= cap_volume(euclidean(3), 1.0, 0.1));
    CHECK(cap_lower_bound(hyperbolic(2), 1.0, 0.2) <= cap_volume(hyperbolic(2), 1.0, 0.2));
    CHECK(cap_lower_bound(spherical(2), 1.0, 0.2) <= cap_volume(spherical(2), 1.0, 0.2));

    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2)}) {
        CAPTURE(space_name(s));
        double t_max = s.spherical() ? 1.4 : 1.6;
        for (int i = 1; i <= 8; ++i) {
            double t = t_max * i / 8;
            double dmax = t;
            if (s.hyperbolic()) dmax = std::min(0.5 * t, 1.0);
            if (s.spherical()) dmax = 0.5 * t;
            for (int j = 1; j <= 8; ++j) {
                double delta = dmax * j / 8;
                CHECK(cap_lower_bound(s, t, delta) <= cap_volume(s, t, delta) + 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(cap_lower_bound(hyperbolic(2), 1.0, 0.9), std::domain_error);
    CHECK_THROWS_AS(cap_lower_bound(spherical(2), 1.0, 0.8), std::domain_error);
}

TEST_CASE("parallel-volume deficit factors") {
    CHECK(parallel_deficit_bound(euclidean(3), 0.25, 1.0, DeficitVariant::Prop) ==
          doctest::Approx(0.25 * 16.0));
    CHECK(parallel_deficit_bound(euclidean(3), 0.25, 1.0, DeficitVariant::TheoremProof) ==
          doctest::Approx(0.25 * 64.0));
    CHECK(parallel_deficit_bound(hyperbolic(2), 1.0, 1.0, DeficitVariant::Prop) ==
          doctest::Approx(4.0 * std::cosh(0.75)));
    CHECK(parallel_deficit_bound(spherical(2), 0.0, 1.0, DeficitVariant::Prop) == 0.0);
}

TEST_CASE("stability constants reproduce the published tables") {
    StabilityConstants e2 = stability_constants(euclidean(2), 1.0);
    CHECK(e2.gamma == doctest::Approx(2.0 * std::exp(21.0)).epsilon(1e-14));
    CHECK(e2.eps_threshold == doctest::Approx(0.5 * std::exp(-56.0)).epsilon(1e-14));
    CHECK(e2.gamma0_tilde == doctest::Approx(0.25));
    CHECK(e2.gamma_tilde == doctest::Approx(0.25));
    CHECK(e2.eta0 == doctest::Approx(0.5));
    CHECK(e2.gamma1_tilde == doctest::Approx(1.0 / (std::pow(2.0, 24.0) * 4.0)).epsilon(1e-14));

    StabilityConstants h2 = stability_constants(hyperbolic(2), 3.0);
    CHECK(h2.gamma == doctest::Approx(2.0 * std::exp(29.0)).epsilon(1e-14));
    CHECK(h2.eps_threshold == doctest::Approx(std::exp(-54.0) * 0.5).epsilon(1e-14));
    CHECK(h2.gamma1_tilde ==
          doctest::Approx(1.0 / (std::pow(2.0, 16.0) * 4.0) / std::pow(std::sinh(30.0), 2.0))
              .epsilon(1e-12));
    CHECK(h2.eta0 == doctest::Approx(1.0));

    StabilityConstants s2 = stability_constants(spherical(2), kPi / 3.0);
    CHECK(s2.eps_threshold ==
          doctest::Approx(std::exp(-60.0) * 0.5 * std::pow(kPi / 6.0, 8.0)).epsilon(1e-12));
    CHECK(s2.eta0 == doctest::Approx(3.0 / (4.0 * kPi) * std::pow(kPi / 6.0, 2.0)));
    CHECK(s2.gamma0_tilde == doctest::Approx(0.25 * std::sqrt(std::tan(kPi / 6.0))));

    CHECK_THROWS_AS(stability_constants(spherical(2), 1.6), std::domain_error);
}

TEST_CASE("uniform ball sampler follows the radial law") {
    CounterRng rng(55);
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2), hyperbolic(3), spherical(3)}) {
        CAPTURE(space_name(s));
        Point c = reference_point(s);
        double R = s.spherical() ? 1.2 : 1.5;
        long long n = 100000, inner = 0;
        CounterRng sub = rng.substream(static_cast<std::uint64_t>(7 * s.dim + static_cast<int>(s.kind)));
        for (long long i = 0; i < n; ++i)
            if (distance(sample_in_ball(c, R, sub), c) <= 0.5 * R) ++inner;
        double expect = ball_volume(s, 0.5 * R) / ball_volume(s, R);
        double got = static_cast<double>(inner) / n;
        double sigma = std::sqrt(expect * (1.0 - expect) / n);
        CHECK(std::abs(got - expect) < 3.5 * sigma);
    }
}

TEST_CASE("Monte Carlo volume estimates") {
    // Ball body against the closed form (bounding inflated so rejection
    // sampling actually exercises the membership oracle).
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(2)}) {
        CAPTURE(space_name(s));
        Point c = reference_point(s);
        CounterRng rng(77);
        Point off = sample_in_ball(c, 0.3, rng);
        OracleBody ob;
        ob.space = s;
        ob.bounding = {off, 1.1};
        ob.contains = [off](const Point& p) { return distance(p, off) <= 0.8; };
        VolumeEstimate est = mc_volume(Body(ob), 400000, CounterRng(1234));
        CHECK(std::abs(est.value - ball_volume(s, 0.8)) < 3.0 * est.stderr_);
        CHECK(est.stderr_ > 0.0);
    }

    // Empty oracle.
    OracleBody empty;
    empty.space = euclidean(2);
    empty.bounding = {reference_point(euclidean(2)), 1.0};
    empty.contains = [](const Point&) { return false; };
    VolumeEstimate zero = mc_volume(Body(empty), 10000, CounterRng(5));
    CHECK(zero.value == 0.0);
    CHECK(zero.stderr_ == 0.0);

    // Planar reuleaux triangle area.
    Body reuleaux(reuleaux_triangle(euclidean(2), 1.0));
    VolumeEstimate rv = mc_volume(reuleaux, 400000, CounterRng(9));
    CHECK(std::abs(rv.value - oracles::reuleaux_area_euclid(1.0)) < 3.0 * rv.stderr_);

    // Deterministic given the seed, independent of worker count.
    VolumeEstimate a = mc_volume(reuleaux, 100000, CounterRng(42));
    setenv("CURVEWIDTH_THREADS", "1", 1);
    VolumeEstimate b = mc_volume(reuleaux, 100000, CounterRng(42));
    setenv("CURVEWIDTH_THREADS", "3", 1);
    VolumeEstimate c = mc_volume(reuleaux, 100000, CounterRng(42));
    unsetenv("CURVEWIDTH_THREADS");
    CHECK(a.value == b.value);
    CHECK(b.value == c.value);
}

TEST_CASE("outer Minkowski content") {
    // Planar unit disk: perimeter 2*pi.
    Body disk(make_ball_body(reference_point(euclidean(2)), 1.0));
    SurfaceAreaEstimate sa =
        minkowski_surface_area(Body(disk), {0.16, 0.08, 0.04, 0.02}, 400000, CounterRng(3));
    CHECK(std::abs(sa.value - 2.0 * kPi) / (2.0 * kPi) < 0.05);

    // Spherical cap: positive quotients, decreasing in the step size.
    Space s2 = spherical(2);
    CapCutBall cap = cap_cut_ball(s2, 1.0, 0.3);
    SurfaceAreaEstimate sc =
        minkowski_surface_area(Body(cap.body), {0.2, 0.1, 0.05}, 150000, CounterRng(8));
    for (size_t i = 0; i < sc.quotients.size(); ++i) {
        CHECK(sc.quotients[i] > 0.0);
        if (i > 0)
            CHECK(sc.quotients[i] <=
                  sc.quotients[i - 1] + 2.0 * (sc.quotient_stderr[i] + sc.quotient_stderr[i - 1]));
    }
}

TEST_CASE("isoperimetric comparisons on random ball unions") {
    CounterRng rng(21);
    for (const Space& s : {euclidean(2), hyperbolic(2), spherical(2)}) {
        CAPTURE(space_name(s));
        Point e = reference_point(s);
        // Union of two overlapping balls with exact distance function.
        Point c1 = sample_in_ball(e, 0.25, rng);
        Point c2 = sample_in_ball(e, 0.25, rng);
        double r1 = 0.45, r2 = 0.35;
        OracleBody ob;
        ob.space = s;
        Point m = midpoint(c1, c2);
        ob.bounding = {m, std::max(distance(m, c1) + r1, distance(m, c2) + r2)};
        ob.contains = [c1, c2, r1, r2](const Point& p) {
            return distance(p, c1) <= r1 || distance(p, c2) <= r2;
        };
        ob.distance_fn = [c1, c2, r1, r2](const Point& p) {
            return std::max(0.0, std::min(distance(p, c1) - r1, distance(p, c2) - r2));
        };
        Body body(ob);

        VolumeEstimate v = mc_volume(body, 200000, CounterRng(31));
        double r_same = ball_volume_inverse(s, v.value);

        // Parallel-volume comparison against the ball of equal volume.
        double rho = 0.25;
        VolumeEstimate vpar = mc_volume(Body(parallel_body(body, rho)), 200000, CounterRng(33));
        double v_ball_grown = ball_volume(s, r_same + rho);
        CHECK(vpar.value >= v_ball_grown - 3.0 * (vpar.stderr_ + 3.0 * v.stderr_));

        // Surface-area comparison via Minkowski content.
        SurfaceAreaEstimate sa =
            minkowski_surface_area(body, {0.1, 0.05, 0.025}, 150000, CounterRng(35));
        double s_ball = ball_boundary_area(s, r_same);
        CHECK(sa.value >= s_ball - 3.0 * (sa.stderr_ + 0.02 * s_ball));
    }
}

TEST_CASE("csv emitters") {
    std::ostringstream os;
    write_ball_volume_table(os, euclidean(2), {0.5, 1.0});
    std::string table = os.str();
    CHECK(table.find("r,volume") == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 3);

    std::ostringstream caps;
    write_cap_grid(caps, hyperbolic(2), 3, 3, 1.0);
    std::string grid = caps.str();
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 10);
}
