#include <doctest.h>

#include <cmath>

#include "curvewidth/bodies.hpp"
#include "curvewidth/measures.hpp"
#include "oracles.hpp"

using namespace curvewidth;

namespace {
constexpr double kPi = 3.14159265358979323846;

const Space kPlanes[] = {euclidean(2), spherical(2), hyperbolic(2)};

Point rand_point(const Space& s, double radius, CounterRng& rng) {
    return sample_in_ball(reference_point(s), radius, rng);
}
}  // namespace

TEST_CASE("diameter and hausdorff") {
    Space e2 = euclidean(2);
    Point o = reference_point(e2);
    CHECK(diameter(make_cloud(e2, {o})) == 0.0);
    Point u = make_point(e2, Vec{0.7, 0.0});
    CHECK(diameter(make_cloud(e2, {o, u})) == doctest::Approx(0.7));

    // Regular triangle with unit side.
    BallPolytope rt = reuleaux_triangle(e2, 1.0);
    CHECK(diameter(make_cloud(e2, rt.centers)) == doctest::Approx(1.0).epsilon(1e-12));

    // Hausdorff against a direct double max-min evaluation.
    CounterRng rng(3);
    for (const Space& s : kPlanes) {
        std::vector<Point> a, b;
        for (int i = 0; i < 12; ++i) a.push_back(rand_point(s, 0.8, rng));
        for (int i = 0; i < 9; ++i) b.push_back(rand_point(s, 0.8, rng));
        double expect = 0.0;
        for (const Point& p : a) {
            double best = 1e300;
            for (const Point& q : b) best = std::min(best, distance(p, q));
            expect = std::max(expect, best);
        }
        for (const Point& q : b) {
            double best = 1e300;
            for (const Point& p : a) best = std::min(best, distance(p, q));
            expect = std::max(expect, best);
        }
        PointCloud ca = make_cloud(s, a), cb = make_cloud(s, b);
        CHECK(hausdorff(ca, cb) == doctest::Approx(expect));
        CHECK(hausdorff(ca, ca) == 0.0);
        CHECK(hausdorff(ca, cb) == hausdorff(cb, ca));
    }

    Point far = make_point(e2, Vec{0.0, 1.0});
    CHECK(hausdorff(make_cloud(e2, {o}), make_cloud(e2, {o, far})) == doctest::Approx(1.0));
}

TEST_CASE("ball polytope construction and membership") {
    Space h2 = hyperbolic(2);
    CounterRng rng(5);
    Point a = rand_point(h2, 0.3, rng);
    Point b = rand_point(h2, 0.3, rng);
    BallPolytope bp = make_ball_polytope(h2, {a, b}, 1.0);
    CHECK(ball_polytope_contains(bp, a));
    CHECK(ball_polytope_contains(bp, midpoint(a, b)));
    CHECK_FALSE(ball_polytope_contains(bp, geodesic_point(a, direction(a, b).v, -1.2)));

    Point far = geodesic_point(a, direction(a, b).v, -2.5);
    CHECK_THROWS_AS(make_ball_polytope(h2, {a, far}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_ball_polytope(spherical(2), {reference_point(spherical(2))}, 1.6),
                    std::domain_error);
}

TEST_CASE("distance to set") {
    CounterRng rng(7);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        // Single ball: closed form.
        Point c = rand_point(s, 0.3, rng);
        Body ball(make_ball_body(c, 0.5));
        Point inside = geodesic_point(c, tangent_basis(c)[0], 0.3);
        CHECK(distance_to_set(inside, ball).value == 0.0);
        Point outside = geodesic_point(c, tangent_basis(c)[0], 0.9);
        CHECK(distance_to_set(outside, ball).value == doctest::Approx(0.4).epsilon(1e-10));

        // Cloud: exact minimum.
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(rand_point(s, 0.6, rng));
        Body cloud(make_cloud(s, pts));
        Point probe = rand_point(s, 1.0, rng);
        double expect = 1e300;
        for (const Point& p : pts) expect = std::min(expect, distance(probe, p));
        CHECK(distance_to_set(probe, cloud).value == doctest::Approx(expect));
    }

    // Planar reuleaux triangle against a fine rejection grid.
    Space e2 = euclidean(2);
    BallPolytope rt = reuleaux_triangle(e2, 1.0);
    Body body(rt);
    auto member = [&](const Point& p) { return ball_polytope_contains(rt, p); };
    CounterRng rng2(11);
    for (int k = 0; k < 12; ++k) {
        Point p = rand_point(e2, 1.3, rng2);
        double grid = oracles::grid_distance_2d(p, member, rt.centers[0], 1.6, 700);
        double got = distance_to_set(p, body).value;
        CHECK(std::abs(got - grid) < 1.6 * 2.0 * 1.6 / 700 + 1e-9);
    }
}

TEST_CASE("parallel bodies") {
    CounterRng rng(13);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        // Ball grows to the larger ball.
        Point c = rand_point(s, 0.2, rng);
        double r = 0.4, rho = 0.3;
        OracleBody grown = parallel_body(Body(make_ball_body(c, r)), rho);
        for (int i = 0; i < 3000; ++i) {
            Point p = sample_in_ball(c, r + rho + 0.3, rng);
            bool expect = distance(p, c) <= r + rho;
            if (std::abs(distance(p, c) - (r + rho)) < 1e-12) continue;
            CHECK(grown.contains(p) == expect);
        }

        // Cloud parallel domain: diameter grows by exactly 2 rho.
        std::vector<Point> pts;
        for (int i = 0; i < 8; ++i) pts.push_back(rand_point(s, 0.5, rng));
        PointCloud cloud = make_cloud(s, pts);
        double diam = diameter(cloud);
        OracleBody par = parallel_body(Body(cloud), rho);
        double best = 0.0;
        for (int i = 0; i < 4000; ++i) {
            size_t a = static_cast<size_t>(rng.uniform() * pts.size());
            size_t b = static_cast<size_t>(rng.uniform() * pts.size());
            Vec da = tangent_basis(pts[a])[0], db = tangent_basis(pts[b])[1];
            Point pa = geodesic_point(pts[a], da, rho * rng.uniform());
            Point pb = geodesic_point(pts[b], db, rho * rng.uniform());
            CHECK(par.contains(pa));
            best = std::max(best, distance(pa, pb));
            CHECK(distance(pa, pb) <= diam + 2.0 * rho + 1e-9);
        }
        // Endpoint pairs pushed apart along the diameter realize the growth.
        size_t i1 = 0, j1 = 0;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < pts.size(); ++j)
                if (distance(pts[i], pts[j]) == diam) {
                    i1 = i;
                    j1 = j;
                }
        Point ea = geodesic_point(pts[i1], -direction(pts[i1], pts[j1]).v, rho * (1.0 - 1e-12));
        Point eb = geodesic_point(pts[j1], -direction(pts[j1], pts[i1]).v, rho * (1.0 - 1e-12));
        CHECK(par.contains(ea));
        CHECK(par.contains(eb));
        CHECK(distance(ea, eb) == doctest::Approx(diam + 2.0 * rho).epsilon(1e-9));
    }
    CHECK_THROWS_AS(parallel_body(Body(make_ball_body(reference_point(spherical(2)), 1.2)), 0.5),
                    std::domain_error);
}

TEST_CASE("parallel body of a constant-width polytope matches the intersection identity") {
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 0.9 : 1.0;
        double rho = s.spherical() ? 0.15 : 0.3;
        BallPolytope rt = reuleaux_triangle(s, D);
        ArcStructure as = arc_structure(rt);
        OracleBody par = parallel_body(Body(rt), rho);
        CounterRng rng(17);
        Point c = rt.centers[0];
        int checked = 0;
        for (int i = 0; i < 4000; ++i) {
            Point p = sample_in_ball(c, D + rho + 0.2, rng);
            double support = ball_polytope_support(rt, as, p);
            if (std::abs(support - (D + rho)) < 1e-7) continue;  // boundary band
            ++checked;
            CHECK(par.contains(p) == (support <= D + rho));
        }
        CHECK(checked > 3000);
    }
}

TEST_CASE("convex hull membership through the chart") {
    CounterRng rng(19);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        std::vector<Point> pts;
        for (int i = 0; i < 7; ++i) pts.push_back(rand_point(s, 0.5, rng));
        PointCloud cloud = make_cloud(s, pts);
        for (const Point& p : pts) CHECK(convex_hull_membership(cloud, p));
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            CHECK(convex_hull_membership(cloud, midpoint(pts[i], pts[i + 1])));
    }

    // Spherical triples against an independent planar hull oracle.
    Space s2 = spherical(2);
    int disagreements = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Point> pts;
        for (int i = 0; i < 3; ++i) pts.push_back(rand_point(s2, 0.6, rng));
        Point probe = rand_point(s2, 0.7, rng);
        PointCloud cloud = make_cloud(s2, pts);
        bool got = convex_hull_membership(cloud, probe);

        // Oracle: gnomonic coordinates + monotone chain point-in-hull.
        std::vector<Vec> charted;
        for (const Point& p : pts) charted.push_back(Vec{p.x[1] / p.x[0], p.x[2] / p.x[0]});
        Vec q{probe.x[1] / probe.x[0], probe.x[2] / probe.x[0]};
        bool expect = oracles::in_hull_2d(charted, q, 1e-9);
        if (got != expect) ++disagreements;
    }
    CHECK(disagreements <= 2);  // boundary-grazing probes may differ

    // Hemisphere precondition.
    std::vector<Point> spread = {make_point(s2, Vec{1.0, 0.0, 0.0}),
                                 make_point(s2, Vec{-1.0, 0.0, 0.0}),
                                 make_point(s2, Vec{0.0, 1.0, 0.0})};
    CHECK_THROWS_AS(convex_hull_membership(make_cloud(s2, spread), reference_point(s2)),
                    std::domain_error);
}

TEST_CASE("width-bounded hull support and membership") {
    CounterRng rng(23);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 1.0 : 1.2;
        std::vector<Point> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(rand_point(s, 0.35 * D, rng));
        PointCloud cloud = make_cloud(s, pts);
        REQUIRE(diameter(cloud) <= D);

        for (const Point& p : pts) CHECK(d_hull_membership(cloud, D, p));

        // Two-point clouds: the hull is the spindle; beyond the tip is out.
        Point a = rand_point(s, 0.2, rng);
        Point b = geodesic_point(a, tangent_basis(a)[0], 0.9 * D);
        PointCloud two = make_cloud(s, {a, b});
        Point beyond = geodesic_point(a, direction(a, b).v, -0.15 * D);
        CHECK_FALSE(d_hull_membership(two, D, beyond));
        CHECK(d_hull_membership(two, D, midpoint(a, b)));

        // Exact support against a brute-force scan of admissible centers.
        BallPolytope adm = make_ball_polytope(s, cloud.points, D);
        CounterRng scan(31);
        for (int k = 0; k < 6; ++k) {
            Point probe = rand_point(s, 0.8 * D, rng);
            double brute = 0.0;
            int kept = 0;
            while (kept < 4000) {
                Point z = sample_in_ball(pts[0], D, scan);
                if (!ball_polytope_contains(adm, z)) continue;
                ++kept;
                brute = std::max(brute, distance(probe, z));
            }
            double support = d_hull_support(cloud, D, probe).value;
            CHECK(support >= brute - 1e-9);
            CHECK(support <= brute + 0.05 * D);  // scan resolution
        }

        // Diameter of the hull never exceeds D (sampled members).
        int members = 0;
        std::vector<Point> hull_pts;
        while (members < 60) {
            Point p = sample_in_ball(pts[0], D, rng);
            if (!d_hull_membership(cloud, D, p)) continue;
            ++members;
            hull_pts.push_back(p);
        }
        CHECK(diameter(make_cloud(s, hull_pts)) <= D + 1e-9);

        // Idempotence at the sample level.
        PointCloud grown = cloud;
        grown.points.push_back(hull_pts[0]);
        for (int k = 0; k < 40; ++k) {
            Point probe = rand_point(s, 0.9 * D, rng);
            double s1 = d_hull_support(cloud, D, probe).value;
            double s2 = d_hull_support(grown, D, probe).value;
            if (std::abs(s1 - D) < 1e-7 || std::abs(s2 - D) < 1e-7) continue;
            CHECK(d_hull_membership(cloud, D, probe) == d_hull_membership(grown, D, probe));
        }
    }
    // Diameter precondition.
    Space e2 = euclidean(2);
    PointCloud wide =
        make_cloud(e2, {reference_point(e2), make_point(e2, Vec{2.0, 0.0})});
    CHECK_THROWS_AS(d_hull_support(wide, 1.0, reference_point(e2)), std::domain_error);
}

TEST_CASE("spindle membership in dimension 3") {
    CounterRng rng(29);
    for (Curvature kind : {Curvature::Euclidean, Curvature::Spherical, Curvature::Hyperbolic}) {
        Space s3(kind, 3);
        Space s2(kind, 2);
        CAPTURE(space_name(s3));
        double D = 1.0;
        Point a = rand_point(s3, 0.2, rng);
        Vec dir = tangent_basis(a)[0];
        Point b = geodesic_point(a, dir, 0.8);

        // Compare against the planar evaluation in a containing 2-plane.
        Space plane(kind, 2);
        Point a2 = reference_point(plane);
        Point b2 = geodesic_point(a2, tangent_basis(a2)[0], 0.8);
        PointCloud two2 = make_cloud(plane, {a2, b2});
        for (int k = 0; k < 200; ++k) {
            double u = rng.uniform(-0.3, 1.1);
            double v = rng.uniform(-0.6, 0.6);
            // Same in-plane offsets in both configurations.
            auto basis3 = tangent_basis(a);
            Point p3 = geodesic_point(a, basis3[0], u);
            if (std::abs(v) > 1e-12) {
                Vec perp = basis3[1];
                Point mid = p3;
                p3 = geodesic_point(mid, project_to_tangent(mid, perp) *
                                             (1.0 / tangent_norm(s3, project_to_tangent(mid, perp))),
                                    v);
            }
            auto basis2 = tangent_basis(a2);
            Point p2 = geodesic_point(a2, basis2[0], u);
            if (std::abs(v) > 1e-12) {
                Vec perp = basis2[1];
                Point mid = p2;
                p2 = geodesic_point(mid, project_to_tangent(mid, perp) *
                                             (1.0 / tangent_norm(s2, project_to_tangent(mid, perp))),
                                    v);
            }
            double support2 = d_hull_support(two2, D, p2).value;
            if (std::abs(support2 - D) < 1e-8) continue;
            CHECK(spindle_membership(a, b, D, p3) == (support2 <= D));
        }
    }
}

TEST_CASE("completion to constant width") {
    CounterRng rng(37);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 1.0 : 1.0;

        // Single point: completes to some constant-width body.
        CompletionResult single = complete(make_cloud(s, {rand_point(s, 0.1, rng)}), D, 1e-9, 64,
                                           rng.substream(1));
        CHECK(single.complete_certificate);
        RadiusResult R1 = circumradius(Body(single.body));
        RadiusResult r1 = inradius(Body(single.body));
        CHECK(std::abs(R1.radius + r1.radius - D) < 5e-9);

        // Two points at distance D: both survive, width D.
        Point a = rand_point(s, 0.1, rng);
        Point b = geodesic_point(a, tangent_basis(a)[0], D);
        CompletionResult two = complete(make_cloud(s, {a, b}), D, 1e-9, 64, rng.substream(2));
        CHECK(two.complete_certificate);
        CHECK(ball_polytope_contains(two.body, a, 1e-9));
        CHECK(ball_polytope_contains(two.body, b, 1e-9));
        CHECK(diameter(make_cloud(s, two.body.centers)) <= D + 1e-9);

        // Reuleaux vertices are already complete.
        BallPolytope rt = reuleaux_triangle(s, D);
        CompletionResult reuleaux =
            complete(make_cloud(s, rt.centers), D, 1e-9, 64, rng.substream(3));
        CHECK(reuleaux.complete_certificate);
        CHECK(reuleaux.inserted == 0);
        for (int k = 0; k < 500; ++k) {
            Point p = sample_in_ball(rt.centers[0], D, rng);
            CHECK(ball_polytope_contains(reuleaux.body, p, 1e-9) ==
                  ball_polytope_contains(rt, p, 1e-9));
        }

        // Random seeds: completion certificate plus greedy fixed point.
        std::vector<Point> seed_pts;
        for (int i = 0; i < 4; ++i) seed_pts.push_back(rand_point(s, 0.3 * D, rng));
        CompletionResult randc = complete(make_cloud(s, seed_pts), D, 1e-9, 96, rng.substream(4));
        CHECK(randc.complete_certificate);
        CompletionResult again =
            complete(make_cloud(s, randc.body.centers), D, 1e-9, 96, rng.substream(5));
        CHECK(again.inserted == 0);

        // Every boundary point has a far partner at distance D.
        auto bnd = boundary_sample_2d(randc.body, 600);
        for (size_t i = 0; i < bnd.size(); i += 7) {
            double far = 0.0;
            for (size_t j = 0; j < bnd.size(); ++j)
                far = std::max(far, distance(bnd[i].point, bnd[j].point));
            CHECK(far >= D - 5e-6);
        }
    }
}

TEST_CASE("circumradius and inradius") {
    CounterRng rng(41);
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        // Ball body.
        Point c = rand_point(s, 0.3, rng);
        RadiusResult ball = circumradius(Body(make_ball_body(c, 0.6)));
        CHECK(ball.radius == doctest::Approx(0.6));
        CHECK(distance(ball.center, c) < 1e-9);
        RadiusResult ball_in = inradius(Body(make_ball_body(c, 0.6)));
        CHECK(ball_in.radius == doctest::Approx(0.6));

        // Two points: midpoint, half distance.
        Point a = rand_point(s, 0.4, rng);
        Point b = rand_point(s, 0.4, rng);
        RadiusResult two = min_enclosing_ball(make_cloud(s, {a, b}));
        CHECK(two.radius == doctest::Approx(0.5 * distance(a, b)).epsilon(1e-9));
        CHECK(distance(two.center, midpoint(a, b)) < 1e-9);
    }

    // Planar reuleaux triangle: closed-form radii.
    Space e2 = euclidean(2);
    BallPolytope rt = reuleaux_triangle(e2, 1.0);
    RadiusResult R = circumradius(Body(rt));
    CHECK(std::abs(R.radius - 1.0 / std::sqrt(3.0)) < 1e-6);
    RadiusResult r = inradius(Body(rt));
    CHECK(std::abs(r.radius - (1.0 - 1.0 / std::sqrt(3.0))) < 1e-6);

    // Brute-force minimax cross-check of the circumradius on a coarse grid.
    {
        double best = 1e300;
        ArcStructure as = arc_structure(rt);
        for (int i = -40; i <= 40; ++i)
            for (int j = -40; j <= 40; ++j) {
                Point w = make_point(e2, Vec{0.5 + i * 0.01, 0.289 + j * 0.01});
                best = std::min(best, ball_polytope_support(rt, as, w));
            }
        CHECK(R.radius <= best + 1e-9);
        CHECK(R.radius >= best - 0.01);
    }

    // Constant width in every plane: R + r = D.
    for (const Space& s : kPlanes) {
        double D = s.spherical() ? 1.1 : 1.0;
        BallPolytope body = reuleaux_triangle(s, D);
        RadiusResult cr = circumradius(Body(body));
        RadiusResult ir = inradius(Body(body));
        CHECK(std::abs(cr.radius + ir.radius - D) < 1e-5);
        CHECK(distance(cr.center, ir.center) < 1e-4);
    }
}

TEST_CASE("inradius solver restarts agree on the center") {
    Space h2 = hyperbolic(2);
    BallPolytope rt = reuleaux_triangle(h2, 1.0);
    OracleBody ob;
    ob.space = h2;
    ob.bounding = Body(rt).bounding_ball();
    ob.contains = [rt](const Point& p) { return ball_polytope_contains(rt, p); };
    ob.interior_depth_fn = [rt](const Point& p) {
        double depth = 1e300;
        for (const Point& c : rt.centers) depth = std::min(depth, rt.radius - distance(p, c));
        return depth;
    };
    ob.convex = true;

    std::vector<Point> centers;
    for (const Point& start : rt.centers) {
        OracleBody shifted = ob;
        shifted.bounding.center = start;  // forces a different solver start
        RadiusResult r = inradius(Body(shifted), {40000, 8, 1e-10});
        centers.push_back(r.center);
    }
    for (size_t i = 1; i < centers.size(); ++i)
        CHECK(distance(centers[0], centers[i]) < 1e-4);
}

TEST_CASE("reuleaux triangles") {
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 1.2 : 1.0;
        BallPolytope rt = reuleaux_triangle(s, D);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i + 1; j < 3; ++j)
                CHECK(distance(rt.centers[i], rt.centers[j]) == doctest::Approx(D).epsilon(1e-12));

        auto bnd = boundary_sample_2d(rt, 800);
        double diam = 0.0;
        for (size_t i = 0; i < bnd.size(); i += 3)
            for (size_t j = i + 1; j < bnd.size(); j += 3)
                diam = std::max(diam, distance(bnd[i].point, bnd[j].point));
        CHECK(diam <= D + 1e-9);
        CHECK(diam >= D - 1e-4);
    }
    CHECK_THROWS_AS(reuleaux_triangle(spherical(2), 1.6), std::domain_error);

    // Smallest area among the planar constant-width bodies (hyperbolic case).
    Space h2 = hyperbolic(2);
    VolumeEstimate v_rt = mc_volume(Body(reuleaux_triangle(h2, 1.0)), 300000, CounterRng(51));
    double v_ball = ball_volume(h2, 0.5);
    CHECK(v_rt.value + 3.0 * v_rt.stderr_ < v_ball);
}

TEST_CASE("cap-cut balls") {
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 1.2 : 1.0;
        CapCutBall cut = cap_cut_ball(s, D, 0.05);
        CHECK(std::abs(cut.cap_fraction - 0.05) < 0.05 * 1e-8 + 1e-14);
        CHECK(cut.depth > 0.0);
        CHECK(cut.depth < 0.5 * D);

        // Small eps gives small depth.
        CapCutBall tiny = cap_cut_ball(s, D, 1e-6);
        CHECK(tiny.depth < cut.depth);
        CHECK(tiny.depth < 0.02 * D);

        // Membership consistency with the defining data.
        CounterRng rng(61);
        for (int i = 0; i < 2000; ++i) {
            Point p = sample_in_ball(cut.center, cut.ball_radius, rng);
            bool expect = side(cut.cut, p) <= 0.0;
            CHECK(cut.body.contains(p) == expect);
        }
        // Depth function matches the distance to the two boundary pieces.
        Point inside = cut.center;
        CHECK(cut.body.interior_depth_fn(inside) ==
              doctest::Approx(std::min(cut.ball_radius,
                                       distance_to_hyperplane(inside, cut.cut)))
                  .epsilon(1e-12));
    }
    CHECK_THROWS_AS(cap_cut_ball(euclidean(2), 1.0, 0.7), std::invalid_argument);
}

TEST_CASE("oracle bodies without fast paths fall back to sampled solvers") {
    // Strip the exact distance/depth functions off a cap-cut body and check
    // the ray-shooting paths still land close, with honest gap reports.
    Space h2 = hyperbolic(2);
    CapCutBall cut = cap_cut_ball(h2, 1.0, 0.1);
    OracleBody bare;
    bare.space = h2;
    bare.bounding = cut.body.bounding;
    bare.contains = cut.body.contains;
    Body body(bare);

    RadiusResult R = circumradius(body, {200000, 8, 1e-9});
    RadiusResult R_exact = circumradius(Body(cut.body), {200000, 8, 1e-9});
    CHECK(std::abs(R.radius - R_exact.radius) < 5e-3);
    CHECK(R.gap > 0.0);

    RadiusResult r = inradius(body, {100000, 8, 1e-9});
    RadiusResult r_exact = inradius(Body(cut.body), {100000, 8, 1e-9});
    CHECK(std::abs(r.radius - r_exact.radius) < 5e-3);
    CHECK(r.gap > 0.0);

    Point outside = geodesic_point(cut.center, tangent_basis(cut.center)[1], 0.9);
    DistanceResult d = distance_to_set(outside, body, {100000, 8, 1e-9});
    CHECK(std::abs(d.value - cut.body.distance_fn(outside)) < 5e-3);
}

TEST_CASE("parallel bodies of constant-width bodies shift both radii") {
    for (const Space& s : kPlanes) {
        CAPTURE(space_name(s));
        double D = s.spherical() ? 0.9 : 1.0;
        double rho = s.spherical() ? 0.12 : 0.25;
        BallPolytope rt = reuleaux_triangle(s, D);
        RadiusResult R0 = circumradius(Body(rt));
        RadiusResult r0 = inradius(Body(rt));

        OracleBody par = parallel_body(Body(rt), rho);
        RadiusResult R1 = circumradius(Body(par), {400000, 8, 1e-10});
        RadiusResult r1 = inradius(Body(par), {40000, 8, 1e-10});
        CHECK(std::abs(R1.radius - (R0.radius + rho)) < 1e-5);
        CHECK(std::abs(r1.radius - (r0.radius + rho)) < 1e-5);
    }
}
