#include "curvewidth/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "curvewidth/measures.hpp"

namespace curvewidth {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool two_point_membership(const Body& body, const Hyperplane& h, const Point& p) {
    Point q = reflect(h, p);
    bool in_p = body.contains(p);
    bool in_q = body.contains(q);
    return side(h, p) >= 0.0 ? (in_p || in_q) : (in_p && in_q);
}

OracleBody two_point_body(const Body& body, const Hyperplane& h, int max_depth) {
    int depth = body.is_oracle() ? body.as_oracle().compose_depth : 0;
    if (depth + 1 > max_depth)
        throw std::domain_error("two_point_body: composition depth cap exceeded");

    Ball bb = body.bounding_ball();
    Point bc_ref = reflect(h, bb.center);
    Point m = distance(bb.center, bc_ref) < 1e-14 ? bb.center : midpoint(bb.center, bc_ref);
    double R = std::max(distance(m, bb.center), distance(m, bc_ref)) + bb.radius;

    auto inner = std::make_shared<Body>(body);
    OracleBody out;
    out.space = body.space();
    out.bounding = {m, R};
    out.contains = [inner, h](const Point& p) { return two_point_membership(*inner, h, p); };
    out.compose_depth = depth + 1;
    return out;
}

PointCloud two_point_cloud(const PointCloud& cloud, const Hyperplane& h, double match_tol) {
    PointCloud out{cloud.space, {}};
    out.points.reserve(cloud.points.size());
    for (const Point& p : cloud.points) {
        if (side(h, p) >= 0.0) {
            out.points.push_back(p);
            continue;
        }
        Point q = reflect(h, p);
        bool mirrored = false;
        for (const Point& r : cloud.points)
            if (distance(q, r) <= match_tol) mirrored = true;
        out.points.push_back(mirrored ? p : q);
    }
    return out;
}

// --- grid materialization ---

namespace {

// Planar chart grid centered on the target ball: the body is carried to the
// reference point by one reflection, then charted (identity / gnomonic /
// Klein) and rasterized.
struct GridChart {
    Space space;
    bool recenter = false;
    Hyperplane sigma;        // reflection taking the target center to e
    double extent = 1.0;     // chart half-width
    int res = 0;
    std::vector<std::uint8_t> cells;

    Vec to_chart(const Point& p) const {
        Point q = recenter ? reflect(sigma, p) : p;
        if (space.euclidean()) return q.x;
        if (q.x[0] <= 1e-12) return Vec{1e9, 1e9};  // outside the chart hemisphere
        return Vec{q.x[1] / q.x[0], q.x[2] / q.x[0]};
    }

    bool from_chart(const Vec& y, Point& out) const {
        Point q{space, y};
        if (space.spherical()) {
            double s = std::sqrt(1.0 + y[0] * y[0] + y[1] * y[1]);
            q = Point{space, Vec{1.0 / s, y[0] / s, y[1] / s}};
        } else if (space.hyperbolic()) {
            double r2 = y[0] * y[0] + y[1] * y[1];
            if (r2 >= 1.0 - 1e-12) return false;
            double s = std::sqrt(1.0 - r2);
            q = Point{space, Vec{1.0 / s, y[0] / s, y[1] / s}};
        }
        out = recenter ? reflect(sigma, q) : q;
        return true;
    }

    int cell_of(double c) const {
        return static_cast<int>(std::floor((c + extent) / (2.0 * extent) * res));
    }

    bool member(const Point& p) const {
        Vec y = to_chart(p);
        int i = cell_of(y[0]), j = cell_of(y[1]);
        if (i < 0 || j < 0 || i >= res || j >= res) return false;
        return cells[static_cast<size_t>(j) * res + i] != 0;
    }

    Vec cell_center(int i, int j) const {
        double step = 2.0 * extent / res;
        return Vec{-extent + (i + 0.5) * step, -extent + (j + 0.5) * step};
    }
};

}  // namespace

IterationTrace iterate_to_ball(const Body& body, double D, const Ball& target, int iters,
                               CounterRng rng, int grid_resolution, int mc_samples_per_step) {
    const Space& space = body.space();
    if (space.dim != 2)
        throw std::invalid_argument("iterate_to_ball: grid materialization is dim 2 only");
    Ball bb = body.bounding_ball();
    if (space.spherical() && 2.0 * bb.radius >= kPi)
        throw std::domain_error("iterate_to_ball: spherical diameter must be < pi");

    IterationTrace trace;
    trace.space = space;
    trace.status = "ok";
    trace.seed = rng.state_digest();
    trace.grid_resolution = grid_resolution;

    GridChart grid;
    grid.space = space;
    grid.res = grid_resolution;
    Point e = reference_point(space);
    if (distance(target.center, e) > 1e-13) {
        grid.recenter = true;
        grid.sigma = perpendicular_bisector(target.center, e);
    }
    Point bc = grid.recenter ? reflect(grid.sigma, bb.center) : bb.center;
    double r_geo = std::max(target.radius, distance(e, bc) + bb.radius) * 1.6 + 0.25 * target.radius;
    switch (space.kind) {
        case Curvature::Euclidean: grid.extent = r_geo; break;
        case Curvature::Spherical: grid.extent = std::tan(std::min(r_geo, 1.35)); break;
        case Curvature::Hyperbolic: grid.extent = std::tanh(r_geo); break;
    }
    trace.grid_extent = grid.extent;

    grid.cells.assign(static_cast<size_t>(grid.res) * grid.res, 0);
    for (int j = 0; j < grid.res; ++j)
        for (int i = 0; i < grid.res; ++i) {
            Point p{space, Vec(space.ambient_dim())};
            if (!grid.from_chart(grid.cell_center(i, j), p)) continue;
            if (body.contains(p)) grid.cells[static_cast<size_t>(j) * grid.res + i] = 1;
        }

    double cover_radius = target.radius + D + 0.1 * target.radius;
    if (space.spherical()) cover_radius = std::min(cover_radius, kPi - 1e-3);
    const double v_cover = ball_volume(space, cover_radius);

    auto estimate_step = [&](int iter, CounterRng& sub) {
        long long hits = 0;
        for (int s = 0; s < mc_samples_per_step; ++s) {
            Point p = sample_in_ball(target.center, cover_radius, sub);
            bool in_grid = grid.member(p);
            bool in_ball = distance(p, target.center) <= target.radius;
            if (in_grid != in_ball) ++hits;
        }
        double frac = static_cast<double>(hits) / mc_samples_per_step;
        IterationStep st;
        st.iter = iter;
        st.symdiff = v_cover * frac;
        st.stderr_ = v_cover * std::sqrt(std::max(0.0, frac * (1.0 - frac) / mc_samples_per_step));
        // Diameter estimate over a strided subset of member cells.
        std::vector<Point> members;
        int stride = std::max(1, grid.res / 48);
        for (int j = 0; j < grid.res; j += stride)
            for (int i = 0; i < grid.res; i += stride) {
                if (!grid.cells[static_cast<size_t>(j) * grid.res + i]) continue;
                Point p{space, Vec(space.ambient_dim())};
                if (grid.from_chart(grid.cell_center(i, j), p)) members.push_back(p);
            }
        double diam = 0.0;
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = a + 1; b < members.size(); ++b)
                diam = std::max(diam, distance(members[a], members[b]));
        st.diameter_est = diam;
        st.rng_digest = sub.state_digest();
        trace.steps.push_back(st);
    };

    CounterRng est_rng = rng.substream(0);
    estimate_step(0, est_rng);

    CounterRng pick_rng = rng.substream(1);
    std::vector<std::uint8_t> next(grid.cells.size(), 0);
    for (int it = 1; it <= iters; ++it) {
        // x uncovered inside the target, y covered outside it; both kept a
        // few cells away from the target boundary so grid pixelation cannot
        // manufacture spurious picks.
        double cell_margin = 3.0 * (2.0 * grid.extent / grid.res);
        Point x{space, Vec(space.ambient_dim())}, y = x;
        bool found_x = false, found_y = false;
        for (int k = 0; k < 100000 && !found_x; ++k) {
            Point cand =
                sample_in_ball(target.center, std::max(1e-6, target.radius - cell_margin), pick_rng);
            if (!grid.member(cand)) {
                x = cand;
                found_x = true;
            }
        }
        for (int k = 0; k < 100000 && !found_y; ++k) {
            Point cand = sample_in_ball(target.center, cover_radius, pick_rng);
            if (grid.member(cand) && distance(cand, target.center) > target.radius + cell_margin) {
                y = cand;
                found_y = true;
            }
        }
        if (!found_x || !found_y) {
            trace.status = found_x ? "no-exterior-mass" : "target-covered";
            break;
        }
        Hyperplane h = perpendicular_bisector(y, x);  // normal points toward x
        if (side(h, target.center) < 0.0) h.normal = -h.normal;

        for (int j = 0; j < grid.res; ++j)
            for (int i = 0; i < grid.res; ++i) {
                Point p{space, Vec(space.ambient_dim())};
                if (!grid.from_chart(grid.cell_center(i, j), p)) {
                    next[static_cast<size_t>(j) * grid.res + i] = 0;
                    continue;
                }
                bool in_p = grid.member(p);
                bool in_m = grid.member(reflect(h, p));
                bool tau = side(h, p) >= 0.0 ? (in_p || in_m) : (in_p && in_m);
                next[static_cast<size_t>(j) * grid.res + i] = tau ? 1 : 0;
            }
        grid.cells.swap(next);
        estimate_step(it, est_rng);
    }
    return trace;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
    auto old_precision = os.precision(17);
    os << "iter,symdiff_estimate,stderr,diameter_estimate\n";
    for (const auto& st : trace.steps)
        os << st.iter << ',' << st.symdiff << ',' << st.stderr_ << ',' << st.diameter_est << "\n";
    os.precision(old_precision);
}

}  // namespace curvewidth
