#include "curvewidth/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "curvewidth/measures.hpp"

namespace curvewidth {

namespace {

constexpr double kPi = 3.14159265358979323846;

double min_dist_to_points(const Point& p, const std::vector<Point>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : pts) best = std::min(best, distance(p, q));
    return best;
}

// Half-width of the crossing of two radius-D circles at center distance d,
// measured along the perpendicular bisector from the midpoint.
double crossing_half_width(const Space& space, double D, double d) {
    double half = 0.5 * d;
    switch (space.kind) {
        case Curvature::Euclidean: {
            double q = D * D - half * half;
            return q <= 0.0 ? 0.0 : std::sqrt(q);
        }
        case Curvature::Spherical: {
            double c = std::cos(D) / std::cos(half);
            return std::acos(std::clamp(c, -1.0, 1.0));
        }
        case Curvature::Hyperbolic: {
            double c = std::cosh(D) / std::cosh(half);
            return c <= 1.0 ? 0.0 : std::acosh(c);
        }
    }
    return 0.0;
}

Point barycenter(const Space& space, const std::vector<Point>& pts) {
    Vec sum(space.ambient_dim());
    for (const Point& p : pts) sum += p.x;
    if (space.euclidean()) return {space, sum * (1.0 / static_cast<double>(pts.size()))};
    return renormalize(space, sum);
}

}  // namespace

const Space& Body::space() const {
    if (is_cloud()) return as_cloud().space;
    if (is_ball_polytope()) return as_ball_polytope().space;
    return as_oracle().space;
}

bool Body::contains(const Point& p, double slack) const {
    if (is_cloud()) return min_dist_to_points(p, as_cloud().points) <= slack + tol::invariant;
    if (is_ball_polytope()) return ball_polytope_contains(as_ball_polytope(), p, slack);
    return as_oracle().contains(p);
}

Ball Body::bounding_ball() const {
    if (is_oracle()) return as_oracle().bounding;
    if (is_cloud()) {
        const auto& c = as_cloud();
        Point b = barycenter(c.space, c.points);
        double r = 0.0;
        for (const Point& q : c.points) r = std::max(r, distance(b, q));
        return {b, r};
    }
    const auto& bp = as_ball_polytope();
    Point b = barycenter(bp.space, bp.centers);
    if (bp.space.dim == 2 && bp.centers.size() > 1) {
        ArcStructure as = arc_structure(bp);
        return {b, ball_polytope_support(bp, as, b) + 1e-12};
    }
    double r = 0.0;
    for (const Point& q : bp.centers) r = std::max(r, distance(b, q));
    return {b, r + bp.radius};
}

PointCloud make_cloud(const Space& space, std::vector<Point> points) {
    if (points.empty()) throw std::invalid_argument("make_cloud: empty point list");
    for (const Point& p : points)
        if (p.space != space) throw std::invalid_argument("make_cloud: space mismatch");
    return {space, std::move(points)};
}

BallPolytope make_ball_polytope(const Space& space, std::vector<Point> centers, double radius,
                                double slack) {
    if (centers.empty()) throw std::invalid_argument("make_ball_polytope: no centers");
    if (radius <= 0.0) throw std::invalid_argument("make_ball_polytope: radius must be positive");
    if (space.spherical() && radius >= 0.5 * kPi)
        throw std::domain_error("make_ball_polytope: spherical radius must be < pi/2");
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j)
            if (distance(centers[i], centers[j]) > radius + slack)
                throw std::invalid_argument("make_ball_polytope: centers too far apart");
    return {space, std::move(centers), radius};
}

BallPolytope make_ball_body(const Point& center, double radius) {
    return make_ball_polytope(center.space, {center}, radius);
}

double diameter(const PointCloud& cloud) {
    double best = 0.0;
    for (size_t i = 0; i < cloud.points.size(); ++i)
        for (size_t j = i + 1; j < cloud.points.size(); ++j)
            best = std::max(best, distance(cloud.points[i], cloud.points[j]));
    return best;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.space != b.space) throw std::invalid_argument("hausdorff: space mismatch");
    double d_ab = 0.0;
    for (const Point& p : a.points) d_ab = std::max(d_ab, min_dist_to_points(p, b.points));
    double d_ba = 0.0;
    for (const Point& q : b.points) d_ba = std::max(d_ba, min_dist_to_points(q, a.points));
    return std::max(d_ab, d_ba);
}

bool ball_polytope_contains(const BallPolytope& bp, const Point& p, double slack) {
    for (const Point& c : bp.centers)
        if (distance(p, c) > bp.radius + slack + tol::invariant) return false;
    return true;
}

// --- dim-2 arc structure ---

ArcStructure arc_structure(const BallPolytope& bp) {
    if (bp.space.dim != 2) throw std::invalid_argument("arc_structure: dim 2 only");
    const double D = bp.radius;
    const auto& cs = bp.centers;
    ArcStructure out;

    // Deduplicate centers for the crossing enumeration.
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
        bool dup = false;
        for (int j : keep)
            if (distance(cs[i], cs[j]) < 1e-12) dup = true;
        if (!dup) keep.push_back(i);
    }

    if (keep.size() == 1) {
        out.full_circle = true;
        out.arcs.push_back({keep[0], 0.0, 2.0 * kPi});
        return out;
    }

    auto feasible = [&](const Point& v) {
        for (const Point& c : cs)
            if (distance(v, c) > D + 1e-9) return false;
        return true;
    };

    for (size_t a = 0; a < keep.size(); ++a) {
        for (size_t b = a + 1; b < keep.size(); ++b) {
            int i = keep[a], j = keep[b];
            double d = distance(cs[i], cs[j]);
            double w = crossing_half_width(bp.space, D, d);
            Point m = midpoint(cs[i], cs[j]);
            Vec along = rotate_tangent_quarter(m, direction(m, cs[j]).v);
            for (double sgn : {1.0, -1.0}) {
                Point v = geodesic_point(m, along, sgn * w);
                if (!feasible(v)) continue;
                bool dup = false;
                for (const Point& u : out.vertices)
                    if (distance(u, v) < 1e-10) dup = true;
                if (dup) continue;
                out.vertices.push_back(v);
                out.vertex_pairs.emplace_back(i, j);
            }
        }
    }

    // Arcs per circle: split by crossing angles, keep feasible segments.
    for (int ci : keep) {
        auto basis = tangent_basis(cs[ci]);
        auto angle_of = [&](const Point& v) {
            Vec w = direction(cs[ci], v).v;
            return std::atan2(tangent_dot(bp.space, w, basis[1]),
                              tangent_dot(bp.space, w, basis[0]));
        };
        std::vector<double> cuts;
        for (size_t k = 0; k < out.vertices.size(); ++k) {
            if (std::abs(distance(out.vertices[k], cs[ci]) - D) < 1e-8)
                cuts.push_back(angle_of(out.vertices[k]));
        }
        if (cuts.empty()) {
            // Either the whole circle is active or none of it is.
            Point probe = geodesic_point(cs[ci], basis[0], D);
            if (feasible(probe)) out.arcs.push_back({ci, 0.0, 2.0 * kPi});
            continue;
        }
        std::sort(cuts.begin(), cuts.end());
        for (size_t k = 0; k < cuts.size(); ++k) {
            double t0 = cuts[k];
            double t1 = (k + 1 < cuts.size()) ? cuts[k + 1] : cuts[0] + 2.0 * kPi;
            if (t1 - t0 < 1e-12) continue;
            double tm = 0.5 * (t0 + t1);
            Vec dir = basis[0] * std::cos(tm) + basis[1] * std::sin(tm);
            if (feasible(geodesic_point(cs[ci], dir, D))) out.arcs.push_back({ci, t0, t1});
        }
    }
    return out;
}

std::vector<BoundarySample> boundary_sample_2d(const BallPolytope& bp, int target_count) {
    ArcStructure as = arc_structure(bp);
    const double D = bp.radius;
    double total = 0.0;
    for (const auto& arc : as.arcs) total += (arc.theta_end - arc.theta_begin);
    if (total <= 0.0) throw std::domain_error("boundary_sample_2d: empty boundary");
    double dtheta = total / std::max(1, target_count);

    std::vector<BoundarySample> out;
    out.reserve(static_cast<size_t>(target_count) + 4 * as.vertices.size() + 8);
    for (const auto& arc : as.arcs) {
        const Point& c = bp.centers[static_cast<size_t>(arc.center_index)];
        auto basis = tangent_basis(c);
        int m = std::max(1, static_cast<int>(std::ceil((arc.theta_end - arc.theta_begin) / dtheta)));
        for (int k = 0; k < m; ++k) {
            double th = arc.theta_begin + (k + 0.5) * (arc.theta_end - arc.theta_begin) / m;
            Vec dir = basis[0] * std::cos(th) + basis[1] * std::sin(th);
            Point p = geodesic_point(c, dir, D);
            out.push_back({p, direction(c, p).v});
        }
    }
    // Vertex normal fans (needed to cover the corners of parallel bodies).
    for (size_t k = 0; k < as.vertices.size(); ++k) {
        const Point& v = as.vertices[k];
        Vec n1 = direction(bp.centers[static_cast<size_t>(as.vertex_pairs[k].first)], v).v;
        Vec n2 = direction(bp.centers[static_cast<size_t>(as.vertex_pairs[k].second)], v).v;
        double phi = angle_between({v, n1}, {v, n2});
        int m = std::max(2, static_cast<int>(std::ceil(phi / dtheta)));
        auto basis = tangent_basis(v);
        double a1 = std::atan2(tangent_dot(bp.space, n1, basis[1]), tangent_dot(bp.space, n1, basis[0]));
        double a2 = std::atan2(tangent_dot(bp.space, n2, basis[1]), tangent_dot(bp.space, n2, basis[0]));
        double delta = a2 - a1;
        while (delta > kPi) delta -= 2.0 * kPi;
        while (delta < -kPi) delta += 2.0 * kPi;
        for (int s = 0; s <= m; ++s) {
            double th = a1 + delta * s / m;
            Vec dir = basis[0] * std::cos(th) + basis[1] * std::sin(th);
            out.push_back({v, dir});
        }
    }
    return out;
}

std::vector<Point> boundary_sample_rays(const Body& body, const Point& anchor, int count,
                                        CounterRng rng) {
    if (!body.contains(anchor, tol::identity))
        throw std::invalid_argument("boundary_sample_rays: anchor not inside the body");
    Ball bb = body.bounding_ball();
    double reach = bb.radius + distance(anchor, bb.center) + 1e-6;
    if (anchor.space.spherical()) reach = std::min(reach, kPi - 1e-6);
    std::vector<Point> out;
    out.reserve(static_cast<size_t>(count));
    auto basis = tangent_basis(anchor);
    for (int k = 0; k < count; ++k) {
        Vec coeff = rng.unit_vector(anchor.space.dim);
        Vec dir(anchor.x.n);
        for (int i = 0; i < anchor.space.dim; ++i) dir = axpy(coeff[i], basis[static_cast<size_t>(i)], dir);
        double lo = 0.0, hi = reach;
        if (body.contains(geodesic_point(anchor, dir, hi))) {
            out.push_back(geodesic_point(anchor, dir, hi));
            continue;
        }
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (body.contains(geodesic_point(anchor, dir, mid)))
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(geodesic_point(anchor, dir, lo));
    }
    return out;
}

// --- distances ---

double ball_polytope_distance(const BallPolytope& bp, const ArcStructure& as, const Point& p) {
    const double D = bp.radius;
    if (ball_polytope_contains(bp, p)) return 0.0;
    auto feasible = [&](const Point& q) { return ball_polytope_contains(bp, q, 1e-9); };
    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : bp.centers) {
        double d = distance(p, c);
        if (d <= D) continue;
        Point q = geodesic_point(c, direction(c, p).v, D);
        if (feasible(q)) best = std::min(best, d - D);
    }
    for (const Point& v : as.vertices) best = std::min(best, distance(p, v));
    return best;
}

namespace {

// Exact distance to a dim-2 ball polytope; candidate-based generic otherwise.
DistanceResult distance_to_ball_polytope(const Point& p, const BallPolytope& bp) {
    const double D = bp.radius;
    if (ball_polytope_contains(bp, p)) return {0.0, 0.0, false};

    double lower = 0.0;
    for (const Point& c : bp.centers) lower = std::max(lower, distance(p, c) - D);

    auto feasible = [&](const Point& q) { return ball_polytope_contains(bp, q, 1e-9); };

    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : bp.centers) {
        double d = distance(p, c);
        if (d <= D) continue;
        Point q = geodesic_point(c, direction(c, p).v, D);
        if (feasible(q)) best = std::min(best, d - D);
    }
    if (bp.space.dim == 2) {
        ArcStructure as = arc_structure(bp);
        for (const Point& v : as.vertices) best = std::min(best, distance(p, v));
        return {best, 0.0, false};
    }
    // dim >= 3: polish from the best sphere projection with feasibility.
    std::vector<Point> starts;
    for (const Point& c : bp.centers) {
        double d = distance(p, c);
        if (d > D) starts.push_back(geodesic_point(c, direction(c, p).v, D));
    }
    if (starts.empty()) starts.push_back(bp.centers.front());
    // Move each start into the feasible set by cyclic projection.
    for (Point& s : starts) {
        for (int it = 0; it < 64; ++it) {
            bool ok = true;
            for (const Point& c : bp.centers) {
                double d = distance(s, c);
                if (d > D + 1e-12) {
                    s = geodesic_point(c, direction(c, s).v, D);
                    ok = false;
                }
            }
            if (ok) break;
        }
    }
    SolverBudget bud;
    bud.evals = 4000;
    bud.tol = 1e-10;
    SolveResult r = minimize_over_points(
        [&](const Point& q) { return distance(p, q); }, starts, 0.25 * D, bud, feasible);
    double val = std::min(best, r.value);
    return {val, std::max(0.0, val - lower), r.flagged};
}

}  // namespace

DistanceResult distance_to_set(const Point& p, const Body& body, const SolverBudget& budget) {
    if (body.is_cloud()) return {min_dist_to_points(p, body.as_cloud().points), 0.0, false};
    if (body.is_ball_polytope()) return distance_to_ball_polytope(p, body.as_ball_polytope());

    const OracleBody& ob = body.as_oracle();
    if (ob.contains(p)) return {0.0, 0.0, false};
    if (ob.distance_fn) return {ob.distance_fn(p), 0.0, false};

    // Sampling fallback: boundary points by ray shooting from the bounding
    // center (projected inside if needed), then local polish.
    Point anchor = ob.bounding.center;
    if (!ob.contains(anchor))
        throw std::domain_error("distance_to_set: oracle body without interior anchor");
    int rays = std::max(64, budget.evals / 64);
    auto bnd = boundary_sample_rays(body, anchor, rays, CounterRng(0xb0d7));
    double best = std::numeric_limits<double>::infinity();
    Point best_q = anchor;
    for (const Point& q : bnd) {
        double d = distance(p, q);
        if (d < best) {
            best = d;
            best_q = q;
        }
    }
    SolverBudget bud = budget;
    bud.evals = std::max(512, budget.evals / 8);
    SolveResult r = minimize_over_points([&](const Point& q) { return distance(p, q); },
                                         {best_q}, 0.1 * ob.bounding.radius, bud,
                                         [&](const Point& q) { return ob.contains(q); });
    double resolution = 2.0 * kPi * ob.bounding.radius / rays;
    return {std::min(best, r.value), resolution, r.flagged};
}

double distance_to_ball_cap(const Point& p, const Point& center, double r, const Hyperplane& h) {
    bool in_ball = distance(p, center) <= r;
    double s = side(h, p);
    if (in_ball && s >= 0.0) return 0.0;

    double best = std::numeric_limits<double>::infinity();
    double d_pc = distance(p, center);
    if (d_pc > r) {
        Point q = geodesic_point(center, direction(center, p).v, r);
        if (side(h, q) >= -1e-12) best = std::min(best, d_pc - r);
    }
    if (s < 0.0) {
        Point f = foot_on_hyperplane(p, h);
        if (distance(f, center) <= r + 1e-12) best = std::min(best, distance_to_hyperplane(p, h));
    }
    // Rim of the cap: boundary sphere meets the hyperplane.
    double hc = distance_to_hyperplane(center, h);
    if (hc <= r) {
        Point fc = (hc < 1e-14) ? center : foot_on_hyperplane(center, h);
        double w = crossing_half_width(center.space, r, 2.0 * hc);
        // crossing_half_width solves the same right-angle relation with legs
        // (hc, w) and hypotenuse r.
        if (center.space.dim == 2) {
            Vec along = rotate_tangent_quarter(fc, project_to_tangent(fc, h.normal));
            double nrm = tangent_norm(center.space, along);
            if (nrm > 1e-12) {
                along = along * (1.0 / nrm);
                for (double sgn : {1.0, -1.0})
                    best = std::min(best, distance(p, geodesic_point(fc, along, sgn * w)));
            }
        } else {
            // Coarse scan plus golden-section over the rim circle.
            Vec nfc = project_to_tangent(fc, h.normal);
            double nn = tangent_norm(center.space, nfc);
            auto basis = tangent_basis(fc);
            std::vector<Vec> tang;
            for (const Vec& b : basis) {
                Vec w2 = (nn > 1e-12) ? axpy(-tangent_dot(center.space, b, nfc) / (nn * nn), nfc, b) : b;
                double n2 = tangent_norm(center.space, w2);
                if (n2 > 1e-8) {
                    w2 = w2 * (1.0 / n2);
                    for (const Vec& t : tang) w2 = axpy(-tangent_dot(center.space, w2, t), t, w2);
                    double n3 = tangent_norm(center.space, w2);
                    if (n3 > 1e-8) tang.push_back(w2 * (1.0 / n3));
                }
            }
            if (tang.size() >= 2) {
                auto rim_dist = [&](double phi) {
                    Vec dir = tang[0] * std::cos(phi) + tang[1] * std::sin(phi);
                    return distance(p, geodesic_point(fc, dir, w));
                };
                double best_phi = 0.0, best_val = rim_dist(0.0);
                for (int k = 1; k < 64; ++k) {
                    double phi = 2.0 * kPi * k / 64;
                    double v = rim_dist(phi);
                    if (v < best_val) {
                        best_val = v;
                        best_phi = phi;
                    }
                }
                double phi_opt = golden_section_min(rim_dist, best_phi - 2.0 * kPi / 64,
                                                    best_phi + 2.0 * kPi / 64, 1e-12);
                best = std::min(best, rim_dist(phi_opt));
            }
        }
    }
    if (!std::isfinite(best)) throw std::domain_error("distance_to_ball_cap: empty cap");
    return best;
}

OracleBody parallel_body(const Body& body, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("parallel_body: rho must be positive");
    const Space& space = body.space();
    Ball bb = body.bounding_ball();
    if (space.spherical() && 2.0 * (bb.radius + rho) >= kPi)
        throw std::domain_error("parallel_body: spherical parallel domain too large");

    std::function<double(const Point&)> base_dist;
    std::function<double(const Point&)> base_depth;
    bool base_convex = false;
    if (body.is_cloud()) {
        auto pts = body.as_cloud().points;
        base_dist = [pts](const Point& p) { return min_dist_to_points(p, pts); };
    } else if (body.is_ball_polytope()) {
        auto bp = body.as_ball_polytope();
        base_convex = true;
        base_depth = [bp](const Point& p) {
            double depth = std::numeric_limits<double>::infinity();
            for (const Point& c : bp.centers) depth = std::min(depth, bp.radius - distance(p, c));
            return depth;
        };
        if (space.dim == 2) {
            auto as = std::make_shared<ArcStructure>(arc_structure(bp));
            base_dist = [bp, as](const Point& p) { return ball_polytope_distance(bp, *as, p); };
        } else {
            base_dist = [bp](const Point& p) { return distance_to_ball_polytope(p, bp).value; };
        }
    } else if (body.as_oracle().distance_fn) {
        base_dist = body.as_oracle().distance_fn;
        base_convex = body.as_oracle().convex;
        base_depth = body.as_oracle().interior_depth_fn;
    }

    OracleBody out;
    out.space = space;
    out.bounding = {bb.center, bb.radius + rho};
    if (base_dist) {
        out.contains = [base_dist, rho](const Point& p) { return base_dist(p) <= rho; };
        out.distance_fn = [base_dist, rho](const Point& p) {
            return std::max(0.0, base_dist(p) - rho);
        };
        if (base_convex) {
            out.convex = true;
            if (base_depth) {
                // Depth of the grown body: rho further in outside the core,
                // rho plus the core depth inside it.
                out.interior_depth_fn = [base_dist, base_depth, rho](const Point& p) {
                    double d = base_dist(p);
                    return d > 0.0 ? rho - d : rho + std::max(0.0, base_depth(p));
                };
            }
        }
    } else {
        auto inner = std::make_shared<Body>(body);
        out.contains = [inner, rho](const Point& p) {
            return distance_to_set(p, *inner).value <= rho;
        };
        out.compose_depth = body.is_oracle() ? body.as_oracle().compose_depth + 1 : 1;
    }
    return out;
}

// --- convex hulls through the projective chart ---

bool euclidean_hull_membership(const std::vector<Vec>& pts, const Vec& q, double tol_) {
    if (pts.empty()) throw std::invalid_argument("euclidean_hull_membership: no points");
    // Separation margin m* = max over unit v of min_i <v, x_i - q>; the query
    // lies in the hull iff no direction separates it (m* <= 0).
    const int n = q.n;
    auto margin = [&](const Vec& v) {
        double m = std::numeric_limits<double>::infinity();
        for (const Vec& x : pts) m = std::min(m, dot(v, x - q));
        return m;
    };
    for (const Vec& x : pts)
        if (norm(x - q) <= tol_) return true;

    if (n == 2) {
        double best_theta = 0.0, best = -std::numeric_limits<double>::infinity();
        const int scan = 512;
        for (int k = 0; k < scan; ++k) {
            double th = 2.0 * kPi * k / scan;
            double m = margin(Vec{std::cos(th), std::sin(th)});
            if (m > best) {
                best = m;
                best_theta = th;
            }
        }
        double span = 2.0 * 2.0 * kPi / scan;
        double th = golden_section_min(
            [&](double t) { return -margin(Vec{std::cos(t), std::sin(t)}); },
            best_theta - span, best_theta + span, 1e-14);
        best = std::max(best, margin(Vec{std::cos(th), std::sin(th)}));
        return best <= tol_;
    }

    // Higher dimensions: pattern search over the direction sphere.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Vec> starts;
    Vec mean(n);
    for (const Vec& x : pts) mean += x;
    mean *= (1.0 / static_cast<double>(pts.size()));
    if (norm(mean - q) > 1e-14) starts.push_back(normalized(q - mean));
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1.0;
        starts.push_back(e);
        starts.push_back(-e);
    }
    for (const Vec& s0 : starts) {
        Vec v = s0;
        double fv = margin(v);
        double step = 0.5;
        while (step > 1e-13) {
            bool improved = false;
            for (int i = 0; i < n && !improved; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = v;
                    cand[i] += sgn * step;
                    cand = normalized(cand);
                    double fc = margin(cand);
                    if (fc > fv) {
                        fv = fc;
                        v = cand;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, fv);
    }
    return best <= tol_;
}

ConvexHull2D ConvexHull2D::of(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec& a, const Vec& b) { return a[0] == b[0] && a[1] == b[1]; }),
              pts.end());
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    ConvexHull2D hull;
    if (pts.size() < 3) {
        hull.vertices = pts;
        return hull;
    }
    std::vector<Vec> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    hull.vertices = std::move(h);
    return hull;
}

bool ConvexHull2D::contains(const Vec& q, double tol_) const {
    if (vertices.empty()) return false;
    if (vertices.size() == 1)
        return std::abs(q[0] - vertices[0][0]) <= tol_ && std::abs(q[1] - vertices[0][1]) <= tol_;
    if (vertices.size() == 2) {
        Vec d = vertices[1] - vertices[0];
        double len2 = dot(d, d);
        double lam = len2 < 1e-300 ? 0.0 : std::clamp(dot(q - vertices[0], d) / len2, 0.0, 1.0);
        return norm(q - (vertices[0] + d * lam)) <= tol_;
    }
    for (size_t i = 0; i < vertices.size(); ++i) {
        const Vec& a = vertices[i];
        const Vec& b = vertices[(i + 1) % vertices.size()];
        double cr = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
        if (cr < -tol_) return false;
    }
    return true;
}

namespace {

Vec chart_coords(const Point& p) {
    // x / <x, e> with the e-component dropped; identity for Euclidean input.
    if (p.space.euclidean()) return p.x;
    if (p.x[0] <= 0.0) throw std::domain_error("chart: point outside the open hemisphere");
    Vec y(p.x.n - 1);
    for (int i = 1; i < p.x.n; ++i) y[i - 1] = p.x[i] / p.x[0];
    return y;
}

}  // namespace

bool convex_hull_membership(const PointCloud& cloud, const Point& p, double tol_) {
    if (cloud.space != p.space) throw std::invalid_argument("convex_hull_membership: space mismatch");
    const Space& space = cloud.space;
    std::vector<Point> all = cloud.points;
    all.push_back(p);

    PlaneRotation rot;
    if (space.spherical()) {
        // The chart needs everything inside an open hemisphere; center it on
        // the smallest enclosing cap.
        RadiusResult cap = min_enclosing_ball(make_cloud(space, all));
        if (cap.radius >= 0.5 * kPi - 1e-9)
            throw std::domain_error("convex_hull_membership: no open hemisphere contains the input");
        Vec e(space.ambient_dim());
        e[0] = 1.0;
        rot = rotation_taking(cap.center.x, e);
    }

    std::vector<Vec> charted;
    charted.reserve(cloud.points.size());
    for (const Point& q : cloud.points) {
        Point rq = space.spherical() ? renormalize(space, rot.apply(q.x)) : q;
        charted.push_back(chart_coords(rq));
    }
    Point rp = space.spherical() ? renormalize(space, rot.apply(p.x)) : p;
    return euclidean_hull_membership(charted, chart_coords(rp), tol_);
}

// --- D-hull support ---

double ball_polytope_support(const BallPolytope& bp, const ArcStructure& as, const Point& p) {
    const double D = bp.radius;
    double best = 0.0;
    for (const Point& v : as.vertices) best = std::max(best, distance(p, v));
    auto feasible = [&](const Point& q) { return ball_polytope_contains(bp, q, 1e-9); };
    for (const auto& arc : as.arcs) {
        const Point& c = bp.centers[static_cast<size_t>(arc.center_index)];
        double d = distance(p, c);
        if (d < 1e-9) {
            // Query at (or numerically on top of) the arc center: the whole
            // circle sits within d of distance D.
            best = std::max(best, D + d);
            continue;
        }
        if (bp.space.spherical() && d + D >= kPi)
            throw std::domain_error("ball_polytope_support: antipodal wrap");
        Point far = geodesic_point(c, direction(c, p).v, -D);
        if (feasible(far)) best = std::max(best, d + D);
    }
    if (as.full_circle) {
        // Single ball: farthest point is along the ray away from p.
        const Point& c = bp.centers.front();
        double d = distance(p, c);
        best = std::max(best, d < 1e-12 ? D : d + D);
    }
    return best;
}

double ball_polytope_support(const BallPolytope& bp, const Point& p) {
    ArcStructure as = arc_structure(bp);
    return ball_polytope_support(bp, as, p);
}

DistanceResult d_hull_support(const PointCloud& cloud, double D, const Point& p,
                              const SolverBudget& budget) {
    if (diameter(cloud) > D + tol::identity)
        throw std::domain_error("d_hull_support: cloud diameter exceeds D");
    if (cloud.space.spherical() && D >= kPi)
        throw std::domain_error("d_hull_support: spherical width must be < pi");
    BallPolytope centers = make_ball_polytope(cloud.space, cloud.points, D);
    if (cloud.space.dim == 2) return {ball_polytope_support(centers, p), 0.0, false};

    // Generic: multi-start ascent over the admissible-center set.
    auto feasible = [&](const Point& q) { return ball_polytope_contains(centers, q, 1e-9); };
    std::vector<Point> starts = cloud.points;
    auto bnd = boundary_sample_rays(Body(centers), barycenter(cloud.space, cloud.points),
                                    std::max(32, budget.evals / 256), CounterRng(17));
    for (const Point& q : bnd) starts.push_back(q);
    SolveResult r = maximize_over_points([&](const Point& q) { return distance(p, q); }, starts,
                                         0.25 * D, budget, feasible);
    double resolution = 2.0 * D / std::max<size_t>(1, bnd.size());
    return {r.value, resolution, r.flagged};
}

bool d_hull_membership(const PointCloud& cloud, double D, const Point& p,
                       const SolverBudget& budget) {
    return d_hull_support(cloud, D, p, budget).value <= D + tol::identity;
}

bool spindle_membership(const Point& x, const Point& y, double D, const Point& p, double slack) {
    if (x.space != y.space || x.space != p.space)
        throw std::invalid_argument("spindle_membership: space mismatch");
    const Space& space = x.space;
    double d_xy = distance(x, y);
    if (d_xy > D + slack) throw std::domain_error("spindle_membership: points farther than D");

    if (space.dim == 2) return d_hull_membership(make_cloud(space, {x, y}), D, p);

    // Reduce to the 2-dimensional totally geodesic subspace through x, y, p.
    Space plane(space.kind, 2);
    if (space.euclidean()) {
        Vec a1 = normalized(y.x - x.x);
        Vec rel = p.x - x.x;
        Vec a2 = axpy(-dot(rel, a1), a1, rel);
        double n2 = norm(a2);
        if (n2 < 1e-12) {
            // p on the line through x,y: the spindle meets it in the segment.
            return distance(p, x) + distance(p, y) <= d_xy + slack;
        }
        a2 = a2 * (1.0 / n2);
        Point x2{plane, Vec{0.0, 0.0}};
        Point y2{plane, Vec{dot(y.x - x.x, a1), 0.0}};
        Point p2{plane, Vec{dot(rel, a1), dot(rel, a2)}};
        return d_hull_membership(make_cloud(plane, {x2, y2}), D, p2);
    }

    // Form-orthonormal frame of span{x, y, p}: b0 timelike/unit, b1 and b2
    // spacelike (squared form -1 in the hyperbolic case).
    const bool hyp = space.hyperbolic();
    auto form = [&](const Vec& u, const Vec& v) { return hyp ? bilinear_form(u, v) : dot(u, v); };
    Vec b0 = x.x;
    Vec b1 = axpy(-form(y.x, b0), b0, y.x);
    double q1 = hyp ? -form(b1, b1) : form(b1, b1);
    if (q1 < 1e-24) throw std::domain_error("spindle_membership: coincident endpoints");
    b1 = b1 * (1.0 / std::sqrt(q1));
    Vec b2 = p.x;
    b2 = axpy(-form(b2, b0), b0, b2);
    b2 = axpy((hyp ? 1.0 : -1.0) * form(b2, b1), b1, b2);
    double q2 = hyp ? -form(b2, b2) : form(b2, b2);
    if (q2 < 1e-24) return distance(p, x) + distance(p, y) <= d_xy + slack;
    b2 = b2 * (1.0 / std::sqrt(q2));

    auto coords = [&](const Point& q) {
        double a0 = form(q.x, b0);
        double a1 = hyp ? -form(q.x, b1) : form(q.x, b1);
        double a2 = hyp ? -form(q.x, b2) : form(q.x, b2);
        return renormalize(plane, Vec{a0, a1, a2});
    };
    Point x2 = coords(x), y2 = coords(y), p2 = coords(p);
    return d_hull_membership(make_cloud(plane, {x2, y2}), D, p2);
}

// --- enclosing balls and radii ---

namespace {

bool circumcenter_of_triple(const Point& a, const Point& b, const Point& c, Point& out) {
    const Space& space = a.space;
    if (space.euclidean()) {
        double ax = a.x[0], ay = a.x[1], bx = b.x[0], by = b.x[1], cx = c.x[0], cy = c.x[1];
        double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (std::abs(d) < 1e-14) return false;
        double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
        Vec u{(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
              (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d};
        out = {space, u};
        return true;
    }
    Vec u = a.x - b.x;
    Vec v = b.x - c.x;
    if (space.hyperbolic()) {
        u[1] = -u[1];
        u[2] = -u[2];
        v[1] = -v[1];
        v[2] = -v[2];
    }
    Vec w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    if (space.spherical()) {
        double nw = norm(w);
        if (nw < 1e-14) return false;
        out = {space, w * (1.0 / nw)};
        return true;
    }
    double q = bilinear_form(w, w);
    if (q <= 1e-14) return false;
    w = w * (1.0 / std::sqrt(q));
    if (w[0] < 0.0) w = -w;
    out = {space, w};
    return true;
}

RadiusResult meb_exact_2d(const PointCloud& cloud) {
    const auto& pts = cloud.points;
    const Space& space = cloud.space;
    RadiusResult best;
    best.radius = std::numeric_limits<double>::infinity();

    auto consider = [&](const Point& c) {
        double r = 0.0;
        for (const Point& q : pts) r = std::max(r, distance(c, q));
        if (r < best.radius) {
            best.center = c;
            best.radius = r;
        }
    };

    consider(pts.front());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) consider(midpoint(pts[i], pts[j]));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                Point c{space, Vec(space.ambient_dim())};
                if (!circumcenter_of_triple(pts[i], pts[j], pts[k], c)) continue;
                consider(c);
                if (space.spherical()) consider(Point{space, -c.x});
            }
    best.gap = 0.0;
    best.flagged = false;
    return best;
}

}  // namespace

RadiusResult min_enclosing_ball(const PointCloud& cloud, const SolverBudget& budget) {
    const auto& pts = cloud.points;
    if (pts.size() == 1) return {pts.front(), 0.0, 0.0, false};

    if (cloud.space.dim == 2) {
        if (pts.size() <= 48) return meb_exact_2d(cloud);
        // Active-set reduction: solve on the extremal subset, verify, grow.
        Point c0 = barycenter(cloud.space, pts);
        std::vector<std::pair<double, size_t>> order;
        order.reserve(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) order.emplace_back(-distance(c0, pts[i]), i);
        std::sort(order.begin(), order.end());
        std::vector<Point> active;
        for (size_t k = 0; k < 24 && k < order.size(); ++k) active.push_back(pts[order[k].second]);
        for (int round = 0; round < 16; ++round) {
            RadiusResult r = meb_exact_2d(make_cloud(cloud.space, active));
            size_t worst = pts.size();
            double excess = 1e-12;
            for (size_t i = 0; i < pts.size(); ++i) {
                double d = distance(r.center, pts[i]) - r.radius;
                if (d > excess) {
                    excess = d;
                    worst = i;
                }
            }
            if (worst == pts.size()) return r;
            active.push_back(pts[worst]);
        }
        return meb_exact_2d(cloud);
    }

    // Generic dimension: multi-start descent on the max-distance objective.
    std::vector<Point> starts{barycenter(cloud.space, pts), pts.front()};
    auto obj = [&](const Point& w) {
        double m = 0.0;
        for (const Point& q : pts) m = std::max(m, distance(w, q));
        return m;
    };
    SolverBudget bud = budget;
    bud.tol = std::min(budget.tol, 1e-10);
    SolveResult r = minimize_over_points(obj, starts, 0.5 * obj(starts.front()), bud);
    return {r.x, r.value, r.gap, r.flagged};
}

RadiusResult circumradius(const Body& body, const SolverBudget& budget) {
    if (body.is_cloud()) return min_enclosing_ball(body.as_cloud(), budget);

    if (body.is_ball_polytope()) {
        const auto& bp = body.as_ball_polytope();
        if (bp.centers.size() == 1) return {bp.centers.front(), bp.radius, 0.0, false};
        if (bp.space.dim == 2) {
            ArcStructure as = arc_structure(bp);
            auto obj = [&](const Point& w) { return ball_polytope_support(bp, as, w); };
            std::vector<Point> starts{barycenter(bp.space, bp.centers)};
            RadiusResult cloud_meb = min_enclosing_ball(make_cloud(bp.space, bp.centers));
            starts.push_back(cloud_meb.center);
            SolverBudget bud = budget;
            bud.tol = std::min(budget.tol, 1e-10);
            SolveResult r = minimize_over_points(obj, starts, 0.25 * bp.radius, bud);
            return {r.x, r.value, r.gap, r.flagged};
        }
    }

    // Sampled boundary representation.
    Ball bb = body.bounding_ball();
    Point anchor = bb.center;
    if (!body.contains(anchor)) {
        // Shift toward a contained probe via the oracle distance.
        DistanceResult dr = distance_to_set(anchor, body, budget);
        (void)dr;
        throw std::domain_error("circumradius: bounding center not inside the body");
    }
    int rays = std::max(256, budget.evals / 16);
    auto bnd = boundary_sample_rays(body, anchor, rays, CounterRng(0xc1c));
    RadiusResult meb = min_enclosing_ball(make_cloud(body.space(), bnd), budget);
    double resolution = 2.0 * kPi * bb.radius / rays;
    meb.gap = std::max(meb.gap, resolution);
    return meb;
}

RadiusResult inradius(const Body& body, const SolverBudget& budget) {
    if (body.is_cloud()) throw std::invalid_argument("inradius: point clouds have no interior");

    if (body.is_ball_polytope()) {
        const auto& bp = body.as_ball_polytope();
        RadiusResult meb = min_enclosing_ball(make_cloud(bp.space, bp.centers), budget);
        return {meb.center, bp.radius - meb.radius, meb.gap, meb.flagged};
    }

    const OracleBody& ob = body.as_oracle();
    std::vector<Point> starts{ob.bounding.center};
    if (ob.interior_depth_fn) {
        auto obj = [&](const Point& z) { return ob.interior_depth_fn(z); };
        SolverBudget bud = budget;
        bud.tol = std::min(budget.tol, 1e-10);
        SolveResult r = maximize_over_points(obj, starts, 0.25 * ob.bounding.radius, bud,
                                             [&](const Point& z) { return ob.contains(z); });
        return {r.x, r.value, r.gap, r.flagged};
    }
    int rays = std::max(256, budget.evals / 16);
    auto bnd = boundary_sample_rays(body, ob.bounding.center, rays, CounterRng(0x17ad));
    auto obj = [&](const Point& z) { return min_dist_to_points(z, bnd); };
    SolveResult r = maximize_over_points(obj, starts, 0.25 * ob.bounding.radius, budget,
                                         [&](const Point& z) { return ob.contains(z); });
    double resolution = 2.0 * kPi * ob.bounding.radius / rays;
    return {r.x, r.value, std::max(r.gap, resolution), r.flagged};
}

BallPolytope reuleaux_triangle(const Space& space, double D) {
    if (space.dim != 2) throw std::invalid_argument("reuleaux_triangle: dim 2 only");
    if (D <= 0.0) throw std::invalid_argument("reuleaux_triangle: width must be positive");
    if (space.spherical() && D >= 0.5 * kPi)
        throw std::domain_error("reuleaux_triangle: spherical width must be < pi/2");
    Point p1 = reference_point(space);
    auto basis = tangent_basis(p1);
    Point p2 = geodesic_point(p1, basis[0], D);
    Point m = midpoint(p1, p2);
    Vec along = rotate_tangent_quarter(m, direction(m, p2).v);
    double h = crossing_half_width(space, D, D);
    Point p3 = geodesic_point(m, along, h);
    return make_ball_polytope(space, {p1, p2, p3}, D, 1e-12);
}

CapCutBall cap_cut_ball(const Space& space, double D, double target_eps, double rel_tol) {
    if (!(target_eps > 0.0 && target_eps < 0.5))
        throw std::invalid_argument("cap_cut_ball: eps must be in (0, 1/2)");
    if (space.spherical() && D > 0.5 * kPi)
        throw std::domain_error("cap_cut_ball: spherical width must be <= pi/2");
    const double R = 0.5 * D;
    Point z0 = reference_point(space);
    Vec axis = tangent_basis(z0)[0];
    double vball = ball_volume(space, R);
    double target = target_eps * vball;

    auto cap_of = [&](double del) { return del <= 0.0 ? 0.0 : cap_volume(space, R, del); };
    double depth = bisect_increasing(cap_of, 0.0, R, target, std::max(1e-15, 0.25 * rel_tol * R));
    double realized = cap_of(depth) / vball;
    // Polish until the realized fraction matches to the requested tolerance.
    for (int it = 0; it < 8 && std::abs(realized - target_eps) > rel_tol * target_eps; ++it) {
        double lo = std::max(0.0, depth * 0.5), hi = std::min(R, depth * 1.5 + 1e-18);
        depth = bisect_increasing(cap_of, lo, hi, target, 1e-17);
        realized = cap_of(depth) / vball;
    }

    Point base = geodesic_point(z0, axis, R - depth);
    Vec nrm = (R - depth < 1e-12) ? axis : -direction(base, z0).v;
    Hyperplane cut{base, nrm};

    OracleBody ob;
    ob.space = space;
    ob.bounding = {z0, R};
    ob.contains = [z0, R, cut](const Point& p) {
        return distance(p, z0) <= R && side(cut, p) <= 0.0;
    };
    Hyperplane flipped{cut.base, -cut.normal};
    ob.distance_fn = [z0, R, flipped](const Point& p) {
        return distance_to_ball_cap(p, z0, R, flipped);
    };
    ob.interior_depth_fn = [z0, R, cut](const Point& p) {
        return std::min(R - distance(p, z0), distance_to_hyperplane(p, cut));
    };
    ob.convex = true;
    return {std::move(ob), z0, R, depth, realized, cut};
}

// --- completion ---

CompletionResult complete(const PointCloud& seed, double D, double tol_, int max_points,
                          CounterRng rng) {
    const Space& space = seed.space;
    if (space.spherical() && D >= 0.5 * kPi)
        throw std::domain_error("complete: spherical width must be < pi/2");
    if (diameter(seed) > D + tol::identity)
        throw std::domain_error("complete: seed diameter exceeds D");

    std::vector<Point> cloud;
    for (const Point& p : seed.points) {
        bool dup = false;
        for (const Point& q : cloud)
            if (distance(p, q) < 1e-12) dup = true;
        if (!dup) cloud.push_back(p);
    }

    CompletionResult out{make_ball_polytope(space, cloud, D), 0.0, 0.0, false, false, 0};
    if (space.dim != 2) {
        // Generic farthest-point insertion without the arc certificate.
        while (static_cast<int>(cloud.size()) < max_points) {
            BallPolytope bp = make_ball_polytope(space, cloud, D);
            auto feasible = [&](const Point& q) { return ball_polytope_contains(bp, q, 1e-9); };
            std::vector<Point> starts{barycenter(space, cloud)};
            auto bnd = boundary_sample_rays(Body(bp), starts.front(), 48, rng.substream(cloud.size()));
            for (auto& b : bnd) starts.push_back(b);
            SolveResult r = maximize_over_points(
                [&](const Point& z) { return min_dist_to_points(z, cloud); }, starts, 0.5 * D,
                {4000, 4, 1e-10}, feasible);
            out.insertion_distance = r.value;
            if (r.value < tol_) break;
            cloud.push_back(r.x);
            ++out.inserted;
        }
        out.body = make_ball_polytope(space, cloud, D);
        out.flagged_incomplete = out.insertion_distance > 10.0 * tol_;
        out.defect = out.insertion_distance;
        return out;
    }

    auto near_cloud = [&](const Point& v) {
        return min_dist_to_points(v, cloud) < 1e-10;
    };

    int guard = 0;
    while (static_cast<int>(cloud.size()) < max_points && guard++ < 4 * max_points) {
        BallPolytope bp = make_ball_polytope(space, cloud, D);
        ArcStructure as = arc_structure(bp);

        std::vector<Point> candidates;
        // Boundary crossings not yet serving as centers.
        for (const Point& v : as.vertices)
            if (!near_cloud(v)) candidates.push_back(v);
        // Arc whose center never reaches the boundary: seed a point on it.
        for (const auto& arc : as.arcs) {
            const Point& c = cloud[static_cast<size_t>(arc.center_index)];
            bool center_is_vertex = false;
            for (const Point& v : as.vertices)
                if (distance(v, c) < 1e-10) center_is_vertex = true;
            if (!center_is_vertex) {
                auto basis = tangent_basis(c);
                double tm = 0.5 * (arc.theta_begin + arc.theta_end);
                Vec dir = basis[0] * std::cos(tm) + basis[1] * std::sin(tm);
                candidates.push_back(geodesic_point(c, dir, D));
            }
        }
        // Interior points are never inserted: their ball constraint already
        // contains the body, so only boundary-structure candidates shrink it.

        if (candidates.empty()) {
            out.complete_certificate = true;
            out.insertion_distance = 0.0;
            break;
        }

        // Farthest-point choice; ties resolved by candidate order.
        size_t pick = 0;
        double best = -1.0;
        for (size_t k = 0; k < candidates.size(); ++k) {
            double v = min_dist_to_points(candidates[k], cloud);
            if (v > best + 1e-12) {
                best = v;
                pick = k;
            }
        }
        out.insertion_distance = best;
        if (best < tol_) break;
        // Clamp the insertion onto the exact admissible set so pairwise
        // distances never drift past D.
        Point ins = candidates[pick];
        for (int it = 0; it < 64; ++it) {
            bool ok = true;
            for (const Point& c : cloud) {
                double d = distance(ins, c);
                if (d > D) {
                    ins = geodesic_point(c, direction(c, ins).v, D * (1.0 - 1e-15));
                    ok = false;
                }
            }
            if (ok) break;
        }
        cloud.push_back(ins);
        ++out.inserted;
    }

    out.body = make_ball_polytope(space, cloud, D);
    // Residual duality defect of the final structure.
    ArcStructure as = arc_structure(out.body);
    double defect = 0.0;
    for (const Point& v : as.vertices) defect = std::max(defect, min_dist_to_points(v, cloud));
    for (const auto& arc : as.arcs) {
        const Point& c = cloud[static_cast<size_t>(arc.center_index)];
        double to_vertex = std::numeric_limits<double>::infinity();
        for (const Point& v : as.vertices) to_vertex = std::min(to_vertex, distance(v, c));
        if (as.vertices.empty()) to_vertex = D;
        defect = std::max(defect, to_vertex);
    }
    out.defect = defect;
    out.complete_certificate = defect < 1e-9;
    out.flagged_incomplete = !out.complete_certificate && out.insertion_distance > 10.0 * tol_;
    return out;
}

}  // namespace curvewidth
