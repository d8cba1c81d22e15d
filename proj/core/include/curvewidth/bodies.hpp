#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "curvewidth/geometry.hpp"
#include "curvewidth/rng.hpp"
#include "curvewidth/solvers.hpp"

namespace curvewidth {

struct Ball {
    Point center;
    double radius = 0.0;
};

struct PointCloud {
    Space space;
    std::vector<Point> points;
};

// Intersection of equal-radius balls around `centers`. Pairwise center
// distances stay within `radius` so the centers themselves belong to the body.
struct BallPolytope {
    Space space;
    std::vector<Point> centers;
    double radius = 0.0;
};

// Membership-oracle body with a bounding ball. `distance_fn` (exact distance
// to the set, 0 inside) and `interior_depth_fn` (distance from an interior
// point to the boundary) are optional fast paths; solvers fall back to
// sampling when they are absent.
struct OracleBody {
    Space space;
    std::function<bool(const Point&)> contains;
    Ball bounding;
    std::function<double(const Point&)> distance_fn;
    std::function<double(const Point&)> interior_depth_fn;
    bool convex = false;
    int compose_depth = 0;
};

class Body {
  public:
    Body(PointCloud c) : v_(std::move(c)) {}
    Body(BallPolytope b) : v_(std::move(b)) {}
    Body(OracleBody o) : v_(std::move(o)) {}

    const Space& space() const;
    bool contains(const Point& p, double slack = 0.0) const;
    Ball bounding_ball() const;

    bool is_cloud() const { return std::holds_alternative<PointCloud>(v_); }
    bool is_ball_polytope() const { return std::holds_alternative<BallPolytope>(v_); }
    bool is_oracle() const { return std::holds_alternative<OracleBody>(v_); }
    const PointCloud& as_cloud() const { return std::get<PointCloud>(v_); }
    const BallPolytope& as_ball_polytope() const { return std::get<BallPolytope>(v_); }
    const OracleBody& as_oracle() const { return std::get<OracleBody>(v_); }

  private:
    std::variant<PointCloud, BallPolytope, OracleBody> v_;
};

PointCloud make_cloud(const Space& space, std::vector<Point> points);
BallPolytope make_ball_polytope(const Space& space, std::vector<Point> centers, double radius,
                                double slack = tol::identity);
// Single geodesic ball as a one-center polytope.
BallPolytope make_ball_body(const Point& center, double radius);

double diameter(const PointCloud& cloud);
double hausdorff(const PointCloud& a, const PointCloud& b);

bool ball_polytope_contains(const BallPolytope& bp, const Point& p, double slack = 0.0);

struct DistanceResult {
    double value = 0.0;
    double gap = 0.0;
    bool flagged = false;
};

DistanceResult distance_to_set(const Point& p, const Body& body,
                               const SolverBudget& budget = {});

// Union of radius-rho balls over the body, as a membership oracle with an
// exact distance function whenever the input body has one.
OracleBody parallel_body(const Body& body, double rho);

// Distance from p to the cap B(center, r) ∩ {side(h, .) >= 0}; exact for
// dim 2, numeric over the rim circle for dim 3.
double distance_to_ball_cap(const Point& p, const Point& center, double r, const Hyperplane& h);

bool convex_hull_membership(const PointCloud& cloud, const Point& p, double tol_ = 1e-10);

// Hull membership for chart coordinates (Euclidean): maximal separation
// margin over unit directions. Suited to one-off queries.
bool euclidean_hull_membership(const std::vector<Vec>& pts, const Vec& q, double tol_ = 1e-10);

// Planar convex hull with O(edges) membership, for bulk queries.
struct ConvexHull2D {
    std::vector<Vec> vertices;  // counter-clockwise

    static ConvexHull2D of(std::vector<Vec> pts);
    bool contains(const Vec& q, double tol_ = 1e-12) const;
};

// Support value sup{ d(p,z) : z in admissible-center set of X at width D }.
// p belongs to the D-hull of X iff this value is <= D. Exact for dim 2 via
// arc/vertex enumeration, multi-start ascent with gap otherwise.
DistanceResult d_hull_support(const PointCloud& cloud, double D, const Point& p,
                              const SolverBudget& budget = {});
bool d_hull_membership(const PointCloud& cloud, double D, const Point& p,
                       const SolverBudget& budget = {});

// Exact membership in the D-hull of two points (spindle), any dimension.
bool spindle_membership(const Point& x, const Point& y, double D, const Point& p,
                        double slack = tol::identity);

struct CompletionResult {
    BallPolytope body;
    double insertion_distance = 0.0;  // last greedy insertion distance
    double defect = 0.0;              // boundary arc/vertex duality defect
    bool complete_certificate = false;
    bool flagged_incomplete = false;
    int inserted = 0;
};

// Greedy completion of a cloud to a constant-width body. In dim 2 insertions
// are driven by the boundary arc structure and typically terminate with an
// exact width-D certificate; higher dimensions use farthest-point insertion
// only and report the residual defect.
CompletionResult complete(const PointCloud& seed, double D, double tol_ = 1e-9,
                          int max_points = 64, CounterRng rng = CounterRng(0));

struct RadiusResult {
    Point center;
    double radius = 0.0;
    double gap = 0.0;
    bool flagged = false;
};

RadiusResult circumradius(const Body& body, const SolverBudget& budget = {});
RadiusResult inradius(const Body& body, const SolverBudget& budget = {});

// Smallest enclosing ball of finitely many points; exact basis solve for
// dim 2, multi-start descent otherwise.
RadiusResult min_enclosing_ball(const PointCloud& cloud, const SolverBudget& budget = {});

BallPolytope reuleaux_triangle(const Space& space, double D);

struct CapCutBall {
    OracleBody body;
    Point center;
    double ball_radius = 0.0;
    double depth = 0.0;        // realized cap depth
    double cap_fraction = 0.0; // realized cap volume / ball volume
    Hyperplane cut;
};

// Ball of radius D/2 with a cap of relative volume eps removed (cap depth
// located by bisection against the exact cap volume).
CapCutBall cap_cut_ball(const Space& space, double D, double target_eps,
                        double rel_tol = 1e-8);

// --- dim-2 ball-polytope boundary structure ---

struct BoundaryArc {
    int center_index = 0;
    double theta_begin = 0.0;  // angles in the tangent frame at the arc center
    double theta_end = 0.0;    // theta_end > theta_begin (wrapped)
};

struct ArcStructure {
    std::vector<BoundaryArc> arcs;
    std::vector<Point> vertices;
    std::vector<std::pair<int, int>> vertex_pairs;  // generating center indices
    bool full_circle = false;  // single active circle, no vertices
};

ArcStructure arc_structure(const BallPolytope& bp);

// Exact distance from p to the polytope, reusing a cached arc structure.
double ball_polytope_distance(const BallPolytope& bp, const ArcStructure& as, const Point& p);

// Exact sup of d(p, .) over the polytope (dim 2).
double ball_polytope_support(const BallPolytope& bp, const ArcStructure& as, const Point& p);
double ball_polytope_support(const BallPolytope& bp, const Point& p);

struct BoundarySample {
    Point point;
    Vec outer_normal;
};

// Dense exact boundary sample of a dim-2 ball polytope (arcs + vertex fans).
std::vector<BoundarySample> boundary_sample_2d(const BallPolytope& bp, int target_count);

// Boundary points of an arbitrary body by ray shooting from an interior
// anchor (bisection on membership).
std::vector<Point> boundary_sample_rays(const Body& body, const Point& anchor, int count,
                                        CounterRng rng);

}  // namespace curvewidth
