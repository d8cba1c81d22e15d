#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvewidth/bodies.hpp"
#include "curvewidth/rng.hpp"

namespace curvewidth {

struct SymmetrizationStep {
    Hyperplane hyperplane;
    bool plus_side = true;  // orientation flag; false swaps the two half-spaces
};

// Indicator rule of two-point symmetrization: union of the set and its mirror
// image on the plus side of H, intersection on the minus side.
bool two_point_membership(const Body& body, const Hyperplane& h, const Point& p);

// Symmetrized body as a membership oracle (each query costs two queries of
// the input body). Depth is tracked; composing past `max_depth` throws, since
// evaluation cost doubles per layer.
OracleBody two_point_body(const Body& body, const Hyperplane& h, int max_depth = 512);

// Cloud variant: points on the minus side whose mirror image is not already
// present (within match_tol) are replaced by their reflections.
PointCloud two_point_cloud(const PointCloud& cloud, const Hyperplane& h,
                           double match_tol = 1e-9);

struct IterationStep {
    int iter = 0;
    double symdiff = 0.0;
    double stderr_ = 0.0;
    double diameter_est = 0.0;
    std::uint64_t rng_digest = 0;
};

struct IterationTrace {
    Space space;
    std::vector<IterationStep> steps;
    int grid_resolution = 0;
    double grid_extent = 0.0;
    std::string status;  // "ok" or an early-termination reason
    std::uint64_t seed = 0;
};

// Random two-point symmetrization rounds driving a planar body toward the
// target ball: each round reflects across the perpendicular bisector of a
// pair (x, y) with x uncovered inside the target and y covering mass outside
// it. The body is materialized on a chart grid so rounds stay O(grid).
IterationTrace iterate_to_ball(const Body& body, double D, const Ball& target, int iters,
                               CounterRng rng, int grid_resolution = 384,
                               int mc_samples_per_step = 4096);

void write_trace_csv(std::ostream& os, const IterationTrace& trace);

}  // namespace curvewidth
