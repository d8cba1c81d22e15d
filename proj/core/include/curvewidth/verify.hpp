#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curvewidth/bodies.hpp"
#include "curvewidth/measures.hpp"
#include "curvewidth/report.hpp"
#include "curvewidth/rng.hpp"

namespace curvewidth {

// Every checker takes an explicit seed and a `bound_scale` knob (where an
// inequality is checked) that multiplies the bound; the shipped meta-test
// verifies each check starts failing once its bound is tightened enough.

// Angle between the reflected ball normal and the inward axis at an exterior
// point: measured angle >= the per-space lower bound on every trial.
CheckReport check_ballboundary(const Space& space, double R, double eta, int trials,
                               std::uint64_t seed, double bound_scale = 1.0);

// Reflected normals of the two diameter endpoints agree exactly if and only
// if the apex lies on the boundary sphere.
CheckReport check_ballboundary0(const Space& space, double R, int trials, std::uint64_t seed,
                                double radial_shift = 0.05);

// Euclidean wedge of the hull of two overlapping balls: Monte Carlo volume
// against the closed-form lower bound (pass at bound - 3 sigma).
CheckReport check_ballconvexhull(int n, double r, double alpha0, double alpha1, int trials,
                                 long long mc_samples, std::uint64_t seed,
                                 double bound_scale = 1.0);

// Hypotenuse growth: distance from the off-vertex to the far point is at
// least the per-space sqrt bound on every admissible triangle.
CheckReport check_pythagorean(const Space& space, double R, double eta, int trials,
                              std::uint64_t seed, double bound_scale = 1.0);

// Strict monotonicity of the angle difference along the base segment.
CheckReport check_angle_monotonicity(const Space& space, int trials, std::uint64_t seed);

// Triangle angle-pair sums stay below pi (spherical sides < pi/2).
CheckReport check_angle_pair_sum(const Space& space, int trials, std::uint64_t seed);

enum class BodyGen { Ball, TwoBalls, Cloud };

// Parallel domains commute with symmetrization up to containment; cloud
// bodies additionally get the Monte Carlo volume comparison.
CheckReport check_two_point_parallel(const Space& space, BodyGen gen, double rho, int trials,
                                     int containment_samples, std::uint64_t seed);

// Hull gap of the symmetrized parallel body of a constant-width body, against
// the eta^((3n+2)/2) lower bound over the bisector hyperplane family.
CheckReport check_improve(const Space& space, double D, const BallPolytope& body, double eta,
                          long long mc_samples, std::uint64_t seed, double bound_scale = 1.0);

// Width = circumradius + inradius for constant-width bodies, with coincident
// centers and a diameter through them.
CheckReport check_rr(const Space& space, double D, const std::vector<Body>& bodies,
                     const SolverBudget& budget = {}, double tol_rr = 1e-5);

// Random certified-diameter bodies never beat the ball of the same diameter.
CheckReport run_isodiametric_mc(const Space& space, double D, int trials, long long samples,
                                std::uint64_t seed);

// Inradius deficit of cap-cut balls against the cap fraction: log-log slope.
ScalingFit run_stability_scaling(const Space& space, double D, const std::vector<double>& eps_grid,
                                 const SolverBudget& budget, std::uint64_t seed);

// End-to-end annulus sandwich for a near-ball body. In strict mode the
// deficit must be below the published threshold; above it the run is
// illustrative (radii reported, theorem not claimed).
CheckReport run_stability_endtoend(const Space& space, double D, double eps, long long mc_samples,
                                   std::uint64_t seed);

struct RunConfig {
    Space space = euclidean(2);
    double D = 1.0;
    double eps = 1e-3;
    double rho = 0.25;
    long long samples = 100000;
    int trials = 1000;
    std::uint64_t seed = 1;
    SolverBudget budget;
};

std::vector<std::string> known_checks();
// Runs one named check (or all of them) with the shared configuration.
std::vector<CheckReport> run_checks_by_name(const std::string& name, const RunConfig& config);

}  // namespace curvewidth
