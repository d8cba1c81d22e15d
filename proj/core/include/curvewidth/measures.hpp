#pragma once

#include <iosfwd>
#include <vector>

#include "curvewidth/bodies.hpp"
#include "curvewidth/rng.hpp"
#include "curvewidth/space.hpp"

namespace curvewidth {

enum class VolumeMethod { Exact, Quadrature, MonteCarlo };

struct VolumeEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long long samples = 0;
    VolumeMethod method = VolumeMethod::Exact;
};

// Volume of the unit ball in R^n.
double kappa(int n);

// Volume of a geodesic ball of radius r: closed forms for n = 2, 3,
// quadrature of n*kappa_n*f(t)^(n-1) otherwise.
double ball_volume(const Space& space, double r);

// Radius of the ball with the given volume.
double ball_volume_inverse(const Space& space, double volume);

// Derivative of ball volume in the radius (the boundary area).
double ball_boundary_area(const Space& space, double r);

// Affine-in-s sandwich bounds for V(B(r-s)) and V(B(r+s)):
//   V(B(r-s)) >= lower_shrink,  V(B(r-s)) <= upper_shrink,
//   V(B(r+s)) <= upper_grow.
// The shrink bounds need 0 < s < r (lower) resp. s < r/2 (upper); on S^n the
// growth bound additionally needs r <= pi/3.
struct BallVolumeBounds {
    double lower_shrink = 0.0;
    double upper_shrink = 0.0;
    double upper_grow = 0.0;
};
BallVolumeBounds ball_volume_bounds(const Space& space, double r, double s);

// Global closed-form upper bound on ball volume (two-case hyperbolic table).
double ball_volume_global_upper(const Space& space, double r);

// Volume of a cap of depth delta cut from B(x0, t): 1D quadrature of the
// equidistant slice volumes kappa_{n-1} * f(a(xi))^{n-1}, slice radius a(xi)
// from the right-angle relation of the space.
double cap_volume(const Space& space, double t, double delta);

// Closed-form lower bound for the cap volume; valid on the per-space domain
//   euclidean: 0 < delta <= t, hyperbolic: delta <= min(t/2, 1),
//   spherical: t < pi/2 and delta <= t/2.
double cap_lower_bound(const Space& space, double t, double delta);

enum class DeficitVariant { Prop, TheoremProof };

// Parallel-volume deficit transfer factor E(eps, D) in the two published
// constant conventions (4^(n-1)- vs 4^n-based).
double parallel_deficit_bound(const Space& space, double eps, double D, DeficitVariant variant);

struct StabilityConstants {
    Space space;
    double D = 0.0;
    double gamma = 0.0;           // annulus constant
    double eps_threshold = 0.0;   // admissible volume-deficit threshold
    double gamma1_tilde = 0.0;    // hull-gap lower-bound constant
    double eta0 = 0.0;            // admissible eta range
    double gamma0_tilde = 0.0;    // hypotenuse-gap constant
    double gamma_tilde = 0.0;     // reflected-normal angle constant
};

StabilityConstants stability_constants(const Space& space, double D);

// Uniform sample in a geodesic ball (exact radial density f(t)^(n-1)).
Point sample_in_ball(const Point& center, double radius, CounterRng& rng);

// Rejection Monte Carlo volume within the body's bounding ball. Deterministic
// for a given seed and independent of the worker count.
VolumeEstimate mc_volume(const Body& body, long long samples, CounterRng rng);

// Paired-sample estimate of V(body) and V(two-point symmetrized body): the
// estimator evaluates each sample together with its mirror image, making the
// two hit counts match exactly.
struct PairedCounts {
    long long body_hits = 0;
    long long symmetrized_hits = 0;
    long long samples = 0;
};
PairedCounts mc_paired_counts(const Body& body, const Hyperplane& h, long long samples,
                              CounterRng rng);

struct SurfaceAreaEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::vector<double> steps;
    std::vector<double> quotients;
    std::vector<double> quotient_stderr;
    bool low_confidence = false;
};

// Outer Minkowski content by one-sided difference quotients with common
// random numbers, linearly extrapolated to step 0.
SurfaceAreaEstimate minkowski_surface_area(const Body& body, const std::vector<double>& eps_steps,
                                           long long samples, CounterRng rng);

// CSV emitters (RFC 4180, '\n' line endings).
void write_ball_volume_table(std::ostream& os, const Space& space, const std::vector<double>& radii);
void write_cap_grid(std::ostream& os, const Space& space, int grid_t, int grid_delta,
                    double t_max);

}  // namespace curvewidth
