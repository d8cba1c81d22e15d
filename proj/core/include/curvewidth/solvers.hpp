#pragma once

#include <functional>
#include <vector>

#include "curvewidth/geometry.hpp"
#include "curvewidth/rng.hpp"

namespace curvewidth {

struct SolverBudget {
    int evals = 20000;
    int restarts = 8;
    double tol = 1e-9;
};

struct SolveResult {
    Point x;
    double value = 0.0;
    double gap = 0.0;
    bool flagged = false;
    int evals_used = 0;
};

using PointObjective = std::function<double(const Point&)>;
// Feasibility predicate; candidates failing it are rejected during the poll.
using PointFilter = std::function<bool(const Point&)>;

// Derivative-free descent: polls tangent-basis directions (plus seeded random
// rotations of the poll set) through the exponential map, shrinking the step
// until it reaches `budget.tol`. Multi-start over `starts`.
SolveResult minimize_over_points(const PointObjective& f, const std::vector<Point>& starts,
                                 double step0, const SolverBudget& budget,
                                 const PointFilter& feasible = nullptr);

SolveResult maximize_over_points(const PointObjective& f, const std::vector<Point>& starts,
                                 double step0, const SolverBudget& budget,
                                 const PointFilter& feasible = nullptr);

// Golden-section minimization of a unimodal function on [a,b].
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

// Root of a monotone increasing function on a bracketing interval.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, double tol = 1e-13);

}  // namespace curvewidth
