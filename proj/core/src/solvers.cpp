#include "curvewidth/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace curvewidth {

namespace {

SolveResult descend_from(const PointObjective& f, Point x, double step0, double tol,
                         int max_evals, const PointFilter& feasible, CounterRng rng) {
    SolveResult res;
    double fx = f(x);
    int evals = 1;
    double step = step0;
    auto basis = tangent_basis(x);
    const int dim = static_cast<int>(basis.size());

    while (step > tol && evals < max_evals) {
        bool improved = false;
        // Poll +/- basis directions plus one random direction per level.
        for (int k = 0; k < 2 * dim + 2 && evals < max_evals; ++k) {
            Vec dir;
            if (k < 2 * dim) {
                dir = basis[k / 2] * (k % 2 == 0 ? 1.0 : -1.0);
            } else {
                Vec w(x.x.n);
                for (int i = 0; i < w.n; ++i) w[i] = rng.normal();
                dir = project_to_tangent(x, w);
                double nrm = tangent_norm(x.space, dir);
                if (nrm < 1e-12) continue;
                dir = dir * ((k % 2 == 0 ? 1.0 : -1.0) / nrm);
            }
            Point cand = geodesic_point(x, dir, step);
            if (feasible && !feasible(cand)) continue;
            double fc = f(cand);
            ++evals;
            if (fc < fx - 1e-300) {
                x = cand;
                fx = fc;
                // Ride the improving direction while it keeps paying off.
                for (int ext = 0; ext < 64 && evals < max_evals; ++ext) {
                    Point further = geodesic_point(x, dir, step);
                    if (feasible && !feasible(further)) break;
                    double ff = f(further);
                    ++evals;
                    if (ff >= fx) break;
                    x = further;
                    fx = ff;
                }
                basis = tangent_basis(x);
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }

    res.x = x;
    res.value = fx;
    res.gap = step;
    res.flagged = step > tol;
    res.evals_used = evals;
    return res;
}

}  // namespace

SolveResult minimize_over_points(const PointObjective& f, const std::vector<Point>& starts,
                                 double step0, const SolverBudget& budget,
                                 const PointFilter& feasible) {
    if (starts.empty()) throw std::invalid_argument("minimize_over_points: no starts");
    SolveResult best;
    bool have = false;
    int per_start = std::max(64, budget.evals / std::max<int>(1, static_cast<int>(starts.size())));
    CounterRng rng(0x5eedf00dULL);
    int idx = 0;
    for (const Point& s : starts) {
        if (feasible && !feasible(s)) {
            ++idx;
            continue;
        }
        SolveResult r =
            descend_from(f, s, step0, budget.tol, per_start, feasible, rng.substream(idx++));
        if (!have || r.value < best.value) {
            best = r;
            have = true;
        }
    }
    if (!have) throw std::domain_error("minimize_over_points: no feasible start");
    return best;
}

SolveResult maximize_over_points(const PointObjective& f, const std::vector<Point>& starts,
                                 double step0, const SolverBudget& budget,
                                 const PointFilter& feasible) {
    PointObjective neg = [&f](const Point& p) { return -f(p); };
    SolveResult r = minimize_over_points(neg, starts, step0, budget, feasible);
    r.value = -r.value;
    return r;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, double tol) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo > 0.0 || fhi < 0.0) throw std::domain_error("bisect_increasing: target not bracketed");
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) - target <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace curvewidth
