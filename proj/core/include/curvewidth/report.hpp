#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "curvewidth/space.hpp"

namespace curvewidth {

// Machine-readable outcome of one quantitative check. Serialized as one JSON
// object per line with a stable key order; duration is kept out of the
// serialized form by default so identical (check, parameters, seed) runs are
// byte-identical.
struct CheckReport {
    std::string check_name;
    Space space;
    std::map<std::string, double> parameters;
    long long trials = 0;
    double measured_min = 0.0;
    double measured_mean = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // signed, per the check's declared direction
    bool pass = false;
    std::uint64_t seed = 0;
    double duration_ms = -1.0;  // informational only; excluded from JSON unless requested

    std::string to_json(bool include_duration = false) const;
};

void write_jsonl(std::ostream& os, const std::vector<CheckReport>& reports,
                 bool include_duration = false);
void write_summary_table(std::ostream& os, const std::vector<CheckReport>& reports);

struct ScalingFit {
    Space space;
    std::vector<double> eps_grid;       // strictly decreasing, positive
    std::vector<double> response;      // measured deficits
    double slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
    bool low_confidence = false;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

void write_scaling_csv(std::ostream& os, const ScalingFit& fit);

// Ordinary least squares of y against x; returns slope, intercept and the
// slope standard error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace curvewidth
