#include "curvewidth/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace curvewidth {

using ordered_json = nlohmann::ordered_json;

std::string CheckReport::to_json(bool include_duration) const {
    ordered_json j;
    j["check"] = check_name;
    j["space"] = space_name(space);
    j["dim"] = space.dim;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["trials"] = trials;
    j["measured_min"] = measured_min;
    j["measured_mean"] = measured_mean;
    j["bound"] = bound;
    j["margin"] = margin;
    j["pass"] = pass;
    j["seed"] = seed;
    if (include_duration && duration_ms >= 0.0) j["duration_ms"] = duration_ms;
    return j.dump();
}

void write_jsonl(std::ostream& os, const std::vector<CheckReport>& reports,
                 bool include_duration) {
    for (const auto& r : reports) os << r.to_json(include_duration) << "\n";
}

void write_summary_table(std::ostream& os, const std::vector<CheckReport>& reports) {
    os << std::left << std::setw(34) << "check" << std::setw(12) << "space" << std::setw(8)
       << "trials" << std::setw(14) << "margin" << "result\n";
    for (const auto& r : reports) {
        std::ostringstream margin;
        margin << std::setprecision(4) << r.margin;
        os << std::left << std::setw(34) << r.check_name << std::setw(12) << space_name(r.space)
           << std::setw(8) << r.trials << std::setw(14) << margin.str()
           << (r.pass ? "pass" : "FAIL") << "\n";
    }
}

std::string ScalingFit::to_json() const {
    ordered_json j;
    j["space"] = space_name(space);
    j["dim"] = space.dim;
    j["eps_grid"] = eps_grid;
    j["response"] = response;
    j["slope"] = slope;
    j["slope_stderr"] = slope_stderr;
    j["intercept"] = intercept;
    j["low_confidence"] = low_confidence;
    j["seed"] = seed;
    return j.dump();
}

void write_scaling_csv(std::ostream& os, const ScalingFit& fit) {
    auto old_precision = os.precision(17);
    os << "eps,deficit\n";
    for (size_t i = 0; i < fit.eps_grid.size(); ++i)
        os << fit.eps_grid[i] << ',' << fit.response[i] << "\n";
    os.precision(old_precision);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: bad input");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = n * sxx - sx * sx;
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    double var = x.size() > 2 ? ss / (n - 2.0) : 0.0;
    f.slope_stderr = std::sqrt(var * n / det);
    return f;
}

}  // namespace curvewidth
