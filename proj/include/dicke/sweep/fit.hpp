// fit.hpp — log-log least squares for onset and gap scaling

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dicke/core/diagnostics.hpp"

namespace dicke {

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double r_squared{0.0};
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("least_squares: need matching inputs of size >= 2");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("least_squares: all abscissae coincide");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) ss_res += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
    f.r_squared = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
    return f;
}

/// y = prefactor * x^exponent fitted in log space.
struct PowerLawFit {
    double exponent{0.0};
    double log_prefactor{0.0};
    double r_squared{0.0};
    int points_used{0};
    double x_min{0.0};  // υ range for onset fits, λ - λ_c range for gap fits
    double x_max{0.0};
};

inline PowerLawFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    if (lx.size() < 3) throw std::domain_error("power-law fit needs at least 3 usable points");
    const auto lf = least_squares(lx, ly);
    PowerLawFit out{lf.slope, lf.intercept, lf.r_squared, static_cast<int>(lx.size()),
                    std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double v : x) {
        out.x_min = std::min(out.x_min, v);
        out.x_max = std::max(out.x_max, v);
    }
    return out;
}

/// log(λ_d - λ_c) = exponent log υ + log_prefactor. Points with λ_d <= λ_c or no onset are dropped with a warning.
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& events, double lambda_c = 0.5) {
    std::vector<double> x, y;
    for (const auto& [upsilon, lambda_d] : events) {
        if (!std::isfinite(lambda_d)) {
            warn("fit_power_law: skipping a point without an onset at upsilon=" + std::to_string(upsilon));
            continue;
        }
        if (lambda_d <= lambda_c) {
            warn("fit_power_law: excluding lambda_d=" + std::to_string(lambda_d) + " <= lambda_c at upsilon=" +
                 std::to_string(upsilon));
            continue;
        }
        if (!(upsilon > 0)) throw std::invalid_argument("fit_power_law: upsilon must be > 0");
        x.push_back(upsilon);
        y.push_back(lambda_d - lambda_c);
    }
    return fit_log_log(x, y);
}

} // namespace dicke
