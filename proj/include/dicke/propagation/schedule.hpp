// schedule.hpp — linear coupling ramp and integrator settings

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

struct RampSchedule {
    double upsilon{1.0};        // dλ/dt
    double lambda_start{0.0};
    double lambda_end{2.0};
    int sample_count{101};      // uniform in λ, both ends included

    double lambda_at(double t) const { return lambda_start + upsilon * t; }
    double time_at(double lambda) const { return (lambda - lambda_start) / upsilon; }
    double duration() const { return (lambda_end - lambda_start) / upsilon; }

    std::vector<double> sample_lambdas() const {
        std::vector<double> out(static_cast<std::size_t>(sample_count));
        const double step = (lambda_end - lambda_start) / (sample_count - 1);
        for (int k = 0; k < sample_count; ++k) out[k] = lambda_start + k * step;
        out.back() = lambda_end;
        return out;
    }

    std::vector<double> sample_times() const {
        auto out = sample_lambdas();
        for (auto& x : out) x = time_at(x);
        out.front() = 0.0;
        return out;
    }

    void validate() const {
        if (!(std::isfinite(upsilon) && upsilon > 0))
            throw std::invalid_argument("invalid schedule 'upsilon': must be finite and > 0");
        if (!std::isfinite(lambda_start) || lambda_start < 0)
            throw std::invalid_argument("invalid schedule 'lambda_start': must be finite and >= 0");
        if (!(std::isfinite(lambda_end) && lambda_end > lambda_start))
            throw std::invalid_argument("invalid schedule 'lambda_end': must exceed lambda_start");
        if (sample_count < 2) throw std::invalid_argument("invalid schedule 'samples': need at least 2");
    }

    bool operator==(const RampSchedule&) const = default;
};

enum class IntegratorMethod { adaptive_rk, krylov_expm };

inline const char* to_string(IntegratorMethod m) {
    return m == IntegratorMethod::adaptive_rk ? "adaptive_rk" : "krylov_expm";
}

inline IntegratorMethod integrator_method_from_string(const std::string& s) {
    if (s == "adaptive_rk") return IntegratorMethod::adaptive_rk;
    if (s == "krylov_expm") return IntegratorMethod::krylov_expm;
    throw std::invalid_argument("invalid integrator 'method': " + s);
}

struct IntegratorConfig {
    double rel_tol{1e-9};
    double abs_tol{1e-11};
    double max_step{std::numeric_limits<double>::infinity()};
    IntegratorMethod method{IntegratorMethod::adaptive_rk};
    long max_steps{100'000'000};
    // krylov_expm only
    double krylov_step{0.05};   // used when max_step is infinite
    int krylov_dim{40};

    void validate() const {
        if (!(rel_tol > 0)) throw std::invalid_argument("invalid integrator 'rtol': must be > 0");
        if (!(abs_tol > 0)) throw std::invalid_argument("invalid integrator 'atol': must be > 0");
        if (!(max_step > 0)) throw std::invalid_argument("invalid integrator 'max_step': must be > 0");
        if (max_steps < 1) throw std::invalid_argument("invalid integrator 'max_steps': must be >= 1");
        if (!(krylov_step > 0)) throw std::invalid_argument("invalid integrator 'krylov_step': must be > 0");
        if (krylov_dim < 2) throw std::invalid_argument("invalid integrator 'krylov_dim': must be >= 2");
    }

    bool operator==(const IntegratorConfig&) const = default;
};

} // namespace dicke
