// onset.hpp — dynamical-onset instants along a trajectory

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/core/diagnostics.hpp"
#include "dicke/observables/record.hpp"
#include "dicke/propagation/trajectory.hpp"

namespace dicke {

enum class OnsetCriterion { qubit_squeezing_death, field_squeezing_death, qubit_op_threshold, field_op_threshold };

inline constexpr OnsetCriterion kAllCriteria[] = {OnsetCriterion::qubit_squeezing_death,
                                                   OnsetCriterion::field_squeezing_death,
                                                   OnsetCriterion::qubit_op_threshold,
                                                   OnsetCriterion::field_op_threshold};

inline const char* to_string(OnsetCriterion c) {
    switch (c) {
        case OnsetCriterion::qubit_squeezing_death: return "qubit_squeezing_death";
        case OnsetCriterion::field_squeezing_death: return "field_squeezing_death";
        case OnsetCriterion::qubit_op_threshold: return "qubit_op_threshold";
        case OnsetCriterion::field_op_threshold: return "field_op_threshold";
    }
    return "?";
}

inline OnsetCriterion onset_criterion_from_string(const std::string& s) {
    for (auto c : kAllCriteria)
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown onset criterion: " + s);
}

enum class OnsetStatus { found, censored, none };

inline const char* to_string(OnsetStatus s) {
    return s == OnsetStatus::found ? "found" : s == OnsetStatus::censored ? "censored" : "none";
}

struct OnsetEvent {
    OnsetCriterion criterion{OnsetCriterion::qubit_squeezing_death};
    OnsetStatus status{OnsetStatus::none};
    double lambda_d{std::numeric_limits<double>::quiet_NaN()};
    bool interpolated{false};

    bool found() const { return status == OnsetStatus::found; }
};

enum class Channel { qubits, field };

namespace detail {

// λ where the segment (l0, v0) -> (l1, v1) meets `level`
inline double crossing(double l0, double v0, double l1, double v1, double level) {
    if (v1 == v0) return l1;
    return l0 + (l1 - l0) * (level - v0) / (v1 - v0);
}

} // namespace detail

/// First post-peak zero crossing of (1 - xi^2), linearly interpolated.
inline OnsetEvent detect_squeezing_death(const std::vector<ObservableRecord>& recs, Channel ch, bool quiet = false) {
    OnsetEvent ev;
    ev.criterion = ch == Channel::qubits ? OnsetCriterion::qubit_squeezing_death : OnsetCriterion::field_squeezing_death;
    if (recs.empty()) return ev;
    auto value = [&](std::size_t k) { return ch == Channel::qubits ? recs[k].spin_sq : recs[k].field_sq; };

    std::size_t peak = 0;
    for (std::size_t k = 1; k < recs.size(); ++k)
        if (value(k) > value(peak)) peak = k;
    if (value(peak) <= 1e-4) return ev;

    if (!quiet) {
        int above = 0;
        for (std::size_t k = 0; k < recs.size(); ++k) above += value(k) >= 0.5 * value(peak);
        if (above < 5) warn(std::string("squeezing peak resolved by fewer than 5 samples (") + to_string(ev.criterion) + ")");
    }

    for (std::size_t k = peak + 1; k < recs.size(); ++k) {
        if (value(k) <= 0.0) {
            ev.status = OnsetStatus::found;
            ev.interpolated = value(k) < 0.0;
            ev.lambda_d = detail::crossing(recs[k - 1].lambda, value(k - 1), recs[k].lambda, value(k), 0.0);
            return ev;
        }
    }
    ev.status = OnsetStatus::censored;
    return ev;
}

/// First upward crossing of the order parameter through `threshold`, linearly interpolated.
inline OnsetEvent detect_op_threshold(const std::vector<ObservableRecord>& recs, Channel ch, double threshold) {
    if (!(threshold > 0)) throw std::invalid_argument("detect_op_threshold: threshold must be > 0");
    OnsetEvent ev;
    ev.criterion = ch == Channel::qubits ? OnsetCriterion::qubit_op_threshold : OnsetCriterion::field_op_threshold;
    if (recs.empty()) return ev;
    auto value = [&](std::size_t k) { return ch == Channel::qubits ? recs[k].qubit_op : recs[k].field_op; };
    for (std::size_t k = 1; k < recs.size(); ++k) {
        if (value(k - 1) < threshold && value(k) >= threshold) {
            ev.status = OnsetStatus::found;
            ev.interpolated = value(k) > threshold;
            ev.lambda_d = detail::crossing(recs[k - 1].lambda, value(k - 1), recs[k].lambda, value(k), threshold);
            return ev;
        }
    }
    ev.status = OnsetStatus::censored;
    return ev;
}

struct OnsetThresholds {
    double qubit_op{0.1};
    double field_op{0.0123};
};

inline OnsetEvent detect_onset(const std::vector<ObservableRecord>& recs, OnsetCriterion c,
                               const OnsetThresholds& thr = {}, bool quiet = false) {
    switch (c) {
        case OnsetCriterion::qubit_squeezing_death: return detect_squeezing_death(recs, Channel::qubits, quiet);
        case OnsetCriterion::field_squeezing_death: return detect_squeezing_death(recs, Channel::field, quiet);
        case OnsetCriterion::qubit_op_threshold: return detect_op_threshold(recs, Channel::qubits, thr.qubit_op);
        case OnsetCriterion::field_op_threshold: return detect_op_threshold(recs, Channel::field, thr.field_op);
    }
    return {};
}

inline OnsetEvent detect_onset(const Trajectory& traj, OnsetCriterion c, const OnsetThresholds& thr = {}) {
    return detect_onset(traj.records(), c, thr);
}

} // namespace dicke
