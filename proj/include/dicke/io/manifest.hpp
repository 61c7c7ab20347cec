// manifest.hpp — reproducibility record written next to every output file

#pragma once

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/io/config.hpp"
#include "dicke/propagation/trajectory.hpp"
#include "dicke/propagation/truncation.hpp"

#ifndef DICKE_VERSION
#define DICKE_VERSION "0.0.0"
#endif

namespace dicke::io {

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunManifest {
    RunConfig config;
    std::string version{DICKE_VERSION};
    std::string started;
    double wall_time_s{0.0};
    std::vector<std::string> outputs;
    nlohmann::ordered_json achieved = nlohmann::ordered_json::object();    // tolerances and diagnostics reached
    nlohmann::ordered_json truncation = nlohmann::ordered_json::object();  // cutoff verdict or tail indicator
    std::vector<std::string> warnings;
    std::vector<std::string> messages;

    nlohmann::ordered_json to_json_for(const std::string& output) const {
        nlohmann::ordered_json j;
        j["output"] = output;
        j["outputs"] = outputs;
        j["version"] = version;
        j["started"] = started;
        j["wall_time_s"] = wall_time_s;
        j["config"] = io::to_json(config);
        j["achieved"] = achieved;
        j["truncation"] = truncation;
        j["warnings"] = warnings;
        j["messages"] = messages;
        return j;
    }
};

inline std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

inline nlohmann::ordered_json to_json(const PropagationStats& s) {
    nlohmann::ordered_json j;
    j["accepted_steps"] = s.accepted_steps;
    j["rejected_steps"] = s.rejected_steps;
    j["rhs_evals"] = s.rhs_evals;
    j["max_norm_drift"] = s.max_norm_drift;
    j["min_eigenvalue"] = s.min_eigenvalue;
    j["stopped_early"] = s.stopped_early;
    j["sector"] = to_string(s.sector);
    return j;
}

inline nlohmann::ordered_json to_json(const TruncationVerdict& v) {
    nlohmann::ordered_json j;
    j["checked"] = true;
    j["converged"] = v.converged;
    j["recommended_fock"] = v.recommended_n_max;
    j["tail_weight"] = v.tail_weight;
    j["max_photon_difference"] = v.max_photon_difference;
    return j;
}

} // namespace dicke::io
