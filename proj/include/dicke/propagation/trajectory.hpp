// trajectory.hpp — sampled output of one ramp

#pragma once

#include <optional>
#include <vector>

#include "dicke/core/params.hpp"
#include "dicke/core/state.hpp"
#include "dicke/observables/record.hpp"
#include "dicke/propagation/schedule.hpp"

namespace dicke {

enum class StorageMode { observables_only, states };

struct TrajectorySample {
    double t{0.0};
    double lambda{0.0};
    ObservableRecord record;
    double fock_tail{0.0};
    std::optional<QuantumState> state;  // filled in StorageMode::states
};

struct PropagationStats {
    long accepted_steps{0};
    long rejected_steps{0};
    long rhs_evals{0};
    double max_norm_drift{0.0};   // |<psi|psi> - 1| or |tr rho - 1| at samples
    double min_eigenvalue{0.0};   // smallest eigenvalue checked at samples (density only)
    bool stopped_early{false};
    ParitySector sector{ParitySector::full};  // sector actually integrated
};

struct Trajectory {
    RampSchedule schedule;
    ModelParams params;
    StorageMode storage_mode{StorageMode::observables_only};
    std::vector<TrajectorySample> samples;
    std::optional<QuantumState> final_state;
    PropagationStats stats;

    std::vector<ObservableRecord> records() const {
        std::vector<ObservableRecord> out;
        out.reserve(samples.size());
        for (const auto& s : samples) out.push_back(s.record);
        return out;
    }
};

} // namespace dicke
