// params.hpp — physical constants of the ramped Dicke model

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

struct ModelParams {
    int n_qubits{1};       // N
    double epsilon{1.0};   // qubit splitting
    double omega{1.0};     // field mode energy
    double kappa{0.0};     // cavity damping rate
    double nbar{0.0};      // thermal mean photon number
    int fock_cutoff{1};    // Fock states kept: n = 0 .. fock_cutoff-1

    /// Thermodynamic-limit critical coupling sqrt(epsilon*omega)/2.
    double lambda_c() const { return 0.5 * std::sqrt(epsilon * omega); }

    void validate() const {
        auto fail = [](const std::string& key, const std::string& why) {
            throw std::invalid_argument("invalid model parameter '" + key + "': " + why);
        };
        if (n_qubits < 1) fail("n", "must be a positive integer");
        if (fock_cutoff < 1) fail("fock", "must be a positive integer");
        if (!std::isfinite(epsilon) || epsilon < 0) fail("epsilon", "must be finite and >= 0");
        if (!std::isfinite(omega) || omega < 0) fail("omega", "must be finite and >= 0");
        if (!std::isfinite(kappa) || kappa < 0) fail("kappa", "must be finite and >= 0");
        if (!std::isfinite(nbar) || nbar < 0) fail("nbar", "must be finite and >= 0");
    }

    bool operator==(const ModelParams&) const = default;
};

} // namespace dicke
