// gap_scaling.hpp — exponent of the even-sector gap past the critical coupling

#pragma once

#include <vector>

#include "dicke/core/spectrum.hpp"
#include "dicke/sweep/fit.hpp"

namespace dicke {

struct GapScan {
    std::vector<double> lambdas;
    std::vector<double> gaps;
    PowerLawFit fit;  // log δ against log(λ - λ_c)
};

inline std::vector<double> gap_window(double lo = 0.7, double hi = 1.5, int count = 17) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
    return out;
}

inline GapScan gap_scaling_check(const ModelParams& params, const std::vector<double>& lambdas, double lambda_c = 0.5,
                                 Index max_dim = 4000) {
    params.validate();
    GapScan scan;
    const HilbertSpace space(params.n_qubits, params.fock_cutoff);
    std::vector<double> x, y;
    for (double l : lambdas) {
        const double d = spectral_gap(space, params, l, max_dim);
        scan.lambdas.push_back(l);
        scan.gaps.push_back(d);
        if (l > lambda_c) {
            x.push_back(l - lambda_c);
            y.push_back(d);
        } else {
            warn("gap_scaling_check: lambda=" + std::to_string(l) + " is not above lambda_c and is left out of the fit");
        }
    }
    scan.fit = fit_log_log(x, y);
    return scan;
}

} // namespace dicke
