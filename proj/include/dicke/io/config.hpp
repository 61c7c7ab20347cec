// config.hpp — flat run configuration shared by the command line and JSON config files

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/propagation/schedule.hpp"
#include "dicke/quasiprob/field_wigner.hpp"
#include "dicke/quasiprob/grids.hpp"
#include "dicke/sweep/sweep.hpp"

namespace dicke::io {

inline const std::vector<std::string> kSubcommands{"simulate", "sweep", "wigner", "awf", "gap", "fit"};

/// Every key is both a JSON config key and a flag (underscores become dashes: log2_upsilon -> --log2-upsilon).
struct RunConfig {
    std::string subcommand{"simulate"};

    // model
    int n{0};  // required for simulate, wigner, awf and gap
    int fock{64};
    double epsilon{1.0};
    double omega{1.0};
    double kappa{0.0};
    double nbar{0.0};

    // ramp
    double log2_upsilon{0.0};
    double lambda_start{0.0};
    double lambda_end{2.0};
    int samples{101};

    // integrator
    std::string method{"adaptive_rk"};
    double rtol{1e-9};
    double atol{1e-11};
    double max_step{0.0};  // 0: unlimited
    double krylov_step{0.05};
    int krylov_dim{40};
    bool parity_sector{true};

    // field Wigner grid
    double x_min{-5.0}, x_max{5.0}, p_min{-5.0}, p_max{5.0};
    int nx{201}, np{201};
    std::string wigner_mode{"normalized"};
    std::string wigner_format{"csv"};  // csv or matrix

    // sphere grid
    int n_theta{64};
    int n_phi{128};

    // sweep
    std::vector<int> n_list;
    std::vector<double> log2_upsilon_list;  // empty: the range below
    double log2_upsilon_min{-7.0};
    double log2_upsilon_max{6.0};
    double log2_upsilon_step{0.5};
    std::vector<std::string> criteria{"qubit_squeezing_death", "field_squeezing_death", "qubit_op_threshold",
                                      "field_op_threshold"};
    double qubit_op_thresh{0.1};
    double field_op_thresh{0.0123};
    bool stop_after_onsets{false};
    bool verify_truncation{false};
    int workers{0};  // 0: DICKE_WORKERS or hardware concurrency

    // gap
    double gap_lambda_min{0.7};
    double gap_lambda_max{1.5};
    int gap_lambda_count{17};

    // fit
    std::string input;
    std::string criterion{"qubit_squeezing_death"};
    double window_min{0.0};  // log2 υ lower edge of the fit window
    double window_max{std::numeric_limits<double>::infinity()};
    double lambda_c{0.5};

    // outputs
    std::string out;
    bool emit_states{false};
    bool check_truncation{false};

    bool operator==(const RunConfig&) const = default;

    /// Calls v(key, member) for every field in a fixed order.
    template <class V>
    void visit(V&& v) {
        v("subcommand", subcommand);
        v("n", n);
        v("fock", fock);
        v("epsilon", epsilon);
        v("omega", omega);
        v("kappa", kappa);
        v("nbar", nbar);
        v("log2_upsilon", log2_upsilon);
        v("lambda_start", lambda_start);
        v("lambda_end", lambda_end);
        v("samples", samples);
        v("method", method);
        v("rtol", rtol);
        v("atol", atol);
        v("max_step", max_step);
        v("krylov_step", krylov_step);
        v("krylov_dim", krylov_dim);
        v("parity_sector", parity_sector);
        v("x_min", x_min);
        v("x_max", x_max);
        v("p_min", p_min);
        v("p_max", p_max);
        v("nx", nx);
        v("np", np);
        v("wigner_mode", wigner_mode);
        v("wigner_format", wigner_format);
        v("n_theta", n_theta);
        v("n_phi", n_phi);
        v("n_list", n_list);
        v("log2_upsilon_list", log2_upsilon_list);
        v("log2_upsilon_min", log2_upsilon_min);
        v("log2_upsilon_max", log2_upsilon_max);
        v("log2_upsilon_step", log2_upsilon_step);
        v("criteria", criteria);
        v("qubit_op_thresh", qubit_op_thresh);
        v("field_op_thresh", field_op_thresh);
        v("stop_after_onsets", stop_after_onsets);
        v("verify_truncation", verify_truncation);
        v("workers", workers);
        v("gap_lambda_min", gap_lambda_min);
        v("gap_lambda_max", gap_lambda_max);
        v("gap_lambda_count", gap_lambda_count);
        v("input", input);
        v("criterion", criterion);
        v("window_min", window_min);
        v("window_max", window_max);
        v("lambda_c", lambda_c);
        v("out", out);
        v("emit_states", emit_states);
        v("check_truncation", check_truncation);
    }

    ModelParams model() const {
        ModelParams p;
        p.n_qubits = n;
        p.fock_cutoff = fock;
        p.epsilon = epsilon;
        p.omega = omega;
        p.kappa = kappa;
        p.nbar = nbar;
        return p;
    }

    RampSchedule schedule() const { return RampSchedule{std::exp2(log2_upsilon), lambda_start, lambda_end, samples}; }

    IntegratorConfig integrator() const {
        IntegratorConfig c;
        c.rel_tol = rtol;
        c.abs_tol = atol;
        c.max_step = max_step > 0 ? max_step : std::numeric_limits<double>::infinity();
        c.method = integrator_method_from_string(method);
        c.krylov_step = krylov_step;
        c.krylov_dim = krylov_dim;
        return c;
    }

    PlaneGrid plane_grid() const { return PlaneGrid{x_min, x_max, p_min, p_max, nx, np}; }

    WignerMode mode() const {
        if (wigner_mode == "raw") return WignerMode::raw;
        if (wigner_mode == "normalized") return WignerMode::normalized;
        throw std::invalid_argument("invalid 'wigner_mode': " + wigner_mode + " (raw or normalized)");
    }

    std::vector<double> upsilon_grid() const {
        if (!log2_upsilon_list.empty()) return log2_upsilon_list;
        if (!(log2_upsilon_step > 0)) throw std::invalid_argument("invalid 'log2_upsilon_step': must be > 0");
        if (log2_upsilon_max < log2_upsilon_min)
            throw std::invalid_argument("invalid 'log2_upsilon_max': below log2_upsilon_min");
        return log2_upsilon_range(log2_upsilon_min, log2_upsilon_max, log2_upsilon_step);
    }

    SweepConfig sweep() const {
        SweepConfig c;
        c.n_list = n_list;
        c.log2_upsilon_list = upsilon_grid();
        c.kappa = kappa;
        c.nbar = nbar;
        c.epsilon = epsilon;
        c.omega = omega;
        c.criteria.clear();
        for (const auto& s : criteria) c.criteria.push_back(onset_criterion_from_string(s));
        c.thresholds = {qubit_op_thresh, field_op_thresh};
        c.lambda_start = lambda_start;
        c.lambda_end = lambda_end;
        c.sample_count = samples;
        c.default_fock_cutoff = fock;
        c.stop_after_onsets = stop_after_onsets;
        c.verify_truncation = verify_truncation;
        c.workers = workers;
        c.integrator = integrator();
        return c;
    }

    /// Throws std::invalid_argument naming the offending key.
    void validate() const {
        if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end())
            throw std::invalid_argument("invalid 'subcommand': " + subcommand);
        const bool needs_model = subcommand == "simulate" || subcommand == "wigner" || subcommand == "awf" ||
                                 subcommand == "gap";
        if (needs_model && n == 0) throw std::invalid_argument("missing required option 'n'");
        if (n < 0) throw std::invalid_argument("invalid 'n': must be a positive integer");
        if (fock < 1) throw std::invalid_argument("invalid 'fock': must be a positive integer");
        if (out.empty()) throw std::invalid_argument("missing required option 'out'");
        if (max_step < 0) throw std::invalid_argument("invalid 'max_step': must be >= 0");
        if (workers < 0) throw std::invalid_argument("invalid 'workers': must be >= 0");
        if (wigner_format != "csv" && wigner_format != "matrix")
            throw std::invalid_argument("invalid 'wigner_format': " + wigner_format + " (csv or matrix)");
        mode();
        integrator().validate();
        if (needs_model) {
            ModelParams p = model();
            p.validate();
        }
        if (subcommand == "simulate" || subcommand == "wigner" || subcommand == "awf") {
            if (!std::isfinite(log2_upsilon)) throw std::invalid_argument("invalid 'log2_upsilon': must be finite");
            schedule().validate();
        }
        if (subcommand == "wigner") plane_grid().validate();
        if (subcommand == "awf") SphereGrid(n_theta, n_phi);
        if (subcommand == "sweep") {
            if (n_list.empty()) throw std::invalid_argument("missing required option 'n_list'");
            sweep().validate();
        }
        if (subcommand == "gap") {
            if (gap_lambda_count < 3) throw std::invalid_argument("invalid 'gap_lambda_count': need at least 3");
            if (!(gap_lambda_min > lambda_c))
                throw std::invalid_argument("invalid 'gap_lambda_min': must exceed lambda_c");
            if (!(gap_lambda_max > gap_lambda_min))
                throw std::invalid_argument("invalid 'gap_lambda_max': must exceed gap_lambda_min");
        }
        if (subcommand == "fit") {
            if (input.empty()) throw std::invalid_argument("missing required option 'input'");
            if (n == 0) throw std::invalid_argument("missing required option 'n'");
            onset_criterion_from_string(criterion);
            if (!(window_max > window_min)) throw std::invalid_argument("invalid 'window_max': must exceed window_min");
        }
    }
};

namespace detail {

template <class T>
nlohmann::ordered_json encode(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        return v;
    } else {
        return v;
    }
}

template <class T>
void decode(const nlohmann::json& j, const std::string& key, T& out) {
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (j.is_string()) {
                const auto s = j.get<std::string>();
                if (s == "inf") out = std::numeric_limits<double>::infinity();
                else if (s == "-inf") out = -std::numeric_limits<double>::infinity();
                else if (s == "nan") out = std::numeric_limits<double>::quiet_NaN();
                else throw std::invalid_argument(s);
                return;
            }
            if (!j.is_number()) throw std::invalid_argument("not a number");
            out = j.get<double>();
        } else if constexpr (std::is_same_v<T, int>) {
            if (!j.is_number_integer()) throw std::invalid_argument("not an integer");
            out = j.get<int>();
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!j.is_boolean()) throw std::invalid_argument("not a boolean");
            out = j.get<bool>();
        } else {
            out = j.get<T>();
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid '" + key + "' in config: " + j.dump());
    }
}

} // namespace detail

inline nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    RunConfig copy = cfg;
    copy.visit([&](const char* key, const auto& v) { j[key] = detail::encode(v); });
    return j;
}

/// Keys not present keep the values already in `cfg`; unknown keys are rejected.
inline void apply_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    std::set<std::string> known;
    cfg.visit([&](const char* key, auto& v) {
        known.insert(key);
        if (auto it = j.find(key); it != j.end()) detail::decode(*it, key, v);
    });
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw std::invalid_argument("unknown config key '" + it.key() + "'");
}

inline RunConfig from_json(const nlohmann::json& j) {
    RunConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("invalid 'config': cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("invalid 'config': " + path + ": " + e.what());
    }
}

} // namespace dicke::io
