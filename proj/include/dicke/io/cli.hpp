// cli.hpp — command-line parsing on top of RunConfig

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicke/io/config.hpp"

namespace dicke::io {

namespace detail {

inline std::string flag_name(const std::string& key) {
    std::string s = key;
    for (auto& c : s)
        if (c == '_') c = '-';
    return s;
}

inline void bind_options(CLI::App& app, RunConfig& cfg, std::string& config_path) {
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    cfg.visit([&](const char* key, auto& v) {
        using T = std::decay_t<decltype(v)>;
        const std::string k = key;
        if (k == "subcommand") return;
        const std::string f = flag_name(k);
        if constexpr (std::is_same_v<T, bool>) {
            app.add_flag("--" + f + ",!--no-" + f, v);
        } else if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<double>> ||
                             std::is_same_v<T, std::vector<std::string>>) {
            app.add_option("--" + f, v)->delimiter(',');
        } else {
            app.add_option("--" + f, v);
        }
    });
}

inline CLI::App& make_app(CLI::App& app) {
    app.require_subcommand(1, 1);
    app.add_subcommand("simulate", "integrate one ramp and write the observable trajectory")->fallthrough();
    app.add_subcommand("sweep", "onset points over N and annealing velocities")->fallthrough();
    app.add_subcommand("wigner", "field Wigner function of the state at lambda_end")->fallthrough();
    app.add_subcommand("awf", "Agarwal-Wigner function of the qubits at lambda_end")->fallthrough();
    app.add_subcommand("gap", "even-sector spectral gap scan and its power-law fit")->fallthrough();
    app.add_subcommand("fit", "power-law fit of onset points from a sweep table")->fallthrough();
    return app;
}

} // namespace detail

struct CliOutcome {
    std::optional<RunConfig> config;  // empty when the run should exit with `exit_code`
    int exit_code{0};
    std::string message;
};

/// args excludes the program name.
inline RunConfig parse_config(const std::vector<std::string>& args) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());

    // first pass: locate the subcommand and the config file
    RunConfig scratch;
    std::string config_path;
    CLI::App first{"dicke"};
    detail::make_app(first);
    detail::bind_options(first, scratch, config_path);
    {
        auto copy = reversed;
        first.parse(copy);
    }
    const std::string sub = first.get_subcommands().front()->get_name();

    RunConfig cfg;
    if (!config_path.empty()) apply_json(cfg, load_json_file(config_path));
    cfg.subcommand = sub;

    // second pass: flags given on the command line overwrite file values
    std::string ignored;
    CLI::App second{"dicke"};
    detail::make_app(second);
    detail::bind_options(second, cfg, ignored);
    second.parse(reversed);
    cfg.validate();
    return cfg;
}

inline CliOutcome parse_command_line(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CliOutcome out;
    try {
        out.config = parse_config(args);
    } catch (const CLI::CallForHelp&) {
        RunConfig tmp;
        std::string path;
        CLI::App app{"Finite-size Dicke model under a linear coupling ramp"};
        detail::make_app(app);
        detail::bind_options(app, tmp, path);
        out.message = app.help();
        out.exit_code = 0;
    } catch (const CLI::ParseError& e) {
        out.message = e.what();
        out.exit_code = e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    } catch (const std::exception& e) {
        out.message = e.what();
        out.exit_code = 2;
    }
    return out;
}

} // namespace dicke::io
