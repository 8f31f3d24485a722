// Command-line runner for the hybrid Deutsch-Jozsa simulator.
//
// Subcommands:
//   run <config>                                one experiment, RunRecord JSON
//   sweep <config> --param <name> --values ...  one run per value, CSV table
//   classical <config> [--k N]                  query-count baselines
//   analyze <config>                            erf-profile CSV
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdj/errors.hpp"
#include "hdj/experiment.hpp"
#include "hdj/gaussian_analysis.hpp"

namespace {

void write_file_or_throw(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hdj::ConfigError("cannot open output path '" + path + "'");
    out << text;
}

int cmd_run(const std::string& config_path) {
    const hdj::ExperimentConfig config = hdj::load_config(config_path);
    const hdj::RunRecord rec = hdj::run(config);
    std::cout << "mode=" << hdj::to_string(config.mode)
              << " class=" << hdj::to_string(rec.verified_class)
              << " oracle_queries=" << rec.oracle_queries
              << " window_probability=" << hdj::format_sci(rec.window_probability);
    if (rec.success_probability) {
        std::cout << " success_probability=" << hdj::format_sci(*rec.success_probability)
                  << " convention=" << hdj::to_string(config.convention);
    }
    std::cout << "\n-> " << config.output_path << std::endl;
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values) {
    const hdj::ExperimentConfig config = hdj::load_config(config_path);
    hdj::sweep(config, param, values);
    std::cout << values.size() << " runs -> " << config.output_path << std::endl;
    return 0;
}

int cmd_classical(const std::string& config_path, std::size_t k) {
    const hdj::ExperimentConfig config = hdj::load_config(config_path);
    const hdj::GridPtr grid = hdj::make_grid(config.n_points);
    const hdj::OracleSpec f =
        hdj::make_function(config.function, *grid, config.function_width, config.seed);
    hdj::validate_promise(f);

    const std::size_t deterministic = hdj::classical_deterministic_queries(config.n_points);
    const hdj::RandomizedAnswer randomized = hdj::classical_randomized(f, k, config.seed);

    std::string json = "{\n";
    json += "  \"domain_size\": " + std::to_string(config.n_points) + ",\n";
    json += "  \"deterministic_queries\": " + std::to_string(deterministic) + ",\n";
    json += "  \"k\": " + std::to_string(k) + ",\n";
    json += "  \"randomized_answer\": \"" + std::string(hdj::to_string(randomized.answer)) +
            "\",\n";
    json += "  \"failure_bound\": " + hdj::format_sci(randomized.failure_bound) + ",\n";
    json += "  \"seed\": " + std::to_string(config.seed) + "\n";
    json += "}\n";
    write_file_or_throw(config.output_path, json);
    std::cout << json;
    return 0;
}

int cmd_analyze(const std::string& config_path) {
    const hdj::ExperimentConfig config = hdj::load_config(config_path);
    const hdj::GridPtr grid = hdj::make_grid(config.n_points);
    const hdj::GaussianParams params(config.s, config.delta_s);
    const hdj::ErrProfile profile = hdj::post_measurement_profile(*grid, params);
    write_file_or_throw(config.output_path, hdj::to_csv(profile));
    std::cout << profile.q_values.size() << " rows -> " << config.output_path << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid Deutsch-Jozsa simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::size_t k = 5;

    CLI::App* run_cmd = app.add_subcommand("run", "execute one experiment");
    run_cmd->add_option("config", config_path, "config JSON path")->required();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("config", config_path, "config JSON path")->required();
    sweep_cmd->add_option("--param", sweep_param, "s | delta_s | n_points | window_width")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');

    CLI::App* classical_cmd = app.add_subcommand("classical", "classical query baselines");
    classical_cmd->add_option("config", config_path, "config JSON path")->required();
    classical_cmd->add_option("--k", k, "randomized query budget (default 5)");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "emit the erf-profile CSV");
    analyze_cmd->add_option("config", config_path, "config JSON path")->required();

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(config_path);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, sweep_param, sweep_values);
        if (classical_cmd->parsed()) return cmd_classical(config_path, k);
        if (analyze_cmd->parsed()) return cmd_analyze(config_path);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    } catch (const hdj::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    }
}
