#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdj/format.hpp"
#include "hdj/oracle.hpp"
#include "hdj/quadrature.hpp"

namespace hdj {

enum class RunMode { ideal_cv, hybrid_semiclassical, hybrid_coherent, gaussian };

const char* to_string(RunMode m);
RunMode parse_run_mode(const std::string& name);
const char* to_string(Convention c);
Convention parse_convention(const std::string& name);

/// One experiment's inputs. Serialized as a flat JSON object; unknown keys
/// are errors, not warnings, so configs cannot silently drift.
struct ExperimentConfig {
    RunMode mode = RunMode::ideal_cv;
    std::size_t n_points = 256;
    double q0 = 0.0;
    double s = 0.5;
    double delta_s = 0.1;
    double window_width = 0.0;  // <= 0 selects the default of 3 grid spacings
    FunctionKind function = FunctionKind::const0;
    std::size_t function_width = 0;  // parity_bins bin width
    std::uint64_t seed = 1;
    Convention convention = Convention::normalized;
    int t_resolution = 64;
    bool allow_unresolved = false;
    double cnot_success_probability = 1.0;  // KLM gate metadata; never applied
    std::string output_path = "run.json";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the flat JSON config; throws ConfigError on unknown keys, type
/// mismatches, or invalid values.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Fixed-key-order JSON; parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& config);

/// One experiment's outputs next to its config snapshot.
struct RunRecord {
    ExperimentConfig config;
    std::optional<double> snapped_q0;  // position-basis modes only
    double resolved_window_width = 0.0;
    PromiseClass verified_class = PromiseClass::constant;
    int oracle_queries = 0;
    double window_probability = 0.0;
    // The window outcome read as post-selection instead of Born weighting:
    // fidelity of the renormalized projected state with the reference state.
    double postselected_fidelity = 0.0;
    double bob_fidelity = 1.0;
    std::optional<double> success_probability;  // gaussian mode: |<s|S>|^2
    std::optional<std::string> gamma_profile_path;
    std::optional<std::string> note;
    double wall_time_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Executes prepare -> superpose -> oracle -> inverse superpose -> measure.
/// Pure apart from timing: no files are written. Any module error is rethrown
/// with the failing stage named.
RunRecord execute_run(const ExperimentConfig& config);

/// execute_run plus persistence: RunRecord JSON at config.output_path and,
/// in gaussian mode, the ErrProfile CSV next to it.
RunRecord run(const ExperimentConfig& config);

/// Fixed-layout JSON. Floating-point fields use 12 significant digits in
/// scientific notation; wall_time_seconds sits on its own line so
/// reproducibility comparisons can drop it.
std::string to_json(const RunRecord& record);

/// One run per value with `parameter` in {s, delta_s, n_points, window_width}
/// substituted into the base config; returns the CSV table (header row, LF
/// endings, rows in input order).
std::string sweep_csv(const ExperimentConfig& base, const std::string& parameter,
                      const std::vector<double>& values);

/// sweep_csv plus persistence to base.output_path.
std::string sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<double>& values);

/// Worst-case query count K/2 + 1 of the deterministic classical algorithm
/// on an even K-point domain.
std::size_t classical_deterministic_queries(std::size_t domain_size);

struct RandomizedAnswer {
    PromiseClass answer;
    double failure_bound;  // 2^(1-k)
};

/// Classical randomized baseline: samples k distinct points; answers balanced
/// iff two sampled values differ. Reproducible per seed.
RandomizedAnswer classical_randomized(const OracleSpec& f, std::size_t k, std::uint64_t seed);

}  // namespace hdj
