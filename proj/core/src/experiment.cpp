#include "hdj/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hdj/dualrail.hpp"
#include "hdj/errors.hpp"
#include "hdj/gaussian_analysis.hpp"
#include "hdj/measurement.hpp"

namespace hdj {

namespace {

constexpr double kPiOver4 = std::numbers::pi / 4.0;

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / m * m;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % m;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

// Rethrows any module error with the failing pipeline stage named.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("stage ") + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("stage ") + name + ": " + e.what());
    }
}

std::string profile_path_for(const std::string& output_path) {
    const std::string suffix = ".json";
    if (output_path.size() > suffix.size() &&
        output_path.compare(output_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return output_path.substr(0, output_path.size() - suffix.size()) + "_profile.csv";
    }
    return output_path + "_profile.csv";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path '" + path + "'");
    out << text;
    if (!out) throw ConfigError("failed writing '" + path + "'");
}

double gaussian_success_probability(const ExperimentConfig& config, const GridPtr& grid,
                                    const OracleSpec& f, Convention convention,
                                    CvState* final_out = nullptr) {
    const GaussianParams params(config.s, config.delta_s);
    const CvState initial =
        build_squeezed_state(grid, params, convention, config.allow_unresolved);
    CvState state = fourier(initial, FourierDirection::forward);
    state = apply_phase_function(state, f.values());
    CvState final_state = fourier(state, FourierDirection::inverse);
    const double p = std::norm(overlap(initial, final_state));
    if (final_out) *final_out = final_state;
    return p;
}

}  // namespace

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::ideal_cv: return "ideal_cv";
        case RunMode::hybrid_semiclassical: return "hybrid_semiclassical";
        case RunMode::hybrid_coherent: return "hybrid_coherent";
        case RunMode::gaussian: return "gaussian";
    }
    return "?";
}

RunMode parse_run_mode(const std::string& name) {
    if (name == "ideal_cv") return RunMode::ideal_cv;
    if (name == "hybrid_semiclassical") return RunMode::hybrid_semiclassical;
    if (name == "hybrid_coherent") return RunMode::hybrid_coherent;
    if (name == "gaussian") return RunMode::gaussian;
    throw ConfigError("unknown mode '" + name + "'");
}

const char* to_string(Convention c) { return c == Convention::paper ? "paper" : "normalized"; }

Convention parse_convention(const std::string& name) {
    if (name == "paper") return Convention::paper;
    if (name == "normalized") return Convention::normalized;
    throw ConfigError("unknown convention '" + name + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a flat JSON object");

    ExperimentConfig cfg;
    // negative literals must not wrap around into unsigned fields
    auto get_unsigned = [](const nlohmann::json& v, const char* key) -> std::uint64_t {
        if (!v.is_number_unsigned()) {
            throw ConfigError(std::string("config key '") + key +
                              "' must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "mode") {
                cfg.mode = parse_run_mode(value.get<std::string>());
            } else if (key == "n_points") {
                cfg.n_points = static_cast<std::size_t>(get_unsigned(value, "n_points"));
            } else if (key == "q0") {
                cfg.q0 = value.get<double>();
            } else if (key == "s") {
                cfg.s = value.get<double>();
            } else if (key == "delta_s") {
                cfg.delta_s = value.get<double>();
            } else if (key == "window_width") {
                cfg.window_width = value.get<double>();
            } else if (key == "function") {
                cfg.function = parse_function_kind(value.get<std::string>());
            } else if (key == "function_width") {
                cfg.function_width = static_cast<std::size_t>(get_unsigned(value, "function_width"));
            } else if (key == "seed") {
                cfg.seed = get_unsigned(value, "seed");
            } else if (key == "convention") {
                cfg.convention = parse_convention(value.get<std::string>());
            } else if (key == "t_resolution") {
                cfg.t_resolution = value.get<int>();
            } else if (key == "allow_unresolved") {
                cfg.allow_unresolved = value.get<bool>();
            } else if (key == "cnot_success_probability") {
                cfg.cnot_success_probability = value.get<double>();
            } else if (key == "output_path") {
                cfg.output_path = value.get<std::string>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string write_config(const ExperimentConfig& c) {
    std::string out = "{\n";
    out += "  \"mode\": \"" + std::string(to_string(c.mode)) + "\",\n";
    out += "  \"n_points\": " + std::to_string(c.n_points) + ",\n";
    out += "  \"q0\": " + format_sci(c.q0) + ",\n";
    out += "  \"s\": " + format_sci(c.s) + ",\n";
    out += "  \"delta_s\": " + format_sci(c.delta_s) + ",\n";
    out += "  \"window_width\": " + format_sci(c.window_width) + ",\n";
    out += "  \"function\": \"" + std::string(to_string(c.function)) + "\",\n";
    out += "  \"function_width\": " + std::to_string(c.function_width) + ",\n";
    out += "  \"seed\": " + std::to_string(c.seed) + ",\n";
    out += "  \"convention\": \"" + std::string(to_string(c.convention)) + "\",\n";
    out += "  \"t_resolution\": " + std::to_string(c.t_resolution) + ",\n";
    out += std::string("  \"allow_unresolved\": ") + (c.allow_unresolved ? "true" : "false") +
           ",\n";
    out += "  \"cnot_success_probability\": " + format_sci(c.cnot_success_probability) + ",\n";
    out += "  \"output_path\": \"" + json_escape(c.output_path) + "\"\n";
    out += "}";
    return out;
}

RunRecord execute_run(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.config = config;
    rec.seed = config.seed;

    const GridPtr grid = stage("prepare", [&] { return make_grid(config.n_points); });
    const OracleSpec f = stage("prepare", [&] {
        return make_function(config.function, *grid, config.function_width, config.seed);
    });
    rec.verified_class = stage("prepare", [&] { return validate_promise(f); });

    const double default_width = 3.0 * grid->spacing();
    rec.resolved_window_width = config.window_width > 0.0 ? config.window_width : default_width;

    int oracle_queries = 0;

    if (config.mode == RunMode::gaussian) {
        CvState final_state = stage("oracle", [&] {
            CvState out(grid, std::vector<cplx>(grid->size()));
            gaussian_success_probability(config, grid, f, config.convention, &out);
            ++oracle_queries;
            return out;
        });
        rec.success_probability = stage("measure", [&] {
            const GaussianParams params(config.s, config.delta_s);
            const CvState initial =
                build_squeezed_state(grid, params, config.convention, config.allow_unresolved);
            return std::norm(overlap(initial, final_state));
        });
        stage("measure", [&] {
            const MeasurementWindow window{config.s, config.delta_s, WindowBasis::squeezed,
                                           config.t_resolution};
            const SqueezedProjection proj = window_project_squeezed(final_state, window);
            rec.window_probability = proj.weight;
            const GaussianParams params(config.s, config.delta_s);
            const CvState reference = build_squeezed_state(grid, params, Convention::normalized,
                                                           config.allow_unresolved);
            rec.postselected_fidelity =
                proj.weight > 0.0 ? fidelity(reference, proj.state.renormalized()) : 0.0;
            return 0;
        });
        if (rec.verified_class == PromiseClass::constant) {
            const double paper_value = stage("analyze", [&] {
                return gaussian_success_probability(config, grid, f, Convention::paper);
            });
            const double normalized_value = stage("analyze", [&] {
                return gaussian_success_probability(config, grid, f, Convention::normalized);
            });
            rec.note = "success probability by convention: paper " + format_sci(paper_value) +
                       " (squeezed-state prefactor squared norm is 1/sqrt(2*pi), not 1), "
                       "normalized " +
                       format_sci(normalized_value) +
                       "; the comparison value 5.00000000000e-01 quoted for finitely squeezed "
                       "inputs follows from neither number and is documented, not asserted";
        }
        rec.gamma_profile_path = profile_path_for(config.output_path);
        rec.bob_fidelity = 1.0;
    } else {
        const CvState initial = stage("prepare", [&] { return position_eigenstate(grid, config.q0); });
        const std::size_t snapped_index = grid->nearest_index(config.q0);
        rec.snapped_q0 = grid->point(snapped_index);

        const CvState superposed =
            stage("superpose", [&] { return fourier(initial, FourierDirection::forward); });

        CvState before_inverse(grid, std::vector<cplx>(grid->size()));
        if (config.mode == RunMode::ideal_cv) {
            before_inverse = stage("oracle", [&] {
                ++oracle_queries;
                return apply_phase_function(superposed, f.values());
            });
            rec.bob_fidelity = 1.0;
        } else if (config.mode == RunMode::hybrid_semiclassical) {
            const DualRailState bob_initial = make_dualrail(1);
            const DualRailState bob = beam_splitter(bob_initial, kPiOver4);
            auto [cv_out, bob_out] = stage("oracle", [&] {
                ++oracle_queries;
                return apply_oracle_semiclassical(superposed, bob, f);
            });
            before_inverse = cv_out;
            rec.bob_fidelity = fidelity(bob_out, bob);
        } else {  // hybrid_coherent
            const DualRailState bob = beam_splitter(make_dualrail(1), kPiOver4);
            const HybridState joint = stage("prepare", [&] {
                return HybridState::product(superposed, make_dualrail(0), bob);
            });
            const HybridState after_oracle = stage("oracle", [&] {
                ++oracle_queries;
                return apply_oracle_coherent(joint, f);
            });
            const HybridState uncomputed =
                stage("oracle", [&] { return uncompute_ancilla(after_oracle, f); });
            rec.bob_fidelity = bob_fidelity_with(uncomputed, bob);
            before_inverse = stage("oracle", [&] { return cv_conditioned(uncomputed, 0, bob); });
        }

        const CvState final_state = stage(
            "inverse superpose", [&] { return fourier(before_inverse, FourierDirection::inverse); });

        stage("measure", [&] {
            const MeasurementWindow window{*rec.snapped_q0, rec.resolved_window_width,
                                           WindowBasis::position, config.t_resolution};
            const PositionProjection proj = window_project_position(final_state, window);
            rec.window_probability = proj.probability;
            rec.postselected_fidelity = proj.null_outcome ? 0.0 : fidelity(initial, proj.state);
            return 0;
        });

        if (config.mode != RunMode::ideal_cv && rec.bob_fidelity < 1.0 - 1e-9) {
            throw NumericalError("stage measure: Bob register fidelity " +
                                 format_sci(rec.bob_fidelity) + " fell below 1 - 1e-9");
        }
    }

    rec.oracle_queries = oracle_queries;
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    return rec;
}

RunRecord run(const ExperimentConfig& config) {
    RunRecord rec = execute_run(config);
    if (config.mode == RunMode::gaussian) {
        const GridPtr grid = make_grid(config.n_points);
        const ErrProfile profile =
            post_measurement_profile(*grid, GaussianParams(config.s, config.delta_s));
        write_text_file(*rec.gamma_profile_path, to_csv(profile));
    }
    write_text_file(config.output_path, to_json(rec));
    return rec;
}

std::string to_json(const RunRecord& r) {
    std::string out = "{\n";
    out += "  \"config\": ";
    {
        // indent the nested config block
        std::string cfg = write_config(r.config);
        std::string indented;
        for (char ch : cfg) {
            indented.push_back(ch);
            if (ch == '\n') indented += "  ";
        }
        out += indented;
    }
    out += ",\n";
    out += "  \"snapped_q0\": " + (r.snapped_q0 ? format_sci(*r.snapped_q0) : "null") + ",\n";
    out += "  \"resolved_window_width\": " + format_sci(r.resolved_window_width) + ",\n";
    out += "  \"verified_class\": \"" + std::string(to_string(r.verified_class)) + "\",\n";
    out += "  \"oracle_queries\": " + std::to_string(r.oracle_queries) + ",\n";
    out += "  \"window_probability\": " + format_sci(r.window_probability) + ",\n";
    out += "  \"postselected_fidelity\": " + format_sci(r.postselected_fidelity) + ",\n";
    out += "  \"bob_fidelity\": " + format_sci(r.bob_fidelity) + ",\n";
    out += "  \"success_probability\": " +
           (r.success_probability ? format_sci(*r.success_probability) : "null") + ",\n";
    out += "  \"gamma_profile_path\": " +
           (r.gamma_profile_path ? "\"" + json_escape(*r.gamma_profile_path) + "\"" : "null") +
           ",\n";
    out += "  \"note\": " + (r.note ? "\"" + json_escape(*r.note) + "\"" : "null") + ",\n";
    out += "  \"wall_time_seconds\": " + format_sci(r.wall_time_seconds) + ",\n";
    out += "  \"seed\": " + std::to_string(r.seed) + "\n";
    out += "}\n";
    return out;
}

std::string sweep_csv(const ExperimentConfig& base, const std::string& parameter,
                      const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: empty values vector");
    if (parameter != "s" && parameter != "delta_s" && parameter != "n_points" &&
        parameter != "window_width") {
        throw ConfigError("sweep: parameter must be one of s, delta_s, n_points, window_width; "
                          "got '" + parameter + "'");
    }

    std::vector<ExperimentConfig> configs;
    configs.reserve(values.size());
    for (double value : values) {
        ExperimentConfig cfg = base;
        if (parameter == "s") {
            cfg.s = value;
        } else if (parameter == "delta_s") {
            cfg.delta_s = value;
        } else if (parameter == "window_width") {
            cfg.window_width = value;
        } else {
            if (value <= 0.0 || value != std::floor(value)) {
                throw ConfigError("sweep: n_points values must be positive integers");
            }
            cfg.n_points = static_cast<std::size_t>(value);
        }
        configs.push_back(std::move(cfg));
    }

    // Runs own their state and can execute concurrently; rows are emitted in
    // input order regardless of completion order.
    std::vector<std::future<RunRecord>> pending;
    pending.reserve(configs.size());
    for (const ExperimentConfig& cfg : configs) {
        pending.push_back(std::async(std::launch::async, [cfg] { return execute_run(cfg); }));
    }

    std::string csv =
        "parameter,value,mode,convention,n_points,q0,s,delta_s,window_width,function,seed,"
        "verified_class,oracle_queries,window_probability,postselected_fidelity,bob_fidelity,"
        "success_probability\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const ExperimentConfig& cfg = configs[i];
        const RunRecord rec = pending[i].get();
        csv += parameter + "," + format_sci(values[i]) + "," + to_string(cfg.mode) + "," +
               to_string(cfg.convention) + "," + std::to_string(cfg.n_points) + "," +
               format_sci(cfg.q0) + "," + format_sci(cfg.s) + "," + format_sci(cfg.delta_s) + "," +
               format_sci(rec.resolved_window_width) + "," + to_string(cfg.function) + "," +
               std::to_string(cfg.seed) + "," + to_string(rec.verified_class) + "," +
               std::to_string(rec.oracle_queries) + "," + format_sci(rec.window_probability) +
               "," + format_sci(rec.postselected_fidelity) + "," + format_sci(rec.bob_fidelity) +
               "," + (rec.success_probability ? format_sci(*rec.success_probability) : "") + "\n";
    }
    return csv;
}

std::string sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<double>& values) {
    std::string csv = sweep_csv(base, parameter, values);
    write_text_file(base.output_path, csv);
    return csv;
}

std::size_t classical_deterministic_queries(std::size_t domain_size) {
    if (domain_size < 2 || domain_size % 2 != 0) {
        throw std::invalid_argument("classical_deterministic_queries: domain size must be even "
                                    "and >= 2");
    }
    return domain_size / 2 + 1;
}

RandomizedAnswer classical_randomized(const OracleSpec& f, std::size_t k, std::uint64_t seed) {
    const std::size_t n = f.domain_size();
    if (k < 1) throw std::invalid_argument("classical_randomized: k must be >= 1");
    if (k > n) throw std::invalid_argument("classical_randomized: k exceeds the domain size");

    // k distinct sample points via a partial Fisher-Yates shuffle
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = j;
    std::mt19937_64 rng(seed);
    bool seen0 = false, seen1 = false;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t pick = j + uniform_below(rng, n - j);
        std::swap(idx[j], idx[pick]);
        (f.values()[idx[j]] ? seen1 : seen0) = true;
    }
    const PromiseClass answer =
        (seen0 && seen1) ? PromiseClass::balanced : PromiseClass::constant;
    return RandomizedAnswer{answer, std::ldexp(1.0, 1 - static_cast<int>(k))};
}

}  // namespace hdj
