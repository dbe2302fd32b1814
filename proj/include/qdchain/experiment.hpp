// experiment.hpp — Experiment configuration, execution, and machine-readable
// output: trajectory/couplings CSV plus a summary JSON whose config echo is
// sufficient to reproduce the run byte for byte.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdchain/analysis.hpp"
#include "qdchain/propagation.hpp"
#include "qdchain/protocols.hpp"

namespace qdchain {

// Configuration or schema violation; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Protocol { uniform_static, spin_static, sequential_pi, collective_pi, ctap };
enum class FigureTag { fig2a, fig2b, fig3a, fig3b };

std::string to_string(Protocol protocol);
std::string to_string(FigureTag tag);
Protocol protocol_from_string(const std::string& name);
FigureTag figure_tag_from_string(const std::string& name);

struct CtapParams {
    double t_max{0.0};
    double width{0.0};
    std::optional<double> delay;  // default 1.2*width
    std::optional<double> total;  // default 2*delay + 6*width
};

struct ExperimentConfig {
    Protocol protocol{Protocol::uniform_static};
    int n_sites{2};
    double t{1.0};
    std::optional<CtapParams> ctap;   // required iff protocol == ctap
    std::optional<double> duration;   // static protocols only; others derive it
    int n_steps{2000};
    double sigma{0.0};
    int n_samples{0};                 // required >= 1 when sigma > 0
    std::uint64_t seed{0};
    std::string out_directory{"."};
    std::string out_stem{"experiment"};
};

// Strict parse: unknown keys are rejected, every field is type- and
// range-checked, and errors carry the JSON path of the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Fully resolved echo (defaults materialized); reparsing it reproduces the
// experiment exactly.
std::string config_to_json(const ExperimentConfig& config);

// CLI/environment overrides, applied before resolution. Output directory
// precedence: --out flag, then QDCHAIN_OUT_DIR, then the config value.
struct RunOverrides {
    std::optional<int> n_steps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};
ExperimentConfig apply_overrides(ExperimentConfig config, const RunOverrides& overrides);

// Schedule / grid / chain implied by a config (also used by tests).
Schedule resolve_schedule(const ExperimentConfig& config);
TimeGrid resolve_grid(const ExperimentConfig& config);
ChainSpec resolve_chain(const ExperimentConfig& config);
ExperimentConfig resolve_defaults(ExperimentConfig config);

struct ExperimentResult {
    ExperimentConfig resolved;
    double final_fidelity{0.0};
    double max_norm_drift{0.0};
    std::optional<double> peak_adiabaticity_ratio;  // ctap runs only
    std::optional<RobustnessReport> robustness;     // when sigma > 0
    std::vector<std::string> files_written;
};

// Evolves |1> under the configured schedule and writes
//   <stem>.trajectory.csv   tau,pop_1,...,pop_N (12 significant digits)
//   <stem>.couplings.csv    tau,t_1,...,t_<N-1>
//   <stem>.summary.json     metrics + resolved config echo
// No partial outputs survive a failure.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Robustness sweep only; writes <stem>.sweep.json.
struct SweepResult {
    ExperimentConfig resolved;
    RobustnessReport report;
    std::string file_written;
};
SweepResult run_sweep(const ExperimentConfig& config);

// Built-in configs behind the four shipped figures: fig2a uniform static
// N=9, fig2b spin-model static N=9, fig3a gaussian adiabatic passage at the
// calibrated incomplete-transfer point, fig3b the same with pulse width and
// total time doubled.
ExperimentConfig figure_preset(FigureTag tag);
ExperimentResult reproduce_figure(FigureTag tag, const std::string& out_dir,
                                  std::optional<int> n_steps = std::nullopt);

}  // namespace qdchain
