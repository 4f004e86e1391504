#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdec/consensus.hpp"
#include "mdec/dataset.hpp"
#include "mdec/eval.hpp"
#include "mdec/generation.hpp"

namespace mdec {

/// Everything one `mdec run` needs. The master seed lives in `generation`.
struct RunConfig {
    std::filesystem::path input;
    CsvOptions csv;
    bool standardize = false;
    int k = 0;
    GenerationConfig generation;
    std::vector<WeightMode> weights{WeightMode::eci};
    std::size_t repeats = 1;
    std::size_t threads = 1;
    std::filesystem::path out_dir;
    bool dump_ensemble = false;
    bool dump_lwca = false;

    void validate() const;
};

nlohmann::json to_json(const RunConfig& config);

/// Reads a RunConfig from JSON. Keys mirror the CLI long options
/// (input, label_col, k, ensemble_size, tau, mu_range, weights, metric, ...).
/// Missing keys keep the values already in `base`.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

struct ConsensusOutcome {
    WeightMode mode = WeightMode::eci;
    Clustering labels;
    std::optional<double> nmi;
    std::optional<double> ari;
};

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::vector<ConsensusOutcome> consensus;  // one per weights mode, in config order
    std::optional<EnsembleStats> base;         // present when labels are known
    std::vector<int> member_k;
};

struct RunReport {
    RunConfig config;
    std::vector<RunRecord> runs;

    nlohmann::json to_json() const;
};

/// Seed of repeat r: derive_seed(master_seed, r).
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

/// Generate -> ECI -> LWCA -> consensus for every repeat, scoring against labels if present.
/// Errors carry the run index and stage name in their message.
RunReport run_experiment(const Dataset& dataset, const RunConfig& config);

/// Loads config.input, runs, and (if out_dir is set) writes report.json plus
/// per-run label files and optional dumps.
RunReport run(const RunConfig& config);

Dataset load_run_dataset(const RunConfig& config);

enum class SweepAxis { ensemble_size, tau };

std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

struct SweepCell {
    double value = 0.0;
    std::optional<RunReport> report;
    std::string error;  // set when the cell failed
};

struct SweepReport {
    SweepAxis axis = SweepAxis::tau;
    std::vector<SweepCell> cells;
    RunConfig base;

    nlohmann::json to_json() const;
    /// Flat table: axis value -> mean/std NMI and ARI for each weights mode.
    std::string to_csv() const;
};

/// One run per value with the base config's master seed. A failing cell is recorded
/// and the sweep continues.
SweepReport sweep_experiment(const Dataset& dataset, const RunConfig& base, SweepAxis axis,
                             const std::vector<double>& values);

/// Loads the dataset, sweeps, and writes sweep.json / sweep.csv into out_dir if set.
SweepReport sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values);

struct SynthConfig {
    std::size_t n = 90;
    std::size_t d_informative = 2;
    std::size_t d_noise = 0;
    int k_true = 3;
    double spread = 0.1;
    double separation = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Gaussian blobs. Sample i belongs to class i mod k_true. Informative feature j of the
/// class-c center equals `separation` when j mod k_true == c and 0 otherwise (the
/// vertices of a scaled simplex); `spread` is the per-feature standard deviation.
/// Noise features are standard normal.
Dataset synth_blobs(const SynthConfig& config);

}  // namespace mdec
