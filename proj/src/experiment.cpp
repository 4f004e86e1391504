#include "mdec/experiment.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <tuple>

#include "mdec/errors.hpp"
#include "mdec/io.hpp"

namespace mdec {

using json = nlohmann::json;

namespace {

// Consensus streams live far above any member index.
constexpr std::uint64_t kConsensusStream = 0x8000000000000000ULL;

std::vector<WeightMode> parse_weights(const json& j) {
    std::vector<WeightMode> out;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "both") return {WeightMode::eci, WeightMode::uniform};
        out.push_back(weight_mode_from_string(s));
        return out;
    }
    for (const auto& v : j) out.push_back(weight_mode_from_string(v.get<std::string>()));
    return out;
}

std::pair<double, double> parse_real_range(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw ValidationError("range '" + s + "' must be lo:hi");
        try {
            return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
        } catch (const std::exception&) {
            throw ValidationError("range '" + s + "' must be lo:hi");
        }
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json summary_json(const std::vector<double>& values, const char* mean_key, const char* std_key) {
    json j;
    if (values.empty()) {
        j[mean_key] = nullptr;
        j[std_key] = nullptr;
    } else {
        const ScoreSummary s = summarize(values);
        j[mean_key] = s.mean;
        j[std_key] = s.std;
    }
    return j;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Aggregate block for weights-mode slot `slot` of a report.
json aggregate_json(const RunReport& report, std::size_t slot) {
    std::vector<double> nmis, aris, base_nmi, base_ari;
    for (const auto& r : report.runs) {
        const auto& c = r.consensus[slot];
        if (c.nmi) nmis.push_back(*c.nmi);
        if (c.ari) aris.push_back(*c.ari);
        if (r.base) {
            base_nmi.push_back(r.base->nmi_summary.mean);
            base_ari.push_back(r.base->ari_summary.mean);
        }
    }
    json j;
    j.update(summary_json(nmis, "nmi_mean", "nmi_std"));
    j.update(summary_json(aris, "ari_mean", "ari_std"));
    j.update(summary_json(base_nmi, "base_nmi_mean", "base_nmi_std"));
    j.update(summary_json(base_ari, "base_ari_mean", "base_ari_std"));
    return j;
}

std::string labels_csv(const RunRecord& record) {
    std::string out = "sample";
    for (const auto& c : record.consensus) out += "," + std::string(to_string(c.mode));
    out += '\n';
    const std::size_t n = record.consensus.front().labels.n();
    for (std::size_t i = 0; i < n; ++i) {
        out += std::to_string(i);
        for (const auto& c : record.consensus) out += "," + std::to_string(c.labels[i]);
        out += '\n';
    }
    return out;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

// ---------------------------------------------------------------- config

void RunConfig::validate() const {
    if (k < 2) throw ValidationError("final cluster count K must be >= 2");
    if (repeats < 1) throw ValidationError("repeats must be >= 1");
    if (weights.empty()) throw ValidationError("at least one weights mode is required");
    generation.validate();
}

json to_json(const RunConfig& c) {
    // Execution-only settings (threads, output directory) are not echoed so that
    // reports are identical across them.
    json j;
    j["input"] = c.input.string();
    j["delimiter"] = std::string(1, c.csv.delimiter);
    j["header"] = c.csv.has_header;
    j["label_col"] = c.csv.label_column ? json(*c.csv.label_column) : json(nullptr);
    j["standardize"] = c.standardize;
    j["k"] = c.k;
    j["ensemble_size"] = c.generation.m;
    j["tau"] = c.generation.tau;
    j["mu_range"] = {c.generation.mu_min, c.generation.mu_max};
    j["knn_range"] = c.generation.knn_range
                         ? json{c.generation.knn_range->lo, c.generation.knn_range->hi}
                         : json(nullptr);
    j["cluster_range"] = c.generation.cluster_count_range
                             ? json{c.generation.cluster_count_range->lo,
                                    c.generation.cluster_count_range->hi}
                             : json(nullptr);
    j["metric"] = std::string(to_string(c.generation.metric));
    json w = json::array();
    for (auto m : c.weights) w.push_back(std::string(to_string(m)));
    j["weights"] = w;
    j["repeats"] = c.repeats;
    j["seed"] = c.generation.master_seed;
    return j;
}

RunConfig run_config_from_json(const json& j, RunConfig c) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    try {
        if (j.contains("input")) c.input = j["input"].get<std::string>();
        if (j.contains("delimiter")) {
            const auto d = j["delimiter"].get<std::string>();
            if (d.size() != 1) throw ValidationError("delimiter must be a single character");
            c.csv.delimiter = d[0];
        }
        if (j.contains("header")) c.csv.has_header = j["header"].get<bool>();
        if (j.contains("label_col")) {
            if (j["label_col"].is_null()) c.csv.label_column.reset();
            else c.csv.label_column = j["label_col"].get<std::size_t>();
        }
        if (j.contains("standardize")) c.standardize = j["standardize"].get<bool>();
        if (j.contains("k")) c.k = j["k"].get<int>();
        if (j.contains("ensemble_size")) c.generation.m = j["ensemble_size"].get<std::size_t>();
        if (j.contains("tau")) c.generation.tau = j["tau"].get<double>();
        if (j.contains("mu_range")) {
            std::tie(c.generation.mu_min, c.generation.mu_max) = parse_real_range(j["mu_range"]);
        }
        if (j.contains("knn_range") && !j["knn_range"].is_null()) {
            c.generation.knn_range = IntRange{j["knn_range"].at(0).get<int>(), j["knn_range"].at(1).get<int>()};
        }
        if (j.contains("cluster_range") && !j["cluster_range"].is_null()) {
            c.generation.cluster_count_range =
                IntRange{j["cluster_range"].at(0).get<int>(), j["cluster_range"].at(1).get<int>()};
        }
        if (j.contains("metric")) c.generation.metric = similarity_kind_from_string(j["metric"].get<std::string>());
        if (j.contains("weights")) c.weights = parse_weights(j["weights"]);
        if (j.contains("repeats")) c.repeats = j["repeats"].get<std::size_t>();
        if (j.contains("seed")) c.generation.master_seed = j["seed"].get<std::uint64_t>();
        if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
        if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
        if (j.contains("dump_ensemble")) c.dump_ensemble = j["dump_ensemble"].get<bool>();
        if (j.contains("dump_lwca")) c.dump_lwca = j["dump_lwca"].get<bool>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return c;
}

// ---------------------------------------------------------------- run

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) {
    return derive_seed(master_seed, run);
}

namespace {

template <class F>
auto staged(std::size_t run, const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (...) {
        rethrow_with_context("run " + std::to_string(run) + ", stage " + stage + ": ",
                             std::current_exception());
    }
}

struct RunArtifacts {
    Ensemble ensemble;
    std::vector<SimilarityMatrix> lwca;  // one per weights mode
};

RunRecord run_once(const Dataset& dataset, const RunConfig& config, std::size_t r,
                   std::optional<RunArtifacts>* keep) {
    RunRecord rec;
    rec.run = r;
    rec.seed = run_seed(config.generation.master_seed, r);

    GenerationConfig gen = config.generation;
    gen.master_seed = rec.seed;
    Ensemble ensemble =
        staged(r, "generation", [&] { return generate_ensemble(dataset, gen, config.threads); });
    for (const auto& p : ensemble.provenance()) rec.member_k.push_back(p.k_m);

    std::vector<SimilarityMatrix> matrices;
    staged(r, "consensus", [&] {
        std::optional<ClusterWeightTable> eci;
        for (WeightMode mode : config.weights) {
            SimilarityMatrix a;
            if (mode == WeightMode::eci) {
                if (!eci) eci = compute_eci(ensemble);
                a = lwca(ensemble, *eci);
            } else {
                a = lwca(ensemble, mode);
            }
            Rng rng(derive_seed(rec.seed, kConsensusStream));
            rec.consensus.push_back(ConsensusOutcome{mode, consensus_partition(a, config.k, rng), {}, {}});
            matrices.push_back(std::move(a));
        }
        return 0;
    });

    if (dataset.has_labels()) {
        staged(r, "evaluation", [&] {
            const Clustering truth = dataset.truth();
            for (auto& c : rec.consensus) {
                c.nmi = nmi(c.labels, truth);
                c.ari = ari(c.labels, truth);
            }
            rec.base = ensemble_stats(ensemble, truth);
            return 0;
        });
    }
    if (keep) keep->emplace(RunArtifacts{std::move(ensemble), std::move(matrices)});
    return rec;
}

RunReport run_impl(const Dataset& dataset, const RunConfig& config,
                   const std::filesystem::path& out_dir) {
    config.validate();
    if (static_cast<std::size_t>(config.k) > dataset.n()) {
        throw ValidationError("K=" + std::to_string(config.k) + " exceeds sample count " +
                              std::to_string(dataset.n()));
    }
    RunReport report;
    report.config = config;
    for (std::size_t r = 0; r < config.repeats; ++r) {
        std::optional<RunArtifacts> artifacts;
        const bool keep = !out_dir.empty() && (config.dump_ensemble || config.dump_lwca);
        report.runs.push_back(run_once(dataset, config, r, keep ? &artifacts : nullptr));
        if (out_dir.empty()) continue;
        const std::string tag = "run" + std::to_string(r);
        write_file_atomic(out_dir / ("labels_" + tag + ".csv"), labels_csv(report.runs.back()));
        if (config.dump_ensemble) {
            write_file_atomic(out_dir / ("ensemble_" + tag + ".jsonl"), ensemble_to_jsonl(artifacts->ensemble));
        }
        if (config.dump_lwca) {
            for (std::size_t s = 0; s < config.weights.size(); ++s) {
                write_file_atomic(out_dir / ("lwca_" + tag + "_" + std::string(to_string(config.weights[s])) + ".txt"),
                                  matrix_to_text(artifacts->lwca[s].entries));
            }
        }
    }
    return report;
}

}  // namespace

json RunReport::to_json() const {
    json j;
    j["config"] = mdec::to_json(config);
    j["ablation"] = {
        {"metric", std::string(to_string(config.generation.metric))},
        {"weights", mdec::to_json(config)["weights"]},
        {"fixed_metric", config.generation.metric != SimilarityKind::ses},
        {"uniform_weights", config.weights.front() == WeightMode::uniform},
        {"no_subspace", config.generation.tau == 1.0},
    };
    json per_run = json::array();
    for (const auto& r : runs) {
        json e;
        e["run"] = r.run;
        e["seed"] = r.seed;
        const auto& primary = r.consensus.front();
        e["nmi"] = optional_json(primary.nmi);
        e["ari"] = optional_json(primary.ari);
        e["consensus_k"] = primary.labels.k();
        if (r.base) {
            e["base_mean_nmi"] = r.base->nmi_summary.mean;
            e["base_std_nmi"] = r.base->nmi_summary.std;
            e["base_mean_ari"] = r.base->ari_summary.mean;
            e["base_std_ari"] = r.base->ari_summary.std;
        } else {
            e["base_mean_nmi"] = nullptr;
            e["base_std_nmi"] = nullptr;
            e["base_mean_ari"] = nullptr;
            e["base_std_ari"] = nullptr;
        }
        e["member_k"] = r.member_k;
        json by = json::object();
        for (const auto& c : r.consensus) {
            by[std::string(to_string(c.mode))] = {{"nmi", optional_json(c.nmi)}, {"ari", optional_json(c.ari)}};
        }
        e["by_weights"] = by;
        per_run.push_back(e);
    }
    j["per_run"] = per_run;
    json agg = aggregate_json(*this, 0);
    json by = json::object();
    for (std::size_t s = 0; s < config.weights.size(); ++s) {
        by[std::string(to_string(config.weights[s]))] = aggregate_json(*this, s);
    }
    agg["by_weights"] = by;
    j["aggregate"] = agg;
    return j;
}

RunReport run_experiment(const Dataset& dataset, const RunConfig& config) {
    return run_impl(dataset, config, {});
}

Dataset load_run_dataset(const RunConfig& config) {
    Dataset ds = load_dataset(config.input, config.csv);
    return config.standardize ? ds.standardized() : ds;
}

RunReport run(const RunConfig& config) {
    config.validate();
    const Dataset dataset = load_run_dataset(config);
    if (!config.out_dir.empty()) ensure_dir(config.out_dir);
    RunReport report = run_impl(dataset, config, config.out_dir);
    if (!config.out_dir.empty()) {
        write_file_atomic(config.out_dir / "report.json", report.to_json().dump(2) + "\n");
    }
    return report;
}

// ---------------------------------------------------------------- sweep

std::string_view to_string(SweepAxis axis) {
    return axis == SweepAxis::tau ? "tau" : "ensemble-size";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    if (name == "tau") return SweepAxis::tau;
    if (name == "ensemble-size" || name == "ensemble_size") return SweepAxis::ensemble_size;
    throw ValidationError("unknown sweep axis '" + std::string(name) + "' (expected ensemble-size|tau)");
}

SweepReport sweep_experiment(const Dataset& dataset, const RunConfig& base, SweepAxis axis,
                             const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("sweep needs at least one value");
    for (double v : values) {
        if (axis == SweepAxis::tau && !(v > 0.0 && v <= 1.0)) {
            throw ValidationError("tau value " + format_double(v) + " outside (0, 1]");
        }
        if (axis == SweepAxis::ensemble_size && !(v >= 1.0 && v == std::floor(v))) {
            throw ValidationError("ensemble size " + format_double(v) + " must be a positive integer");
        }
    }
    SweepReport report;
    report.axis = axis;
    report.base = base;
    for (double v : values) {
        RunConfig cfg = base;
        cfg.out_dir.clear();
        if (axis == SweepAxis::tau) cfg.generation.tau = v;
        else cfg.generation.m = static_cast<std::size_t>(v);
        SweepCell cell;
        cell.value = v;
        try {
            cell.report = run_experiment(dataset, cfg);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

json SweepReport::to_json() const {
    json j;
    j["axis"] = std::string(to_string(axis));
    j["config"] = mdec::to_json(base);
    json rows = json::array();
    for (const auto& cell : cells) {
        json row;
        row["value"] = cell.value;
        if (!cell.report) {
            row["error"] = cell.error;
        } else {
            row.update(aggregate_json(*cell.report, 0));
            json by = json::object();
            for (std::size_t s = 0; s < base.weights.size(); ++s) {
                by[std::string(to_string(base.weights[s]))] = aggregate_json(*cell.report, s);
            }
            row["by_weights"] = by;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

std::string SweepReport::to_csv() const {
    auto cell_text = [](const json& v) { return v.is_null() ? std::string() : format_double(v.get<double>()); };
    std::string out = std::string(to_string(axis)) +
                      ",weights,nmi_mean,nmi_std,ari_mean,ari_std,base_nmi_mean,base_nmi_std,error\n";
    for (const auto& cell : cells) {
        for (std::size_t s = 0; s < base.weights.size(); ++s) {
            out += format_double(cell.value) + "," + std::string(to_string(base.weights[s]));
            if (!cell.report) {
                out += ",,,,,,,\"" + cell.error + "\"\n";
                continue;
            }
            const json a = aggregate_json(*cell.report, s);
            for (const char* key : {"nmi_mean", "nmi_std", "ari_mean", "ari_std", "base_nmi_mean", "base_nmi_std"}) {
                out += "," + cell_text(a[key]);
            }
            out += ",\n";
        }
    }
    return out;
}

SweepReport sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values) {
    base.validate();
    const Dataset dataset = load_run_dataset(base);
    SweepReport report = sweep_experiment(dataset, base, axis, values);
    if (!base.out_dir.empty()) {
        ensure_dir(base.out_dir);
        write_file_atomic(base.out_dir / "sweep.json", report.to_json().dump(2) + "\n");
        write_file_atomic(base.out_dir / "sweep.csv", report.to_csv());
    }
    return report;
}

// ---------------------------------------------------------------- synth

void SynthConfig::validate() const {
    if (k_true < 2) throw ValidationError("synth: k_true must be >= 2");
    if (n < static_cast<std::size_t>(k_true)) throw ValidationError("synth: n must be >= k_true");
    if (d_informative < 1 || d_informative + 1 < static_cast<std::size_t>(k_true)) {
        throw ValidationError("synth: need d_informative >= max(1, k_true - 1) for distinct centers");
    }
    if (!(spread >= 0.0) || !std::isfinite(spread)) throw ValidationError("synth: spread must be >= 0");
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw ValidationError("synth: separation must be positive");
    }
}

Dataset synth_blobs(const SynthConfig& config) {
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.n);
    const auto di = static_cast<Eigen::Index>(config.d_informative);
    const auto dn = static_cast<Eigen::Index>(config.d_noise);
    const auto k = static_cast<Eigen::Index>(config.k_true);
    Matrix values(n, di + dn);
    std::vector<int> labels(config.n);
    Rng rng(config.seed);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index c = i % k;
        labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
        for (Eigen::Index j = 0; j < di; ++j) {
            const double center = (j % k == c) ? config.separation : 0.0;
            values(i, j) = center + config.spread * rng.normal();
        }
        for (Eigen::Index j = 0; j < dn; ++j) values(i, di + j) = rng.normal();
    }
    return Dataset(std::move(values), {}, std::move(labels));
}

}  // namespace mdec
