// mdec: command-line front end for multi-diversified ensemble clustering.
//
//   mdec run    --input data.csv --label-col 4 --k 3 [--ensemble-size 100 --tau 0.5 ...]
//   mdec sweep  --axis tau --values 0.2,0.5,1.0 [run options]
//   mdec synth  --n 120 --informative 20 --noise 180 --k 3 --spread 1 --seed 7 --out blobs.csv
//   mdec consensus --ensemble ensemble.jsonl --k 3 [--weights eci] [--seed 0]
//
// Exit codes: 0 success, 1 validation error, 2 numeric error, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mdec/consensus.hpp"
#include "mdec/errors.hpp"
#include "mdec/experiment.hpp"
#include "mdec/io.hpp"

namespace {

using mdec::RunConfig;

struct RunArgs {
    std::string config_path;
    std::string input;
    std::string delimiter = ",";
    bool header = false;
    std::size_t label_col = 0;
    bool standardize = false;
    int k = 0;
    std::size_t ensemble_size = 100;
    double tau = 0.5;
    std::string mu_range = "0.2:0.8";
    std::string knn_range;
    std::string cluster_range;
    std::string weights = "eci";
    std::string metric = "ses";
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out;
    bool dump_ensemble = false;
    bool dump_lwca = false;

    // Handles used to tell explicitly given options from defaults.
    std::map<std::string, CLI::Option*> opt;
};

void add_run_options(CLI::App& app, RunArgs& a) {
    a.opt["config_path"] = app.add_option("--config", a.config_path, "JSON config file (CLI options override it)");
    a.opt["input"] = app.add_option("--input", a.input, "Input CSV");
    a.opt["delimiter"] = app.add_option("--delimiter", a.delimiter, "Field delimiter");
    a.opt["header"] = app.add_flag("--header", a.header, "First CSV row is a header");
    a.opt["label_col"] = app.add_option("--label-col", a.label_col, "Zero-based index of the ground-truth label column");
    a.opt["standardize"] = app.add_flag("--standardize", a.standardize, "Z-score every feature before clustering");
    a.opt["k"] = app.add_option("--k", a.k, "Number of consensus clusters");
    a.opt["ensemble_size"] = app.add_option("--ensemble-size", a.ensemble_size, "Number of base clusterings M");
    a.opt["tau"] = app.add_option("--tau", a.tau, "Feature sampling ratio in (0, 1]");
    a.opt["mu_range"] = app.add_option("--mu-range", a.mu_range, "Kernel scale range lo:hi");
    a.opt["knn_range"] = app.add_option("--knn-range", a.knn_range, "Neighbour count range lo:hi (default round(sqrt N):round(5 sqrt N))");
    a.opt["cluster_range"] = app.add_option("--cluster-range", a.cluster_range, "Base clustering size range lo:hi (default 2:round(sqrt N))");
    a.opt["weights"] = app.add_option("--weights", a.weights, "eci | uniform | both");
    a.opt["metric"] = app.add_option("--metric", a.metric, "ses | cosine | pearson | spearman");
    a.opt["repeats"] = app.add_option("--repeats", a.repeats, "Number of repeated runs");
    a.opt["seed"] = app.add_option("--seed", a.seed, "Master seed");
    a.opt["threads"] = app.add_option("--threads", a.threads, "Worker threads for ensemble generation");
    a.opt["out"] = app.add_option("--out", a.out, "Output directory");
    a.opt["dump_ensemble"] = app.add_flag("--dump-ensemble", a.dump_ensemble, "Write each run's ensemble as JSON lines");
    a.opt["dump_lwca"] = app.add_flag("--dump-lwca", a.dump_lwca, "Write each run's co-association matrix");
}

bool given(const RunArgs& a, const std::string& name) { return a.opt.at(name)->count() > 0; }

mdec::IntRange parse_int_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("no colon");
        return mdec::IntRange{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw mdec::ValidationError("range '" + s + "' must be lo:hi with integer bounds");
    }
}

RunConfig build_run_config(const RunArgs& a) {
    RunConfig c;
    if (!a.config_path.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(mdec::read_file(a.config_path));
        } catch (const nlohmann::json::exception& e) {
            throw mdec::ValidationError("config " + a.config_path + ": " + e.what());
        }
        c = mdec::run_config_from_json(j);
    }
    // Apply explicitly given CLI options on top, through the same JSON keys.
    nlohmann::json o = nlohmann::json::object();
    if (given(a, "input")) o["input"] = a.input;
    if (given(a, "delimiter")) o["delimiter"] = a.delimiter;
    if (given(a, "header")) o["header"] = a.header;
    if (given(a, "label_col")) o["label_col"] = a.label_col;
    if (given(a, "standardize")) o["standardize"] = a.standardize;
    if (given(a, "k")) o["k"] = a.k;
    if (given(a, "ensemble_size")) o["ensemble_size"] = a.ensemble_size;
    if (given(a, "tau")) o["tau"] = a.tau;
    if (given(a, "mu_range")) o["mu_range"] = a.mu_range;
    if (given(a, "weights")) o["weights"] = a.weights;
    if (given(a, "metric")) o["metric"] = a.metric;
    if (given(a, "repeats")) o["repeats"] = a.repeats;
    if (given(a, "seed")) o["seed"] = a.seed;
    if (given(a, "threads")) o["threads"] = a.threads;
    if (given(a, "out")) o["out"] = a.out;
    if (given(a, "dump_ensemble")) o["dump_ensemble"] = a.dump_ensemble;
    if (given(a, "dump_lwca")) o["dump_lwca"] = a.dump_lwca;
    c = mdec::run_config_from_json(o, c);
    if (given(a, "knn_range")) c.generation.knn_range = parse_int_range(a.knn_range);
    if (given(a, "cluster_range")) c.generation.cluster_count_range = parse_int_range(a.cluster_range);
    if (c.input.empty()) throw mdec::ValidationError("--input is required");
    return c;
}

std::vector<double> parse_values(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw mdec::ValidationError("sweep value '" + item + "' is not a number");
        }
    }
    return out;
}

void print_aggregate(const nlohmann::json& agg) {
    auto show = [](const nlohmann::json& v) { return v.is_null() ? std::string("n/a") : mdec::format_double(v.get<double>()); };
    std::cout << "NMI " << show(agg["nmi_mean"]) << " +- " << show(agg["nmi_std"])
              << "  ARI " << show(agg["ari_mean"]) << " +- " << show(agg["ari_std"])
              << "  (base NMI " << show(agg["base_nmi_mean"]) << ")\n";
}

int run_main(int argc, char** argv) {
    CLI::App app{"Multi-diversified ensemble clustering"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Generate ensembles, build the consensus, and score it");
    add_run_options(*run_cmd, run_args);

    RunArgs sweep_args;
    std::string axis;
    std::string values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Repeat `run` over ensemble sizes or sampling ratios");
    add_run_options(*sweep_cmd, sweep_args);
    sweep_cmd->add_option("--axis", axis, "ensemble-size | tau")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated axis values")->required();

    mdec::SynthConfig synth;
    std::string synth_out;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic Gaussian-blob dataset as CSV");
    synth_cmd->add_option("--n", synth.n, "Number of samples");
    synth_cmd->add_option("--informative", synth.d_informative, "Informative features");
    synth_cmd->add_option("--noise", synth.d_noise, "Standard-normal noise features");
    synth_cmd->add_option("--k", synth.k_true, "Number of classes");
    synth_cmd->add_option("--spread", synth.spread, "Per-feature standard deviation around centers");
    synth_cmd->add_option("--separation", synth.separation, "Center coordinate scale");
    synth_cmd->add_option("--seed", synth.seed, "Seed");
    synth_cmd->add_option("--out", synth_out, "Output CSV (stdout if omitted)");

    std::string ensemble_path;
    int consensus_k = 0;
    std::string consensus_weights = "eci";
    std::uint64_t consensus_seed = 0;
    std::string consensus_out;
    std::string lwca_out;
    auto* cons_cmd = app.add_subcommand("consensus", "Consensus partition of a stored ensemble");
    cons_cmd->add_option("--ensemble", ensemble_path, "Ensemble JSON-lines file")->required();
    cons_cmd->add_option("--k", consensus_k, "Number of consensus clusters")->required();
    cons_cmd->add_option("--weights", consensus_weights, "eci | uniform");
    cons_cmd->add_option("--seed", consensus_seed, "Seed for the final k-means");
    cons_cmd->add_option("--out", consensus_out, "Label file (stdout if omitted)");
    cons_cmd->add_option("--lwca-out", lwca_out, "Write the co-association matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*run_cmd) {
        const RunConfig config = build_run_config(run_args);
        const mdec::RunReport report = mdec::run(config);
        const auto j = report.to_json();
        if (config.out_dir.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            print_aggregate(j["aggregate"]);
            std::cout << "report written to " << (config.out_dir / "report.json").string() << "\n";
        }
    } else if (*sweep_cmd) {
        const RunConfig config = build_run_config(sweep_args);
        const auto report = mdec::sweep(config, mdec::sweep_axis_from_string(axis), parse_values(values));
        if (config.out_dir.empty()) std::cout << report.to_csv();
        else std::cout << "sweep written to " << (config.out_dir / "sweep.json").string() << "\n";
    } else if (*synth_cmd) {
        const std::string csv = mdec::dataset_to_csv(mdec::synth_blobs(synth));
        if (synth_out.empty()) std::cout << csv;
        else mdec::write_file_atomic(synth_out, csv);
    } else if (*cons_cmd) {
        const mdec::Ensemble ensemble = mdec::ensemble_from_jsonl(mdec::read_file(ensemble_path));
        const auto a = mdec::lwca(ensemble, mdec::weight_mode_from_string(consensus_weights));
        mdec::Rng rng(consensus_seed);
        const mdec::Clustering labels = mdec::consensus_partition(a, consensus_k, rng);
        std::string text;
        for (int l : labels.labels()) text += std::to_string(l) + "\n";
        if (consensus_out.empty()) std::cout << text;
        else mdec::write_file_atomic(consensus_out, text);
        if (!lwca_out.empty()) mdec::write_file_atomic(lwca_out, mdec::matrix_to_text(a.entries));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const mdec::ValidationError& e) {
        std::cerr << "mdec: validation error: " << e.what() << "\n";
        return 1;
    } catch (const mdec::NumericError& e) {
        std::cerr << "mdec: numeric error: " << e.what() << "\n";
        return 2;
    } catch (const mdec::IoError& e) {
        std::cerr << "mdec: I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "mdec: error: " << e.what() << "\n";
        return 1;
    }
}
