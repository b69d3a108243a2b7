#include "hyperkan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "hyperkan/dataset_io.hpp"
#include "hyperkan/metrics_io.hpp"
#include "hyperkan/run_config.hpp"
#include "hyperkan/synth.hpp"

namespace hyperkan {

namespace {

/// Flags shared by the dataset-driven subcommands. Unset flags leave the
/// config-file (or default) value alone.
struct CommonFlags {
    std::string dataset;
    std::string config;
    std::string out;
    std::optional<std::string> variant;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> seeds;
    std::optional<unsigned> k;
    std::optional<Index> n_max;
    std::optional<Index> m_min;
    std::optional<unsigned> epochs;
    std::optional<double> lr;
    std::optional<std::string> optimizer;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dataset", dataset, "Dataset file (N M d C layout)")->required();
        cmd->add_option("--config", config, "key = value configuration file");
        cmd->add_option("--out", out, "Output file");
        cmd->add_option("--variant", variant, "full | no_fe_fa | no_kan | no_both");
        cmd->add_option("--seed", seed, "Seed for a single run");
        cmd->add_option("--seeds", seeds, "Number of seeds (0..n-1) for repeated runs");
        cmd->add_option("--k", k, "Hop count");
        cmd->add_option("--n-max", n_max, "Neighbor retention cap");
        cmd->add_option("--m-min", m_min, "Neighbor floor");
        cmd->add_option("--epochs", epochs, "Training epochs");
        cmd->add_option("--lr", lr, "Learning rate");
        cmd->add_option("--optimizer", optimizer, "adam | adagrad");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config.empty()) load_config_file(cfg, config);
        if (variant) cfg.variant = parse_variant(*variant);
        if (seed) cfg.seed = *seed;
        if (seeds) cfg.seeds = *seeds;
        if (k) cfg.train.k = *k;
        if (n_max) cfg.train.n_max = *n_max;
        if (m_min) cfg.train.m_min = *m_min;
        if (epochs) cfg.train.epochs = *epochs;
        if (lr) cfg.train.learning_rate = *lr;
        if (optimizer) cfg.train.optimizer = parse_optimizer(*optimizer);
        cfg.validate();
        return cfg;
    }
};

void write_real(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

void emit_records(const std::vector<nlohmann::json>& records, const std::string& path) {
    if (!path.empty()) write_metrics(records, path);
}

// `hop vertex col:value ...` per row, preceded by a comment header.
void dump_features(const AdjustedStructuralFeatures& adj, std::ostream& out) {
    out << "# hops " << adj.k() << " vertices " << adj.num_vertices() << '\n';
    for (unsigned p = 0; p < adj.k(); ++p) {
        const auto& hop = adj.hops[p];
        for (Index i = 0; i < hop.rows(); ++i) {
            out << (p + 1) << ' ' << i;
            const auto row = hop.row(i);
            for (std::size_t t = 0; t < row.size(); ++t) {
                out << ' ' << row.cols[t] << ':';
                write_real(out, row.values[t]);
            }
            out << '\n';
        }
    }
}

int cmd_features(const CommonFlags& flags, std::ostream& out) {
    const RunConfig cfg = flags.resolve();
    const Dataset data = parse_dataset_file(flags.dataset);
    const auto sf = structural_features(data.graph, cfg.train.k);
    const auto adj = adjust_all(sf, cosine_similarity(data.features), cfg.train.adjustment());
    if (flags.out.empty()) {
        dump_features(adj, out);
    } else {
        std::ofstream file(flags.out);
        if (!file) throw IoError("cannot open '" + flags.out + "' for writing");
        dump_features(adj, file);
        if (!file) throw IoError("failed while writing '" + flags.out + "'");
    }
    return kExitOk;
}

int cmd_train(const CommonFlags& flags, const std::string& checkpoint, std::ostream& out) {
    const RunConfig cfg = flags.resolve();
    if (!checkpoint.empty() && !uses_kan(cfg.variant)) {
        throw UsageError("--checkpoint requires a KAN variant (full or no_fe_fa)");
    }
    const Dataset data = parse_dataset_file(flags.dataset);
    KanNetwork best;
    const RunMetrics m =
        train(data, cfg.variant, cfg.train, cfg.seed, checkpoint.empty() ? nullptr : &best);
    const auto record = run_record(m, cfg);
    write_records({record}, out);
    emit_records({record}, flags.out);
    if (!checkpoint.empty()) {
        std::ofstream file(checkpoint);
        if (!file) throw IoError("cannot open checkpoint '" + checkpoint + "' for writing");
        save_checkpoint(best, file);
    }
    return kExitOk;
}

int cmd_bench(const CommonFlags& flags, std::ostream& out) {
    const RunConfig cfg = flags.resolve();
    const Dataset data = parse_dataset_file(flags.dataset);
    const auto seeds = cfg.seed_list();
    const RepeatedResult r = evaluate_repeated(data, cfg.variant, cfg.train, seeds);
    std::vector<nlohmann::json> records;
    for (const auto& run : r.runs) records.push_back(run_record(run, cfg));
    records.push_back(summary_record(cfg.variant, r.accuracy, r.runs.size(), cfg));
    emit_records(records, flags.out);
    out << to_string(cfg.variant) << ": " << format_mean_std(r.accuracy) << " over "
        << r.runs.size() << " seeds\n";
    return kExitOk;
}

int cmd_ablate(const CommonFlags& flags, std::ostream& out) {
    const RunConfig base = flags.resolve();
    const Dataset data = parse_dataset_file(flags.dataset);
    const auto seeds = base.seed_list();
    // Column order follows the usual ablation table: fewest modules first.
    const std::vector<std::pair<AblationVariant, std::string>> columns{
        {AblationVariant::no_both, "w/o both"},
        {AblationVariant::no_fe_fa, "w/o FE&FA"},
        {AblationVariant::no_kan, "w/o KAN"},
        {AblationVariant::full, "with both"},
    };
    std::vector<nlohmann::json> records;
    std::vector<std::string> cells;
    for (const auto& [variant, label] : columns) {
        RunConfig cfg = base;
        cfg.variant = variant;
        const RepeatedResult r = evaluate_repeated(data, variant, cfg.train, seeds);
        for (const auto& run : r.runs) records.push_back(run_record(run, cfg));
        records.push_back(summary_record(variant, r.accuracy, r.runs.size(), cfg));
        cells.push_back(format_mean_std(r.accuracy));
    }
    emit_records(records, flags.out);

    std::string name = flags.dataset;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    out << std::left << std::setw(20) << "Dataset";
    for (const auto& col : columns) out << " | " << std::setw(16) << col.second;
    out << '\n' << std::setw(20) << name;
    for (const auto& cell : cells) {
        // The "±" sign is two bytes wide in UTF-8 but one column on screen.
        out << " | " << std::setw(17) << cell;
    }
    out << '\n';
    return kExitOk;
}

int cmd_timeit(const CommonFlags& flags, std::ostream& out) {
    const RunConfig cfg = flags.resolve();
    const Dataset data = parse_dataset_file(flags.dataset);
    const RunMetrics m = train(data, cfg.variant, cfg.train, cfg.seed);
    double epoch_total = 0.0;
    for (double s : m.epoch_seconds) epoch_total += s;
    const double per_epoch = m.epoch_seconds.empty() ? 0.0 : epoch_total / m.epoch_seconds.size();
    out << std::fixed << std::setprecision(6) << "variant " << to_string(cfg.variant)
        << " epochs " << m.epoch_seconds.size() << " preprocess_seconds " << m.preprocess_seconds
        << " mean_epoch_seconds " << per_epoch << " total_seconds " << m.wall_seconds << '\n';
    emit_records({run_record(m, cfg)}, flags.out);
    return kExitOk;
}

struct SynthFlags {
    std::string family = "separated";
    std::string out;
    std::uint64_t seed = 0;
    SynthOptions opts;
};

int cmd_synth(const SynthFlags& flags, std::ostream& out) {
    const Dataset data = make_synthetic(parse_synth_family(flags.family), flags.opts, flags.seed);
    write_dataset_file(data, flags.out);
    out << "wrote " << data.num_vertices() << " vertices, " << data.graph.num_hyperedges()
        << " hyperedges to " << flags.out << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypergraph vertex classification with similarity-adjusted structural "
                 "features and Kolmogorov-Arnold layers",
                 "hyperkan"};
    app.require_subcommand(1);

    CommonFlags features_flags, train_flags, bench_flags, ablate_flags, timeit_flags;
    std::string checkpoint;
    SynthFlags synth_flags;

    auto* features = app.add_subcommand("features", "Dump adjusted structural features as sparse rows");
    features_flags.attach(features);
    auto* train_cmd = app.add_subcommand("train", "Train one seed of one variant and print its metrics record");
    train_flags.attach(train_cmd);
    train_cmd->add_option("--checkpoint", checkpoint, "Write the best-validation KAN model here");
    auto* bench = app.add_subcommand("bench", "Mean and standard deviation of test accuracy over seeds");
    bench_flags.attach(bench);
    auto* ablate = app.add_subcommand("ablate", "Run all four variants and tabulate mean ± std");
    ablate_flags.attach(ablate);
    auto* timeit = app.add_subcommand("timeit", "Wall-clock time per epoch and in total");
    timeit_flags.attach(timeit);
    auto* synth = app.add_subcommand("synth", "Generate a synthetic community hypergraph dataset");
    synth->add_option("--family", synth_flags.family, "separated | structure");
    synth->add_option("--out", synth_flags.out, "Output dataset file")->required();
    synth->add_option("--seed", synth_flags.seed, "Generator seed");
    synth->add_option("--per-class", synth_flags.opts.per_class, "Vertices per class");
    synth->add_option("--classes", synth_flags.opts.classes, "Number of classes");
    synth->add_option("--dim", synth_flags.opts.dim, "Feature dimension");
    synth->add_option("--edges-per-class", synth_flags.opts.edges_per_class, "Hyperedges per class");
    synth->add_option("--edge-size", synth_flags.opts.edge_size, "Vertices per hyperedge");
    synth->add_option("--cross-edges", synth_flags.opts.cross_edges, "Edges joining different classes");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code != 0) {
            err << app.help();
            return kExitUsage;
        }
        return kExitOk;
    }

    try {
        if (features->parsed()) return cmd_features(features_flags, out);
        if (train_cmd->parsed()) return cmd_train(train_flags, checkpoint, out);
        if (bench->parsed()) return cmd_bench(bench_flags, out);
        if (ablate->parsed()) return cmd_ablate(ablate_flags, out);
        if (timeit->parsed()) return cmd_timeit(timeit_flags, out);
        if (synth->parsed()) return cmd_synth(synth_flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidConfig& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace hyperkan
