// netalign command line: align, synth, centrality, bench.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "netalign/netalign.hpp"

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

std::string flag_name(const std::string& key) {
    std::string out = key;
    for (char& c : out) {
        if (c == '_') c = '-';
    }
    return "--" + out;
}

// Registers one string option per setting key. Boolean keys also accept a bare flag.
struct SettingFlags {
    std::map<std::string, std::string> values;
    std::map<std::string, bool> switches;
    std::string config_path;

    void attach(CLI::App& app) {
        app.add_option("-c,--config", config_path, "key=value or JSON config file")->check(CLI::ExistingFile);
        static const std::vector<std::string> switch_keys = {"raw_dot", "strict_acn", "bias", "verify_incremental"};
        for (const auto& key : netalign::setting_keys()) {
            if (std::find(switch_keys.begin(), switch_keys.end(), key) != switch_keys.end()) {
                switches[key] = false;
                app.add_flag(flag_name(key), switches[key]);
            } else {
                values[key];
                app.add_option(flag_name(key), values[key]);
            }
        }
    }

    // Config file first, then command-line overrides, then NETALIGN_SEED.
    netalign::ExperimentConfig build(const CLI::App& app) const {
        std::map<std::string, std::string> merged;
        Settings ordered;
        if (!config_path.empty()) {
            for (const auto& [k, v] : netalign::load_config_file(config_path)) merged[k] = v;
        }
        for (const auto& [k, v] : values) {
            if (app.count(flag_name(k)) > 0) merged[k] = v;
        }
        for (const auto& [k, on] : switches) {
            if (app.count(flag_name(k)) > 0) merged[k] = on ? "true" : "false";
        }
        for (const auto& kv : merged) ordered.push_back(kv);
        netalign::ExperimentConfig cfg;
        netalign::apply_settings(cfg, ordered);
        netalign::apply_seed_env(cfg);
        return cfg;
    }
};

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        std::size_t n = 0;
        std::size_t m = 0;
        if (colon == std::string::npos || !netalign::detail::parse_number(item.substr(0, colon), n) ||
            !netalign::detail::parse_number(std::string_view(item).substr(colon + 1), m)) {
            throw netalign::InvalidArgument("bad size '" + item + "' (expected n:m)");
        }
        out.emplace_back(n, m);
    }
    return out;
}

int run_align(const SettingFlags& flags, const CLI::App& app) {
    const auto cfg = flags.build(app);
    const auto result = netalign::run_experiment(cfg);
    std::cout << netalign::report_to_json(result.report).dump(2) << '\n';
    return 0;
}

void write_centrality_rows(std::ostream& out, const char* which, const netalign::CentralitySelection& sel,
                           bool source) {
    const auto n = (source ? sel.evaluations.front().source : sel.evaluations.front().target).values.size();
    for (std::size_t u = 0; u < n; ++u) {
        out << which << ',' << u;
        for (const auto& ev : sel.evaluations) {
            const auto& vals = (source ? ev.source : ev.target).values;
            out << ',';
            if (ev.score) out << netalign::detail::format_double(vals[u]);
        }
        out << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised network alignment"};
    app.require_subcommand(1);

    auto* align = app.add_subcommand("align", "Run the full alignment pipeline");
    SettingFlags align_flags;
    align_flags.attach(*align);

    auto* synth = app.add_subcommand("synth", "Generate synthetic graph pairs");
    synth->require_subcommand(1);
    auto* noisy = synth->add_subcommand("noisy", "Noisy permuted copy of a graph");
    std::string noisy_input;
    std::string noisy_features;
    std::string noisy_out;
    double noisy_edge = 0.0;
    double noisy_feature = 0.0;
    std::uint64_t noisy_seed = 0;
    noisy->add_option("input", noisy_input, "Edge list")->required()->check(CLI::ExistingFile);
    noisy->add_option("--features", noisy_features, "Feature matrix of the input")->check(CLI::ExistingFile);
    noisy->add_option("--edge-noise", noisy_edge, "Fraction of edges removed");
    noisy->add_option("--feature-noise", noisy_feature, "Fraction of feature rows zeroed");
    noisy->add_option("--seed", noisy_seed);
    noisy->add_option("-o,--output", noisy_out, "Output directory")->required();

    auto* er = synth->add_subcommand("er", "Erdos-Renyi G(n, m) graph");
    std::size_t er_n = 0;
    std::size_t er_m = 0;
    std::uint64_t er_seed = 0;
    std::string er_out;
    er->add_option("-n,--nodes", er_n)->required();
    er->add_option("-m,--edges", er_m)->required();
    er->add_option("--seed", er_seed);
    er->add_option("-o,--output", er_out, "Edge list path (stdout when omitted)");

    auto* cent = app.add_subcommand("centrality", "Per-node centralities and selection scores");
    std::string cent_source;
    std::string cent_target;
    double cent_gamma = 1.0;
    std::size_t cent_bins = netalign::kDefaultHistogramBins;
    std::string cent_scores_out;
    cent->add_option("source", cent_source)->required()->check(CLI::ExistingFile);
    cent->add_option("target", cent_target)->required()->check(CLI::ExistingFile);
    cent->add_option("--gamma", cent_gamma);
    cent->add_option("--bins", cent_bins);
    cent->add_option("--scores", cent_scores_out, "Write the scores CSV here instead of stdout");

    auto* bench = app.add_subcommand("bench", "Runtime scaling on identical ER pairs");
    std::string bench_sizes;
    std::uint64_t bench_seed = 0;
    std::size_t bench_repeats = 1;
    std::string bench_out;
    bench->add_option("--sizes", bench_sizes, "Comma-separated n:m list (default: the six reference sizes)");
    bench->add_option("--seed", bench_seed);
    bench->add_option("--repeats", bench_repeats, "Runs per size; the fastest is kept");
    bench->add_option("-o,--output", bench_out, "CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*align) return run_align(align_flags, *align);

        if (*noisy) {
            auto g = netalign::load_edgelist(noisy_input);
            if (!noisy_features.empty()) g.set_features(netalign::load_feature_matrix(noisy_features, g.node_count()));
            const auto pair = netalign::noisy_copy(g, {noisy_edge, noisy_feature, noisy_seed});
            const std::filesystem::path dir(noisy_out);
            std::filesystem::create_directories(dir);
            netalign::save_edgelist(dir / "target.txt", pair.target);
            netalign::save_mapping(dir / "truth.txt", pair.truth);
            if (pair.target.has_features()) netalign::save_feature_matrix(dir / "target_features.csv", *pair.target.features());
            return 0;
        }
        if (*er) {
            const auto g = netalign::er_graph(er_n, er_m, er_seed);
            if (er_out.empty()) netalign::write_edgelist(std::cout, g);
            else netalign::save_edgelist(er_out, g);
            return 0;
        }
        if (*cent) {
            const auto gs = netalign::load_edgelist(cent_source);
            const auto gt = netalign::load_edgelist(cent_target);
            const auto sel = netalign::select_centrality(gs, gt, cent_gamma, cent_bins);
            std::cout << "graph,node";
            for (auto m : netalign::kAllMeasures) std::cout << ',' << netalign::measure_name(m);
            std::cout << '\n';
            write_centrality_rows(std::cout, "source", sel, true);
            write_centrality_rows(std::cout, "target", sel, false);

            std::ostringstream scores;
            scores << "measure,var_source,var_target,kl,score,selected,error\n";
            for (const auto& ev : sel.evaluations) {
                scores << netalign::measure_name(ev.measure) << ',';
                if (ev.score) {
                    scores << netalign::detail::format_double(ev.score->var_s) << ','
                           << netalign::detail::format_double(ev.score->var_t) << ','
                           << netalign::detail::format_double(ev.score->kl) << ','
                           << netalign::detail::format_double(ev.score->score);
                } else {
                    scores << ",,,";
                }
                scores << ',' << (ev.measure == sel.selected ? 1 : 0) << ",\"" << ev.error << "\"\n";
            }
            if (cent_scores_out.empty()) std::cout << '\n' << scores.str();
            else netalign::detail::open_output(cent_scores_out) << scores.str();
            for (const auto& w : sel.warnings) std::cerr << "warning: " << w << '\n';
            return 0;
        }
        if (*bench) {
            const auto sizes = bench_sizes.empty() ? netalign::default_scaling_sizes() : parse_sizes(bench_sizes);
            const auto res = netalign::bench_scaling(sizes, bench_seed, bench_repeats);
            if (bench_out.empty()) std::cout << netalign::bench_csv(res);
            else netalign::detail::open_output(bench_out) << netalign::bench_csv(res);
            if (res.slope) std::cerr << "log-log slope: " << *res.slope << '\n';
            else std::cerr << "log-log slope: undefined (fewer than two sizes)\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
