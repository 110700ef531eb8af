#pragma once

// End-to-end pipeline: centrality selection -> feature augmentation -> GNN
// training -> embedding similarity -> gradual matching -> metrics.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netalign/align.hpp"
#include "netalign/centrality.hpp"
#include "netalign/cnfa.hpp"
#include "netalign/gnn.hpp"
#include "netalign/graph.hpp"
#include "netalign/io.hpp"
#include "netalign/metrics.hpp"
#include "netalign/rng.hpp"
#include "netalign/synth.hpp"

namespace netalign {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
    // Inputs. Without a target path the target is a noisy permuted copy of the
    // source; without a source path the source is drawn from G(er_n, er_m).
    std::string source_path;
    std::string target_path;
    std::string source_features_path;
    std::string target_features_path;
    std::string truth_path;
    std::string seeds_path;
    std::size_t er_n = 0;
    std::size_t er_m = 0;
    double edge_noise = 0.0;
    double feature_noise = 0.0;

    std::string centrality = "auto";
    std::size_t cnfa_dim = kDefaultCnfaDim;
    double gamma = 1.0;
    std::size_t bins = kDefaultHistogramBins;
    CentralityParams centrality_params;

    std::string profile = "desk";
    TrainConfig train{2, 32, 0.005, 20, 1e-4, 0, false};
    double lambda = 0.3;
    bool raw_dot = false;
    bool use_original_features = true;

    AlignConfig align;
    double seed_fraction = 0.0;  // t: share of truth pairs handed over as seeds

    std::vector<std::size_t> precision_q = {1, 5, 10};
    std::string output_dir;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0)) throw InvalidArgument("seed_fraction must lie in [0, 1]");
        if (source_path.empty() && (er_n == 0)) throw InvalidArgument("no source graph: set source or er_n/er_m");
        for (const auto* p : {&source_path, &target_path, &source_features_path, &target_features_path, &truth_path,
                              &seeds_path}) {
            if (!p->empty() && !std::filesystem::exists(*p)) throw InvalidArgument("file not found: " + *p);
        }
        if (centrality != "auto") (void)parse_measure(centrality);
        align.validate();
        train.validate();
    }
};

// Desk profile is sized for laptops; paper profile uses the published width
// and trains until the loss stops improving.
inline void apply_profile(ExperimentConfig& cfg, const std::string& profile) {
    if (profile == "desk") {
        cfg.train.hidden = 32;
        cfg.train.max_epochs = 20;
    } else if (profile == "paper") {
        cfg.train.hidden = 128;
        cfg.train.max_epochs = 1000;
    } else {
        throw InvalidArgument("unknown profile '" + profile + "' (expected desk or paper)");
    }
    cfg.profile = profile;
}

namespace detail {

inline bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw InvalidArgument("expected a boolean, got '" + v + "'");
}

template <typename T>
T parse_value(const std::string& key, const std::string& v) {
    T out{};
    if (!parse_number(trim(v), out)) throw InvalidArgument("bad value '" + v + "' for " + key);
    return out;
}

inline std::vector<std::size_t> parse_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_value<std::size_t>(key, tok));
    return out;
}

}  // namespace detail

// Names accepted by apply_setting; the CLI exposes each one as --<name with '-'>.
inline const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "source", "target", "source_features", "target_features", "truth", "seeds", "er_n", "er_m",
        "edge_noise", "feature_noise", "centrality", "cnfa_dim", "gamma", "bins", "katz_alpha", "katz_beta",
        "pagerank_alpha", "profile", "layers", "hidden", "lr", "epochs", "tol", "bias", "lambda", "raw_dot",
        "original_features", "p", "acn_eps", "strict_acn", "iterations", "pairs", "similarity", "seed_fraction",
        "precision_q", "output", "seed", "verify_incremental"};
    return keys;
}

inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    using detail::parse_bool;
    using detail::parse_value;
    if (key == "source") cfg.source_path = value;
    else if (key == "target") cfg.target_path = value;
    else if (key == "source_features") cfg.source_features_path = value;
    else if (key == "target_features") cfg.target_features_path = value;
    else if (key == "truth") cfg.truth_path = value;
    else if (key == "seeds") cfg.seeds_path = value;
    else if (key == "er_n") cfg.er_n = parse_value<std::size_t>(key, value);
    else if (key == "er_m") cfg.er_m = parse_value<std::size_t>(key, value);
    else if (key == "edge_noise") cfg.edge_noise = parse_value<double>(key, value);
    else if (key == "feature_noise") cfg.feature_noise = parse_value<double>(key, value);
    else if (key == "centrality") cfg.centrality = value;
    else if (key == "cnfa_dim") cfg.cnfa_dim = parse_value<std::size_t>(key, value);
    else if (key == "gamma") cfg.gamma = parse_value<double>(key, value);
    else if (key == "bins") cfg.bins = parse_value<std::size_t>(key, value);
    else if (key == "katz_alpha") cfg.centrality_params.katz_alpha = parse_value<double>(key, value);
    else if (key == "katz_beta") cfg.centrality_params.katz_beta = parse_value<double>(key, value);
    else if (key == "pagerank_alpha") cfg.centrality_params.pagerank_alpha = parse_value<double>(key, value);
    else if (key == "profile") apply_profile(cfg, value);
    else if (key == "layers") cfg.train.layers = parse_value<std::size_t>(key, value);
    else if (key == "hidden") cfg.train.hidden = parse_value<std::size_t>(key, value);
    else if (key == "lr") cfg.train.learning_rate = parse_value<double>(key, value);
    else if (key == "epochs") cfg.train.max_epochs = parse_value<std::size_t>(key, value);
    else if (key == "tol") cfg.train.tolerance = parse_value<double>(key, value);
    else if (key == "bias") cfg.train.bias = parse_bool(value);
    else if (key == "lambda") cfg.lambda = parse_value<double>(key, value);
    else if (key == "raw_dot") cfg.raw_dot = parse_bool(value);
    else if (key == "original_features") cfg.use_original_features = parse_bool(value);
    else if (key == "p") cfg.align.p = parse_value<double>(key, value);
    else if (key == "acn_eps") cfg.align.acn_eps = parse_value<double>(key, value);
    else if (key == "strict_acn") { if (parse_bool(value)) cfg.align.acn_eps = 0.0; }
    else if (key == "iterations") cfg.align.iterations = parse_value<std::size_t>(key, value);
    else if (key == "pairs") cfg.align.pairs_total = parse_value<std::size_t>(key, value);
    else if (key == "similarity") cfg.align.similarity = parse_similarity(value);
    else if (key == "seed_fraction") cfg.seed_fraction = parse_value<double>(key, value);
    else if (key == "precision_q") cfg.precision_q = detail::parse_list(key, value);
    else if (key == "output") cfg.output_dir = value;
    else if (key == "seed") cfg.seed = parse_value<std::uint64_t>(key, value);
    else if (key == "verify_incremental") cfg.align.verify_incremental = parse_bool(value);
    else throw InvalidArgument("unknown setting '" + key + "'");
}

// Settings in file order. A file whose first non-blank character is '{' is
// read as a flat JSON object; anything else as "key = value" lines with '#'
// comments.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    const auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        const Json doc = Json::parse(body);
        for (const auto& [key, value] : doc.items()) {
            if (value.is_string()) out.emplace_back(key, value.get<std::string>());
            else if (value.is_array()) {
                std::string joined;
                for (const auto& item : value) joined += (joined.empty() ? "" : ",") + item.dump();
                out.emplace_back(key, joined);
            } else out.emplace_back(key, value.dump());
        }
        return out;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value at line " + std::to_string(lineno), lineno);
        out.emplace_back(std::string(detail::trim(t.substr(0, eq))), std::string(detail::trim(t.substr(eq + 1))));
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> load_config_file(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

// Applies settings with "profile" first so explicit keys override it.
inline void apply_settings(ExperimentConfig& cfg, const std::vector<std::pair<std::string, std::string>>& settings) {
    for (const auto& [k, v] : settings) {
        if (k == "profile") apply_setting(cfg, k, v);
    }
    for (const auto& [k, v] : settings) {
        if (k != "profile") apply_setting(cfg, k, v);
    }
}

// NETALIGN_SEED beats every other seed source.
inline void apply_seed_env(ExperimentConfig& cfg) {
    if (const char* env = std::getenv("NETALIGN_SEED"); env && *env) apply_setting(cfg, "seed", env);
}

inline Json config_to_json(const ExperimentConfig& cfg) {
    Json j;
    j["source"] = cfg.source_path;
    j["target"] = cfg.target_path;
    j["source_features"] = cfg.source_features_path;
    j["target_features"] = cfg.target_features_path;
    j["truth"] = cfg.truth_path;
    j["seeds"] = cfg.seeds_path;
    j["er_n"] = cfg.er_n;
    j["er_m"] = cfg.er_m;
    j["edge_noise"] = cfg.edge_noise;
    j["feature_noise"] = cfg.feature_noise;
    j["centrality"] = cfg.centrality;
    j["cnfa_dim"] = cfg.cnfa_dim;
    j["gamma"] = cfg.gamma;
    j["bins"] = cfg.bins;
    j["katz_alpha"] = cfg.centrality_params.katz_alpha;
    j["katz_beta"] = cfg.centrality_params.katz_beta;
    j["pagerank_alpha"] = cfg.centrality_params.pagerank_alpha;
    j["profile"] = cfg.profile;
    j["layers"] = cfg.train.layers;
    j["hidden"] = cfg.train.hidden;
    j["lr"] = cfg.train.learning_rate;
    j["epochs"] = cfg.train.max_epochs;
    j["tol"] = cfg.train.tolerance;
    j["bias"] = cfg.train.bias;
    j["lambda"] = cfg.lambda;
    j["raw_dot"] = cfg.raw_dot;
    j["original_features"] = cfg.use_original_features;
    j["p"] = cfg.align.p;
    j["acn_eps"] = cfg.align.acn_eps;
    j["iterations"] = cfg.align.iterations;
    if (cfg.align.pairs_total) j["pairs"] = *cfg.align.pairs_total;
    else j["pairs"] = nullptr;
    j["similarity"] = std::string(similarity_name(cfg.align.similarity));
    j["seed_fraction"] = cfg.seed_fraction;
    j["precision_q"] = cfg.precision_q;
    j["seed"] = cfg.seed;
    return j;
}

struct IterationStats {
    std::size_t iteration = 0;
    std::size_t new_pairs = 0;
    std::size_t matched = 0;                // mapping size after the step, seeds included
    std::optional<std::size_t> correct;     // correct pairs in the mapping, when truth is known
};

struct PhaseTimings {
    double centrality = 0.0;
    double cnfa = 0.0;
    double training = 0.0;
    double similarity = 0.0;
    double matching = 0.0;

    double total() const { return centrality + cnfa + training + similarity + matching; }
};

struct Report {
    std::size_t source_nodes = 0;
    std::size_t target_nodes = 0;
    std::size_t seed_pairs = 0;
    std::optional<double> accuracy;
    std::vector<std::pair<std::size_t, double>> precision;  // (q, Precision@q)
    std::vector<IterationStats> iterations;
    std::string selected_centrality;
    std::vector<std::pair<std::string, std::optional<double>>> centrality_scores;
    std::vector<std::string> warnings;
    std::vector<double> loss_history_original;
    std::vector<double> loss_history_augmented;
    PhaseTimings timings;
    Json config;
    std::uint64_t seed = 0;
};

inline Json report_to_json(const Report& r, bool include_timings = true) {
    Json j;
    j["seed"] = r.seed;
    j["source_nodes"] = r.source_nodes;
    j["target_nodes"] = r.target_nodes;
    j["seed_pairs"] = r.seed_pairs;
    if (r.accuracy) j["accuracy"] = *r.accuracy;
    else j["accuracy"] = nullptr;
    Json prec = Json::object();
    for (const auto& [q, v] : r.precision) prec["precision@" + std::to_string(q)] = v;
    j["precision"] = prec;
    Json cent;
    cent["selected"] = r.selected_centrality;
    Json scores = Json::object();
    for (const auto& [name, s] : r.centrality_scores) {
        if (s) scores[name] = *s;
        else scores[name] = nullptr;
    }
    cent["scores"] = scores;
    j["centrality"] = cent;
    Json iters = Json::array();
    for (const auto& it : r.iterations) {
        Json row;
        row["iteration"] = it.iteration;
        row["new_pairs"] = it.new_pairs;
        row["matched"] = it.matched;
        if (it.correct) row["correct"] = *it.correct;
        else row["correct"] = nullptr;
        iters.push_back(row);
    }
    j["iterations"] = iters;
    j["loss_history"] = {{"original", r.loss_history_original}, {"augmented", r.loss_history_augmented}};
    j["warnings"] = r.warnings;
    if (include_timings) {
        j["timings_seconds"] = {{"centrality", r.timings.centrality}, {"cnfa", r.timings.cnfa},
                                {"training", r.timings.training},     {"similarity", r.timings.similarity},
                                {"matching", r.timings.matching},     {"total", r.timings.total()}};
    }
    j["config"] = r.config;
    return j;
}

inline std::string iterations_csv(const Report& r) {
    std::ostringstream out;
    out << "iteration,new_pairs,matched,correct\n";
    for (const auto& it : r.iterations) {
        out << it.iteration << ',' << it.new_pairs << ',' << it.matched << ',';
        if (it.correct) out << *it.correct;
        out << '\n';
    }
    return out.str();
}

struct PipelineResult {
    Report report;
    NodeMapping mapping;
    DenseMatrix final_similarity;
};

namespace detail {

class PhaseTimer {
public:
    explicit PhaseTimer(double& slot) : slot_(slot), start_(std::chrono::steady_clock::now()) {}
    ~PhaseTimer() {
        slot_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    PhaseTimer(const PhaseTimer&) = delete;
    PhaseTimer& operator=(const PhaseTimer&) = delete;

private:
    double& slot_;
    std::chrono::steady_clock::time_point start_;
};

template <typename F>
auto run_phase(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const std::exception& e) {
        throw Error(std::string("phase '") + name + "' failed: " + e.what());
    }
}

inline std::size_t count_correct(const NodeMapping& m, const NodeMapping& truth) {
    std::size_t correct = 0;
    for (const auto& [u, v] : m.pairs()) {
        const auto t = truth.target_of(u);
        if (t && *t == v) ++correct;
    }
    return correct;
}

}  // namespace detail

// floor(t * |truth|) truth pairs, chosen uniformly with the given seed.
inline NodeMapping draw_seed_pairs(const NodeMapping& truth, double fraction, std::uint64_t seed) {
    const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(truth.size())));
    Rng rng(seed);
    NodeMapping seeds;
    for (std::size_t idx : rng.sample(truth.size(), k)) {
        const auto& [u, v] = truth.pairs()[idx];
        seeds.add(u, v);
    }
    return seeds;
}

// Runs the alignment pipeline on graphs already in memory. `truth` is optional
// and only used for seeds (when `seeds` is empty and seed_fraction > 0) and metrics.
inline PipelineResult run_pipeline(const Graph& gs, const Graph& gt, const NodeMapping* truth,
                                   const ExperimentConfig& cfg, NodeMapping seeds = {}) {
    PipelineResult out;
    Report& rep = out.report;
    rep.seed = cfg.seed;
    rep.config = config_to_json(cfg);
    rep.source_nodes = gs.node_count();
    rep.target_nodes = gt.node_count();

    if (seeds.empty() && cfg.seed_fraction > 0.0) {
        if (!truth) throw InvalidArgument("seed_fraction > 0 requires a ground truth mapping");
        seeds = draw_seed_pairs(*truth, cfg.seed_fraction, derive_seed(cfg.seed, 3));
    }
    rep.seed_pairs = seeds.size();

    // Centrality selection and augmentation.
    CentralityVector cs;
    CentralityVector ct;
    {
        detail::PhaseTimer timer(rep.timings.centrality);
        detail::run_phase("centrality", [&] {
            if (cfg.centrality == "auto") {
                auto sel = select_centrality(gs, gt, cfg.gamma, cfg.bins, cfg.centrality_params);
                for (const auto& ev : sel.evaluations) {
                    rep.centrality_scores.emplace_back(
                        std::string(measure_name(ev.measure)),
                        ev.score ? std::optional<double>(ev.score->score) : std::nullopt);
                }
                rep.warnings.insert(rep.warnings.end(), sel.warnings.begin(), sel.warnings.end());
                rep.selected_centrality = std::string(measure_name(sel.selected));
                const auto& chosen = sel.chosen();
                cs = chosen.source;
                ct = chosen.target;
            } else {
                const Measure m = parse_measure(cfg.centrality);
                cs = compute_centrality(gs, m, cfg.centrality_params);
                ct = compute_centrality(gt, m, cfg.centrality_params);
                rep.selected_centrality = std::string(measure_name(m));
                rep.centrality_scores.emplace_back(rep.selected_centrality,
                                                   selection_score(cs, ct, cfg.gamma, cfg.bins));
            }
            return 0;
        });
    }
    AugmentedPair aug;
    {
        detail::PhaseTimer timer(rep.timings.cnfa);
        aug = detail::run_phase("cnfa", [&] { return augment_features(cs, ct, cfg.cnfa_dim); });
        if (aug.source.degenerate) rep.warnings.push_back("cnfa: all centralities equal; every node in bin 1");
    }

    // Two GNNs: one on the original features (when both networks have them),
    // one on the augmented features.
    std::optional<EmbeddingPair> original;
    EmbeddingPair augmented;
    {
        detail::PhaseTimer timer(rep.timings.training);
        detail::run_phase("training", [&] {
            TrainConfig tc = cfg.train;
            if (cfg.use_original_features && gs.has_features() && gt.has_features()) {
                tc.seed = derive_seed(cfg.seed, 1);
                auto r = train_gnn(gs, gt, *gs.features(), *gt.features(), tc);
                rep.loss_history_original = r.loss_history;
                original = EmbeddingPair{std::move(r.source), std::move(r.target)};
            }
            tc.seed = derive_seed(cfg.seed, 2);
            auto r = train_gnn(gs, gt, aug.source.matrix, aug.target.matrix, tc);
            rep.loss_history_augmented = r.loss_history;
            augmented = EmbeddingPair{std::move(r.source), std::move(r.target)};
            return 0;
        });
    }
    DenseMatrix s_emb;
    {
        detail::PhaseTimer timer(rep.timings.similarity);
        s_emb = detail::run_phase("similarity", [&] {
            return embedding_similarity(original ? &*original : nullptr, augmented, cfg.lambda, !cfg.raw_dot);
        });
    }
    AlignResult aligned;
    {
        detail::PhaseTimer timer(rep.timings.matching);
        aligned = detail::run_phase("matching", [&] {
            return gradual_align(gs, gt, s_emb, seeds, cfg.align, [&](const IterationSnapshot& snap) {
                IterationStats st;
                st.iteration = snap.iteration;
                st.new_pairs = snap.selected.size();
                st.matched = snap.mapping->size();
                if (truth) st.correct = detail::count_correct(*snap.mapping, *truth);
                rep.iterations.push_back(st);
            });
        });
    }

    if (truth && !truth->empty()) {
        rep.accuracy = accuracy(aligned.mapping, *truth);
        for (std::size_t q : cfg.precision_q) {
            if (q >= 1 && q <= gt.node_count()) rep.precision.emplace_back(q, precision_at_q(aligned.final_similarity, *truth, q));
        }
    }
    out.mapping = std::move(aligned.mapping);
    out.final_similarity = std::move(aligned.final_similarity);
    return out;
}

struct LoadedInputs {
    Graph source;
    Graph target;
    std::optional<NodeMapping> truth;
    NodeMapping seeds;
};

// Reads or synthesizes the graph pair described by `cfg`.
inline LoadedInputs load_inputs(const ExperimentConfig& cfg) {
    LoadedInputs in;
    if (!cfg.source_path.empty()) in.source = load_edgelist(cfg.source_path);
    else in.source = er_graph(cfg.er_n, cfg.er_m, derive_seed(cfg.seed, 5));
    if (!cfg.source_features_path.empty()) {
        in.source.set_features(load_feature_matrix(cfg.source_features_path, in.source.node_count()));
    }
    if (!cfg.target_path.empty()) {
        in.target = load_edgelist(cfg.target_path);
        if (!cfg.target_features_path.empty()) {
            in.target.set_features(load_feature_matrix(cfg.target_features_path, in.target.node_count()));
        }
        if (!cfg.truth_path.empty()) in.truth = load_mapping(cfg.truth_path);
    } else {
        auto pair = noisy_copy(in.source, {cfg.edge_noise, cfg.feature_noise, derive_seed(cfg.seed, 4)});
        in.target = std::move(pair.target);
        in.truth = std::move(pair.truth);
    }
    if (!cfg.seeds_path.empty()) in.seeds = load_mapping(cfg.seeds_path);
    return in;
}

// Loads inputs, runs the pipeline and, when output_dir is set, writes
// report.json, iterations.csv and mapping.txt there.
inline PipelineResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    auto in = detail::run_phase("input", [&] { return load_inputs(cfg); });
    auto result = run_pipeline(in.source, in.target, in.truth ? &*in.truth : nullptr, cfg, in.seeds);
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        const std::filesystem::path dir(cfg.output_dir);
        detail::open_output(dir / "report.json") << report_to_json(result.report).dump(2) << '\n';
        detail::open_output(dir / "iterations.csv") << iterations_csv(result.report);
        save_mapping(dir / "mapping.txt", result.mapping);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Scaling benchmark
// ---------------------------------------------------------------------------

struct BenchRow {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double seconds = 0.0;  // pipeline time, best of the repeats
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::optional<double> slope;  // least-squares slope of log(seconds) vs log(edges)
};

inline const std::vector<std::pair<std::size_t, std::size_t>>& default_scaling_sizes() {
    static const std::vector<std::pair<std::size_t, std::size_t>> sizes = {
        {100, 1000}, {500, 10000}, {1000, 100000}, {2000, 500000}, {4000, 1000000}, {6000, 2000000}};
    return sizes;
}

// Fixed small configuration used by bench_scaling.
inline ExperimentConfig bench_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.centrality = "degree";
    cfg.train.layers = 2;
    cfg.train.hidden = 32;
    cfg.train.max_epochs = 20;
    cfg.train.tolerance = 0.0;
    cfg.precision_q = {};
    cfg.seed = seed;
    return cfg;
}

inline std::optional<double> loglog_slope(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (const auto& r : rows) {
        mx += std::log(static_cast<double>(r.edges));
        my += std::log(r.seconds);
    }
    mx /= static_cast<double>(rows.size());
    my /= static_cast<double>(rows.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log(static_cast<double>(r.edges)) - mx;
        sxy += dx * (std::log(r.seconds) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

// For each (n, m): an ER graph and a permuted identical copy, aligned with the
// fixed bench configuration. Graph generation is not timed.
inline BenchResult bench_scaling(const std::vector<std::pair<std::size_t, std::size_t>>& sizes, std::uint64_t seed,
                                 std::size_t repeats = 1, const ExperimentConfig* config = nullptr) {
    if (sizes.empty()) throw InvalidArgument("bench_scaling needs at least one size");
    const ExperimentConfig cfg = config ? *config : bench_config(seed);
    BenchResult out;
    for (const auto& [n, m] : sizes) {
        const Graph gs = er_graph(n, m, derive_seed(seed, n * 31 + m));
        const auto pair = noisy_copy(gs, {0.0, 0.0, derive_seed(seed, m)});
        double best = INFINITY;
        for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
            const auto res = run_pipeline(gs, pair.target, &pair.truth, cfg);
            best = std::min(best, res.report.timings.total());
        }
        out.rows.push_back({n, m, best});
    }
    out.slope = loglog_slope(out.rows);
    return out;
}

inline std::string bench_csv(const BenchResult& b) {
    std::ostringstream out;
    out << "n,m,seconds\n";
    for (const auto& r : b.rows) out << r.nodes << ',' << r.edges << ',' << detail::format_double(r.seconds) << '\n';
    return out.str();
}

}  // namespace netalign
