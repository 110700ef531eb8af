#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "netalign/experiment.hpp"

using namespace netalign;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("netalign_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.er_n = 60;
    cfg.er_m = 180;
    cfg.train.hidden = 8;
    cfg.train.max_epochs = 5;
    cfg.seed = 3;
    return cfg;
}

}  // namespace

TEST(Config, KeyValueText) {
    const auto s = parse_config_text("# comment\nhidden = 16\n\nlr=0.01\n");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], (std::pair<std::string, std::string>{"hidden", "16"}));
    EXPECT_EQ(s[1], (std::pair<std::string, std::string>{"lr", "0.01"}));
    EXPECT_THROW(parse_config_text("hidden 16\n"), ParseError);
}

TEST(Config, JsonText) {
    const auto s = parse_config_text(R"({"hidden": 16, "centrality": "degree", "raw_dot": true, "precision_q": [1, 3]})");
    ExperimentConfig cfg;
    apply_settings(cfg, s);
    EXPECT_EQ(cfg.train.hidden, 16u);
    EXPECT_EQ(cfg.centrality, "degree");
    EXPECT_TRUE(cfg.raw_dot);
    EXPECT_EQ(cfg.precision_q, (std::vector<std::size_t>{1, 3}));
}

TEST(Config, ExplicitKeysOverrideProfile) {
    ExperimentConfig cfg;
    apply_settings(cfg, {{"hidden", "48"}, {"profile", "paper"}});
    EXPECT_EQ(cfg.profile, "paper");
    EXPECT_EQ(cfg.train.hidden, 48u);
    EXPECT_EQ(cfg.train.max_epochs, 1000u);
}

TEST(Config, StrictAcnZeroesSmoothing) {
    ExperimentConfig cfg;
    apply_setting(cfg, "strict_acn", "true");
    EXPECT_EQ(cfg.align.acn_eps, 0.0);
}

TEST(Config, UnknownKeyAndBadValueRejected) {
    ExperimentConfig cfg;
    EXPECT_THROW(apply_setting(cfg, "hiden", "3"), InvalidArgument);
    EXPECT_THROW(apply_setting(cfg, "hidden", "three"), InvalidArgument);
    EXPECT_THROW(apply_setting(cfg, "similarity", "cosine"), InvalidArgument);
}

TEST(Config, EnvironmentSeedWins) {
    ExperimentConfig cfg;
    cfg.seed = 5;
    ::setenv("NETALIGN_SEED", "91", 1);
    apply_seed_env(cfg);
    ::unsetenv("NETALIGN_SEED");
    EXPECT_EQ(cfg.seed, 91u);
}

TEST(Config, ValidateChecksFilesAndFraction) {
    ExperimentConfig cfg = small_config();
    cfg.seed_fraction = 1.5;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg.seed_fraction = 0.0;
    cfg.source_path = "/nonexistent/graph.txt";
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Experiment, ReportHasMetricsAndScores) {
    const auto r = run_experiment(small_config());
    ASSERT_TRUE(r.report.accuracy.has_value());
    EXPECT_GE(*r.report.accuracy, 0.0);
    EXPECT_LE(*r.report.accuracy, 1.0);
    EXPECT_EQ(r.report.precision.size(), 3u);
    EXPECT_EQ(r.report.centrality_scores.size(), 6u);
    for (std::size_t i = 1; i < r.report.precision.size(); ++i) {
        EXPECT_GE(r.report.precision[i].second, r.report.precision[i - 1].second);
    }
    const Json j = report_to_json(r.report);
    EXPECT_TRUE(j.contains("accuracy"));
    EXPECT_TRUE(j["precision"].contains("precision@5"));
    EXPECT_TRUE(j["precision"].contains("precision@10"));
    EXPECT_TRUE(j.contains("timings_seconds"));
}

TEST(Experiment, ReportsIdenticalApartFromTimings) {
    const auto a = run_experiment(small_config());
    const auto b = run_experiment(small_config());
    EXPECT_EQ(report_to_json(a.report, false).dump(), report_to_json(b.report, false).dump());
    EXPECT_EQ(iterations_csv(a.report), iterations_csv(b.report));
}

TEST(Experiment, SeedFractionInjectsFloorOfTruth) {
    ExperimentConfig cfg = small_config();
    cfg.seed_fraction = 0.05;
    const auto r = run_experiment(cfg);
    EXPECT_EQ(r.report.seed_pairs, 3u);  // floor(0.05 * 60)
    ASSERT_FALSE(r.report.iterations.empty());
    // seeds come from the truth, so every step reports them among the correct pairs
    EXPECT_GE(*r.report.iterations.front().correct, 3u);
    EXPECT_EQ(r.mapping.size(), 60u);
}

TEST(Experiment, DrawSeedPairsAreTruthPairs) {
    NodeMapping truth;
    for (NodeId u = 0; u < 40; ++u) truth.add(u, (u * 7) % 40);
    const auto seeds = draw_seed_pairs(truth, 0.25, 11);
    EXPECT_EQ(seeds.size(), 10u);
    for (const auto& [u, v] : seeds.pairs()) EXPECT_EQ(truth.target_of(u), v);
}

TEST(Experiment, WritesArtifacts) {
    const auto dir = scratch_dir("artifacts");
    ExperimentConfig cfg = small_config();
    cfg.output_dir = dir.string();
    run_experiment(cfg);
    EXPECT_TRUE(fs::exists(dir / "report.json"));
    EXPECT_TRUE(fs::exists(dir / "mapping.txt"));
    const auto csv = slurp(dir / "iterations.csv");
    EXPECT_EQ(csv.rfind("iteration,new_pairs,matched,correct\n", 0), 0u);
    EXPECT_TRUE(Json::accept(slurp(dir / "report.json")));
}

TEST(Experiment, LoadsFilesAndUsesOriginalFeatures) {
    const auto dir = scratch_dir("files");
    Graph gs = er_graph(30, 70, 4);
    DenseMatrix xs = DenseMatrix::Ones(30, 2);
    for (Eigen::Index i = 0; i < 30; ++i) xs(i, 1) = static_cast<double>(i % 3);
    gs.set_features(xs);
    const auto pair = noisy_copy(gs, {0.0, 0.0, 9});
    save_edgelist(dir / "s.txt", gs);
    save_edgelist(dir / "t.txt", pair.target);
    save_feature_matrix(dir / "xs.csv", xs);
    save_feature_matrix(dir / "xt.csv", *pair.target.features());
    save_mapping(dir / "truth.txt", pair.truth);

    ExperimentConfig cfg;
    apply_settings(cfg, {{"source", (dir / "s.txt").string()},
                         {"target", (dir / "t.txt").string()},
                         {"source_features", (dir / "xs.csv").string()},
                         {"target_features", (dir / "xt.csv").string()},
                         {"truth", (dir / "truth.txt").string()},
                         {"hidden", "8"},
                         {"epochs", "5"}});
    const auto r = run_experiment(cfg);
    EXPECT_FALSE(r.report.loss_history_original.empty());
    EXPECT_FALSE(r.report.loss_history_augmented.empty());
    EXPECT_TRUE(r.report.accuracy.has_value());
}

TEST(Experiment, PhaseErrorsNameThePhase) {
    ExperimentConfig cfg = small_config();
    cfg.cnfa_dim = 1;
    try {
        run_experiment(cfg);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("phase 'cnfa'"), std::string::npos) << e.what();
    }
}

TEST(Bench, SingleSizeHasNoSlope) {
    const auto r = bench_scaling({{50, 100}}, 1);
    EXPECT_EQ(r.rows.size(), 1u);
    EXPECT_FALSE(r.slope.has_value());
    EXPECT_EQ(bench_csv(r).rfind("n,m,seconds\n50,100,", 0), 0u);
}

TEST(Bench, SlopeOfExactPowerLaw) {
    std::vector<BenchRow> rows = {{0, 10, 2.0}, {0, 100, 20.0}, {0, 1000, 200.0}};
    EXPECT_NEAR(*loglog_slope(rows), 1.0, 1e-12);
}

TEST(Cli, AlignSynthCentralityBench) {
    const auto dir = scratch_dir("cli");
    const std::string cli = NETALIGN_CLI_PATH;
    const auto run = [&](const std::string& args) {
        return std::system((cli + " " + args + " > " + (dir / "out.txt").string() + " 2>&1").c_str());
    };
    ASSERT_EQ(run("synth er -n 40 -m 90 --seed 2 -o " + (dir / "g.txt").string()), 0);
    ASSERT_EQ(run("synth noisy " + (dir / "g.txt").string() + " --edge-noise 0.1 --seed 3 -o " + (dir / "pair").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "pair" / "truth.txt"));
    ASSERT_EQ(run("centrality " + (dir / "g.txt").string() + " " + (dir / "pair" / "target.txt").string()), 0);
    EXPECT_NE(slurp(dir / "out.txt").find("measure,var_source,var_target,kl,score"), std::string::npos);

    std::ofstream(dir / "cfg.txt") << "hidden = 8\nepochs = 3\nseed = 4\n";
    ASSERT_EQ(run("align -c " + (dir / "cfg.txt").string() + " --source " + (dir / "g.txt").string() + " --target " +
                  (dir / "pair" / "target.txt").string() + " --truth " + (dir / "pair" / "truth.txt").string() +
                  " --cnfa-dim 10 --raw-dot --output " + (dir / "run").string()),
              0);
    const Json report = Json::parse(slurp(dir / "run" / "report.json"));
    EXPECT_EQ(report["config"]["hidden"], 8);
    EXPECT_EQ(report["config"]["cnfa_dim"], 10);
    EXPECT_EQ(report["config"]["raw_dot"], true);
    EXPECT_EQ(report["seed"], 4);

    ASSERT_EQ(run("bench --sizes 30:60,60:120"), 0);
    EXPECT_NE(slurp(dir / "out.txt").find("log-log slope"), std::string::npos);
    EXPECT_NE(run("align --hidden nope --er-n 10 --er-m 10"), 0);
}
