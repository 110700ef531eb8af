#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "netalign/centrality.hpp"
#include "netalign/synth.hpp"
#include "oracles.hpp"

using namespace netalign;

namespace {

Graph from(std::size_t n, std::vector<Edge> e) { return Graph::from_edges(n, e); }

std::vector<NodeId> random_perm(std::size_t n, std::uint64_t seed) {
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rng rng(seed);
    rng.shuffle(p);
    return p;
}

}  // namespace

TEST(Centrality, DegreeOnPath) {
    const auto c = compute_centrality(from(3, {{0, 1}, {1, 2}}), Measure::degree);
    EXPECT_EQ(c.values, (std::vector<double>{1, 2, 1}));
}

TEST(Centrality, PageRankOnK2IsHalf) {
    const auto c = compute_centrality(from(2, {{0, 1}}), Measure::pagerank);
    EXPECT_NEAR(c.values[0], 0.5, 1e-12);
    EXPECT_NEAR(c.values[1], 0.5, 1e-12);
}

TEST(Centrality, BetweennessOnPath) {
    const auto c = compute_centrality(from(3, {{0, 1}, {1, 2}}), Measure::betweenness);
    EXPECT_EQ(c.values, (std::vector<double>{0, 1, 0}));
}

TEST(Centrality, BetweennessOnStarCountsLeafPairs) {
    const auto c = compute_centrality(from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), Measure::betweenness);
    EXPECT_DOUBLE_EQ(c.values[0], 6.0);
    for (int i = 1; i < 5; ++i) EXPECT_EQ(c.values[i], 0.0);
}

TEST(Centrality, BetweennessMatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 8 + seed * 2;
        const Graph g = er_graph(n, n + seed * 3, seed);
        const auto lib = compute_centrality(g, Measure::betweenness).values;
        const auto ref = oracle::betweenness(g);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(lib[i], ref[i], 1e-9 * std::max(1.0, ref[i]));
    }
}

TEST(Centrality, ClosenessOnPathAndDisconnected) {
    const auto c = compute_centrality(from(3, {{0, 1}, {1, 2}}), Measure::closeness);
    EXPECT_DOUBLE_EQ(c.values[1], 1.0);
    EXPECT_DOUBLE_EQ(c.values[0], 2.0 / 3.0);
    // two K2 components: r = 2, sum d = 1, scaled by 1/3
    const auto d = compute_centrality(from(4, {{0, 1}, {2, 3}}), Measure::closeness);
    for (double v : d.values) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(Centrality, EigenvectorOnStar) {
    // principal eigenvector of a star with k leaves: centre sqrt(k) times a leaf
    const auto c = compute_centrality(from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), Measure::eigenvector);
    EXPECT_NEAR(c.values[0] / c.values[1], 2.0, 1e-6);
    double norm = 0.0;
    for (double v : c.values) norm += v * v;
    EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(Centrality, EigenvectorRejectsEdgelessGraph) {
    EXPECT_THROW(compute_centrality(Graph::from_edges(3, {}), Measure::eigenvector), InvalidArgument);
}

TEST(Centrality, KatzOnK2ClosedForm) {
    // c = alpha * c + beta  =>  c = beta / (1 - alpha)
    const auto c = compute_centrality(from(2, {{0, 1}}), Measure::katz);
    EXPECT_NEAR(c.values[0], 1.0 / 0.9, 1e-7);
}

TEST(Centrality, KatzDivergenceReported) {
    CentralityParams p;
    p.katz_alpha = 0.5;  // above 1/lambda_max = 1/4 for K5
    std::vector<Edge> e;
    for (NodeId i = 0; i < 5; ++i) {
        for (NodeId j = i + 1; j < 5; ++j) e.emplace_back(i, j);
    }
    EXPECT_THROW(compute_centrality(Graph::from_edges(5, e), Measure::katz, p), ConvergenceError);
}

TEST(Centrality, PageRankSumsToOneWithIsolatedNodes) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = er_graph(40, 30, seed);  // sparse: several isolated nodes
        const auto c = compute_centrality(g, Measure::pagerank);
        EXPECT_NEAR(std::accumulate(c.values.begin(), c.values.end(), 0.0), 1.0, 1e-8);
    }
}

TEST(Centrality, AllMeasuresFiniteAndNonnegative) {
    const Graph g = er_graph(30, 60, 3);
    for (Measure m : kAllMeasures) {
        for (double v : compute_centrality(g, m).values) {
            EXPECT_TRUE(std::isfinite(v)) << measure_name(m);
            EXPECT_GE(v, 0.0) << measure_name(m);
        }
    }
}

TEST(Centrality, PermutationInvariance) {
    const Graph g = er_graph(40, 90, 17);
    const auto perm = random_perm(40, 2);
    const Graph h = permute_graph(g, perm);
    for (Measure m : kAllMeasures) {
        const auto base = permute_centrality(compute_centrality(g, m), perm);
        const auto moved = compute_centrality(h, m);
        for (std::size_t i = 0; i < 40; ++i) {
            if (m == Measure::degree) EXPECT_EQ(moved.values[i], base.values[i]);
            else EXPECT_NEAR(moved.values[i], base.values[i], 1e-9) << measure_name(m);
        }
    }
}

TEST(Centrality, ParseMeasureNames) {
    for (Measure m : kAllMeasures) EXPECT_EQ(parse_measure(measure_name(m)), m);
    EXPECT_THROW(parse_measure("bogus"), InvalidArgument);
}

TEST(Histogram, TwoValuesSplitEvenly) {
    const std::vector<double> v = {0.0, 1.0};
    const auto h = centrality_histogram(v, 0.0, 1.0, 2, 0.0);
    EXPECT_EQ(h.mass, (std::vector<double>{0.5, 0.5}));
}

TEST(Histogram, SmoothingKeepsEmptyBinsPositive) {
    const std::vector<double> v = {0.0, 0.0, 0.0};
    const auto h = centrality_histogram(v, 0.0, 1.0, 2);
    EXPECT_NEAR(h.mass[0], 1.0, 1e-9);
    EXPECT_GT(h.mass[1], 0.0);
    EXPECT_NEAR(h.mass[0] + h.mass[1], 1.0, 1e-15);
}

TEST(Histogram, KlOfIdenticalIsZero) {
    const std::vector<double> v = {0.1, 0.5, 0.9, 0.2};
    const auto h = centrality_histogram(v, 0.0, 1.0, 10);
    EXPECT_EQ(kl_divergence(h, h), 0.0);
}

TEST(SelectionScore, DegenerateRangeGivesInverseE) {
    const CentralityVector a{Measure::degree, {3, 3, 3}};
    EXPECT_DOUBLE_EQ(selection_score(a, a), std::exp(-1.0));
}

TEST(SelectionScore, AsymmetricUnderSwap) {
    const CentralityVector a{Measure::degree, {0, 0, 0, 0, 1, 5, 9}};
    const CentralityVector b{Measure::degree, {0, 2, 4, 6, 8, 9, 9}};
    EXPECT_NE(selection_score(a, b), selection_score(b, a));
}

TEST(SelectionScore, IdenticalGraphsPickLargestVariance) {
    const Graph g = er_graph(50, 120, 4);
    const auto sel = select_centrality(g, g);
    double best = -1.0;
    Measure arg = Measure::degree;
    for (const auto& ev : sel.evaluations) {
        ASSERT_TRUE(ev.score.has_value());
        EXPECT_LT(ev.score->kl, 1e-12);
        const double v = ev.score->var_s + ev.score->var_t;
        if (v > best) best = v, arg = ev.measure;
    }
    EXPECT_EQ(sel.selected, arg);
}

TEST(SelectionScore, RegularPairAvoidsDegree) {
    Rng rng(12);
    const Graph g = oracle::random_regular(20, 3, rng);
    const auto sel = select_centrality(g, g);
    EXPECT_NE(sel.selected, Measure::degree);
    for (const auto& ev : sel.evaluations) {
        if (ev.measure == Measure::degree) {
            EXPECT_DOUBLE_EQ(ev.score->score, std::exp(-1.0));
        }
    }
}

TEST(SelectionScore, FailedMeasureBecomesWarning) {
    CentralityParams p;
    p.katz_alpha = 0.9;
    const Graph g = er_graph(30, 100, 1);
    const auto sel = select_centrality(g, g, 1.0, 10, p);
    EXPECT_FALSE(sel.warnings.empty());
    EXPECT_NE(sel.selected, Measure::katz);
    for (const auto& ev : sel.evaluations) {
        if (ev.measure == Measure::katz) {
            EXPECT_FALSE(ev.score.has_value());
        }
    }
}
