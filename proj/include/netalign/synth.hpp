#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netalign/graph.hpp"
#include "netalign/rng.hpp"

namespace netalign {

struct NoiseSpec {
    double edge_noise = 0.0;     // fraction of target edges removed
    double feature_noise = 0.0;  // fraction of target feature rows zeroed
    std::uint64_t seed = 0;

    void validate() const {
        if (!(edge_noise >= 0.0 && edge_noise <= 1.0)) throw InvalidArgument("edge_noise must lie in [0, 1]");
        if (!(feature_noise >= 0.0 && feature_noise <= 1.0)) {
            throw InvalidArgument("feature_noise must lie in [0, 1]");
        }
    }
};

struct NoisyPair {
    Graph target;
    NodeMapping truth;  // source u -> target perm[u], for every node
};

// Permuted copy of `g` with floor(edge_noise*|E|) edges removed and
// floor(feature_noise*n) feature rows zeroed. The source is left untouched.
inline NoisyPair noisy_copy(const Graph& g, const NoiseSpec& spec) {
    spec.validate();
    if (g.empty()) throw InvalidArgument("noisy_copy of an empty graph");
    Rng rng(spec.seed);
    const std::size_t n = g.node_count();

    std::vector<NodeId> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeId>(i);
    rng.shuffle(perm);
    Graph permuted = permute_graph(g, perm);

    auto edges = permuted.edges();
    const auto removed = static_cast<std::size_t>(std::floor(spec.edge_noise * static_cast<double>(edges.size())));
    std::vector<bool> drop(edges.size(), false);
    for (std::size_t idx : rng.sample(edges.size(), removed)) drop[idx] = true;
    std::vector<Edge> kept;
    kept.reserve(edges.size() - removed);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!drop[i]) kept.push_back(edges[i]);
    }

    NoisyPair out;
    out.target = Graph::from_edges(n, kept);
    if (permuted.has_features()) {
        DenseMatrix x = *permuted.features();
        const auto zeroed = static_cast<std::size_t>(std::floor(spec.feature_noise * static_cast<double>(n)));
        for (std::size_t row : rng.sample(n, zeroed)) x.row(static_cast<Eigen::Index>(row)).setZero();
        out.target.set_features(std::move(x));
    }
    for (std::size_t u = 0; u < n; ++u) out.truth.add(static_cast<NodeId>(u), perm[u]);
    return out;
}

// G(n, m): exactly m distinct edges drawn uniformly. Dense requests sample the
// complement instead so the rejection loop stays short.
inline Graph er_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    if (m > max_edges) {
        throw InvalidArgument("er_graph: m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                              std::to_string(max_edges));
    }
    Rng rng(seed);
    const bool complement = m > max_edges / 2;
    const std::uint64_t draws = complement ? max_edges - m : m;

    auto key = [n](NodeId u, NodeId v) { return static_cast<std::uint64_t>(u) * n + v; };
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(draws) * 2);
    std::vector<Edge> picked;
    picked.reserve(static_cast<std::size_t>(draws));
    while (picked.size() < draws) {
        auto u = static_cast<NodeId>(rng.below(n));
        auto v = static_cast<NodeId>(rng.below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (chosen.insert(key(u, v)).second) picked.emplace_back(u, v);
    }
    if (!complement) return Graph::from_edges(n, picked);

    std::vector<Edge> edges;
    edges.reserve(m);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (!chosen.contains(key(u, v))) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace netalign
