#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "netalign/error.hpp"

namespace netalign {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Undirected, unweighted simple graph in CSR form with optional node features.
class Graph {
public:
    Graph() = default;

    // Builds from an edge list. Duplicate and reversed edges collapse into one;
    // self-loops and out-of-range ids are rejected.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges) {
        std::vector<std::vector<NodeId>> adj(node_count);
        for (const auto& [u, v] : edges) {
            if (u >= node_count || v >= node_count) {
                throw InvalidArgument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                      ") out of range for " + std::to_string(node_count) + " nodes");
            }
            if (u == v) throw InvalidArgument("self-loop on node " + std::to_string(u));
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return from_adjacency(std::move(adj));
    }

    static Graph from_adjacency(std::vector<std::vector<NodeId>> adj) {
        Graph g;
        g.offsets_.assign(adj.size() + 1, 0);
        for (std::size_t u = 0; u < adj.size(); ++u) {
            auto& row = adj[u];
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            g.offsets_[u + 1] = g.offsets_[u] + row.size();
        }
        g.targets_.reserve(g.offsets_.back());
        for (std::size_t u = 0; u < adj.size(); ++u) {
            for (NodeId v : adj[u]) {
                if (v == u) throw InvalidArgument("self-loop on node " + std::to_string(u));
                g.targets_.push_back(v);
            }
        }
        return g;
    }

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    bool empty() const noexcept { return node_count() == 0; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

    bool has_edge(NodeId u, NodeId v) const {
        const auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    // Each undirected edge once, as (min, max), in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (NodeId u = 0; u < node_count(); ++u) {
            for (NodeId v : neighbors(u)) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    const std::optional<DenseMatrix>& features() const noexcept { return features_; }
    bool has_features() const noexcept { return features_.has_value(); }

    void set_features(DenseMatrix x) {
        if (static_cast<std::size_t>(x.rows()) != node_count()) {
            throw InvalidArgument("feature matrix has " + std::to_string(x.rows()) + " rows, graph has " +
                                  std::to_string(node_count()) + " nodes");
        }
        features_ = std::move(x);
    }
    void clear_features() { features_.reset(); }

    // Adjacency plus `self_weight` on the diagonal.
    SparseMatrix adjacency(double self_weight = 0.0) const {
        const auto n = static_cast<Eigen::Index>(node_count());
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(targets_.size() + node_count());
        for (NodeId u = 0; u < node_count(); ++u) {
            if (self_weight != 0.0) trips.emplace_back(u, u, self_weight);
            for (NodeId v : neighbors(u)) trips.emplace_back(u, v, 1.0);
        }
        SparseMatrix a(n, n);
        a.setFromTriplets(trips.begin(), trips.end());
        return a;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.offsets_ != b.offsets_ || a.targets_ != b.targets_) return false;
        if (a.features_.has_value() != b.features_.has_value()) return false;
        return !a.features_ || *a.features_ == *b.features_;
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::optional<DenseMatrix> features_;
};

// Partial one-to-one correspondence between source and target nodes.
class NodeMapping {
public:
    NodeMapping() = default;

    explicit NodeMapping(std::span<const Edge> pairs) {
        for (const auto& [u, v] : pairs) add(u, v);
    }

    void add(NodeId source, NodeId target) {
        if (forward_.contains(source)) {
            throw InvalidArgument("mapping not injective: source " + std::to_string(source) + " repeated");
        }
        if (targets_.contains(target)) {
            throw InvalidArgument("mapping not injective: target " + std::to_string(target) + " repeated");
        }
        forward_.emplace(source, target);
        targets_.insert(target);
        pairs_.emplace_back(source, target);
    }

    std::optional<NodeId> target_of(NodeId source) const {
        const auto it = forward_.find(source);
        if (it == forward_.end()) return std::nullopt;
        return it->second;
    }
    bool has_source(NodeId u) const { return forward_.contains(u); }
    bool has_target(NodeId v) const { return targets_.contains(v); }

    const std::vector<Edge>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

    // Dense lookup table; kUnmapped where the source has no partner.
    static constexpr NodeId kUnmapped = static_cast<NodeId>(-1);
    std::vector<NodeId> forward_table(std::size_t source_count) const {
        std::vector<NodeId> table(source_count, kUnmapped);
        for (const auto& [u, v] : pairs_) {
            if (u < source_count) table[u] = v;
        }
        return table;
    }

    friend bool operator==(const NodeMapping& a, const NodeMapping& b) { return a.pairs_ == b.pairs_; }

private:
    std::vector<Edge> pairs_;
    std::unordered_map<NodeId, NodeId> forward_;
    std::unordered_set<NodeId> targets_;
};

inline bool is_permutation_of_range(std::span<const NodeId> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (NodeId p : perm) {
        if (p >= perm.size() || seen[p]) return false;
        seen[p] = true;
    }
    return true;
}

inline std::vector<NodeId> inverse_permutation(std::span<const NodeId> perm) {
    if (!is_permutation_of_range(perm)) throw InvalidArgument("permutation is not a bijection on [0, n)");
    std::vector<NodeId> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<NodeId>(i);
    return inv;
}

// Relabels node u as perm[u]; feature rows move with their nodes.
inline Graph permute_graph(const Graph& g, std::span<const NodeId> perm) {
    if (perm.size() != g.node_count() || !is_permutation_of_range(perm)) {
        throw InvalidArgument("permutation is not a bijection on [0, n)");
    }
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto& row = adj[perm[u]];
        for (NodeId v : g.neighbors(u)) row.push_back(perm[v]);
    }
    Graph out = Graph::from_adjacency(std::move(adj));
    if (g.has_features()) {
        const DenseMatrix& x = *g.features();
        DenseMatrix y(x.rows(), x.cols());
        for (NodeId u = 0; u < g.node_count(); ++u) y.row(perm[u]) = x.row(u);
        out.set_features(std::move(y));
    }
    return out;
}

// Row permutation matching permute_graph: output row perm[u] is input row u.
inline DenseMatrix permute_rows(const DenseMatrix& x, std::span<const NodeId> perm) {
    DenseMatrix y(x.rows(), x.cols());
    for (std::size_t u = 0; u < perm.size(); ++u) y.row(perm[u]) = x.row(static_cast<Eigen::Index>(u));
    return y;
}

// D^{-1/2} Acc D^{-1/2} for l = 1..layers, where Acc = sum_{k=1..l} (A + I)^k and
// D is its row-sum diagonal. Every row sum is at least 1 because of the self-loops.
inline std::vector<DenseMatrix> normalized_adjacency_targets(const Graph& g, std::size_t layers) {
    if (g.empty()) throw InvalidArgument("normalized adjacency of an empty graph");
    if (layers < 1) throw InvalidArgument("layer index must be >= 1");

    const SparseMatrix a_bar = g.adjacency(1.0);
    std::vector<DenseMatrix> out;
    out.reserve(layers);

    SparseMatrix power = a_bar;
    SparseMatrix accum = a_bar;
    for (std::size_t l = 1; l <= layers; ++l) {
        if (l > 1) {
            power = (power * a_bar).pruned();
            accum += power;
        }
        Eigen::VectorXd inv_sqrt(accum.rows());
        for (Eigen::Index i = 0; i < accum.rows(); ++i) {
            const double row_sum = accum.row(i).sum();
            inv_sqrt[i] = 1.0 / std::sqrt(row_sum);
        }
        DenseMatrix t = DenseMatrix(accum);
        t = inv_sqrt.asDiagonal() * t * inv_sqrt.asDiagonal();
        out.push_back(std::move(t));
    }
    return out;
}

inline DenseMatrix normalized_adjacency_target(const Graph& g, std::size_t layer) {
    auto all = normalized_adjacency_targets(g, layer);
    return std::move(all.back());
}

}  // namespace netalign
