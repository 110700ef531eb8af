#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "netalign/graph.hpp"

namespace netalign {

using CountMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;

// Adds the ACNs contributed by one matched pair (a, b): every (u, v) with
// u ~ a in the source and v ~ b in the target gains one.
inline void add_pair_counts(CountMatrix& counts, const Graph& gs, const Graph& gt, NodeId a, NodeId b) {
    for (NodeId u : gs.neighbors(a)) {
        for (NodeId v : gt.neighbors(b)) ++counts(u, v);
    }
}

// counts(u, v) = |{a in N(u) : mapping(a) defined and mapping(a) in N(v)}|
inline CountMatrix acn_counts(const Graph& gs, const Graph& gt, const NodeMapping& mapping) {
    CountMatrix counts = CountMatrix::Zero(static_cast<Eigen::Index>(gs.node_count()),
                                           static_cast<Eigen::Index>(gt.node_count()));
    for (const auto& [a, b] : mapping.pairs()) {
        if (a >= gs.node_count() || b >= gt.node_count()) throw InvalidArgument("mapping refers to a missing node");
        add_pair_counts(counts, gs, gt, a, b);
    }
    return counts;
}

// (count + eps)^p
inline DenseMatrix acn_similarity(const CountMatrix& counts, double p, double eps = 0.0) {
    if (!(p > 0.0)) throw InvalidArgument("ACN exponent p must be > 0");
    if (!(eps >= 0.0)) throw InvalidArgument("ACN smoothing must be >= 0");
    return (counts.cast<double>().array() + eps).pow(p).matrix();
}

// ACN / |pi(N_u) ∪ N_v|, where pi(N_u) holds only the images of mapped
// neighbours. An empty union gives 0.
inline DenseMatrix jaccard_similarity(const Graph& gs, const Graph& gt, const NodeMapping& mapping) {
    const CountMatrix counts = acn_counts(gs, gt, mapping);
    std::vector<std::int32_t> mapped_degree(gs.node_count(), 0);
    for (NodeId u = 0; u < gs.node_count(); ++u) {
        for (NodeId a : gs.neighbors(u)) mapped_degree[u] += mapping.has_source(a) ? 1 : 0;
    }
    DenseMatrix s(counts.rows(), counts.cols());
    for (Eigen::Index u = 0; u < counts.rows(); ++u) {
        for (Eigen::Index v = 0; v < counts.cols(); ++v) {
            const auto uni = mapped_degree[u] + static_cast<std::int32_t>(gt.degree(static_cast<NodeId>(v))) - counts(u, v);
            s(u, v) = uni > 0 ? static_cast<double>(counts(u, v)) / static_cast<double>(uni) : 0.0;
        }
    }
    return s;
}

inline DenseMatrix combined_similarity(const DenseMatrix& s_emb, const DenseMatrix& s_acn) {
    if (s_emb.rows() != s_acn.rows() || s_emb.cols() != s_acn.cols()) {
        throw InvalidArgument("similarity shape mismatch: " + std::to_string(s_emb.rows()) + "x" +
                              std::to_string(s_emb.cols()) + " vs " + std::to_string(s_acn.rows()) + "x" +
                              std::to_string(s_acn.cols()));
    }
    return s_emb.cwiseProduct(s_acn);
}

struct AlignState {
    NodeMapping mapping;
    std::size_t iteration = 0;
    std::vector<bool> source_matched;
    std::vector<bool> target_matched;
    DenseMatrix similarity;

    AlignState(std::size_t ns, std::size_t nt) : source_matched(ns, false), target_matched(nt, false) {}

    void add(NodeId u, NodeId v) {
        mapping.add(u, v);
        source_matched[u] = true;
        target_matched[v] = true;
    }
};

// Repeated global argmax over unmatched rows and columns; ties go to the
// smallest (row, column). Chosen pairs are appended to state.mapping.
//
// Row maxima sit in a heap and are refreshed lazily when their column gets
// taken, which gives the same picks as a full rescan after every pick.
inline std::vector<Edge> greedy_select(const DenseMatrix& s, AlignState& state, std::size_t count) {
    if (static_cast<std::size_t>(s.rows()) != state.source_matched.size() ||
        static_cast<std::size_t>(s.cols()) != state.target_matched.size()) {
        throw InvalidArgument("similarity matrix does not match alignment state");
    }
    struct Candidate {
        double value;
        NodeId row;
        NodeId col;
    };
    const auto worse = [](const Candidate& a, const Candidate& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.row != b.row) return a.row > b.row;
        return a.col > b.col;
    };
    const auto best_in_row = [&](NodeId r) -> std::optional<Candidate> {
        std::optional<Candidate> best;
        for (Eigen::Index c = 0; c < s.cols(); ++c) {
            if (state.target_matched[c]) continue;
            if (!best || s(r, c) > best->value) best = Candidate{s(r, c), r, static_cast<NodeId>(c)};
        }
        return best;
    };

    std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        if (state.source_matched[r]) continue;
        if (auto c = best_in_row(static_cast<NodeId>(r))) heap.push(*c);
    }

    std::vector<Edge> picked;
    while (picked.size() < count && !heap.empty()) {
        const Candidate top = heap.top();
        heap.pop();
        if (state.target_matched[top.col]) {
            if (auto c = best_in_row(top.row)) heap.push(*c);
            continue;
        }
        state.add(top.row, top.col);
        picked.emplace_back(top.row, top.col);
    }
    return picked;
}

enum class StructuralSimilarity { acn, jaccard };

inline constexpr std::string_view similarity_name(StructuralSimilarity s) {
    return s == StructuralSimilarity::acn ? "acn" : "jaccard";
}

inline StructuralSimilarity parse_similarity(std::string_view name) {
    if (name == "acn") return StructuralSimilarity::acn;
    if (name == "jaccard") return StructuralSimilarity::jaccard;
    throw InvalidArgument("unknown similarity '" + std::string(name) + "'");
}

struct AlignConfig {
    double p = 1.5;
    double acn_eps = 1.0;  // 0 reproduces the unsmoothed ACN^p
    std::size_t iterations = 10;
    std::optional<std::size_t> pairs_total;  // default: min(n_s, n_t) - |seeds|
    StructuralSimilarity similarity = StructuralSimilarity::acn;
    bool verify_incremental = false;  // recompute ACN counts from scratch each step and compare

    void validate() const {
        if (!(p > 0.0)) throw InvalidArgument("p must be > 0");
        if (!(acn_eps >= 0.0)) throw InvalidArgument("acn_eps must be >= 0");
        if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
    }
};

struct IterationSnapshot {
    std::size_t iteration = 0;  // 1-based
    std::vector<Edge> selected;
    const NodeMapping* mapping = nullptr;
    const CountMatrix* counts = nullptr;
};

struct AlignResult {
    NodeMapping mapping;
    DenseMatrix final_similarity;          // S_emb ⊙ S_struct after the last step
    std::vector<std::vector<Edge>> steps;  // pairs committed at each step
};

// Gradual matching: each step commits ceil(pairs_total / iterations) pairs
// from the current similarity, then refreshes the structural term from the
// enlarged mapping. Without seeds the first step uses S_emb alone.
inline AlignResult gradual_align(const Graph& gs, const Graph& gt, const DenseMatrix& s_emb, const NodeMapping& seeds,
                                 const AlignConfig& cfg,
                                 const std::function<void(const IterationSnapshot&)>& observer = {}) {
    cfg.validate();
    const std::size_t ns = gs.node_count();
    const std::size_t nt = gt.node_count();
    if (static_cast<std::size_t>(s_emb.rows()) != ns || static_cast<std::size_t>(s_emb.cols()) != nt) {
        throw InvalidArgument("embedding similarity shape does not match the graphs");
    }
    const std::size_t capacity = std::min(ns, nt);
    if (seeds.size() > capacity) throw InvalidArgument("more seeds than alignable nodes");
    const std::size_t total = cfg.pairs_total.value_or(capacity - seeds.size());
    if (seeds.size() + total > capacity) {
        throw InvalidArgument("pairs_total " + std::to_string(total) + " plus " + std::to_string(seeds.size()) +
                              " seeds exceeds min(n_s, n_t) = " + std::to_string(capacity));
    }

    AlignState state(ns, nt);
    for (const auto& [u, v] : seeds.pairs()) {
        if (u >= ns || v >= nt) throw InvalidArgument("seed pair refers to a missing node");
        state.add(u, v);
    }
    CountMatrix counts = acn_counts(gs, gt, state.mapping);

    const auto structural = [&]() -> DenseMatrix {
        if (cfg.similarity == StructuralSimilarity::acn) return acn_similarity(counts, cfg.p, cfg.acn_eps);
        return (jaccard_similarity(gs, gt, state.mapping).array() + cfg.acn_eps).matrix();
    };

    state.similarity = seeds.empty() ? s_emb : combined_similarity(s_emb, structural());

    AlignResult result;
    if (total > 0) {
        const std::size_t per_step = (total + cfg.iterations - 1) / cfg.iterations;
        const std::size_t step_count = (total + per_step - 1) / per_step;
        std::size_t remaining = total;
        for (std::size_t step = 1; step <= step_count; ++step) {
            state.iteration = step;
            auto picked = greedy_select(state.similarity, state, std::min(per_step, remaining));
            remaining -= picked.size();
            for (const auto& [a, b] : picked) add_pair_counts(counts, gs, gt, a, b);
            if (cfg.verify_incremental && counts != acn_counts(gs, gt, state.mapping)) {
                throw Error("incremental ACN counts diverged from full recomputation at step " + std::to_string(step));
            }
            state.similarity = combined_similarity(s_emb, structural());
            if (observer) observer({step, picked, &state.mapping, &counts});
            result.steps.push_back(std::move(picked));
            if (remaining == 0) break;
        }
    }
    result.mapping = std::move(state.mapping);
    result.final_similarity = std::move(state.similarity);
    return result;
}

}  // namespace netalign
