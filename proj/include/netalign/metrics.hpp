#pragma once

#include <cstddef>
#include <string>

#include "netalign/graph.hpp"

namespace netalign {

// Fraction of ground-truth pairs reproduced exactly by `result`.
inline double accuracy(const NodeMapping& result, const NodeMapping& truth) {
    if (truth.empty()) throw InvalidArgument("accuracy needs a nonempty ground truth");
    std::size_t correct = 0;
    for (const auto& [u, v] : result.pairs()) {
        const auto t = truth.target_of(u);
        if (t && *t == v) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

// Fraction of truth pairs (u, v) whose score S(u, v) is at least the q-th
// largest value of row u, i.e. fewer than q entries of the row beat it.
inline double precision_at_q(const DenseMatrix& s, const NodeMapping& truth, std::size_t q) {
    if (truth.empty()) throw InvalidArgument("precision@q needs a nonempty ground truth");
    if (q < 1 || q > static_cast<std::size_t>(s.cols())) {
        throw InvalidArgument("q = " + std::to_string(q) + " outside [1, n_t]");
    }
    std::size_t hits = 0;
    for (const auto& [u, v] : truth.pairs()) {
        if (u >= s.rows() || v >= s.cols()) throw InvalidArgument("truth pair outside the similarity matrix");
        const double target = s(u, v);
        std::size_t better = 0;
        for (Eigen::Index j = 0; j < s.cols(); ++j) better += s(u, j) > target ? 1 : 0;
        if (better < q) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace netalign
