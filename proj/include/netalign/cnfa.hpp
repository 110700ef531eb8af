#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "netalign/centrality.hpp"
#include "netalign/graph.hpp"

namespace netalign {

inline constexpr std::size_t kDefaultCnfaDim = 15;

// Bin positions within this relative distance of a bin edge snap onto the edge,
// so values that differ only by summation-order rounding land in the same bin.
inline constexpr double kBinEdgeSnap = 1e-9;

struct AugmentedFeatures {
    DenseMatrix matrix;             // n x d one-hot rows
    std::vector<std::size_t> hot;   // 1-based hot column per node
    double bin_width = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    bool degenerate = false;        // all centralities equal; every node in bin 1
};

struct AugmentedPair {
    AugmentedFeatures source;
    AugmentedFeatures target;
};

namespace detail {

inline std::size_t hot_index(double c, double c_min, double width, std::size_t d) {
    double pos = (c - c_min) / width;
    const double edge = std::round(pos);
    if (std::abs(pos - edge) <= kBinEdgeSnap * std::max(1.0, std::abs(edge))) pos = edge;
    const double raw = std::ceil(pos);
    if (!(raw >= 1.0)) return 1;
    if (raw >= static_cast<double>(d)) return d;
    return static_cast<std::size_t>(raw);
}

inline AugmentedFeatures encode(std::span<const double> values, double c_min, double c_max, std::size_t d) {
    AugmentedFeatures f;
    f.c_min = c_min;
    f.c_max = c_max;
    f.degenerate = !(c_max > c_min);
    f.bin_width = f.degenerate ? 0.0 : (c_max - c_min) / static_cast<double>(d);
    f.matrix = DenseMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(d));
    f.hot.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t k = f.degenerate ? 1 : hot_index(values[i], c_min, f.bin_width, d);
        f.hot[i] = k;
        f.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1)) = 1.0;
    }
    return f;
}

}  // namespace detail

// Equal-width one-hot binning with width (c_max - c_min)/d over the union of
// both networks' values. Node i goes to bin ceil((c_i - c_min)/w), clamped to [1, d].
inline AugmentedPair augment_features(const CentralityVector& cs, const CentralityVector& ct,
                                      std::size_t d = kDefaultCnfaDim) {
    if (d < 2) throw InvalidArgument("cnfa dimension must be >= 2");
    if (cs.measure != ct.measure) throw InvalidArgument("augment_features across different measures");
    if (cs.values.empty() && ct.values.empty()) throw InvalidArgument("augment_features of empty vectors");
    double lo = INFINITY;
    double hi = -INFINITY;
    for (double v : cs.values) lo = std::min(lo, v), hi = std::max(hi, v);
    for (double v : ct.values) lo = std::min(lo, v), hi = std::max(hi, v);
    return {detail::encode(cs.values, lo, hi, d), detail::encode(ct.values, lo, hi, d)};
}

}  // namespace netalign
