#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netalign/graph.hpp"
#include "netalign/rng.hpp"

namespace netalign {

// Weights of an L-layer GIN whose per-layer MLP is one linear map + ReLU.
// Layer l computes H_l = ReLU(((1 + eps) I + A) H_{l-1} W_l^T + 1 b_l^T).
struct GnnParams {
    std::vector<DenseMatrix> weights;      // W_l is hidden x in_width(l)
    std::vector<Eigen::VectorXd> biases;   // empty, or one vector of size hidden per layer
    double epsilon = 0.0;                  // GIN self-weight, not trained

    std::size_t layers() const noexcept { return weights.size(); }
    bool has_bias() const noexcept { return !biases.empty(); }
    Eigen::Index input_width() const { return weights.empty() ? 0 : weights.front().cols(); }

    // Glorot-uniform weights, zero biases.
    static GnnParams glorot(Eigen::Index in_width, Eigen::Index hidden, std::size_t layers, bool bias,
                            std::uint64_t seed) {
        if (layers < 1) throw InvalidArgument("GNN needs at least one layer");
        if (hidden < 1 || in_width < 1) throw InvalidArgument("GNN widths must be >= 1");
        Rng rng(seed);
        GnnParams p;
        Eigen::Index fan_in = in_width;
        for (std::size_t l = 0; l < layers; ++l) {
            const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + hidden));
            DenseMatrix w(hidden, fan_in);
            for (Eigen::Index i = 0; i < w.rows(); ++i) {
                for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-limit, limit);
            }
            p.weights.push_back(std::move(w));
            if (bias) p.biases.push_back(Eigen::VectorXd::Zero(hidden));
            fan_in = hidden;
        }
        return p;
    }

    // Same shapes, all zeros.
    GnnParams zeros_like() const {
        GnnParams z;
        z.epsilon = epsilon;
        for (const auto& w : weights) z.weights.push_back(DenseMatrix::Zero(w.rows(), w.cols()));
        for (const auto& b : biases) z.biases.push_back(Eigen::VectorXd::Zero(b.size()));
        return z;
    }

    friend bool operator==(const GnnParams& a, const GnnParams& b) {
        return a.weights == b.weights && a.biases == b.biases && a.epsilon == b.epsilon;
    }
};

struct EmbeddingStack {
    std::vector<DenseMatrix> layers;  // H_1 .. H_L, each n x hidden
};

// Per-network data reused across training epochs.
struct NetworkContext {
    SparseMatrix propagation;          // A + (1 + eps) I
    std::vector<DenseMatrix> targets;  // normalized adjacency target per layer
    DenseMatrix input;
};

inline NetworkContext make_network_context(const Graph& g, const DenseMatrix& x, std::size_t layers,
                                           double epsilon = 0.0) {
    if (static_cast<std::size_t>(x.rows()) != g.node_count()) {
        throw InvalidArgument("input features have " + std::to_string(x.rows()) + " rows, graph has " +
                              std::to_string(g.node_count()) + " nodes");
    }
    return {g.adjacency(1.0 + epsilon), normalized_adjacency_targets(g, layers), x};
}

namespace detail {

struct ForwardCache {
    std::vector<DenseMatrix> aggregated;  // M_l = prop * H_{l-1}
    std::vector<DenseMatrix> pre;         // P_l = M_l W_l^T + b_l
    std::vector<DenseMatrix> out;         // H_l = ReLU(P_l)
};

inline void check_shapes(const GnnParams& p, const DenseMatrix& x) {
    if (p.layers() == 0) throw InvalidArgument("GNN has no layers");
    if (x.cols() != p.input_width()) {
        throw InvalidArgument("input width " + std::to_string(x.cols()) + " does not match layer-1 width " +
                              std::to_string(p.input_width()));
    }
}

inline ForwardCache forward(const GnnParams& p, const SparseMatrix& prop, const DenseMatrix& x) {
    check_shapes(p, x);
    ForwardCache c;
    const DenseMatrix* h = &x;
    for (std::size_t l = 0; l < p.layers(); ++l) {
        c.aggregated.push_back(prop * (*h));
        DenseMatrix pre = c.aggregated.back() * p.weights[l].transpose();
        if (p.has_bias()) pre.rowwise() += p.biases[l].transpose();
        c.out.push_back(pre.cwiseMax(0.0));
        c.pre.push_back(std::move(pre));
        h = &c.out.back();
    }
    return c;
}

}  // namespace detail

inline EmbeddingStack gin_forward(const GnnParams& params, const Graph& g, const DenseMatrix& x) {
    if (static_cast<std::size_t>(x.rows()) != g.node_count()) {
        throw InvalidArgument("input features have " + std::to_string(x.rows()) + " rows, graph has " +
                              std::to_string(g.node_count()) + " nodes");
    }
    auto cache = detail::forward(params, g.adjacency(1.0 + params.epsilon), x);
    return {std::move(cache.out)};
}

// sum_l || T_l - H_l H_l^T ||_F  (Frobenius norm, not squared)
inline double reconstruction_loss(const EmbeddingStack& stack, std::span<const DenseMatrix> targets) {
    if (stack.layers.size() != targets.size()) throw InvalidArgument("stack / target layer count mismatch");
    double loss = 0.0;
    for (std::size_t l = 0; l < targets.size(); ++l) {
        const DenseMatrix& h = stack.layers[l];
        DenseMatrix r = targets[l];
        r.noalias() -= h * h.transpose();
        loss += r.norm();
    }
    return loss;
}

inline double reconstruction_loss(const EmbeddingStack& stack, const Graph& g) {
    const auto targets = normalized_adjacency_targets(g, stack.layers.size());
    return reconstruction_loss(stack, targets);
}

struct LossGradient {
    double loss = 0.0;
    GnnParams gradient;
};

// Loss summed over every network in `nets` (all share `params`) and its exact
// gradient. Zero residuals and ReLU kinks take subgradient 0.
inline LossGradient loss_gradient(const GnnParams& params, std::span<const NetworkContext> nets) {
    LossGradient out{0.0, params.zeros_like()};
    const std::size_t layers = params.layers();
    for (const auto& net : nets) {
        if (net.targets.size() != layers) throw InvalidArgument("network context built for a different depth");
        const auto cache = detail::forward(params, net.propagation, net.input);

        DenseMatrix carry;  // dLoss/dH_l flowing down from layer l+1
        for (std::size_t li = layers; li-- > 0;) {
            const DenseMatrix& h = cache.out[li];
            DenseMatrix r = net.targets[li];
            r.noalias() -= h * h.transpose();
            const double f = r.norm();
            out.loss += f;

            DenseMatrix grad_h = DenseMatrix::Zero(h.rows(), h.cols());
            if (f > 0.0) grad_h.noalias() = (-2.0 / f) * (r * h);
            if (carry.size() != 0) grad_h += carry;

            const DenseMatrix grad_pre = (cache.pre[li].array() > 0.0).select(grad_h.array(), 0.0).matrix();
            out.gradient.weights[li].noalias() += grad_pre.transpose() * cache.aggregated[li];
            if (params.has_bias()) out.gradient.biases[li] += grad_pre.colwise().sum().transpose();
            if (li > 0) {
                const DenseMatrix grad_agg = grad_pre * params.weights[li];
                carry = net.propagation * grad_agg;  // propagation matrix is symmetric
            }
        }
    }
    return out;
}

inline LossGradient loss_gradient(const GnnParams& params, const Graph& gs, const Graph& gt, const DenseMatrix& xs,
                                  const DenseMatrix& xt) {
    const NetworkContext nets[] = {make_network_context(gs, xs, params.layers(), params.epsilon),
                                   make_network_context(gt, xt, params.layers(), params.epsilon)};
    return loss_gradient(params, nets);
}

struct TrainConfig {
    std::size_t layers = 2;
    std::size_t hidden = 128;
    double learning_rate = 0.005;
    std::size_t max_epochs = 50;
    double tolerance = 1e-4;  // stop when relative loss improvement falls below this
    std::uint64_t seed = 0;
    bool bias = false;

    void validate() const {
        if (layers < 1) throw InvalidArgument("layers must be >= 1");
        if (hidden < 1) throw InvalidArgument("hidden width must be >= 1");
        if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
    }
};

struct TrainResult {
    GnnParams params;
    EmbeddingStack source;
    EmbeddingStack target;
    std::vector<double> loss_history;  // loss before each update, plus the final loss
};

namespace detail {

// Adam with the usual (0.9, 0.999, 1e-8) moments.
class Adam {
public:
    explicit Adam(const GnnParams& shape, double lr) : lr_(lr), m_(shape.zeros_like()), v_(shape.zeros_like()) {}

    void step(GnnParams& p, const GnnParams& g) {
        ++t_;
        const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
        for (std::size_t l = 0; l < p.weights.size(); ++l) update(p.weights[l], g.weights[l], m_.weights[l], v_.weights[l], c1, c2);
        for (std::size_t l = 0; l < p.biases.size(); ++l) update(p.biases[l], g.biases[l], m_.biases[l], v_.biases[l], c1, c2);
    }

private:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEps = 1e-8;

    template <typename M>
    void update(M& p, const M& g, M& m, M& v, double c1, double c2) {
        m = kBeta1 * m + (1.0 - kBeta1) * g;
        v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
        p.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
    }

    double lr_;
    std::size_t t_ = 0;
    GnnParams m_;
    GnnParams v_;
};

}  // namespace detail

// One parameter set trained on the summed loss of both networks.
inline TrainResult train_gnn(const Graph& gs, const Graph& gt, const DenseMatrix& xs, const DenseMatrix& xt,
                             const TrainConfig& cfg) {
    cfg.validate();
    if (xs.cols() != xt.cols()) throw InvalidArgument("source and target features must share column width");
    TrainResult result;
    result.params = GnnParams::glorot(xs.cols(), static_cast<Eigen::Index>(cfg.hidden), cfg.layers, cfg.bias, cfg.seed);
    const NetworkContext nets[] = {make_network_context(gs, xs, cfg.layers, result.params.epsilon),
                                   make_network_context(gt, xt, cfg.layers, result.params.epsilon)};
    detail::Adam adam(result.params, cfg.learning_rate);

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        auto lg = loss_gradient(result.params, nets);
        if (!std::isfinite(lg.loss)) {
            throw Error("training diverged at epoch " + std::to_string(epoch) + " (loss " + std::to_string(lg.loss) + ")");
        }
        if (!result.loss_history.empty()) {
            const double prev = result.loss_history.back();
            result.loss_history.push_back(lg.loss);
            if (prev > 0.0 && (prev - lg.loss) / prev < cfg.tolerance) break;
        } else {
            result.loss_history.push_back(lg.loss);
        }
        adam.step(result.params, lg.gradient);
    }

    auto fs = detail::forward(result.params, nets[0].propagation, xs);
    auto ft = detail::forward(result.params, nets[1].propagation, xt);
    result.source.layers = std::move(fs.out);
    result.target.layers = std::move(ft.out);
    return result;
}

struct EmbeddingPair {
    EmbeddingStack source;
    EmbeddingStack target;
};

namespace detail {

inline DenseMatrix row_normalized(const DenseMatrix& h) {
    DenseMatrix out = h;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double n = out.row(i).norm();
        if (n > 0.0) out.row(i) /= n;
    }
    return out;
}

}  // namespace detail

// sum_l Hs_l Ht_l^T + lambda * sum_l Ĥs_l Ĥt_l^T. `original` may be null when the
// networks carry no node features, leaving only the lambda-weighted term.
// With `normalize`, rows are L2-normalized per layer (cosine similarity).
inline DenseMatrix embedding_similarity(const EmbeddingPair* original, const EmbeddingPair& augmented, double lambda,
                                        bool normalize = true) {
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
    const auto check = [](const EmbeddingPair& p) {
        if (p.source.layers.size() != p.target.layers.size() || p.source.layers.empty()) {
            throw InvalidArgument("embedding stacks have mismatched layer counts");
        }
        for (std::size_t l = 0; l < p.source.layers.size(); ++l) {
            if (p.source.layers[l].cols() != p.target.layers[l].cols()) {
                throw InvalidArgument("embedding stacks have mismatched widths at layer " + std::to_string(l + 1));
            }
        }
    };
    check(augmented);
    if (original) {
        check(*original);
        if (original->source.layers.size() != augmented.source.layers.size()) {
            throw InvalidArgument("original and augmented stacks have different layer counts");
        }
    }

    // Stack every layer side by side so the whole sum is one product.
    std::vector<std::pair<const DenseMatrix*, const DenseMatrix*>> blocks;
    std::vector<double> scale;
    if (original) {
        for (std::size_t l = 0; l < original->source.layers.size(); ++l) {
            blocks.emplace_back(&original->source.layers[l], &original->target.layers[l]);
            scale.push_back(1.0);
        }
    }
    for (std::size_t l = 0; l < augmented.source.layers.size(); ++l) {
        blocks.emplace_back(&augmented.source.layers[l], &augmented.target.layers[l]);
        scale.push_back(lambda);
    }
    Eigen::Index width = 0;
    for (const auto& b : blocks) width += b.first->cols();
    const Eigen::Index ns = blocks.front().first->rows();
    const Eigen::Index nt = blocks.front().second->rows();
    DenseMatrix left(ns, width);
    DenseMatrix right(nt, width);
    Eigen::Index col = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Eigen::Index w = blocks[b].first->cols();
        if (blocks[b].first->rows() != ns || blocks[b].second->rows() != nt) {
            throw InvalidArgument("embedding layers have inconsistent row counts");
        }
        if (normalize) {
            left.middleCols(col, w) = scale[b] * detail::row_normalized(*blocks[b].first);
            right.middleCols(col, w) = detail::row_normalized(*blocks[b].second);
        } else {
            left.middleCols(col, w) = scale[b] * *blocks[b].first;
            right.middleCols(col, w) = *blocks[b].second;
        }
        col += w;
    }
    return left * right.transpose();
}

}  // namespace netalign
