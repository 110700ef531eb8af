#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netalign/graph.hpp"

namespace netalign {

// Declaration order is the tie-break order used by select_centrality.
enum class Measure { degree, eigenvector, katz, betweenness, pagerank, closeness };

inline constexpr std::array<Measure, 6> kAllMeasures = {Measure::degree,      Measure::eigenvector,
                                                        Measure::katz,        Measure::betweenness,
                                                        Measure::pagerank,    Measure::closeness};

inline constexpr std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::degree: return "degree";
        case Measure::eigenvector: return "eigenvector";
        case Measure::katz: return "katz";
        case Measure::betweenness: return "betweenness";
        case Measure::pagerank: return "pagerank";
        case Measure::closeness: return "closeness";
    }
    return "unknown";
}

inline Measure parse_measure(std::string_view name) {
    for (Measure m : kAllMeasures) {
        if (measure_name(m) == name) return m;
    }
    throw InvalidArgument("unknown centrality measure '" + std::string(name) + "'");
}

struct CentralityParams {
    double eigenvector_tol = 1e-8;
    std::size_t eigenvector_max_iter = 1000;
    double katz_alpha = 0.1;
    double katz_beta = 1.0;
    double pagerank_alpha = 0.85;
    double pagerank_tol = 1e-10;
    // Iteration cap shared by Katz and PageRank.
    std::size_t max_iter = 1000;

    void validate() const {
        if (!(eigenvector_tol > 0.0) || !(pagerank_tol > 0.0)) throw InvalidArgument("tolerances must be > 0");
        if (!(pagerank_alpha >= 0.0 && pagerank_alpha < 1.0)) throw InvalidArgument("pagerank_alpha must lie in [0, 1)");
        if (!(katz_alpha > 0.0)) throw InvalidArgument("katz_alpha must be > 0");
    }
};

struct CentralityVector {
    Measure measure = Measure::degree;
    std::vector<double> values;
};

namespace detail {

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

inline std::vector<double> degree_centrality(const Graph& g) {
    std::vector<double> c(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) c[u] = static_cast<double>(g.degree(u));
    return c;
}

// Power iteration on A + I: same eigenvectors as A, but the shift removes the
// sign oscillation on bipartite graphs.
inline std::vector<double> eigenvector_centrality(const Graph& g, const CentralityParams& p) {
    if (g.edge_count() == 0) throw InvalidArgument("eigenvector centrality needs at least one edge");
    const std::size_t n = g.node_count();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (std::size_t iter = 0; iter < p.eigenvector_max_iter; ++iter) {
        for (NodeId u = 0; u < n; ++u) {
            double s = x[u];
            for (NodeId v : g.neighbors(u)) s += x[v];
            next[u] = s;
        }
        double norm = 0.0;
        for (double v : next) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : next) v /= norm;
        const double delta = l1_distance(next, x);
        std::swap(x, next);
        if (delta < static_cast<double>(n) * p.eigenvector_tol) {
            for (double& v : x) v = std::abs(v);
            return x;
        }
    }
    throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(p.eigenvector_max_iter) +
                           " iterations");
}

// Fixed point of c = alpha*A*c + beta*1.
inline std::vector<double> katz_centrality(const Graph& g, const CentralityParams& p) {
    const std::size_t n = g.node_count();
    std::vector<double> c(n, 0.0);
    std::vector<double> next(n);
    for (std::size_t iter = 0; iter < p.max_iter; ++iter) {
        double peak = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double s = 0.0;
            for (NodeId v : g.neighbors(u)) s += c[v];
            next[u] = p.katz_alpha * s + p.katz_beta;
            peak = std::max(peak, std::abs(next[u]));
        }
        if (!std::isfinite(peak) || peak > 1e15) {
            throw ConvergenceError("katz centrality diverges: alpha = " + std::to_string(p.katz_alpha) +
                                   " is at or above 1/lambda_max");
        }
        const double delta = l1_distance(next, c);
        std::swap(c, next);
        if (delta < static_cast<double>(n) * p.eigenvector_tol) return c;
    }
    throw ConvergenceError("katz centrality did not converge in " + std::to_string(p.max_iter) +
                           " iterations (alpha too close to 1/lambda_max?)");
}

// Uniform teleport (1 - alpha)/n; mass on isolated nodes is spread uniformly.
inline std::vector<double> pagerank_centrality(const Graph& g, const CentralityParams& p) {
    const std::size_t n = g.node_count();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n);
    std::vector<double> next(n);
    for (std::size_t iter = 0; iter < p.max_iter; ++iter) {
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            if (g.degree(u) == 0) dangling += x[u];
        }
        const double base = (1.0 - p.pagerank_alpha) * inv_n + p.pagerank_alpha * dangling * inv_n;
        for (NodeId u = 0; u < n; ++u) {
            double s = 0.0;
            for (NodeId v : g.neighbors(u)) s += x[v] / static_cast<double>(g.degree(v));
            next[u] = base + p.pagerank_alpha * s;
        }
        const double delta = l1_distance(next, x);
        std::swap(x, next);
        if (delta < static_cast<double>(n) * p.pagerank_tol) break;
        if (iter + 1 == p.max_iter) {
            throw ConvergenceError("pagerank did not converge in " + std::to_string(p.max_iter) + " iterations");
        }
    }
    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
    return x;
}

// Brandes accumulation over every source; each unordered pair is counted once.
inline std::vector<double> betweenness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> bc(n, 0.0);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<int> dist(n);
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<NodeId> queue(n);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            const NodeId v = queue[head++];
            order.push_back(v);
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId w = *it;
            for (NodeId v : g.neighbors(w)) {
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) bc[w] += delta[w];
        }
    }
    for (double& v : bc) v *= 0.5;
    return bc;
}

// (r-1)/sum(d) scaled by (r-1)/(n-1), r = nodes reachable from i including i.
inline std::vector<double> closeness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> c(n, 0.0);
    if (n < 2) return c;
    std::vector<int> dist(n);
    std::vector<NodeId> queue(n);
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = s;
        double total = 0.0;
        while (head < tail) {
            const NodeId v = queue[head++];
            total += dist[v];
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
        const double reach = static_cast<double>(tail) - 1.0;
        if (total > 0.0) c[s] = (reach / total) * (reach / static_cast<double>(n - 1));
    }
    return c;
}

}  // namespace detail

inline CentralityVector compute_centrality(const Graph& g, Measure measure, const CentralityParams& params = {}) {
    if (g.empty()) throw InvalidArgument("centrality of an empty graph");
    params.validate();
    CentralityVector out{measure, {}};
    switch (measure) {
        case Measure::degree: out.values = detail::degree_centrality(g); break;
        case Measure::eigenvector: out.values = detail::eigenvector_centrality(g, params); break;
        case Measure::katz: out.values = detail::katz_centrality(g, params); break;
        case Measure::betweenness: out.values = detail::betweenness_centrality(g); break;
        case Measure::pagerank: out.values = detail::pagerank_centrality(g, params); break;
        case Measure::closeness: out.values = detail::closeness_centrality(g); break;
    }
    return out;
}

inline CentralityVector permute_centrality(const CentralityVector& c, std::span<const NodeId> perm) {
    CentralityVector out{c.measure, std::vector<double>(c.values.size())};
    for (std::size_t u = 0; u < perm.size(); ++u) out.values[perm[u]] = c.values[u];
    return out;
}

// ---------------------------------------------------------------------------
// Selection score
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultHistogramBins = 10;
inline constexpr double kHistogramSmoothing = 1e-9;

struct Histogram {
    std::size_t bins = 0;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> mass;
};

// Equal-width histogram over [lo, hi]; `smoothing` is added to every bin count
// before normalization so that KL divergences stay finite.
inline Histogram centrality_histogram(std::span<const double> values, double lo, double hi, std::size_t bins,
                                      double smoothing = kHistogramSmoothing) {
    if (bins < 2) throw InvalidArgument("histogram needs at least 2 bins");
    if (!(hi > lo)) throw InvalidArgument("histogram range must satisfy hi > lo");
    Histogram h{bins, lo, hi, std::vector<double>(bins, 0.0)};
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double x : values) {
        if (!(x >= lo && x <= hi)) {
            throw InvalidArgument("value " + std::to_string(x) + " outside histogram range");
        }
        auto idx = static_cast<std::size_t>((x - lo) / width);
        h.mass[std::min(idx, bins - 1)] += 1.0;
    }
    double total = 0.0;
    for (double& m : h.mass) {
        m += smoothing;
        total += m;
    }
    for (double& m : h.mass) m /= total;
    return h;
}

inline double kl_divergence(const Histogram& p, const Histogram& q) {
    if (p.bins != q.bins) throw InvalidArgument("KL divergence of histograms with different bin counts");
    double d = 0.0;
    for (std::size_t i = 0; i < p.bins; ++i) {
        if (p.mass[i] > 0.0) d += p.mass[i] * std::log(p.mass[i] / q.mass[i]);
    }
    return d;
}

inline double population_variance(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return var / static_cast<double>(values.size());
}

// exp(var_s + var_t - gamma * KL - 1)
inline double selection_score_from(double var_s, double var_t, double kl, double gamma) {
    return std::exp(var_s + var_t - gamma * kl - 1.0);
}

struct ScoreBreakdown {
    double var_s = 0.0;
    double var_t = 0.0;
    double kl = 0.0;
    double score = 0.0;
};

// Both vectors are min-max normalized against their joint range before the
// variances and histograms are taken.
inline ScoreBreakdown selection_score_breakdown(const CentralityVector& cs, const CentralityVector& ct,
                                                double gamma = 1.0, std::size_t bins = kDefaultHistogramBins) {
    if (cs.measure != ct.measure) throw InvalidArgument("selection score across different measures");
    if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be >= 0");
    if (cs.values.empty() || ct.values.empty()) throw InvalidArgument("selection score of an empty vector");
    const auto [smin, smax] = std::minmax_element(cs.values.begin(), cs.values.end());
    const auto [tmin, tmax] = std::minmax_element(ct.values.begin(), ct.values.end());
    const double lo = std::min(*smin, *tmin);
    const double hi = std::max(*smax, *tmax);
    ScoreBreakdown b;
    if (!(hi > lo)) {
        b.score = selection_score_from(0.0, 0.0, 0.0, gamma);
        return b;
    }
    auto normalize = [&](const std::vector<double>& v) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
        return out;
    };
    const auto ns = normalize(cs.values);
    const auto nt = normalize(ct.values);
    b.var_s = population_variance(ns);
    b.var_t = population_variance(nt);
    b.kl = kl_divergence(centrality_histogram(ns, 0.0, 1.0, bins), centrality_histogram(nt, 0.0, 1.0, bins));
    b.score = selection_score_from(b.var_s, b.var_t, b.kl, gamma);
    return b;
}

inline double selection_score(const CentralityVector& cs, const CentralityVector& ct, double gamma = 1.0,
                              std::size_t bins = kDefaultHistogramBins) {
    return selection_score_breakdown(cs, ct, gamma, bins).score;
}

struct MeasureEvaluation {
    Measure measure = Measure::degree;
    std::optional<ScoreBreakdown> score;  // empty when the measure failed
    std::string error;
    CentralityVector source;
    CentralityVector target;
};

struct CentralitySelection {
    Measure selected = Measure::degree;
    std::vector<MeasureEvaluation> evaluations;  // one per measure, in kAllMeasures order
    std::vector<std::string> warnings;

    const MeasureEvaluation& chosen() const {
        for (const auto& e : evaluations) {
            if (e.measure == selected) return e;
        }
        throw Error("selected measure has no evaluation");
    }
};

// Scores all six measures on both graphs and keeps the best; failed measures
// are skipped with a warning. Ties go to the earlier measure in kAllMeasures.
inline CentralitySelection select_centrality(const Graph& gs, const Graph& gt, double gamma = 1.0,
                                             std::size_t bins = kDefaultHistogramBins,
                                             const CentralityParams& params = {}) {
    if (gs.empty() || gt.empty()) throw InvalidArgument("select_centrality on an empty graph");
    CentralitySelection sel;
    std::optional<double> best;
    for (Measure m : kAllMeasures) {
        MeasureEvaluation ev;
        ev.measure = m;
        try {
            ev.source = compute_centrality(gs, m, params);
            ev.target = compute_centrality(gt, m, params);
            ev.score = selection_score_breakdown(ev.source, ev.target, gamma, bins);
            if (!best || ev.score->score > *best) {
                best = ev.score->score;
                sel.selected = m;
            }
        } catch (const Error& e) {
            ev.error = e.what();
            sel.warnings.push_back(std::string(measure_name(m)) + " skipped: " + e.what());
        }
        sel.evaluations.push_back(std::move(ev));
    }
    if (!best) throw Error("every centrality measure failed");
    return sel;
}

}  // namespace netalign
