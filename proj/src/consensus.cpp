#include "mdec/consensus.hpp"

#include <cmath>
#include <string>

#include "mdec/errors.hpp"
#include "mdec/spectral.hpp"

namespace mdec {

using Index = Eigen::Index;

std::size_t ClusterWeightTable::total_clusters() const {
    std::size_t total = 0;
    for (const auto& row : eci) total += row.size();
    return total;
}

std::string_view to_string(WeightMode mode) {
    return mode == WeightMode::eci ? "eci" : "uniform";
}

WeightMode weight_mode_from_string(std::string_view name) {
    if (name == "eci") return WeightMode::eci;
    if (name == "uniform") return WeightMode::uniform;
    throw ValidationError("unknown weights mode '" + std::string(name) + "' (expected eci|uniform)");
}

namespace {

// -sum p log2 p over the non-zero counts of a cluster of `size` samples.
double entropy_from_counts(const std::vector<std::size_t>& counts, std::size_t size) {
    double h = 0.0;
    const double total = static_cast<double>(size);
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double cluster_entropy(std::span<const std::size_t> cluster, const Clustering& partition) {
    if (cluster.empty()) throw ValidationError("cluster_entropy: empty cluster");
    std::vector<std::size_t> counts(static_cast<std::size_t>(partition.k()), 0);
    for (std::size_t i : cluster) {
        if (i >= partition.n()) {
            throw ValidationError("cluster_entropy: sample index " + std::to_string(i) +
                                  " outside partition of " + std::to_string(partition.n()));
        }
        ++counts[static_cast<std::size_t>(partition[i])];
    }
    return entropy_from_counts(counts, cluster.size());
}

double ensemble_entropy(std::span<const std::size_t> cluster, const Ensemble& ensemble) {
    double h = 0.0;
    for (const auto& member : ensemble.members()) h += cluster_entropy(cluster, member);
    return h;
}

ClusterWeightTable compute_eci(const Ensemble& ensemble) {
    const std::size_t m = ensemble.m();
    const std::size_t n = ensemble.n();
    ClusterWeightTable table;
    table.m = m;
    table.eci.resize(m);

    // H^Pi for each cluster of member a is accumulated from the contingency table of
    // member a against every member b (including a itself, which contributes zero).
    for (std::size_t a = 0; a < m; ++a) {
        const Clustering& ca = ensemble[a];
        const auto ka = static_cast<std::size_t>(ca.k());
        const auto sizes = ca.cluster_sizes();
        std::vector<double> h(ka, 0.0);
        for (std::size_t b = 0; b < m; ++b) {
            const Clustering& cb = ensemble[b];
            const auto kb = static_cast<std::size_t>(cb.k());
            std::vector<std::vector<std::size_t>> counts(ka, std::vector<std::size_t>(kb, 0));
            for (std::size_t i = 0; i < n; ++i) {
                ++counts[static_cast<std::size_t>(ca[i])][static_cast<std::size_t>(cb[i])];
            }
            for (std::size_t c = 0; c < ka; ++c) h[c] += entropy_from_counts(counts[c], sizes[c]);
        }
        table.eci[a].resize(ka);
        for (std::size_t c = 0; c < ka; ++c) {
            table.eci[a][c] = std::exp(-h[c] / static_cast<double>(m));
        }
    }
    return table;
}

SimilarityMatrix lwca(const Ensemble& ensemble, const ClusterWeightTable& weights) {
    const std::size_t m = ensemble.m();
    if (weights.eci.size() != m) {
        throw ValidationError("lwca: weight table covers " + std::to_string(weights.eci.size()) +
                              " members, ensemble has " + std::to_string(m));
    }
    for (std::size_t b = 0; b < m; ++b) {
        if (weights.eci[b].size() != static_cast<std::size_t>(ensemble[b].k())) {
            throw ValidationError("lwca: weight table does not cover every cluster of member " +
                                  std::to_string(b));
        }
    }
    const auto n = static_cast<Index>(ensemble.n());
    Matrix a = Matrix::Zero(n, n);
    // Only the upper triangle is accumulated, then mirrored: a is exactly symmetric.
    for (std::size_t b = 0; b < m; ++b) {
        const Clustering& c = ensemble[b];
        const auto& w = weights.eci[b];
        for (Index i = 0; i < n; ++i) {
            const int li = c[static_cast<std::size_t>(i)];
            const double wi = w[static_cast<std::size_t>(li)];
            for (Index j = i; j < n; ++j) {
                if (c[static_cast<std::size_t>(j)] == li) a(i, j) += wi;
            }
        }
    }
    const double md = static_cast<double>(m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            a(i, j) /= md;
            a(j, i) = a(i, j);
        }
    }
    return SimilarityMatrix{std::move(a)};
}

SimilarityMatrix lwca(const Ensemble& ensemble, WeightMode mode) {
    if (mode == WeightMode::eci) return lwca(ensemble, compute_eci(ensemble));
    ClusterWeightTable ones;
    ones.m = ensemble.m();
    for (const auto& c : ensemble.members()) {
        ones.eci.emplace_back(static_cast<std::size_t>(c.k()), 1.0);
    }
    return lwca(ensemble, ones);
}

Clustering consensus_partition(const SimilarityMatrix& a, int k, Rng& rng) {
    const auto n = static_cast<Index>(a.n());
    if (k < 2 || k > n) {
        throw ValidationError("consensus_partition: K=" + std::to_string(k) + " outside [2, " +
                              std::to_string(n) + "]");
    }
    for (Index i = 0; i < n; ++i) {
        if (!(a.entries.row(i).sum() > 0.0)) {
            throw ValidationError("consensus_partition: zero row sum at sample " + std::to_string(i));
        }
    }
    return spectral_cluster(a, k, rng);
}

}  // namespace mdec
