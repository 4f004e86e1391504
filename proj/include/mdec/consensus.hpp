#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/ensemble.hpp"
#include "mdec/rng.hpp"

namespace mdec {

/// ECI per (member, cluster id). Clusters are keyed by member; identical clusters
/// from different members are kept separate.
struct ClusterWeightTable {
    std::vector<std::vector<double>> eci;  // eci[member][cluster id]
    std::size_t m = 0;

    double operator()(std::size_t member, int cluster) const {
        return eci[member][static_cast<std::size_t>(cluster)];
    }
    std::size_t total_clusters() const;
};

enum class WeightMode { eci, uniform };

std::string_view to_string(WeightMode mode);
WeightMode weight_mode_from_string(std::string_view name);

/// Entropy (bits) of how `cluster` (sample indices) splits across `partition`:
///   H = -sum_j p_j log2 p_j,  p_j = |C ∩ C_j| / |C|.
double cluster_entropy(std::span<const std::size_t> cluster, const Clustering& partition);

/// Sum of cluster_entropy over all members.
double ensemble_entropy(std::span<const std::size_t> cluster, const Ensemble& ensemble);

/// ECI(C) = exp(-H(C) / M) for every cluster of every member.
ClusterWeightTable compute_eci(const Ensemble& ensemble);

/// Locally weighted co-association: a_ij = (1/M) sum_m w_i^m [same cluster in member m],
/// with w_i^m the ECI of the cluster holding sample i in member m.
SimilarityMatrix lwca(const Ensemble& ensemble, const ClusterWeightTable& weights);

/// Uniform mode sets every weight to 1, giving the plain co-association matrix.
SimilarityMatrix lwca(const Ensemble& ensemble, WeightMode mode);

/// Final K-way partition: spectral clustering of the co-association matrix.
Clustering consensus_partition(const SimilarityMatrix& a, int k, Rng& rng);

}  // namespace mdec
