#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/rng.hpp"

namespace mdec {

/// One draw of the SES kernel parameters: scale `mu` and neighbourhood size `k`.
struct KernelParams {
    double mu = 0.5;
    int k = 1;

    bool operator==(const KernelParams&) const = default;
};

/// Closed ranges for the randomized kernel parameters.
struct ParamRanges {
    double mu_min = 0.2;
    double mu_max = 0.8;
    int k_min = 1;
    int k_max = 1;

    void validate() const;
};

/// Pairwise Euclidean distances: symmetric, zero diagonal.
struct DistanceMatrix {
    Matrix entries;

    std::size_t n() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

DistanceMatrix pairwise_distances(const Dataset& dataset);

/// Mean distance from each sample to its k nearest neighbours (self excluded,
/// ties broken by ascending sample index). Requires 1 <= k <= N-1.
std::vector<double> knn_mean_distance(const DistanceMatrix& dist, int k);

/// Scaled exponential similarity:
///   S_ij = exp(-d_ij / (mu * eps_ij)),  eps_ij = (rho_i + rho_j + d_ij) / 3
/// with rho the k-NN mean distance. Coincident samples (d_ij = 0) get S_ij = 1.
SimilarityMatrix ses_similarity(const DistanceMatrix& dist, const KernelParams& params);

/// mu = mu_min + s1 (mu_max - mu_min),  k = k_min + floor(s2 (k_max - k_min)),
/// for s1, s2 in [0, 1].
KernelParams kernel_params_from_uniforms(const ParamRanges& ranges, double s1, double s2);

/// Draws s1 then s2 uniformly from the stream and maps them through
/// kernel_params_from_uniforms. The caller clamps k to [1, N-1].
KernelParams draw_kernel_params(const ParamRanges& ranges, Rng& rng);

enum class SimilarityKind { ses, cosine, pearson, spearman };

std::string_view to_string(SimilarityKind kind);
SimilarityKind similarity_kind_from_string(std::string_view name);

/// Fixed (non-randomized) similarity for the metric ablation. Raw scores in [-1, 1]
/// are mapped to [0, 1] by (s + 1) / 2; the diagonal is 1. `kind` must not be ses.
SimilarityMatrix fixed_similarity(const Dataset& dataset, SimilarityKind kind);

}  // namespace mdec
