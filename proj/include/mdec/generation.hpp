#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mdec/dataset.hpp"
#include "mdec/ensemble.hpp"
#include "mdec/metric.hpp"
#include "mdec/rng.hpp"

namespace mdec {

struct IntRange {
    int lo = 0;
    int hi = 0;

    bool operator==(const IntRange&) const = default;
};

struct GenerationConfig {
    std::size_t m = 100;
    double tau = 0.5;
    double mu_min = 0.2;
    double mu_max = 0.8;
    // Unset: [round(sqrt N), round(5 sqrt N)], clamped to [1, N-1].
    std::optional<IntRange> knn_range;
    // Unset: [2, round(sqrt N)].
    std::optional<IntRange> cluster_count_range;
    SimilarityKind metric = SimilarityKind::ses;
    std::uint64_t master_seed = 0;

    void validate() const;
};

/// Neighbour-count range for N samples after clamping to [1, N-1].
IntRange resolve_knn_range(const GenerationConfig& config, std::size_t n);

/// Base-clustering size range for N samples after clamping to [2, max(2, min(hi, N))].
IntRange resolve_cluster_count_range(const GenerationConfig& config, std::size_t n);

/// Uniform integer K_m in the resolved range. Default rule: [2, max(2, round(sqrt n))].
int draw_member_k(std::size_t n, const IntRange& range, Rng& rng);
int draw_member_k(std::size_t n, Rng& rng);

struct Member {
    Clustering clustering;
    MemberProvenance provenance;
};

/// One base clustering. The member seed is derive_seed(master_seed, member_index); its
/// stream draws the subspace, then the kernel parameters, then K_m. k-means runs on a
/// second stream derive_seed(member seed, 0), so the provenance alone reproduces it.
Member generate_member(const Dataset& dataset, const GenerationConfig& config,
                       std::size_t member_index);

/// Regenerates a member from its provenance record alone (subspace, kernel, K_m, seed).
Clustering regenerate_member(const Dataset& dataset, const MemberProvenance& provenance);

/// M members in index order. `threads` > 1 runs members concurrently; the result
/// does not depend on the thread count. Any member failure aborts the whole ensemble
/// and the error message names the member.
Ensemble generate_ensemble(const Dataset& dataset, const GenerationConfig& config,
                           std::size_t threads = 1);

}  // namespace mdec
