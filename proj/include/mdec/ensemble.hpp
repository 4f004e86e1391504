#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/metric.hpp"

namespace mdec {

/// Everything needed to regenerate one base clustering in isolation.
struct MemberProvenance {
    std::size_t member_index = 0;
    std::uint64_t seed = 0;
    Subspace subspace;
    KernelParams params;
    SimilarityKind metric = SimilarityKind::ses;
    int k_m = 0;

    bool operator==(const MemberProvenance&) const = default;
};

/// Ordered base clusterings over the same N samples, with one provenance record each.
class Ensemble {
public:
    Ensemble(std::vector<Clustering> members, std::vector<MemberProvenance> provenance);

    /// Hand-built ensembles: provenance holds only member_index and k_m.
    static Ensemble from_members(std::vector<Clustering> members);

    std::size_t m() const noexcept { return members_.size(); }
    std::size_t n() const noexcept { return members_.front().n(); }
    const std::vector<Clustering>& members() const noexcept { return members_; }
    const std::vector<MemberProvenance>& provenance() const noexcept { return provenance_; }
    const Clustering& operator[](std::size_t i) const { return members_[i]; }

    /// N_c: total number of clusters across all members.
    std::size_t total_clusters() const;

    bool operator==(const Ensemble&) const = default;

private:
    std::vector<Clustering> members_;
    std::vector<MemberProvenance> provenance_;
};

}  // namespace mdec
