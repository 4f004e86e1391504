#include "mdec/ensemble.hpp"

#include <string>

#include "mdec/errors.hpp"

namespace mdec {

Ensemble::Ensemble(std::vector<Clustering> members, std::vector<MemberProvenance> provenance)
    : members_(std::move(members)), provenance_(std::move(provenance)) {
    if (members_.empty()) throw ValidationError("ensemble must contain at least one member");
    if (provenance_.size() != members_.size()) {
        throw ValidationError("ensemble provenance count " + std::to_string(provenance_.size()) +
                              " does not match member count " + std::to_string(members_.size()));
    }
    const std::size_t n = members_.front().n();
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].n() != n) {
            throw ValidationError("ensemble member " + std::to_string(i) + " has " +
                                  std::to_string(members_[i].n()) + " samples, expected " +
                                  std::to_string(n));
        }
    }
}

Ensemble Ensemble::from_members(std::vector<Clustering> members) {
    std::vector<MemberProvenance> prov(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        prov[i].member_index = i;
        prov[i].k_m = members[i].k();
    }
    return Ensemble(std::move(members), std::move(prov));
}

std::size_t Ensemble::total_clusters() const {
    std::size_t total = 0;
    for (const auto& c : members_) total += static_cast<std::size_t>(c.k());
    return total;
}

}  // namespace mdec
