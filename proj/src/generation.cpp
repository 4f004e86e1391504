#include "mdec/generation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "mdec/errors.hpp"
#include "mdec/spectral.hpp"

namespace mdec {

namespace {

int round_sqrt(std::size_t n, double factor = 1.0) {
    return static_cast<int>(std::lround(factor * std::sqrt(static_cast<double>(n))));
}

Clustering cluster_member(const Dataset& dataset, const MemberProvenance& p) {
    const Dataset component = project(dataset, p.subspace);
    const SimilarityMatrix s = p.metric == SimilarityKind::ses
                                   ? ses_similarity(pairwise_distances(component), p.params)
                                   : fixed_similarity(component, p.metric);
    Rng rng(derive_seed(p.seed, 0));
    return spectral_cluster(s, p.k_m, rng);
}

}  // namespace

void GenerationConfig::validate() const {
    if (m < 1) throw ValidationError("ensemble size must be >= 1");
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw ValidationError("sampling ratio tau must lie in (0, 1], got " + std::to_string(tau));
    }
    ParamRanges{mu_min, mu_max, 1, 1}.validate();
    if (knn_range && (knn_range->lo < 1 || knn_range->lo > knn_range->hi)) {
        throw ValidationError("knn range must satisfy 1 <= lo <= hi");
    }
    if (cluster_count_range &&
        (cluster_count_range->lo < 2 || cluster_count_range->lo > cluster_count_range->hi)) {
        throw ValidationError("cluster count range must satisfy 2 <= lo <= hi");
    }
}

IntRange resolve_knn_range(const GenerationConfig& config, std::size_t n) {
    const int cap = static_cast<int>(n) - 1;
    const IntRange raw = config.knn_range.value_or(IntRange{round_sqrt(n), round_sqrt(n, 5.0)});
    IntRange r;
    r.lo = std::clamp(raw.lo, 1, std::max(1, cap));
    r.hi = std::clamp(raw.hi, r.lo, std::max(1, cap));
    return r;
}

IntRange resolve_cluster_count_range(const GenerationConfig& config, std::size_t n) {
    const int cap = std::max(2, static_cast<int>(n));
    const IntRange raw = config.cluster_count_range.value_or(IntRange{2, round_sqrt(n)});
    IntRange r;
    r.lo = std::clamp(raw.lo, 2, cap);
    r.hi = std::clamp(raw.hi, r.lo, cap);
    return r;
}

int draw_member_k(std::size_t n, const IntRange& range, Rng& rng) {
    const int cap = std::max(2, static_cast<int>(n));
    const int lo = std::clamp(range.lo, 2, cap);
    const int hi = std::clamp(range.hi, lo, cap);
    return static_cast<int>(rng.uniform_int(lo, hi));
}

int draw_member_k(std::size_t n, Rng& rng) {
    return draw_member_k(n, IntRange{2, std::max(2, round_sqrt(n))}, rng);
}

Member generate_member(const Dataset& dataset, const GenerationConfig& config,
                       std::size_t member_index) {
    config.validate();
    if (member_index >= config.m) {
        throw ValidationError("member index " + std::to_string(member_index) +
                              " outside ensemble of size " + std::to_string(config.m));
    }
    const std::size_t n = dataset.n();
    MemberProvenance p;
    p.member_index = member_index;
    p.seed = derive_seed(config.master_seed, member_index);
    p.metric = config.metric;

    Rng rng(p.seed);
    p.subspace = sample_subspace(dataset.d_full(), config.tau, rng);
    const IntRange knn = resolve_knn_range(config, n);
    p.params = draw_kernel_params(ParamRanges{config.mu_min, config.mu_max, knn.lo, knn.hi}, rng);
    p.params.k = std::clamp(p.params.k, 1, static_cast<int>(n) - 1);
    p.k_m = draw_member_k(n, resolve_cluster_count_range(config, n), rng);

    Clustering c = cluster_member(dataset, p);
    return Member{std::move(c), std::move(p)};
}

Clustering regenerate_member(const Dataset& dataset, const MemberProvenance& provenance) {
    return cluster_member(dataset, provenance);
}

Ensemble generate_ensemble(const Dataset& dataset, const GenerationConfig& config,
                           std::size_t threads) {
    config.validate();
    const std::size_t m = config.m;
    std::vector<std::optional<Member>> results(m);
    std::vector<std::exception_ptr> errors(m);

    auto work = [&](std::size_t i) {
        try {
            results[i] = generate_member(dataset, config, i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t width = std::clamp<std::size_t>(threads, 1, m);
    if (width == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            work(i);
            if (errors[i]) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::vector<std::jthread> pool;
        pool.reserve(width);
        for (std::size_t t = 0; t < width; ++t) {
            pool.emplace_back([&] {
                // Indices are claimed in order and a claimed index always runs, so every
                // member below the first failure is attempted, as in the serial loop.
                while (!failed) {
                    const std::size_t i = next++;
                    if (i >= m) break;
                    work(i);
                    if (errors[i]) failed = true;
                }
            });
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (errors[i]) rethrow_with_context("member " + std::to_string(i) + ": ", errors[i]);
    }
    std::vector<Clustering> members;
    std::vector<MemberProvenance> provenance;
    members.reserve(m);
    provenance.reserve(m);
    for (auto& r : results) {
        members.push_back(std::move(r->clustering));
        provenance.push_back(std::move(r->provenance));
    }
    return Ensemble(std::move(members), std::move(provenance));
}

}  // namespace mdec
