#include "mdec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "mdec/errors.hpp"

namespace mdec {

using Index = Eigen::Index;

void ParamRanges::validate() const {
    if (!(mu_min > 0.0) || !(mu_min <= mu_max) || !std::isfinite(mu_max)) {
        throw ValidationError("mu range must satisfy 0 < mu_min <= mu_max");
    }
    if (k_min < 1 || k_min > k_max) {
        throw ValidationError("k range must satisfy 1 <= k_min <= k_max");
    }
}

DistanceMatrix pairwise_distances(const Dataset& dataset) {
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> x =
        dataset.values();
    const Index n = x.rows();
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double v = std::sqrt((x.row(i) - x.row(j)).squaredNorm());
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return DistanceMatrix{std::move(d)};
}

std::vector<double> knn_mean_distance(const DistanceMatrix& dist, int k) {
    const auto n = static_cast<Index>(dist.n());
    if (k < 1 || k > n - 1) {
        throw ValidationError("knn_mean_distance: k=" + std::to_string(k) + " outside [1, " +
                              std::to_string(n - 1) + "]");
    }
    std::vector<double> rho(static_cast<std::size_t>(n));
    std::vector<std::pair<double, Index>> row;
    row.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        row.clear();
        for (Index j = 0; j < n; ++j) {
            if (j != i) row.emplace_back(dist.entries(i, j), j);
        }
        std::partial_sort(row.begin(), row.begin() + k, row.end());
        double sum = 0.0;
        for (int p = 0; p < k; ++p) sum += row[static_cast<std::size_t>(p)].first;
        rho[static_cast<std::size_t>(i)] = sum / k;
    }
    return rho;
}

SimilarityMatrix ses_similarity(const DistanceMatrix& dist, const KernelParams& params) {
    if (!(params.mu > 0.0)) throw ValidationError("ses_similarity: mu must be positive");
    const auto rho = knn_mean_distance(dist, params.k);
    const auto n = static_cast<Index>(dist.n());
    Matrix s = Matrix::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d = dist.entries(i, j);
            double v = 1.0;
            if (d > 0.0) {
                const double eps = (rho[static_cast<std::size_t>(i)] +
                                    rho[static_cast<std::size_t>(j)] + d) / 3.0;
                v = std::exp(-d / (params.mu * eps));
            }
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return SimilarityMatrix{std::move(s)};
}

KernelParams kernel_params_from_uniforms(const ParamRanges& ranges, double s1, double s2) {
    ranges.validate();
    KernelParams p;
    p.mu = ranges.mu_min + s1 * (ranges.mu_max - ranges.mu_min);
    p.k = ranges.k_min + static_cast<int>(std::floor(s2 * (ranges.k_max - ranges.k_min)));
    return p;
}

KernelParams draw_kernel_params(const ParamRanges& ranges, Rng& rng) {
    const double s1 = rng.uniform01();
    const double s2 = rng.uniform01();
    return kernel_params_from_uniforms(ranges, s1, s2);
}

std::string_view to_string(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::ses: return "ses";
        case SimilarityKind::cosine: return "cosine";
        case SimilarityKind::pearson: return "pearson";
        case SimilarityKind::spearman: return "spearman";
    }
    return "unknown";
}

SimilarityKind similarity_kind_from_string(std::string_view name) {
    if (name == "ses") return SimilarityKind::ses;
    if (name == "cosine") return SimilarityKind::cosine;
    if (name == "pearson") return SimilarityKind::pearson;
    if (name == "spearman") return SimilarityKind::spearman;
    throw ValidationError("unknown metric '" + std::string(name) +
                          "' (expected ses|cosine|pearson|spearman)");
}

namespace {

// Fractional ranks (1-based, ties averaged) of one row.
Vector rank_row(const Vector& v) {
    const Index d = v.size();
    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return v(a) < v(b); });
    Vector ranks(d);
    Index i = 0;
    while (i < d) {
        Index j = i;
        while (j + 1 < d && v(order[static_cast<std::size_t>(j + 1)]) == v(order[static_cast<std::size_t>(i)])) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Index t = i; t <= j; ++t) ranks(order[static_cast<std::size_t>(t)]) = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

SimilarityMatrix fixed_similarity(const Dataset& dataset, SimilarityKind kind) {
    if (kind == SimilarityKind::ses) {
        throw ValidationError("fixed_similarity: ses is a randomized kernel, not a fixed metric");
    }
    const Index n = dataset.values().rows();
    Matrix rows = dataset.values();
    if (kind == SimilarityKind::spearman) {
        for (Index i = 0; i < n; ++i) rows.row(i) = rank_row(rows.row(i).transpose()).transpose();
    }
    if (kind != SimilarityKind::cosine) {
        for (Index i = 0; i < n; ++i) rows.row(i).array() -= rows.row(i).mean();
    }
    for (Index i = 0; i < n; ++i) {
        const double norm = rows.row(i).norm();
        if (!(norm > 0.0)) {
            throw ValidationError(std::string(to_string(kind)) + " similarity undefined for sample " +
                                  std::to_string(i) +
                                  (kind == SimilarityKind::cosine ? " (all-zero row)"
                                                                  : " (zero variance)"));
        }
        rows.row(i) /= norm;
    }
    Matrix s = Matrix::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double raw = std::clamp(rows.row(i).dot(rows.row(j)), -1.0, 1.0);
            const double v = (raw + 1.0) / 2.0;
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return SimilarityMatrix{std::move(s)};
}

}  // namespace mdec
