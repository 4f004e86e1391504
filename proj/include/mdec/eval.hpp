#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/ensemble.hpp"

namespace mdec {

struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  // counts[i][j] = |a_i ∩ b_j|
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;
};

/// Unordered-pair agreement counts: first index refers to `a`, second to `b`
/// (n10 = same cluster in a, different in b).
struct PairCounts {
    std::int64_t n11 = 0;
    std::int64_t n00 = 0;
    std::int64_t n10 = 0;
    std::int64_t n01 = 0;
};

ContingencyTable contingency(const Clustering& a, const Clustering& b);

PairCounts pair_counts(const Clustering& a, const Clustering& b);

/// Normalized mutual information with geometric-mean normalization (natural log).
/// Returns 0 when either partition has a single cluster.
double nmi(const Clustering& a, const Clustering& b);

/// Adjusted Rand index in its pair-count form
///   2 (n00 n11 - n01 n10) / ((n00 + n01)(n01 + n11) + (n00 + n10)(n10 + n11)).
/// A zero denominator yields 1 for identical partitions, 0 otherwise.
double ari(const Clustering& a, const Clustering& b);

struct ScoreSummary {
    double mean = 0.0;
    double std = 0.0;  // population
};

ScoreSummary summarize(const std::vector<double>& values);

struct EnsembleStats {
    std::vector<double> nmi;
    std::vector<double> ari;
    ScoreSummary nmi_summary;
    ScoreSummary ari_summary;
};

EnsembleStats ensemble_stats(const Ensemble& ensemble, const Clustering& truth);

}  // namespace mdec
