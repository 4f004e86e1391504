#include "mdec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdec/errors.hpp"

namespace mdec {

namespace {

void require_same_n(const Clustering& a, const Clustering& b) {
    if (a.n() != b.n()) {
        throw ValidationError("clusterings have different lengths (" + std::to_string(a.n()) +
                              " vs " + std::to_string(b.n()) + ")");
    }
}

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

// Order-independent summation: swapping arguments or renaming clusters permutes the
// terms, and a sorted sum makes the result bit-identical under such permutations.
double sorted_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double v : terms) s += v;
    return s;
}

}  // namespace

ContingencyTable contingency(const Clustering& a, const Clustering& b) {
    require_same_n(a, b);
    ContingencyTable t;
    const auto ka = static_cast<std::size_t>(a.k());
    const auto kb = static_cast<std::size_t>(b.k());
    t.counts.assign(ka, std::vector<std::int64_t>(kb, 0));
    t.row_sums.assign(ka, 0);
    t.col_sums.assign(kb, 0);
    for (std::size_t i = 0; i < a.n(); ++i) {
        const auto r = static_cast<std::size_t>(a[i]);
        const auto c = static_cast<std::size_t>(b[i]);
        ++t.counts[r][c];
        ++t.row_sums[r];
        ++t.col_sums[c];
    }
    t.total = static_cast<std::int64_t>(a.n());
    return t;
}

PairCounts pair_counts(const Clustering& a, const Clustering& b) {
    const ContingencyTable t = contingency(a, b);
    std::int64_t both = 0;
    for (const auto& row : t.counts) {
        for (std::int64_t c : row) both += choose2(c);
    }
    std::int64_t same_a = 0;
    for (std::int64_t r : t.row_sums) same_a += choose2(r);
    std::int64_t same_b = 0;
    for (std::int64_t c : t.col_sums) same_b += choose2(c);
    PairCounts p;
    p.n11 = both;
    p.n10 = same_a - both;
    p.n01 = same_b - both;
    p.n00 = choose2(t.total) - p.n11 - p.n10 - p.n01;
    return p;
}

double nmi(const Clustering& a, const Clustering& b) {
    const ContingencyTable t = contingency(a, b);
    if (a.k() < 2 || b.k() < 2) return 0.0;
    const double n = static_cast<double>(t.total);
    std::vector<double> mutual;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.col_sums.size(); ++j) {
            const auto nij = static_cast<double>(t.counts[i][j]);
            if (nij == 0.0) continue;
            mutual.push_back(nij * std::log(nij * n / (static_cast<double>(t.row_sums[i]) *
                                                       static_cast<double>(t.col_sums[j]))));
        }
    }
    std::vector<double> ha;
    for (std::int64_t r : t.row_sums) ha.push_back(static_cast<double>(r) * std::log(static_cast<double>(r) / n));
    std::vector<double> hb;
    for (std::int64_t c : t.col_sums) hb.push_back(static_cast<double>(c) * std::log(static_cast<double>(c) / n));
    return std::clamp(sorted_sum(mutual) / std::sqrt(sorted_sum(ha) * sorted_sum(hb)), 0.0, 1.0);
}

double ari(const Clustering& a, const Clustering& b) {
    require_same_n(a, b);
    if (a.n() < 2) throw ValidationError("ari: need at least 2 samples");
    const PairCounts p = pair_counts(a, b);
    const auto n00 = static_cast<double>(p.n00);
    const auto n11 = static_cast<double>(p.n11);
    const auto n10 = static_cast<double>(p.n10);
    const auto n01 = static_cast<double>(p.n01);
    const double denom = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
    if (denom == 0.0) return p.n10 == 0 && p.n01 == 0 ? 1.0 : 0.0;
    return 2.0 * (n00 * n11 - n01 * n10) / denom;
}

ScoreSummary summarize(const std::vector<double>& values) {
    ScoreSummary s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size()));
    return s;
}

EnsembleStats ensemble_stats(const Ensemble& ensemble, const Clustering& truth) {
    EnsembleStats st;
    for (const auto& member : ensemble.members()) {
        st.nmi.push_back(nmi(member, truth));
        st.ari.push_back(ari(member, truth));
    }
    st.nmi_summary = summarize(st.nmi);
    st.ari_summary = summarize(st.ari);
    return st;
}

}  // namespace mdec
