#pragma once

// Brute-force reference computations used only by the tests. Everything here works on
// plain std::vector data and re-derives each quantity from its textbook definition,
// without calling into the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;
using Labels = std::vector<int>;

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) s += (a[f] - b[f]) * (a[f] - b[f]);
    return std::sqrt(s);
}

inline Rows distances(const Rows& x) {
    Rows d(x.size(), std::vector<double>(x.size(), 0.0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) d[i][j] = distance(x[i], x[j]);
    return d;
}

// Full sort of each row (self removed by index), then mean of the first k.
inline std::vector<double> knn_mean(const Rows& d, int k) {
    std::vector<double> rho;
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::vector<double> others;
        for (std::size_t j = 0; j < d.size(); ++j)
            if (j != i) others.push_back(d[i][j]);
        std::sort(others.begin(), others.end());
        rho.push_back(std::accumulate(others.begin(), others.begin() + k, 0.0) / k);
    }
    return rho;
}

inline double ses_pair(const Rows& d, const std::vector<double>& rho, std::size_t i, std::size_t j,
                       double mu) {
    if (d[i][j] == 0.0) return 1.0;
    const double eps = (rho[i] + rho[j] + d[i][j]) / 3.0;
    return std::exp(-d[i][j] / (mu * eps));
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Average ranks by counting: rank(v_i) = 1 + #{v_j < v_i} + (#{v_j == v_i} - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0, equal = 0;
        for (double w : v) {
            if (w < v[i]) ++less;
            if (w == v[i]) ++equal;
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    return pearson(ranks(a), ranks(b));
}

// Entropy in bits of `cluster` w.r.t. `partition` by explicit intersection counting.
inline double entropy(const std::vector<std::size_t>& cluster, const Labels& partition) {
    const int k = *std::max_element(partition.begin(), partition.end()) + 1;
    double h = 0.0;
    for (int j = 0; j < k; ++j) {
        std::size_t inter = 0;
        for (std::size_t i : cluster)
            if (partition[i] == j) ++inter;
        if (inter == 0) continue;
        const double p = static_cast<double>(inter) / static_cast<double>(cluster.size());
        h += -p * std::log2(p);
    }
    return h;
}

inline std::vector<std::size_t> members_of(const Labels& labels, int c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == c) out.push_back(i);
    return out;
}

inline double eci(const std::vector<Labels>& ensemble, std::size_t member, int c) {
    const auto cluster = members_of(ensemble[member], c);
    double h = 0.0;
    for (const auto& p : ensemble) h += entropy(cluster, p);
    return std::exp(-h / static_cast<double>(ensemble.size()));
}

// a_ij = (1/M) sum_m w_i^m delta_ij^m, term by term over every (i, j, m).
inline Rows lwca(const std::vector<Labels>& ensemble, bool uniform) {
    const std::size_t n = ensemble.front().size();
    const double m = static_cast<double>(ensemble.size());
    Rows a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < ensemble.size(); ++t) {
                const int li = ensemble[t][i];
                const double delta = li == ensemble[t][j] ? 1.0 : 0.0;
                const double w = uniform ? 1.0 : eci(ensemble, t, li);
                s += w * delta;
            }
            a[i][j] = s / m;
        }
    }
    return a;
}

// Fraction of members that put i and j in the same cluster.
inline Rows coassociation(const std::vector<Labels>& ensemble) {
    const std::size_t n = ensemble.front().size();
    Rows a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t count = 0;
            for (const auto& p : ensemble)
                if (p[i] == p[j]) ++count;
            a[i][j] = static_cast<double>(count) / static_cast<double>(ensemble.size());
        }
    return a;
}

// Normalized mutual information by direct summation over cluster pairs, counting
// intersections sample by sample. Natural log.
inline double nmi(const Labels& a, const Labels& b) {
    const int ka = *std::max_element(a.begin(), a.end()) + 1;
    const int kb = *std::max_element(b.begin(), b.end()) + 1;
    const double n = static_cast<double>(a.size());
    auto count_a = [&](int i) { return static_cast<double>(std::count(a.begin(), a.end(), i)); };
    auto count_b = [&](int j) { return static_cast<double>(std::count(b.begin(), b.end(), j)); };
    double num = 0.0;
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            double nij = 0;
            for (std::size_t s = 0; s < a.size(); ++s)
                if (a[s] == i && b[s] == j) ++nij;
            if (nij > 0) num += nij * std::log(nij * n / (count_a(i) * count_b(j)));
        }
    double da = 0.0, db = 0.0;
    for (int i = 0; i < ka; ++i) da += count_a(i) * std::log(count_a(i) / n);
    for (int j = 0; j < kb; ++j) db += count_b(j) * std::log(count_b(j) / n);
    if (ka < 2 || kb < 2) return 0.0;
    return num / std::sqrt(da * db);
}

struct Pairs {
    std::int64_t n11 = 0, n00 = 0, n10 = 0, n01 = 0;
};

inline Pairs pairs(const Labels& a, const Labels& b) {
    Pairs p;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            if (sa && sb) ++p.n11;
            else if (!sa && !sb) ++p.n00;
            else if (sa) ++p.n10;
            else ++p.n01;
        }
    return p;
}

inline double ari(const Labels& a, const Labels& b) {
    const Pairs p = pairs(a, b);
    const double n00 = static_cast<double>(p.n00), n11 = static_cast<double>(p.n11);
    const double n10 = static_cast<double>(p.n10), n01 = static_cast<double>(p.n01);
    return 2.0 * (n00 * n11 - n01 * n10) / ((n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11));
}

// Exhaustive search over all labelings of up to ~10 points into exactly k non-empty
// clusters; returns the minimal within-cluster sum of squares.
inline double best_wcss(const Rows& x, int k) {
    const std::size_t n = x.size();
    const std::size_t dim = x.front().size();
    Labels labels(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<int> used(static_cast<std::size_t>(k), 0);
        for (int l : labels) used[static_cast<std::size_t>(l)] = 1;
        if (std::accumulate(used.begin(), used.end(), 0) == k) {
            double total = 0.0;
            for (int c = 0; c < k; ++c) {
                std::vector<double> mean(dim, 0.0);
                double cnt = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (labels[i] == c) {
                        for (std::size_t f = 0; f < dim; ++f) mean[f] += x[i][f];
                        ++cnt;
                    }
                for (double& v : mean) v /= cnt;
                for (std::size_t i = 0; i < n; ++i)
                    if (labels[i] == c)
                        for (std::size_t f = 0; f < dim; ++f) total += (x[i][f] - mean[f]) * (x[i][f] - mean[f]);
            }
            best = std::min(best, total);
        }
        std::size_t pos = 0;
        while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

// Random labels over [0, k) with every id present (requires n >= k).
inline Labels random_labels(std::mt19937_64& gen, std::size_t n, int k) {
    Labels l(n);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (std::size_t i = 0; i < n; ++i) l[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) : pick(gen);
    std::shuffle(l.begin(), l.end(), gen);
    return l;
}

}  // namespace oracle
