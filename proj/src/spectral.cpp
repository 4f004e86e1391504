#include "mdec/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mdec/errors.hpp"

namespace mdec {

using Index = Eigen::Index;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kZeroRowNorm = 1e-12;

}  // namespace

Matrix normalized_laplacian(const SimilarityMatrix& s) {
    const Matrix& w = s.entries;
    const Index n = w.rows();
    if (n == 0 || w.cols() != n) throw ValidationError("normalized_laplacian: matrix must be square");
    if (!w.allFinite()) throw ValidationError("normalized_laplacian: non-finite similarity");
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (w(i, j) < 0.0) {
                throw ValidationError("normalized_laplacian: negative similarity at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            if (j > i && std::abs(w(i, j) - w(j, i)) > kSymmetryTolerance) {
                throw ValidationError("normalized_laplacian: similarity matrix is not symmetric");
            }
        }
    }
    const Vector degree = w.rowwise().sum();
    Vector inv_sqrt(n);
    for (Index i = 0; i < n; ++i) {
        if (!(degree(i) > 0.0)) {
            throw ValidationError("normalized_laplacian: zero row sum at sample " + std::to_string(i));
        }
        inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
    }
    Matrix l(n, n);
    for (Index i = 0; i < n; ++i) {
        l(i, i) = 1.0 - inv_sqrt(i) * w(i, i) * inv_sqrt(i);
        for (Index j = i + 1; j < n; ++j) {
            const double v = -inv_sqrt(i) * w(i, j) * inv_sqrt(j);
            l(i, j) = v;
            l(j, i) = v;
        }
    }
    return l;
}

SpectralEmbedding spectral_embed(const Matrix& laplacian, int k) {
    const Index n = laplacian.rows();
    if (laplacian.cols() != n) throw ValidationError("spectral_embed: matrix must be square");
    if (k < 2 || k > n) {
        throw ValidationError("spectral_embed: k=" + std::to_string(k) + " outside [2, " +
                              std::to_string(n) + "]");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("spectral_embed: symmetric eigensolver did not converge (N=" +
                           std::to_string(n) + ", info=" + std::to_string(solver.info()) + ")");
    }
    // Eigen returns eigenvalues in ascending order.
    SpectralEmbedding out;
    out.eigenvalues = solver.eigenvalues().head(k);
    out.basis = solver.eigenvectors().leftCols(k);
    out.rows = out.basis;
    for (Index i = 0; i < n; ++i) {
        const double norm = out.rows.row(i).norm();
        if (norm < kZeroRowNorm) {
            out.rows.row(i).setZero();
            out.rows(i, 0) = 1.0;
        } else {
            out.rows.row(i) /= norm;
        }
    }
    return out;
}

// ---------------------------------------------------------------- k-means

namespace {

double sq_dist(const RowMatrix& a, Index i, const RowMatrix& b, Index j) {
    double s = 0.0;
    for (Index c = 0; c < a.cols(); ++c) {
        const double d = a(i, c) - b(j, c);
        s += d * d;
    }
    return s;
}

RowMatrix seed_plus_plus(const RowMatrix& x, int k, Rng& rng) {
    const Index n = x.rows();
    RowMatrix centers(k, x.cols());
    centers.row(0) = x.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
    std::vector<double> best(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) best[static_cast<std::size_t>(i)] = sq_dist(x, i, centers, 0);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (double v : best) total += v;
        Index pick = n - 1;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            for (Index i = 0; i < n; ++i) {
                acc += best[static_cast<std::size_t>(i)];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
        }
        centers.row(c) = x.row(pick);
        for (Index i = 0; i < n; ++i) {
            best[static_cast<std::size_t>(i)] =
                std::min(best[static_cast<std::size_t>(i)], sq_dist(x, i, centers, c));
        }
    }
    return centers;
}

void recompute_centroids(const RowMatrix& x, const std::vector<int>& labels, int k,
                         RowMatrix& centers, std::vector<Index>& counts) {
    centers.setZero(k, x.cols());
    counts.assign(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < x.rows(); ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        centers.row(l) += x.row(i);
        ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
            centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
    }
}

// Fills every empty cluster with the point farthest from its current centroid,
// drawn from clusters that keep at least one member.
void repair_empty(const RowMatrix& x, std::vector<int>& labels, int k, RowMatrix& centers,
                  std::vector<Index>& counts) {
    for (int empty = 0; empty < k; ++empty) {
        if (counts[static_cast<std::size_t>(empty)] > 0) continue;
        Index far = -1;
        double far_d = -1.0;
        for (Index i = 0; i < x.rows(); ++i) {
            const int l = labels[static_cast<std::size_t>(i)];
            if (counts[static_cast<std::size_t>(l)] < 2) continue;
            const double d = sq_dist(x, i, centers, l);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        labels[static_cast<std::size_t>(far)] = empty;
        recompute_centroids(x, labels, k, centers, counts);
    }
}

double wcss_of(const RowMatrix& x, const std::vector<int>& labels, const RowMatrix& centers) {
    double s = 0.0;
    for (Index i = 0; i < x.rows(); ++i) s += sq_dist(x, i, centers, labels[static_cast<std::size_t>(i)]);
    return s;
}

struct RestartOutcome {
    std::vector<int> labels;
    RowMatrix centers;
    double wcss = 0.0;
    int iterations = 0;
    std::vector<double> trace;
};

RestartOutcome lloyd(const RowMatrix& x, int k, Rng& rng, int max_iterations) {
    const Index n = x.rows();
    RestartOutcome out;
    out.centers = seed_plus_plus(x, k, rng);
    out.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> next(static_cast<std::size_t>(n));
    std::vector<Index> counts;
    for (int iter = 0; iter < max_iterations; ++iter) {
        for (Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(x, i, out.centers, 0);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(x, i, out.centers, c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            next[static_cast<std::size_t>(i)] = best;
        }
        const bool changed = next != out.labels;
        out.labels = next;
        recompute_centroids(x, out.labels, k, out.centers, counts);
        repair_empty(x, out.labels, k, out.centers, counts);
        out.wcss = wcss_of(x, out.labels, out.centers);
        out.trace.push_back(out.wcss);
        out.iterations = iter + 1;
        if (!changed) break;
    }
    return out;
}

}  // namespace

KMeansResult kmeans_fit(const Matrix& points, int k, Rng& rng, const KMeansOptions& options) {
    const Index n = points.rows();
    if (k < 1 || k > n) {
        throw ValidationError("kmeans: k=" + std::to_string(k) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    if (options.restarts < 1 || options.max_iterations < 1) {
        throw ValidationError("kmeans: restarts and max_iterations must be positive");
    }
    const RowMatrix x = points;
    RestartOutcome best;
    int best_restart = -1;
    for (int r = 0; r < options.restarts; ++r) {
        RestartOutcome cur = lloyd(x, k, rng, options.max_iterations);
        if (best_restart < 0 || cur.wcss < best.wcss) {
            best = std::move(cur);
            best_restart = r;
        }
    }
    return KMeansResult{Clustering(std::move(best.labels)), Matrix(best.centers), best.wcss,
                        best.iterations, best_restart, std::move(best.trace)};
}

Clustering kmeans(const Matrix& points, int k, Rng& rng, const KMeansOptions& options) {
    return kmeans_fit(points, k, rng, options).clustering;
}

Clustering spectral_cluster(const SimilarityMatrix& s, int k, Rng& rng) {
    const auto embedding = spectral_embed(normalized_laplacian(s), k);
    return kmeans(embedding.rows, k, rng);
}

}  // namespace mdec
