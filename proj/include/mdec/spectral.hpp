#pragma once

#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/rng.hpp"

namespace mdec {

/// Row-normalized eigenvector embedding; every row has unit norm.
struct SpectralEmbedding {
    Matrix rows;
    Matrix basis;        // orthonormal eigenvectors before row normalization
    Vector eigenvalues;  // the k smallest, ascending
};

/// L = I - D^{-1/2} S D^{-1/2}, D the diagonal of row sums.
/// Requires S square, symmetric, non-negative, with positive row sums.
Matrix normalized_laplacian(const SimilarityMatrix& s);

/// Eigenvectors of the k smallest eigenvalues of a symmetric matrix, rows scaled
/// to unit norm. A numerically zero row becomes e_1. Requires 2 <= k <= N.
SpectralEmbedding spectral_embed(const Matrix& laplacian, int k);

struct KMeansOptions {
    int restarts = 10;
    int max_iterations = 100;
};

struct KMeansResult {
    Clustering clustering;
    Matrix centroids;
    double wcss = 0.0;
    int iterations = 0;
    int best_restart = 0;
    // Within-cluster sum of squares after each iteration of the winning restart.
    std::vector<double> wcss_trace;
};

/// Lloyd's k-means with k-means++ seeding and restarts. The restart with the lowest
/// WCSS wins (ties: lowest restart index). Empty clusters are repaired by moving the
/// point farthest from its centroid, so all k clusters are non-empty. Requires 1 <= k <= N.
KMeansResult kmeans_fit(const Matrix& points, int k, Rng& rng, const KMeansOptions& options = {});

Clustering kmeans(const Matrix& points, int k, Rng& rng, const KMeansOptions& options = {});

/// normalized_laplacian -> spectral_embed -> kmeans.
Clustering spectral_cluster(const SimilarityMatrix& s, int k, Rng& rng);

}  // namespace mdec
