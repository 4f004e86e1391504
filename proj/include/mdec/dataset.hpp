#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdec/rng.hpp"

namespace mdec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Hard partition of N samples into K non-empty clusters, stored as a label vector.
/// Every id in [0, K) occurs at least once.
class Clustering {
public:
    /// Takes labels already in [0, K) with every id present; throws ValidationError otherwise.
    explicit Clustering(std::vector<int> labels);

    /// Accepts arbitrary (non-negative or negative) ids and renumbers them
    /// to 0, 1, ... by order of first appearance.
    static Clustering from_raw(std::span<const int> raw);

    std::size_t n() const noexcept { return labels_.size(); }
    int k() const noexcept { return k_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    int operator[](std::size_t i) const { return labels_[i]; }

    /// Sample indices of each cluster, ascending.
    std::vector<std::vector<std::size_t>> cluster_members() const;
    std::vector<std::size_t> cluster_sizes() const;

    bool operator==(const Clustering&) const = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

/// N x D matrix of finite reals with optional feature names and ground-truth labels.
class Dataset {
public:
    Dataset(Matrix values, std::vector<std::string> feature_names = {},
            std::optional<std::vector<int>> labels = std::nullopt);

    const Matrix& values() const noexcept { return values_; }
    std::size_t n() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t d_full() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return labels_.has_value(); }

    /// Ground truth as a Clustering. Throws ValidationError when unlabeled.
    Clustering truth() const;

    /// Column-wise z-scoring. Constant columns are centered only.
    Dataset standardized() const;

private:
    Matrix values_;
    std::vector<std::string> feature_names_;
    std::optional<std::vector<int>> labels_;
};

/// Feature subset: strictly increasing column indices.
struct Subspace {
    std::vector<std::size_t> feature_indices;

    std::size_t size() const noexcept { return feature_indices.size(); }
    bool operator==(const Subspace&) const = default;

    static Subspace full(std::size_t d_full);
};

/// Dense N x N symmetric affinity matrix (SES member matrices and the consensus matrix).
struct SimilarityMatrix {
    Matrix entries;

    std::size_t n() const noexcept { return static_cast<std::size_t>(entries.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
};

struct CsvOptions {
    char delimiter = ',';
    bool has_header = false;
    std::optional<std::size_t> label_column;
};

Dataset load_dataset(const std::filesystem::path& path, const CsvOptions& options = {});

/// Same as load_dataset but reads from an in-memory string.
Dataset parse_dataset(const std::string& text, const CsvOptions& options = {});

/// d = max(1, floor(tau * d_full)) distinct indices drawn without replacement, sorted.
Subspace sample_subspace(std::size_t d_full, double tau, Rng& rng);

/// Restricts the dataset to the subspace's columns; labels are carried through.
Dataset project(const Dataset& dataset, const Subspace& subspace);

}  // namespace mdec
