#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mdec/dataset.hpp"
#include "mdec/ensemble.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Rows to_rows(const mdec::Matrix& m) {
    oracle::Rows r(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    return r;
}

inline mdec::Matrix random_matrix(std::mt19937_64& gen, Eigen::Index n, Eigen::Index d) {
    std::normal_distribution<double> z(0.0, 1.0);
    mdec::Matrix m(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = z(gen);
    return m;
}

inline mdec::Dataset random_dataset(std::mt19937_64& gen, Eigen::Index n, Eigen::Index d) {
    return mdec::Dataset(random_matrix(gen, n, d));
}

inline std::vector<oracle::Labels> labels_of(const mdec::Ensemble& e) {
    std::vector<oracle::Labels> out;
    for (const auto& c : e.members()) out.push_back(c.labels());
    return out;
}

inline mdec::Ensemble random_ensemble(std::mt19937_64& gen, std::size_t n, std::size_t m, int k_max) {
    std::vector<mdec::Clustering> members;
    std::uniform_int_distribution<int> pick_k(1, std::min<int>(k_max, static_cast<int>(n)));
    for (std::size_t t = 0; t < m; ++t) members.emplace_back(oracle::random_labels(gen, n, pick_k(gen)));
    return mdec::Ensemble::from_members(std::move(members));
}

// Block labels: sample i belongs to block i * k / n.
inline std::vector<int> block_labels(std::size_t n, int k) {
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(i * static_cast<std::size_t>(k) / n);
    return l;
}

inline mdec::SimilarityMatrix block_similarity(const std::vector<int>& labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    mdec::Matrix s = mdec::Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) s(i, j) = 1.0;
    return {s};
}

}  // namespace support
