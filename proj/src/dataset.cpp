#include "mdec/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mdec/errors.hpp"

namespace mdec {

// ---------------------------------------------------------------- Clustering

Clustering::Clustering(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("Clustering: empty label vector");
    const int max_id = *std::max_element(labels_.begin(), labels_.end());
    const int min_id = *std::min_element(labels_.begin(), labels_.end());
    if (min_id < 0) throw ValidationError("Clustering: negative cluster id");
    std::vector<bool> seen(static_cast<std::size_t>(max_id) + 1, false);
    for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
    for (std::size_t c = 0; c < seen.size(); ++c) {
        if (!seen[c]) {
            throw ValidationError("Clustering: cluster id " + std::to_string(c) + " is empty");
        }
    }
    k_ = max_id + 1;
}

Clustering Clustering::from_raw(std::span<const int> raw) {
    std::unordered_map<int, int> remap;
    std::vector<int> labels;
    labels.reserve(raw.size());
    for (int r : raw) {
        auto [it, inserted] = remap.try_emplace(r, static_cast<int>(remap.size()));
        labels.push_back(it->second);
    }
    return Clustering(std::move(labels));
}

std::vector<std::vector<std::size_t>> Clustering::cluster_members() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        out[static_cast<std::size_t>(labels_[i])].push_back(i);
    }
    return out;
}

std::vector<std::size_t> Clustering::cluster_sizes() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(k_), 0);
    for (int l : labels_) ++out[static_cast<std::size_t>(l)];
    return out;
}

// ---------------------------------------------------------------- Dataset

Dataset::Dataset(Matrix values, std::vector<std::string> feature_names,
                 std::optional<std::vector<int>> labels)
    : values_(std::move(values)), feature_names_(std::move(feature_names)),
      labels_(std::move(labels)) {
    if (values_.rows() < 2) {
        throw ValidationError("dataset needs at least 2 samples, got " +
                              std::to_string(values_.rows()));
    }
    if (values_.cols() < 1) throw ValidationError("dataset needs at least 1 feature");
    if (!values_.allFinite()) throw ValidationError("dataset contains NaN or Inf values");
    if (!feature_names_.empty() && feature_names_.size() != d_full()) {
        throw ValidationError("feature name count does not match feature count");
    }
    if (labels_) {
        if (labels_->size() != n()) {
            throw ValidationError("label count " + std::to_string(labels_->size()) +
                                  " does not match sample count " + std::to_string(n()));
        }
        Clustering check(*labels_);  // ids contiguous from 0
    }
}

Clustering Dataset::truth() const {
    if (!labels_) throw ValidationError("dataset has no ground-truth labels");
    return Clustering(*labels_);
}

Dataset Dataset::standardized() const {
    Matrix z = values_;
    const double count = static_cast<double>(z.rows());
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        const double mean = z.col(c).mean();
        z.col(c).array() -= mean;
        const double sd = std::sqrt(z.col(c).squaredNorm() / count);
        if (sd > 0.0) z.col(c) /= sd;
    }
    return Dataset(std::move(z), feature_names_, labels_);
}

Subspace Subspace::full(std::size_t d_full) {
    Subspace s;
    s.feature_indices.resize(d_full);
    std::iota(s.feature_indices.begin(), s.feature_indices.end(), std::size_t{0});
    return s;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

double parse_number(std::string_view cell, std::size_t line, std::size_t column) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(line, "column " + std::to_string(column) +
                                   ": non-numeric value '" + std::string(cell) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line, "column " + std::to_string(column) + ": non-finite value '" +
                                   std::string(cell) + "'");
    }
    return value;
}

}  // namespace

Dataset parse_dataset(const std::string& text, const CsvOptions& options) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    bool header_pending = options.has_header;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::map<std::string, int, std::less<>> label_ids;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        const auto cells = split(line, options.delimiter);
        if (columns == 0) {
            columns = cells.size();
            if (options.label_column && *options.label_column >= columns) {
                throw ParseError(line_no, "label column " + std::to_string(*options.label_column) +
                                              " out of range for " + std::to_string(columns) +
                                              " columns");
            }
        } else if (cells.size() != columns) {
            throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, found " +
                                          std::to_string(cells.size()));
        }

        if (header_pending) {
            header_pending = false;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (options.label_column && c == *options.label_column) continue;
                header.emplace_back(cells[c]);
            }
            continue;
        }

        std::vector<double> row;
        row.reserve(columns);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (options.label_column && c == *options.label_column) {
                auto [it, inserted] =
                    label_ids.try_emplace(std::string(cells[c]), static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
                continue;
            }
            row.push_back(parse_number(cells[c], line_no, c));
        }
        rows.push_back(std::move(row));
    }

    if (rows.size() < 2) {
        throw ValidationError("dataset needs at least 2 samples, got " + std::to_string(rows.size()));
    }
    const std::size_t d = rows.front().size();
    if (d == 0) throw ValidationError("dataset has no feature columns");

    Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    std::optional<std::vector<int>> label_opt;
    if (options.label_column) label_opt = std::move(labels);
    return Dataset(std::move(values), std::move(header), std::move(label_opt));
}

Dataset load_dataset(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return parse_dataset(buffer.str(), options);
}

// ---------------------------------------------------------------- subspaces

Subspace sample_subspace(std::size_t d_full, double tau, Rng& rng) {
    if (d_full < 1) throw ValidationError("sample_subspace: d_full must be >= 1");
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw ValidationError("sampling ratio tau must lie in (0, 1], got " + std::to_string(tau));
    }
    const auto d = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(tau * static_cast<double>(d_full))));
    if (d >= d_full) return Subspace::full(d_full);

    // Partial Fisher-Yates over the index pool.
    std::vector<std::size_t> pool(d_full);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(d_full - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(d);
    std::sort(pool.begin(), pool.end());
    return Subspace{std::move(pool)};
}

Dataset project(const Dataset& dataset, const Subspace& subspace) {
    const auto& idx = subspace.feature_indices;
    if (idx.empty()) throw ValidationError("project: empty subspace");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= dataset.d_full()) {
            throw ValidationError("project: feature index " + std::to_string(idx[i]) +
                                  " out of range for " + std::to_string(dataset.d_full()) +
                                  " features");
        }
        if (i > 0 && idx[i] <= idx[i - 1]) {
            throw ValidationError("project: subspace indices must be strictly increasing");
        }
    }
    Matrix out(dataset.values().rows(), static_cast<Eigen::Index>(idx.size()));
    std::vector<std::string> names;
    for (std::size_t c = 0; c < idx.size(); ++c) {
        out.col(static_cast<Eigen::Index>(c)) = dataset.values().col(static_cast<Eigen::Index>(idx[c]));
        if (!dataset.feature_names().empty()) names.push_back(dataset.feature_names()[idx[c]]);
    }
    return Dataset(std::move(out), std::move(names), dataset.labels());
}

}  // namespace mdec
