#pragma once

#include <filesystem>
#include <string>

#include "mdec/dataset.hpp"
#include "mdec/ensemble.hpp"

namespace mdec {

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// CSV with a header row (feature names, or x0..x{D-1}); labels, when present,
/// go in a trailing "label" column.
std::string dataset_to_csv(const Dataset& dataset);

/// Ensemble dump: one JSON object per line, one line per member, with keys
/// member_index, seed, metric, subspace, mu, k, k_m, labels.
std::string ensemble_to_jsonl(const Ensemble& ensemble);
Ensemble ensemble_from_jsonl(const std::string& text);

/// Dense matrix dump: first line N, then N lines of N space-separated decimals.
std::string matrix_to_text(const Matrix& matrix);
Matrix matrix_from_text(const std::string& text);

}  // namespace mdec
