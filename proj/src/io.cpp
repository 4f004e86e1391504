#include "mdec/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mdec/errors.hpp"

namespace mdec {

using json = nlohmann::json;

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw IoError("error writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string dataset_to_csv(const Dataset& dataset) {
    std::string out;
    const std::size_t d = dataset.d_full();
    for (std::size_t j = 0; j < d; ++j) {
        if (j > 0) out += ',';
        out += dataset.feature_names().empty() ? "x" + std::to_string(j) : dataset.feature_names()[j];
    }
    if (dataset.has_labels()) out += ",label";
    out += '\n';
    for (std::size_t i = 0; i < dataset.n(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (j > 0) out += ',';
            out += format_double(dataset.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        if (dataset.has_labels()) out += "," + std::to_string((*dataset.labels())[i]);
        out += '\n';
    }
    return out;
}

std::string ensemble_to_jsonl(const Ensemble& ensemble) {
    std::string out;
    for (std::size_t m = 0; m < ensemble.m(); ++m) {
        const auto& p = ensemble.provenance()[m];
        json line;
        line["member_index"] = p.member_index;
        line["seed"] = p.seed;
        line["metric"] = std::string(to_string(p.metric));
        line["subspace"] = p.subspace.feature_indices;
        line["mu"] = p.params.mu;
        line["k"] = p.params.k;
        line["k_m"] = p.k_m;
        line["labels"] = ensemble[m].labels();
        out += line.dump();
        out += '\n';
    }
    return out;
}

Ensemble ensemble_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::vector<Clustering> members;
    std::vector<MemberProvenance> provenance;
    while (std::getline(in, raw)) {
        ++line_no;
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json line = json::parse(raw);
            MemberProvenance p;
            p.member_index = line.value("member_index", members.size());
            p.seed = line.value("seed", std::uint64_t{0});
            p.metric = similarity_kind_from_string(line.value("metric", std::string("ses")));
            p.subspace.feature_indices =
                line.value("subspace", std::vector<std::size_t>{});
            p.params.mu = line.value("mu", 0.5);
            p.params.k = line.value("k", 1);
            Clustering c(line.at("labels").get<std::vector<int>>());
            p.k_m = line.value("k_m", c.k());
            if (p.k_m != c.k()) throw ValidationError("k_m does not match label vector");
            members.push_back(std::move(c));
            provenance.push_back(std::move(p));
        } catch (const json::exception& e) {
            throw ParseError(line_no, e.what());
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return Ensemble(std::move(members), std::move(provenance));
}

std::string matrix_to_text(const Matrix& matrix) {
    std::string out = std::to_string(matrix.rows()) + '\n';
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) out += ' ';
            out += format_double(matrix(i, j));
        }
        out += '\n';
    }
    return out;
}

Matrix matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    Eigen::Index n = 0;
    if (!(in >> n) || n < 0) throw ParseError(1, "expected matrix dimension");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(in >> m(i, j))) {
                throw ParseError(static_cast<std::size_t>(i) + 2, "expected " + std::to_string(n) + " values");
            }
        }
    }
    return m;
}

}  // namespace mdec
