#include <doctest.h>

#include <cmath>
#include <random>

#include "mdec/errors.hpp"
#include "mdec/metric.hpp"
#include "support.hpp"

using namespace mdec;

namespace {

Dataset rows_dataset(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return Dataset(m);
}

}  // namespace

TEST_CASE("distances: hand cases") {
    const auto d = pairwise_distances(rows_dataset({{0, 0}, {3, 4}, {3, 4}}));
    CHECK(d.entries(0, 1) == 5.0);
    CHECK(d.entries(1, 2) == 0.0);
    CHECK(d.entries(2, 0) == 5.0);
    CHECK(d.entries.diagonal().isZero(0.0));
}

TEST_CASE("distances: oracle on random data") {
    std::mt19937_64 gen(3);
    const Dataset ds = support::random_dataset(gen, 6, 4);
    const auto want = oracle::distances(support::to_rows(ds.values()));
    const auto got = pairwise_distances(ds);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(got.entries(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));
    CHECK(got.entries == got.entries.transpose());
}

TEST_CASE("knn mean distance: collinear points") {
    const auto d = pairwise_distances(rows_dataset({{0}, {1}, {3}}));
    CHECK(knn_mean_distance(d, 1) == std::vector<double>{1, 1, 2});
    const auto full = knn_mean_distance(d, 2);
    CHECK(full[0] == doctest::Approx(2.0));
    CHECK(full[1] == doctest::Approx(1.5));
    CHECK(full[2] == doctest::Approx(2.5));
    CHECK_THROWS_AS(knn_mean_distance(d, 0), ValidationError);
    CHECK_THROWS_AS(knn_mean_distance(d, 3), ValidationError);
}

TEST_CASE("knn mean distance: oracle and monotone in k") {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 20; ++t) {
        const Dataset ds = support::random_dataset(gen, 8, 3);
        const auto d = pairwise_distances(ds);
        const auto rows = support::to_rows(d.entries);
        std::vector<double> prev(8, 0.0);
        for (int k = 1; k <= 7; ++k) {
            const auto got = knn_mean_distance(d, k);
            const auto want = oracle::knn_mean(rows, k);
            for (int i = 0; i < 8; ++i) {
                CHECK(std::abs(got[i] - want[i]) <= 1e-12);
                CHECK(got[i] >= prev[i] - 1e-15);
            }
            prev = got;
        }
    }
}

TEST_CASE("ses: coincident samples reach 1") {
    const auto d = pairwise_distances(rows_dataset({{1, 1}, {1, 1}, {5, 5}}));
    const auto s = ses_similarity(d, {0.5, 1});
    CHECK(s(0, 1) == 1.0);
    CHECK(s(0, 0) == 1.0);
    CHECK(s(0, 2) < 1.0);
}

TEST_CASE("ses: symmetric plug-in gives exp(-1)") {
    DistanceMatrix d{Matrix::Constant(3, 3, 2.0)};
    d.entries.diagonal().setZero();
    const auto s = ses_similarity(d, {1.0, 2});
    CHECK(s(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(s(0, 1) == doctest::Approx(0.3679).epsilon(1e-4));
}

TEST_CASE("ses: per-pair oracle") {
    std::mt19937_64 gen(8);
    const Dataset ds = support::random_dataset(gen, 6, 3);
    const auto d = pairwise_distances(ds);
    const auto rows = support::to_rows(d.entries);
    const auto rho = oracle::knn_mean(rows, 2);
    const auto s = ses_similarity(d, {0.5, 2});
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(s(i, j) - oracle::ses_pair(rows, rho, i, j, 0.5)) <= 1e-12);
}

TEST_CASE("ses: similarity grows with mu") {
    std::mt19937_64 gen(9);
    const auto d = pairwise_distances(support::random_dataset(gen, 10, 4));
    const auto lo = ses_similarity(d, {0.2, 3});
    const auto hi = ses_similarity(d, {0.8, 3});
    CHECK((hi.entries.array() >= lo.entries.array()).all());
    CHECK_THROWS_AS(ses_similarity(d, {0.0, 3}), ValidationError);
}

TEST_CASE("kernel params: range edges") {
    const ParamRanges r{0.2, 0.8, 7, 33};
    CHECK(kernel_params_from_uniforms(r, 0.0, 0.0) == KernelParams{0.2, 7});
    CHECK(kernel_params_from_uniforms(r, 1.0, 0.0).mu == doctest::Approx(0.8));
    CHECK(kernel_params_from_uniforms(r, 0.0, 0.5).k == 20);
    CHECK_THROWS_AS((ParamRanges{0.0, 0.8, 1, 2}.validate()), ValidationError);
    CHECK_THROWS_AS((ParamRanges{0.5, 0.4, 1, 2}.validate()), ValidationError);
    CHECK_THROWS_AS((ParamRanges{0.2, 0.8, 3, 2}.validate()), ValidationError);
}

TEST_CASE("kernel params: Monte Carlo against the uniform law") {
    const ParamRanges r{0.2, 0.8, 7, 33};
    Rng rng(2024);
    double mu_sum = 0.0;
    int k_lo = 100, k_hi = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto p = draw_kernel_params(r, rng);
        mu_sum += p.mu;
        CHECK_MESSAGE((p.mu >= 0.2 && p.mu <= 0.8), p.mu);
        k_lo = std::min(k_lo, p.k);
        k_hi = std::max(k_hi, p.k);
    }
    CHECK(std::abs(mu_sum / draws - 0.5) < 0.01);
    CHECK(k_lo >= 7);
    CHECK(k_hi <= 33);
    Rng a(5), b(5);
    CHECK(draw_kernel_params(r, a) == draw_kernel_params(r, b));
}

TEST_CASE("fixed similarity: identical and anti-proportional rows") {
    const Dataset same = rows_dataset({{1, 2, 4}, {1, 2, 4}, {3, 0, 1}});
    for (auto kind : {SimilarityKind::cosine, SimilarityKind::pearson, SimilarityKind::spearman}) {
        const auto s = fixed_similarity(same, kind);
        CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.entries.diagonal().isOnes(0.0));
        CHECK(s.entries == s.entries.transpose());
    }
    const Dataset anti = rows_dataset({{1, 2, 4}, {-1, -2, -4}});
    CHECK(fixed_similarity(anti, SimilarityKind::pearson)(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(fixed_similarity(anti, SimilarityKind::cosine)(0, 1)) <= 1e-12);
}

TEST_CASE("fixed similarity: rank and correlation oracles") {
    std::mt19937_64 gen(21);
    Matrix m = support::random_matrix(gen, 5, 6);
    m(0, 2) = m(0, 4);  // a tie inside one row
    const Dataset ds(m);
    const auto rows = support::to_rows(m);
    const auto sp = fixed_similarity(ds, SimilarityKind::spearman);
    const auto pe = fixed_similarity(ds, SimilarityKind::pearson);
    const auto co = fixed_similarity(ds, SimilarityKind::cosine);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j) continue;
            CHECK(std::abs(sp(i, j) - (oracle::spearman(rows[i], rows[j]) + 1.0) / 2.0) <= 1e-10);
            CHECK(std::abs(pe(i, j) - (oracle::pearson(rows[i], rows[j]) + 1.0) / 2.0) <= 1e-10);
            double dot = 0, na = 0, nb = 0;
            for (std::size_t f = 0; f < 6; ++f) {
                dot += rows[i][f] * rows[j][f];
                na += rows[i][f] * rows[i][f];
                nb += rows[j][f] * rows[j][f];
            }
            CHECK(std::abs(co(i, j) - (dot / std::sqrt(na * nb) + 1.0) / 2.0) <= 1e-10);
        }
}

TEST_CASE("fixed similarity: undefined cases name the sample") {
    const Dataset zero = rows_dataset({{1, 2}, {0, 0}, {3, 1}});
    try {
        fixed_similarity(zero, SimilarityKind::cosine);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("sample 1") != std::string::npos);
    }
    const Dataset flat = rows_dataset({{1, 2}, {3, 1}, {4, 4}});
    CHECK_THROWS_AS(fixed_similarity(flat, SimilarityKind::pearson), ValidationError);
    CHECK_THROWS_AS(fixed_similarity(flat, SimilarityKind::spearman), ValidationError);
    CHECK_THROWS_AS(fixed_similarity(flat, SimilarityKind::ses), ValidationError);
}

TEST_CASE("similarity kind names round-trip") {
    for (auto kind : {SimilarityKind::ses, SimilarityKind::cosine, SimilarityKind::pearson, SimilarityKind::spearman})
        CHECK(similarity_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(similarity_kind_from_string("euclid"), ValidationError);
}
