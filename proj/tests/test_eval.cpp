#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mdec/errors.hpp"
#include "mdec/eval.hpp"
#include "support.hpp"

using namespace mdec;

TEST_CASE("contingency: identity and extremes") {
    const Clustering a({0, 1, 1, 2, 2, 2});
    const auto t = contingency(a, a);
    CHECK(t.total == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(t.counts[i][j] == (i == j ? static_cast<std::int64_t>(i + 1) : 0));
    const auto ext = contingency(Clustering({0, 0, 0, 0}), Clustering({0, 1, 2, 3}));
    CHECK(ext.counts == std::vector<std::vector<std::int64_t>>{{1, 1, 1, 1}});
    CHECK(ext.row_sums == std::vector<std::int64_t>{4});
    CHECK(ext.col_sums == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("contingency and pair counts: random pairs against counting oracles") {
    std::mt19937_64 gen(1);
    for (int t = 0; t < 50; ++t) {
        const auto a = oracle::random_labels(gen, 15, 1 + static_cast<int>(gen() % 6));
        const auto b = oracle::random_labels(gen, 15, 1 + static_cast<int>(gen() % 6));
        const auto table = contingency(Clustering(a), Clustering(b));
        for (std::size_t i = 0; i < table.counts.size(); ++i)
            for (std::size_t j = 0; j < table.counts[i].size(); ++j) {
                std::int64_t want = 0;
                for (std::size_t s = 0; s < 15; ++s)
                    if (a[s] == static_cast<int>(i) && b[s] == static_cast<int>(j)) ++want;
                CHECK(table.counts[i][j] == want);
            }
        const auto got = pair_counts(Clustering(a), Clustering(b));
        const auto want = oracle::pairs(a, b);
        CHECK(got.n11 == want.n11);
        CHECK(got.n00 == want.n00);
        CHECK(got.n10 == want.n10);
        CHECK(got.n01 == want.n01);
        CHECK(got.n11 + got.n00 + got.n10 + got.n01 == 15 * 14 / 2);
    }
}

TEST_CASE("nmi: fixed values") {
    const Clustering a({0, 0, 1, 1, 2});
    CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nmi(Clustering({0, 0, 0, 0, 0}), a) == 0.0);
    CHECK(nmi(a, Clustering({0, 0, 0, 0, 0})) == 0.0);
    const Clustering x({0, 0, 1, 1}), y({0, 1, 1, 1});
    CHECK(std::abs(nmi(x, y) - oracle::nmi(x.labels(), y.labels())) <= 1e-12);
    CHECK(std::abs(nmi(x, y) - 0.3455920299442113) <= 1e-12);
}

TEST_CASE("ari: fixed values") {
    const Clustering a({0, 0, 1, 1, 2});
    CHECK(ari(a, a) == 1.0);
    const Clustering x({0, 0, 1, 1}), y({0, 1, 0, 1});
    const auto p = pair_counts(x, y);
    CHECK(p.n11 == 0);
    CHECK(p.n00 == 2);
    CHECK(p.n10 == 2);
    CHECK(p.n01 == 2);
    CHECK(ari(x, y) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(ari(x, y) == doctest::Approx(oracle::ari(x.labels(), y.labels())).epsilon(1e-15));
}

TEST_CASE("ari: zero denominators") {
    const Clustering single({0, 0, 0});
    const Clustering singletons({0, 1, 2});
    CHECK(ari(single, single) == 1.0);
    CHECK(ari(singletons, singletons) == 1.0);
    CHECK(ari(single, singletons) == 0.0);
}

TEST_CASE("scores: random pairs against oracles") {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 100; ++t) {
        const auto a = oracle::random_labels(gen, 12, 1 + static_cast<int>(gen() % 5));
        const auto b = oracle::random_labels(gen, 12, 1 + static_cast<int>(gen() % 5));
        CHECK(std::abs(nmi(Clustering(a), Clustering(b)) - oracle::nmi(a, b)) <= 1e-12);
        const double want_ari = oracle::ari(a, b);
        if (std::isfinite(want_ari)) CHECK(std::abs(ari(Clustering(a), Clustering(b)) - want_ari) <= 1e-12);
    }
}

TEST_CASE("scores: symmetric and relabel-invariant") {
    std::mt19937_64 gen(3);
    for (int t = 0; t < 100; ++t) {
        const int k = 2 + static_cast<int>(gen() % 4);
        const auto a = oracle::random_labels(gen, 14, k);
        const auto b = oracle::random_labels(gen, 14, 2 + static_cast<int>(gen() % 4));
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<int> relabeled(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) relabeled[i] = perm[static_cast<std::size_t>(a[i])];
        const Clustering ca(a), cb(b), cr(relabeled);
        CHECK(nmi(ca, cb) == nmi(cb, ca));
        CHECK(ari(ca, cb) == ari(cb, ca));
        CHECK(nmi(cr, cb) == nmi(ca, cb));
        CHECK(ari(cr, cb) == ari(ca, cb));
        CHECK(ari(ca, cr) == 1.0);
        CHECK(nmi(ca, cr) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((nmi(ca, cb) >= 0.0 && nmi(ca, cb) <= 1.0));
    }
}

TEST_CASE("scores: length mismatch") {
    const Clustering a({0, 1, 0}), b({0, 1});
    CHECK_THROWS_AS(nmi(a, b), ValidationError);
    CHECK_THROWS_AS(ari(a, b), ValidationError);
    CHECK_THROWS_AS(contingency(a, b), ValidationError);
    CHECK_THROWS_AS(pair_counts(a, b), ValidationError);
}

TEST_CASE("summary: population statistics") {
    const auto s = summarize({0.4, 0.6});
    CHECK(s.mean == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.std == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(summarize({0.3}).std == 0.0);
}

TEST_CASE("ensemble stats") {
    const Clustering truth({0, 0, 1, 1, 2, 2});
    const auto perfect = ensemble_stats(Ensemble::from_members({truth, truth, truth}), truth);
    CHECK(perfect.nmi_summary.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(perfect.nmi_summary.std == doctest::Approx(0.0));
    CHECK(perfect.ari_summary.mean == 1.0);
    std::mt19937_64 gen(4);
    const Ensemble e = support::random_ensemble(gen, 6, 7, 3);
    const auto stats = ensemble_stats(e, truth);
    REQUIRE(stats.nmi.size() == 7);
    double mean = 0.0;
    for (std::size_t m = 0; m < 7; ++m) {
        CHECK(stats.nmi[m] == nmi(e[m], truth));
        CHECK(stats.ari[m] == ari(e[m], truth));
        mean += stats.nmi[m] / 7.0;
    }
    CHECK(stats.nmi_summary.mean == doctest::Approx(mean).epsilon(1e-14));
}
