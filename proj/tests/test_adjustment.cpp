#include <doctest.h>

#include <random>

#include "hyperkan/adjustment.hpp"
#include "oracles.hpp"

using namespace hyperkan;

namespace {

BinaryRow bits(std::initializer_list<int> v) {
    BinaryRow r{v.size(), {}};
    Index j = 0;
    for (int b : v) {
        if (b) r.ones.push_back(j);
        ++j;
    }
    return r;
}

std::vector<int> dense(const BinaryRow& r) {
    std::vector<int> out(r.length, 0);
    for (auto j : r.ones) out[j] = 1;
    return out;
}

CountMatrix counts(const oracle::IntMatrix& d) { return oracle::to_sparse(d, d.size()); }

}  // namespace

TEST_CASE("neighbor_mask") {
    CHECK(dense(neighbor_mask(bits({1, 1, 0, 0}), 0)) == std::vector<int>{0, 0, 1, 1});
    CHECK(dense(neighbor_mask(bits({1, 1, 1}), 0)) == std::vector<int>{0, 0, 0});
    CHECK(dense(neighbor_mask(bits({0, 1, 0}), 0)) == std::vector<int>{0, 0, 1});
}

TEST_CASE("augment_f2") {
    const std::vector<double> sim{.9, .8, .1, .7};
    CHECK(dense(augment_f2(bits({0, 0, 1, 0}), sim, 2, 0)) == std::vector<int>{0, 1, 1, 0});
    const auto full = bits({0, 1, 1, 1});
    CHECK(augment_f2(full, sim, 2, 0) == full);
    const std::vector<double> ties{.5, .5, .5, .5};
    CHECK(dense(augment_f2(bits({0, 0, 1, 0}), ties, 2, 0)) == std::vector<int>{0, 1, 1, 0});
    // Asks for more than exist: takes every candidate.
    CHECK(dense(augment_f2(bits({0, 0, 0}), std::vector<double>{1, 0, 0}, 5, 0)) ==
          std::vector<int>{0, 1, 1});
    CHECK_THROWS_AS(augment_f2(bits({0, 1}), sim, 1, 0), DimensionMismatch);
}

TEST_CASE("prune_f1") {
    CHECK(dense(prune_f1(bits({1, 1, 1, 1}), std::vector<double>{1, .2, .9, .5}, 2, 0)) ==
          std::vector<int>{0, 0, 1, 1});
    CHECK(dense(prune_f1(bits({1, 1, 0, 1}), std::vector<double>{1, .2, .9, .5}, 3, 0)) ==
          std::vector<int>{0, 1, 0, 1});
    CHECK(dense(prune_f1(bits({0, 1, 1}), std::vector<double>{0, .5, .5}, 1, 0)) ==
          std::vector<int>{0, 1, 0});
}

TEST_CASE("normalize_row") {
    const auto a = normalize_row(bits({1, 0, 1, 0}));
    CHECK(a.cols == std::vector<Index>{0, 2});
    CHECK(a.values == std::vector<double>{0.5, 0.5});
    const auto z = normalize_row(bits({0, 0, 0}));
    CHECK(z.cols.empty());
    CHECK(z.values.empty());
    CHECK(normalize_row(bits({1, 1, 1, 1})).values == std::vector<double>{.25, .25, .25, .25});
}

TEST_CASE("adjust_all worked example") {
    StructuralFeatures sf{{counts({{1, 1, 0}, {1, 2, 1}, {0, 1, 1}})}};
    const auto s = oracle::to_similarity({{1, .9, .1}, {.9, 1, .8}, {.1, .8, 1}});
    const auto adj = adjust_all(sf, s, {1, 1, 1});
    const auto d = oracle::to_dense_real(adj.hops[0]);
    CHECK(d == oracle::RealMatrix{{0, 1, 0}, {1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("isolated vertex gains its most similar vertices") {
    StructuralFeatures sf{{counts({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}})}};
    const auto s = oracle::to_similarity(
        {{1, .2, .7, .6}, {.2, 1, .1, .1}, {.7, .1, 1, .1}, {.6, .1, .1, 1}});
    const auto adj = adjust_all(sf, s, {3, 2, 1});
    const auto row = adj.hops[0].row(0);
    CHECK(std::vector<Index>(row.cols.begin(), row.cols.end()) == std::vector<Index>{2, 3});
    CHECK(std::vector<double>(row.values.begin(), row.values.end()) == std::vector<double>{.5, .5});
}

TEST_CASE("generous bounds leave the binarized pattern alone") {
    // Path 0-1-2-3.
    const auto h = build_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto sf = structural_features(h, 1);
    const auto s = oracle::to_similarity(oracle::RealMatrix(4, std::vector<double>(4, 0.3)));
    const auto adj = adjust_all(sf, s, {3, 1, 1});
    const auto d = oracle::to_dense_real(adj.hops[0]);
    CHECK(d == oracle::RealMatrix{{0, 1, 0, 0}, {.5, 0, .5, 0}, {0, .5, 0, .5}, {0, 0, 1, 0}});
}

TEST_CASE("adjust_all input checks") {
    StructuralFeatures sf{{counts({{1, 1, 0}, {1, 2, 1}, {0, 1, 1}})}};
    const auto s = oracle::to_similarity(oracle::RealMatrix(3, std::vector<double>(3, 0.0)));
    CHECK_THROWS_AS(adjust_all(sf, s, {3, 1, 1}), InvalidConfig);  // n_max >= N
    CHECK_THROWS_AS(adjust_all(sf, s, {1, 2, 1}), InvalidConfig);  // m_min > n_max
    CHECK_THROWS_AS(adjust_all(sf, s, {1, 0, 1}), InvalidConfig);
    CHECK_THROWS_AS(adjust_all(sf, s, {2, 1, 2}), DimensionMismatch);
    const auto small = oracle::to_similarity(oracle::RealMatrix(2, std::vector<double>(2, 0.0)));
    CHECK_THROWS_AS(adjust_all(sf, small, {1, 1, 1}), DimensionMismatch);
}

TEST_CASE("adjust_all matches brute force on random instances") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const auto edges = oracle::random_edges(rng, n, rng() % 9);
        const unsigned k = 1 + static_cast<unsigned>(rng() % 2);
        const Index n_max = 1 + rng() % (n - 1);
        const Index m_min = 1 + rng() % n_max;
        const auto sim = oracle::random_similarity(rng, n);

        const auto sf = structural_features(build_hypergraph(n, edges), k);
        const auto adj = adjust_all(sf, oracle::to_similarity(sim), {n_max, m_min, k});
        const auto dense_a = oracle::adjacency(n, edges);
        REQUIRE(adj.k() == k);
        for (unsigned p = 1; p <= k; ++p) {
            const auto expected = oracle::binary_adjust(oracle::power(dense_a, p), sim, n_max, m_min);
            const auto got = oracle::to_dense_real(adj.hops[p - 1]);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t nnz = 0;
                double sum = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    REQUIRE((got[i][j] != 0) == (expected[i][j] == 1));
                    REQUIRE(got[i][j] >= 0);
                    nnz += got[i][j] != 0;
                    sum += got[i][j];
                }
                for (std::size_t j = 0; j < n; ++j)
                    if (expected[i][j]) REQUIRE(std::abs(got[i][j] - 1.0 / nnz) <= 1e-12);
                REQUIRE(nnz >= m_min);
                REQUIRE(nnz <= n_max);
                REQUIRE(std::abs(sum - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("binary stage is idempotent and monotone") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 12;
        const Index self = rng() % n;
        const Index n_max = 1 + rng() % (n - 1);
        const Index m_min = 1 + rng() % n_max;
        const auto sim_m = oracle::random_similarity(rng, n);
        const std::span<const double> sim(sim_m[self]);
        BinaryRow row{n, {}};
        for (Index j = 0; j < n; ++j)
            if (rng() % 2) row.ones.push_back(j);

        const auto f2 = augment_f2(row, sim, m_min, self);
        for (auto j : row.ones) REQUIRE(f2.contains(j));
        const auto f1 = prune_f1(f2, sim, n_max, self);
        for (auto j : f1.ones) REQUIRE(f2.contains(j));
        REQUIRE(!f1.contains(self));

        const auto again = prune_f1(augment_f2(f1, sim, m_min, self), sim, n_max, self);
        REQUIRE(again == f1);
    }
}
