#include <doctest.h>

#include <random>

#include "hyperkan/hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperkan;

namespace {

CountMatrix dense_to_sparse(const oracle::IntMatrix& d) {
    return oracle::to_sparse(d, d.empty() ? 0 : d[0].size());
}

}  // namespace

TEST_CASE("build_hypergraph stores one entry per membership") {
    const auto h = build_hypergraph(3, {{0, 1}, {1, 2}});
    CHECK(h.num_vertices() == 3);
    CHECK(h.num_hyperedges() == 2);
    const auto& inc = h.incidence();
    CHECK(inc.row(0).cols.size() == 1);
    CHECK(inc.at(0, 0) == 1);
    CHECK(inc.at(1, 0) == 1);
    CHECK(inc.at(1, 1) == 1);
    CHECK(inc.at(2, 1) == 1);
    CHECK(inc.nnz() == 4);

    const auto single = build_hypergraph(2, {{0, 1}});
    CHECK(single.incidence().to_dense() == std::vector<std::vector<std::int64_t>>{{1}, {1}});
}

TEST_CASE("build_hypergraph rejects bad input") {
    CHECK_THROWS_AS(build_hypergraph(3, {{0, 3}}), VertexIndexOutOfRange);
    CHECK_THROWS_AS(build_hypergraph(3, {{0, 1}, {}}), EmptyHyperedge);
}

TEST_CASE("duplicate vertices in a hyperedge count once") {
    const auto h = build_hypergraph(2, {{0, 0, 1}});
    CHECK(h.incidence().at(0, 0) == 1);
    CHECK(h.hyperedges() == std::vector<std::vector<Index>>{{0, 1}});
}

TEST_CASE("adjacency small cases") {
    const auto a = adjacency(build_hypergraph(3, {{0, 1}, {1, 2}}));
    CHECK(a.to_dense() == oracle::IntMatrix{{1, 1, 0}, {1, 2, 1}, {0, 1, 1}});
    CHECK(adjacency(build_hypergraph(2, {{0, 1}})).to_dense() == oracle::IntMatrix{{1, 1}, {1, 1}});
    const auto disjoint = adjacency(build_hypergraph(3, {{0}, {1, 2}}));
    CHECK(disjoint.at(0, 1) == 0);
    CHECK(disjoint.at(1, 0) == 0);
}

TEST_CASE("adjacency matches dense oracle and is symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::uniform_int_distribution<std::size_t> edges(0, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = dim(rng);
        const auto e = oracle::random_edges(rng, n, edges(rng));
        const auto a = adjacency(build_hypergraph(n, e));
        const auto dense = a.to_dense();
        REQUIRE(dense == oracle::adjacency(n, e));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(dense[i][j] == dense[j][i]);
    }
}

TEST_CASE("spmm examples") {
    const CountMatrix a = dense_to_sparse({{1, 1, 0}, {1, 2, 1}, {0, 1, 1}});
    CHECK(spmm(CountMatrix::identity(3), a) == a);
    CHECK(spmm(a, a).to_dense() == oracle::IntMatrix{{2, 3, 1}, {3, 6, 3}, {1, 3, 2}});
    const CountMatrix m23(2, 3);
    const CountMatrix m22(2, 2);
    CHECK_THROWS_AS(spmm(m23, m22), DimensionMismatch);
}

TEST_CASE("spmm drops cancelled entries") {
    const CountMatrix a = dense_to_sparse({{1, -1}});
    const CountMatrix b = dense_to_sparse({{1}, {1}});
    const auto c = spmm(a, b);
    CHECK(c.nnz() == 0);
    CHECK(c.rows() == 1);
    CHECK(c.cols() == 1);
}

TEST_CASE("spmm detects int64 overflow") {
    const CountMatrix big = dense_to_sparse({{std::int64_t{1} << 62}});
    const CountMatrix four = dense_to_sparse({{4}});
    CHECK_THROWS_AS(spmm(big, four), CountOverflow);
    const CountMatrix half = dense_to_sparse({{std::int64_t{1} << 62, std::int64_t{1} << 62}});
    const CountMatrix ones = dense_to_sparse({{1}, {1}});
    CHECK_THROWS_AS(spmm(half, ones), CountOverflow);
}

TEST_CASE("spmm is associative on random integer matrices") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::uniform_int_distribution<int> val(-3, 3);
    std::bernoulli_distribution keep(0.4);
    const auto random_matrix = [&](std::size_t r, std::size_t c) {
        oracle::IntMatrix m(r, std::vector<std::int64_t>(c, 0));
        for (auto& row : m)
            for (auto& v : row) v = keep(rng) ? val(rng) : 0;
        return oracle::to_sparse(m, c);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = dim(rng), q = dim(rng), r = dim(rng), s = dim(rng);
        const auto a = random_matrix(p, q);
        const auto b = random_matrix(q, r);
        const auto c = random_matrix(r, s);
        const auto left = spmm(spmm(a, b), c);
        const auto right = spmm(a, spmm(b, c));
        REQUIRE(left == right);
        REQUIRE(spmm(a, b).to_dense() == oracle::multiply(a.to_dense(), b.to_dense(), q, r));
    }
}

TEST_CASE("real spmm") {
    const auto a = RealSparseMatrix::from_triplets(2, 2, {{0, 0, 0.5}, {0, 1, 0.5}, {1, 1, 1.0}});
    const auto c = spmm(a, a);
    CHECK(c.at(0, 0) == doctest::Approx(0.25));
    CHECK(c.at(0, 1) == doctest::Approx(0.75));
    CHECK(c.at(1, 0) == 0.0);
    CHECK(c.at(1, 1) == 1.0);
}

TEST_CASE("khop_stack") {
    const CountMatrix a = dense_to_sparse({{1, 1, 0}, {1, 2, 1}, {0, 1, 1}});
    const auto one = khop_stack(a, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == a);
    const auto two = khop_stack(a, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[1].to_dense() == oracle::IntMatrix{{2, 3, 1}, {3, 6, 3}, {1, 3, 2}});

    const auto scalar = khop_stack(dense_to_sparse({{2}}), 3);
    REQUIRE(scalar.size() == 3);
    CHECK(scalar[0].at(0, 0) == 2);
    CHECK(scalar[1].at(0, 0) == 4);
    CHECK(scalar[2].at(0, 0) == 8);

    CHECK_THROWS_AS(khop_stack(a, 0), InvalidHopCount);
    CHECK_THROWS_AS(khop_stack(CountMatrix(2, 3), 1), DimensionMismatch);
}

TEST_CASE("khop_stack matches dense powers") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::uniform_int_distribution<unsigned> hops(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = dim(rng);
        const auto e = oracle::random_edges(rng, n, dim(rng));
        const auto dense_a = oracle::adjacency(n, e);
        const unsigned k = hops(rng);
        const auto stack = khop_stack(adjacency(build_hypergraph(n, e)), k);
        REQUIRE(stack.size() == k);
        for (unsigned p = 1; p <= k; ++p) REQUIRE(stack[p - 1].to_dense() == oracle::power(dense_a, p));
    }
}

TEST_CASE("from_triplets sums duplicates and drops zeros") {
    const auto m = CountMatrix::from_triplets(2, 2, {{1, 1, 2}, {0, 0, 1}, {1, 1, -2}, {0, 0, 3}});
    CHECK(m.nnz() == 1);
    CHECK(m.at(0, 0) == 4);
    CHECK_THROWS_AS(CountMatrix::from_triplets(1, 1, {{0, 1, 1}}), DimensionMismatch);
    CHECK_THROWS_AS(CountMatrix::from_triplets(1, 1, {{1, 0, 1}}), DimensionMismatch);
}
