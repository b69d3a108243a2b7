#include "hyperkan/hypergraph.hpp"

#include <limits>
#include <string>
#include <tuple>

namespace hyperkan {

std::vector<std::vector<Index>> Hypergraph::hyperedges() const {
    std::vector<std::vector<Index>> edges(num_hyperedges());
    for (Index v = 0; v < num_vertices(); ++v) {
        for (Index e : incidence_.row(v).cols) edges[e].push_back(v);
    }
    return edges;
}

Hypergraph build_hypergraph(Index vertex_count,
                            const std::vector<std::vector<Index>>& hyperedges) {
    std::vector<std::tuple<Index, Index, std::int64_t>> triplets;
    for (Index e = 0; e < hyperedges.size(); ++e) {
        const auto& members = hyperedges[e];
        if (members.empty()) {
            throw EmptyHyperedge("hyperedge " + std::to_string(e) + " has no vertices");
        }
        std::vector<Index> sorted = members;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (Index v : sorted) {
            if (v >= vertex_count) {
                throw VertexIndexOutOfRange("hyperedge " + std::to_string(e) +
                                            " references vertex " + std::to_string(v) +
                                            " but only " + std::to_string(vertex_count) +
                                            " vertices exist");
            }
            triplets.emplace_back(v, e, 1);
        }
    }
    Hypergraph h;
    h.incidence_ = CountMatrix::from_triplets(vertex_count, hyperedges.size(), std::move(triplets));
    return h;
}

namespace {

inline void accumulate(std::int64_t& acc, std::int64_t a, std::int64_t b) {
    std::int64_t prod = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &acc)) {
        throw CountOverflow("integer overflow in sparse product; reduce the hop count");
    }
}

inline void accumulate(double& acc, double a, double b) { acc += a * b; }

template <typename T>
SparseRowMatrix<T> gustavson(const SparseRowMatrix<T>& a, const SparseRowMatrix<T>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("spmm: left has " + std::to_string(a.cols()) +
                                " columns, right has " + std::to_string(b.rows()) + " rows");
    }
    constexpr Index kUnset = std::numeric_limits<Index>::max();
    std::vector<T> dense(b.cols(), T{});
    std::vector<Index> marker(b.cols(), kUnset);
    std::vector<Index> touched;
    std::vector<Index> out_cols;
    std::vector<T> out_vals;

    auto result = SparseRowMatrix<T>::with_columns(b.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        touched.clear();
        const auto arow = a.row(r);
        for (std::size_t ka = 0; ka < arow.size(); ++ka) {
            const auto brow = b.row(arow.cols[ka]);
            for (std::size_t kb = 0; kb < brow.size(); ++kb) {
                const Index c = brow.cols[kb];
                if (marker[c] != r) {
                    marker[c] = r;
                    dense[c] = T{};
                    touched.push_back(c);
                }
                accumulate(dense[c], arow.values[ka], brow.values[kb]);
            }
        }
        std::sort(touched.begin(), touched.end());
        out_cols.clear();
        out_vals.clear();
        for (Index c : touched) {
            if (dense[c] != T{}) {
                out_cols.push_back(c);
                out_vals.push_back(dense[c]);
            }
        }
        result.push_row(out_cols, out_vals);
    }
    return result;
}

}  // namespace

CountMatrix spmm(const CountMatrix& a, const CountMatrix& b) { return gustavson(a, b); }

RealSparseMatrix spmm(const RealSparseMatrix& a, const RealSparseMatrix& b) {
    return gustavson(a, b);
}

CountMatrix adjacency(const Hypergraph& h) {
    const CountMatrix& inc = h.incidence();
    // Transpose of the incidence matrix, built row by row (one row per hyperedge).
    const auto edges = h.hyperedges();
    auto inc_t = CountMatrix::with_columns(h.num_vertices());
    for (const auto& members : edges) {
        std::vector<std::int64_t> ones(members.size(), 1);
        inc_t.push_row(members, ones);
    }
    return spmm(inc, inc_t);
}

std::vector<CountMatrix> khop_stack(const CountMatrix& a, unsigned k) {
    if (k == 0) throw InvalidHopCount("hop count must be at least 1");
    if (a.rows() != a.cols()) throw DimensionMismatch("khop_stack requires a square matrix");
    std::vector<CountMatrix> hops;
    hops.reserve(k);
    hops.push_back(a);
    for (unsigned p = 1; p < k; ++p) hops.push_back(spmm(hops.back(), a));
    return hops;
}

}  // namespace hyperkan
