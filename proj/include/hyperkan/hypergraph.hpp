#pragma once

#include <vector>

#include "hyperkan/sparse.hpp"

namespace hyperkan {

/// A hypergraph stored as its N x M incidence matrix (entry (i, e) = 1 iff
/// vertex i belongs to hyperedge e).
class Hypergraph {
public:
    Hypergraph() = default;

    Index num_vertices() const noexcept { return incidence_.rows(); }
    Index num_hyperedges() const noexcept { return incidence_.cols(); }
    const CountMatrix& incidence() const noexcept { return incidence_; }

    /// Vertex lists per hyperedge, sorted ascending.
    std::vector<std::vector<Index>> hyperedges() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    friend Hypergraph build_hypergraph(Index, const std::vector<std::vector<Index>>&);
    CountMatrix incidence_;
};

/// Builds the incidence matrix. Repeated vertices inside one hyperedge count once.
/// Throws EmptyHyperedge or VertexIndexOutOfRange.
Hypergraph build_hypergraph(Index vertex_count, const std::vector<std::vector<Index>>& hyperedges);

/// A = H * H^T. Entry (i, j) counts shared hyperedges; the diagonal is the vertex degree.
CountMatrix adjacency(const Hypergraph& h);

/// Exact sparse product (Gustavson). Throws DimensionMismatch, or CountOverflow
/// when an integer product leaves the int64 range.
CountMatrix spmm(const CountMatrix& a, const CountMatrix& b);
RealSparseMatrix spmm(const RealSparseMatrix& a, const RealSparseMatrix& b);

/// [A, A^2, ..., A^k]. Throws InvalidHopCount for k == 0 and DimensionMismatch
/// for a non-square input.
std::vector<CountMatrix> khop_stack(const CountMatrix& a, unsigned k);

}  // namespace hyperkan
