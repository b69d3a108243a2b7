#pragma once

#include <span>
#include <vector>

#include "hyperkan/features.hpp"

namespace hyperkan {

/// Retention cap, neighbor floor and hop count for the adjustment stage.
struct AdjustmentConfig {
    Index n_max = 32;
    Index m_min = 4;
    unsigned k = 2;

    /// Throws InvalidConfig unless 1 <= m_min <= n_max < num_vertices and k >= 1.
    void validate(Index num_vertices) const;
};

/// A 0/1 row of fixed length, stored as the sorted indices of its ones.
struct BinaryRow {
    Index length = 0;
    std::vector<Index> ones;

    std::size_t count() const noexcept { return ones.size(); }
    bool contains(Index j) const;
    friend bool operator==(const BinaryRow&, const BinaryRow&) = default;
};

/// A real row of fixed length with sorted column indices.
struct RealRow {
    Index length = 0;
    std::vector<Index> cols;
    std::vector<double> values;
    friend bool operator==(const RealRow&, const RealRow&) = default;
};

/// hops[p - 1] holds the row-normalized adjusted A^p.
struct AdjustedStructuralFeatures {
    std::vector<RealSparseMatrix> hops;

    Index num_vertices() const { return hops.empty() ? 0 : hops.front().rows(); }
    unsigned k() const { return static_cast<unsigned>(hops.size()); }
};

/// Candidates for augmentation: every index absent from `row`, except `self_index`.
BinaryRow neighbor_mask(const BinaryRow& row, Index self_index);

/// Adds the most similar masked vertices until the row has `m_min` neighbors
/// (self excluded). Ties go to the lower index. Never removes an entry.
BinaryRow augment_f2(const BinaryRow& row, std::span<const double> sim_row, Index m_min,
                     Index self_index);

/// Drops the self entry, then keeps only the `n_max` most similar neighbors when
/// there are more. Ties go to the lower index. Never adds an entry.
BinaryRow prune_f1(const BinaryRow& row, std::span<const double> sim_row, Index n_max,
                   Index self_index);

/// Each one becomes 1/count; an all-zero row stays all zero.
RealRow normalize_row(const BinaryRow& row);

/// Nonzero pattern of a count row with the self entry removed.
BinaryRow binarize_without_self(const CountMatrix::RowView& row, Index length, Index self_index);

/// Binary stage for one row: binarize, drop self, augment, prune.
BinaryRow adjust_row(const CountMatrix::RowView& row, std::span<const double> sim_row,
                     const AdjustmentConfig& cfg, Index self_index);

/// Applies adjust_row then normalize_row to every row of every hop, using the
/// same similarity matrix for all hops. Throws DimensionMismatch or InvalidConfig.
AdjustedStructuralFeatures adjust_all(const StructuralFeatures& sf, const SimilarityMatrix& s,
                                      const AdjustmentConfig& cfg);

}  // namespace hyperkan
