#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <type_traits>
#include <vector>

#include "hyperkan/error.hpp"

namespace hyperkan {

using Index = std::size_t;

/// Compressed sparse row matrix.
///
/// Column indices are strictly increasing within each row and explicit zeros
/// are never stored. Integer instantiations hold exact structural counts
/// (adjacency and its powers); the double instantiation holds normalized rows.
template <typename T>
class SparseRowMatrix {
public:
    using value_type = T;

    /// A read-only view of one row.
    struct RowView {
        std::span<const Index> cols;
        std::span<const T> values;

        std::size_t size() const noexcept { return cols.size(); }
        bool empty() const noexcept { return cols.empty(); }
    };

    SparseRowMatrix() : row_ptr_(1, 0) {}

    SparseRowMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    /// Builds from (row, col, value) triplets. Duplicates are summed, zeros dropped.
    static SparseRowMatrix from_triplets(Index rows, Index cols,
                                         std::vector<std::tuple<Index, Index, T>> triplets) {
        std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        SparseRowMatrix m(rows, cols);
        std::size_t i = 0;
        for (Index r = 0; r < rows; ++r) {
            while (i < triplets.size() && std::get<0>(triplets[i]) == r) {
                const Index c = std::get<1>(triplets[i]);
                if (c >= cols) throw DimensionMismatch("triplet column out of range");
                T sum{};
                while (i < triplets.size() && std::get<0>(triplets[i]) == r &&
                       std::get<1>(triplets[i]) == c) {
                    sum += std::get<2>(triplets[i]);
                    ++i;
                }
                if (sum != T{}) {
                    m.col_idx_.push_back(c);
                    m.values_.push_back(sum);
                }
            }
            m.row_ptr_[r + 1] = m.col_idx_.size();
        }
        if (i != triplets.size()) throw DimensionMismatch("triplet row out of range");
        return m;
    }

    static SparseRowMatrix identity(Index n) {
        SparseRowMatrix m(n, n);
        m.col_idx_.resize(n);
        m.values_.assign(n, T{1});
        for (Index i = 0; i < n; ++i) {
            m.col_idx_[i] = i;
            m.row_ptr_[i + 1] = i + 1;
        }
        return m;
    }

    /// Appends a row. `cols` must be strictly increasing and `values` nonzero.
    void push_row(std::span<const Index> cols, std::span<const T> values) {
        col_idx_.insert(col_idx_.end(), cols.begin(), cols.end());
        values_.insert(values_.end(), values.begin(), values.end());
        row_ptr_.push_back(col_idx_.size());
        ++rows_;
    }

    /// Starts an empty matrix with `cols` columns to be filled with push_row.
    static SparseRowMatrix with_columns(Index cols) {
        SparseRowMatrix m;
        m.cols_ = cols;
        return m;
    }

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return col_idx_.size(); }

    RowView row(Index r) const {
        const auto begin = row_ptr_[r];
        const auto len = row_ptr_[r + 1] - begin;
        return {std::span<const Index>(col_idx_).subspan(begin, len),
                std::span<const T>(values_).subspan(begin, len)};
    }

    /// Entry lookup by binary search; zero when not stored.
    T at(Index r, Index c) const {
        const auto rv = row(r);
        const auto it = std::lower_bound(rv.cols.begin(), rv.cols.end(), c);
        if (it == rv.cols.end() || *it != c) return T{};
        return rv.values[static_cast<std::size_t>(it - rv.cols.begin())];
    }

    /// Dense row-major copy, mainly for small diagnostics.
    std::vector<std::vector<T>> to_dense() const {
        std::vector<std::vector<T>> dense(rows_, std::vector<T>(cols_, T{}));
        for (Index r = 0; r < rows_; ++r) {
            const auto rv = row(r);
            for (std::size_t k = 0; k < rv.size(); ++k) dense[r][rv.cols[k]] = rv.values[k];
        }
        return dense;
    }

    const std::vector<Index>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<Index>& col_idx() const noexcept { return col_idx_; }
    const std::vector<T>& values() const noexcept { return values_; }

    friend bool operator==(const SparseRowMatrix&, const SparseRowMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> row_ptr_;
    std::vector<Index> col_idx_;
    std::vector<T> values_;
};

/// Exact integer counts (adjacency, path counts).
using CountMatrix = SparseRowMatrix<std::int64_t>;
/// Real-valued rows (normalized adjusted features).
using RealSparseMatrix = SparseRowMatrix<double>;

}  // namespace hyperkan
