#include "hyperkan/adjustment.hpp"

#include <algorithm>
#include <string>

namespace hyperkan {

void AdjustmentConfig::validate(Index num_vertices) const {
    if (k < 1) throw InvalidConfig("k must be at least 1");
    if (m_min < 1) throw InvalidConfig("m_min must be at least 1");
    if (m_min > n_max) {
        throw InvalidConfig("m_min (" + std::to_string(m_min) + ") exceeds n_max (" +
                            std::to_string(n_max) + ")");
    }
    if (n_max >= num_vertices) {
        throw InvalidConfig("n_max (" + std::to_string(n_max) +
                            ") must be smaller than the vertex count (" +
                            std::to_string(num_vertices) + ")");
    }
}

bool BinaryRow::contains(Index j) const { return std::binary_search(ones.begin(), ones.end(), j); }

namespace {

// Orders candidates by descending similarity, then ascending index.
void rank_by_similarity(std::vector<Index>& idx, std::span<const double> sim) {
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        if (sim[a] != sim[b]) return sim[a] > sim[b];
        return a < b;
    });
}

void check_length(const BinaryRow& row, std::span<const double> sim_row) {
    if (sim_row.size() != row.length) {
        throw DimensionMismatch("similarity row length " + std::to_string(sim_row.size()) +
                                " does not match row length " + std::to_string(row.length));
    }
}

}  // namespace

BinaryRow neighbor_mask(const BinaryRow& row, Index self_index) {
    BinaryRow mask{row.length, {}};
    mask.ones.reserve(row.length - std::min(row.length, row.ones.size()));
    auto it = row.ones.begin();
    for (Index j = 0; j < row.length; ++j) {
        if (it != row.ones.end() && *it == j) {
            ++it;
            continue;
        }
        if (j != self_index) mask.ones.push_back(j);
    }
    return mask;
}

BinaryRow augment_f2(const BinaryRow& row, std::span<const double> sim_row, Index m_min,
                     Index self_index) {
    check_length(row, sim_row);
    const Index current = row.count() - (row.contains(self_index) ? 1 : 0);
    if (current >= m_min) return row;

    std::vector<Index> candidates = neighbor_mask(row, self_index).ones;
    const Index wanted = std::min<Index>(m_min - current, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(wanted),
                      candidates.end(), [&](Index a, Index b) {
                          if (sim_row[a] != sim_row[b]) return sim_row[a] > sim_row[b];
                          return a < b;
                      });
    BinaryRow out = row;
    out.ones.insert(out.ones.end(), candidates.begin(),
                    candidates.begin() + static_cast<std::ptrdiff_t>(wanted));
    std::sort(out.ones.begin(), out.ones.end());
    return out;
}

BinaryRow prune_f1(const BinaryRow& row, std::span<const double> sim_row, Index n_max,
                   Index self_index) {
    check_length(row, sim_row);
    BinaryRow out{row.length, {}};
    out.ones.reserve(row.ones.size());
    for (Index j : row.ones) {
        if (j != self_index) out.ones.push_back(j);
    }
    if (out.count() <= n_max) return out;

    rank_by_similarity(out.ones, sim_row);
    out.ones.resize(n_max);
    std::sort(out.ones.begin(), out.ones.end());
    return out;
}

RealRow normalize_row(const BinaryRow& row) {
    RealRow out{row.length, row.ones, {}};
    if (!row.ones.empty()) {
        out.values.assign(row.ones.size(), 1.0 / static_cast<double>(row.ones.size()));
    }
    return out;
}

BinaryRow binarize_without_self(const CountMatrix::RowView& row, Index length, Index self_index) {
    BinaryRow out{length, {}};
    out.ones.reserve(row.size());
    for (std::size_t t = 0; t < row.size(); ++t) {
        if (row.values[t] != 0 && row.cols[t] != self_index) out.ones.push_back(row.cols[t]);
    }
    return out;
}

BinaryRow adjust_row(const CountMatrix::RowView& row, std::span<const double> sim_row,
                     const AdjustmentConfig& cfg, Index self_index) {
    const BinaryRow base = binarize_without_self(row, sim_row.size(), self_index);
    return prune_f1(augment_f2(base, sim_row, cfg.m_min, self_index), sim_row, cfg.n_max,
                    self_index);
}

AdjustedStructuralFeatures adjust_all(const StructuralFeatures& sf, const SimilarityMatrix& s,
                                      const AdjustmentConfig& cfg) {
    const Index n = s.size();
    if (static_cast<Index>(s.values.cols()) != n) {
        throw DimensionMismatch("similarity matrix must be square");
    }
    if (sf.hops.empty()) throw InvalidHopCount("structural features contain no hops");
    if (sf.k() != cfg.k) {
        throw DimensionMismatch("config asks for " + std::to_string(cfg.k) + " hops but " +
                                std::to_string(sf.k()) + " were extracted");
    }
    for (const auto& hop : sf.hops) {
        if (hop.rows() != n || hop.cols() != n) {
            throw DimensionMismatch("hop matrix is " + std::to_string(hop.rows()) + "x" +
                                    std::to_string(hop.cols()) + " but similarity is " +
                                    std::to_string(n) + "x" + std::to_string(n));
        }
    }
    cfg.validate(n);

    AdjustedStructuralFeatures out;
    out.hops.reserve(sf.hops.size());
    for (const auto& hop : sf.hops) {
        auto adjusted = RealSparseMatrix::with_columns(n);
        for (Index i = 0; i < n; ++i) {
            const RealRow r = normalize_row(adjust_row(hop.row(i), s.row(i), cfg, i));
            adjusted.push_row(r.cols, r.values);
        }
        out.hops.push_back(std::move(adjusted));
    }
    return out;
}

}  // namespace hyperkan
