#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hyperkan/hypergraph.hpp"

namespace hyperkan {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::VectorXd;

/// Raw vertex features: N rows of dimension d, all entries finite.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    /// Throws InvalidFeatures on an empty shape or a non-finite entry.
    explicit FeatureMatrix(DenseMatrix values);

    Index rows() const noexcept { return static_cast<Index>(values_.rows()); }
    Index dim() const noexcept { return static_cast<Index>(values_.cols()); }
    const DenseMatrix& values() const noexcept { return values_; }

    friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
        return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
               a.values_ == b.values_;
    }

private:
    DenseMatrix values_;
};

/// hops[p - 1] = A^p, each N x N with exact counts.
struct StructuralFeatures {
    std::vector<CountMatrix> hops;

    Index num_vertices() const { return hops.empty() ? 0 : hops.front().rows(); }
    unsigned k() const { return static_cast<unsigned>(hops.size()); }
};

/// Dense N x N cosine similarity of raw features.
struct SimilarityMatrix {
    DenseMatrix values;

    Index size() const { return static_cast<Index>(values.rows()); }
    std::span<const double> row(Index i) const {
        return {values.data() + i * values.cols(), static_cast<std::size_t>(values.cols())};
    }
};

StructuralFeatures structural_features(const Hypergraph& h, unsigned k);

/// S_ij = x_i . x_j / (|x_i| |x_j|), and 0 whenever either row has zero norm.
SimilarityMatrix cosine_similarity(const FeatureMatrix& x);

}  // namespace hyperkan
