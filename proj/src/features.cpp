#include "hyperkan/features.hpp"

#include <cmath>

namespace hyperkan {

FeatureMatrix::FeatureMatrix(DenseMatrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        throw InvalidFeatures("feature matrix needs at least one row and one column");
    }
    if (!values_.allFinite()) throw InvalidFeatures("feature matrix contains NaN or Inf");
}

StructuralFeatures structural_features(const Hypergraph& h, unsigned k) {
    return {khop_stack(adjacency(h), k)};
}

SimilarityMatrix cosine_similarity(const FeatureMatrix& x) {
    const DenseMatrix& v = x.values();
    DenseMatrix unit = v;
    for (Eigen::Index i = 0; i < unit.rows(); ++i) {
        const double norm = v.row(i).stableNorm();
        if (norm > 0.0) {
            unit.row(i) /= norm;
        } else {
            unit.row(i).setZero();
        }
    }
    SimilarityMatrix s{unit * unit.transpose()};
    // Rounding can push |S_ij| a few ulps past 1.
    s.values = s.values.cwiseMax(-1.0).cwiseMin(1.0);
    return s;
}

}  // namespace hyperkan
