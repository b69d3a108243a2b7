#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "hyperkan/adjustment.hpp"
#include "hyperkan/bspline.hpp"
#include "hyperkan/features.hpp"

namespace hyperkan {

inline double silu(double t) { return t / (1.0 + std::exp(-t)); }

inline double silu_derivative(double t) {
    const double s = 1.0 / (1.0 + std::exp(-t));
    return s * (1.0 + t * (1.0 - s));
}

/// One learnable edge function:
///   phi(t) = w_base * silu(t) + w_spline * sum_b c_b B_b(clamp(t)).
struct KanActivation {
    std::vector<double> spline_coeffs;
    double w_base = 0.0;
    double w_spline = 1.0;
};

double activation_forward(const KanActivation& a, const BSplineBasis& basis, double t);

/// Parameter storage for an out x in grid of activations, flattened row-major
/// by (output, input). Also used for the matching gradient record.
struct KanLayerParams {
    std::vector<double> coeffs;    // [(o * in + i) * basis_size + b]
    std::vector<double> w_base;    // [o * in + i]
    std::vector<double> w_spline;  // [o * in + i]
};

class KanLayer {
public:
    KanLayer() = default;
    KanLayer(Index in_dim, Index out_dim, BSplineBasis basis);

    Index in_dim() const noexcept { return in_dim_; }
    Index out_dim() const noexcept { return out_dim_; }
    const BSplineBasis& basis() const noexcept { return basis_; }

    KanActivation activation(Index out, Index in) const;
    void set_activation(Index out, Index in, const KanActivation& a);

    KanLayerParams& params() noexcept { return params_; }
    const KanLayerParams& params() const noexcept { return params_; }

    KanLayerParams zero_params() const;

private:
    Index in_dim_ = 0;
    Index out_dim_ = 0;
    BSplineBasis basis_;
    KanLayerParams params_;
};

/// out_o = sum_i phi_{o,i}(z_i). Throws DimensionMismatch.
std::vector<double> layer_forward(const KanLayer& layer, std::span<const double> z);

/// y = W x + b, W stored out x in.
struct AffineMap {
    DenseMatrix weight;
    DenseVector bias;

    Index in_dim() const { return static_cast<Index>(weight.cols()); }
    Index out_dim() const { return static_cast<Index>(weight.rows()); }
};

/// Raw features together with every hop's neighbor mean: hops[p - 1] = Â^p X.
/// Computed once per dataset since it does not depend on trainable parameters.
struct PropagatedFeatures {
    DenseMatrix raw;
    std::vector<DenseMatrix> hops;

    Index rows() const { return static_cast<Index>(raw.rows()); }
    Index dim() const { return static_cast<Index>(raw.cols()); }
    unsigned k() const { return static_cast<unsigned>(hops.size()); }
};

/// Precomputes Â^p X for every hop. An empty adjustment yields raw features only.
PropagatedFeatures propagate(const AdjustedStructuralFeatures& adj, const FeatureMatrix& x);

/// e_i = w_0 x_i + sum_p w_p (Â^p_i X). Throws DimensionMismatch.
DenseMatrix aggregate(const PropagatedFeatures& inputs, std::span<const double> hop_weights);
FeatureMatrix aggregate(const AdjustedStructuralFeatures& adj, const FeatureMatrix& x,
                        std::span<const double> hop_weights);

struct KanArchitecture {
    Index raw_dim = 1;
    unsigned hops = 2;             ///< k; 0 feeds raw features only
    Index embed_dim = 64;          ///< d
    std::vector<Index> hidden;     ///< widths of the hidden KAN layers
    Index classes = 2;             ///< C
    BSplineBasis basis;
};

/// hop aggregation -> affine embedding -> KAN layer stack (last layer emits logits).
struct KanNetwork {
    std::vector<double> hop_weights;
    AffineMap embed;
    std::vector<KanLayer> layers;

    Index classes() const { return layers.empty() ? 0 : layers.back().out_dim(); }
};

/// Same shapes as KanNetwork, holding d(loss)/d(parameter).
struct KanGradients {
    std::vector<double> hop_weights;
    AffineMap embed;
    std::vector<KanLayerParams> layers;
};

/// Throws InvalidConfig on inconsistent dims.
KanNetwork make_kan_network(const KanArchitecture& arch, std::mt19937_64& rng);

/// Activations kept from the last forward pass, needed by backward.
struct KanForwardCache {
    struct LayerCache {
        DenseMatrix input;                     // N x in
        std::vector<BSplineBasis::Local> basis;  // N * in
    };
    DenseMatrix aggregated;  // N x raw_dim
    std::vector<LayerCache> layers;
    std::uint64_t fingerprint = 0;
    bool valid = false;
};

/// Logits, N x C. Throws DimensionMismatch.
DenseMatrix network_forward(const KanNetwork& net, const PropagatedFeatures& inputs,
                            KanForwardCache& cache);
DenseMatrix network_forward(const KanNetwork& net, const PropagatedFeatures& inputs);
DenseMatrix network_forward(const KanNetwork& net, const AdjustedStructuralFeatures& adj,
                            const FeatureMatrix& x);

/// Exact gradients given d(loss)/d(logits). Throws StaleForwardCache when the
/// cache is empty or was produced by different parameters or inputs.
KanGradients network_backward(const KanNetwork& net, const PropagatedFeatures& inputs,
                              const KanForwardCache& cache, const DenseMatrix& upstream);

/// Mutable views of every parameter tensor, in a fixed order shared with the
/// gradient overload below.
std::vector<std::span<double>> parameter_blocks(KanNetwork& net);
std::vector<std::span<const double>> parameter_blocks(const KanNetwork& net);
std::vector<std::span<double>> parameter_blocks(KanGradients& grads);

/// FNV-1a hash of all parameter bits.
std::uint64_t parameter_fingerprint(const KanNetwork& net);

/// Versioned text checkpoint. Doubles are written as hex floats so a
/// save/load round-trip is bit-exact.
void save_checkpoint(const KanNetwork& net, std::ostream& out);
/// Throws ParseError on malformed input.
KanNetwork load_checkpoint(std::istream& in);

}  // namespace hyperkan
