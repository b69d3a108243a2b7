#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hyperkan/kan.hpp"

namespace hyperkan {

/// Control network for the "without KAN" ablation: the same aggregation and
/// embedding, then affine layers with the same widths as the KAN stack. Each
/// layer computes W silu(z) + b, i.e. a KAN layer reduced to its fixed base
/// branch plus a bias.
struct MlpNetwork {
    std::vector<double> hop_weights;
    AffineMap embed;
    std::vector<AffineMap> layers;

    Index classes() const { return layers.empty() ? 0 : layers.back().out_dim(); }
};

struct MlpGradients {
    std::vector<double> hop_weights;
    AffineMap embed;
    std::vector<AffineMap> layers;
};

struct MlpForwardCache {
    DenseMatrix aggregated;
    std::vector<DenseMatrix> inputs;  // pre-activation input of each layer
    std::uint64_t fingerprint = 0;
    bool valid = false;
};

/// Uses raw_dim, hops, embed_dim, hidden and classes from `arch`; the basis is ignored.
MlpNetwork make_mlp_network(const KanArchitecture& arch, std::mt19937_64& rng);

DenseMatrix network_forward(const MlpNetwork& net, const PropagatedFeatures& inputs,
                            MlpForwardCache& cache);
MlpGradients network_backward(const MlpNetwork& net, const PropagatedFeatures& inputs,
                              const MlpForwardCache& cache, const DenseMatrix& upstream);

std::vector<std::span<double>> parameter_blocks(MlpNetwork& net);
std::vector<std::span<const double>> parameter_blocks(const MlpNetwork& net);
std::vector<std::span<double>> parameter_blocks(MlpGradients& grads);

}  // namespace hyperkan
