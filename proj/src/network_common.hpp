#pragma once

// Pieces shared by the KAN network and the MLP ablation stand-in: hop
// aggregation, the affine embedding and cache fingerprints.

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "hyperkan/kan.hpp"

namespace hyperkan::detail {

class Fnv1a {
public:
    void add(std::span<const double> values) {
        for (double v : values) {
            std::uint64_t bits = 0;
            std::memcpy(&bits, &v, sizeof bits);
            for (int b = 0; b < 8; ++b) {
                state_ ^= (bits >> (8 * b)) & 0xffU;
                state_ *= 0x100000001b3ULL;
            }
        }
    }
    void add(const DenseMatrix& m) {
        add_size(static_cast<std::uint64_t>(m.rows()));
        add_size(static_cast<std::uint64_t>(m.cols()));
        add(std::span<const double>(m.data(), static_cast<std::size_t>(m.size())));
    }
    void add(const DenseVector& v) {
        add_size(static_cast<std::uint64_t>(v.size()));
        add(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    }
    void add_size(std::uint64_t n) {
        const double as_double = static_cast<double>(n);
        add(std::span<const double>(&as_double, 1));
    }
    std::uint64_t value() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline void hash_inputs(Fnv1a& h, const PropagatedFeatures& inputs) {
    h.add(inputs.raw);
    for (const auto& hop : inputs.hops) h.add(hop);
}

inline void check_front(std::span<const double> hop_weights, const AffineMap& embed,
                        const PropagatedFeatures& inputs) {
    if (hop_weights.size() != inputs.k() + 1) {
        throw DimensionMismatch("network has " + std::to_string(hop_weights.size()) +
                                " hop weights but inputs carry " + std::to_string(inputs.k()) +
                                " hops");
    }
    if (embed.in_dim() != inputs.dim()) {
        throw DimensionMismatch("embedding expects " + std::to_string(embed.in_dim()) +
                                " raw features, inputs have " + std::to_string(inputs.dim()));
    }
    for (const auto& hop : inputs.hops) {
        if (hop.rows() != inputs.raw.rows() || hop.cols() != inputs.raw.cols()) {
            throw DimensionMismatch("propagated hop shape differs from raw features");
        }
    }
}

inline DenseMatrix embed_forward(const AffineMap& embed, const DenseMatrix& e) {
    DenseMatrix z = e * embed.weight.transpose();
    z.rowwise() += embed.bias.transpose();
    return z;
}

/// Accumulates embedding and hop-weight gradients from d(loss)/d(Z0).
inline void front_backward(std::span<const double> hop_weights, const AffineMap& embed,
                           const PropagatedFeatures& inputs, const DenseMatrix& aggregated,
                           const DenseMatrix& grad_z0, std::vector<double>& grad_hops,
                           AffineMap& grad_embed) {
    grad_embed.weight = grad_z0.transpose() * aggregated;
    grad_embed.bias = grad_z0.colwise().sum().transpose();
    const DenseMatrix grad_e = grad_z0 * embed.weight;
    grad_hops.assign(hop_weights.size(), 0.0);
    grad_hops[0] = grad_e.cwiseProduct(inputs.raw).sum();
    for (std::size_t p = 0; p < inputs.hops.size(); ++p) {
        grad_hops[p + 1] = grad_e.cwiseProduct(inputs.hops[p]).sum();
    }
}

}  // namespace hyperkan::detail
