#include "hyperkan/mlp.hpp"

#include <string>

#include "network_common.hpp"

namespace hyperkan {

namespace {

DenseMatrix silu_matrix(const DenseMatrix& z) { return z.unaryExpr([](double t) { return silu(t); }); }

template <typename Span, typename Net>
std::vector<Span> mlp_blocks(Net& net) {
    std::vector<Span> blocks;
    blocks.emplace_back(net.hop_weights);
    blocks.emplace_back(net.embed.weight.data(), static_cast<std::size_t>(net.embed.weight.size()));
    blocks.emplace_back(net.embed.bias.data(), static_cast<std::size_t>(net.embed.bias.size()));
    for (auto& layer : net.layers) {
        blocks.emplace_back(layer.weight.data(), static_cast<std::size_t>(layer.weight.size()));
        blocks.emplace_back(layer.bias.data(), static_cast<std::size_t>(layer.bias.size()));
    }
    return blocks;
}

std::uint64_t cache_fingerprint(const MlpNetwork& net, const PropagatedFeatures& inputs) {
    detail::Fnv1a h;
    for (auto block : parameter_blocks(net)) h.add(block);
    detail::hash_inputs(h, inputs);
    return h.value();
}

}  // namespace

MlpNetwork make_mlp_network(const KanArchitecture& arch, std::mt19937_64& rng) {
    if (arch.raw_dim < 1 || arch.embed_dim < 1 || arch.classes < 1) {
        throw InvalidConfig("network dimensions must be positive");
    }
    MlpNetwork net;
    net.hop_weights.assign(arch.hops + 1, 1.0);

    auto uniform_affine = [&rng](Index in, Index out) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        AffineMap m;
        m.weight.resize(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
        for (Eigen::Index r = 0; r < m.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.weight.cols(); ++c) m.weight(r, c) = dist(rng);
        }
        m.bias = DenseVector::Zero(static_cast<Eigen::Index>(out));
        return m;
    };

    net.embed = uniform_affine(arch.raw_dim, arch.embed_dim);
    std::vector<Index> dims{arch.embed_dim};
    dims.insert(dims.end(), arch.hidden.begin(), arch.hidden.end());
    dims.push_back(arch.classes);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        if (dims[l + 1] < 1) throw InvalidConfig("hidden layer widths must be positive");
        net.layers.push_back(uniform_affine(dims[l], dims[l + 1]));
    }
    return net;
}

DenseMatrix network_forward(const MlpNetwork& net, const PropagatedFeatures& inputs,
                            MlpForwardCache& cache) {
    detail::check_front(net.hop_weights, net.embed, inputs);
    if (net.layers.empty()) throw DimensionMismatch("network has no layers");
    cache.valid = false;
    cache.aggregated = aggregate(inputs, net.hop_weights);
    DenseMatrix z = detail::embed_forward(net.embed, cache.aggregated);
    cache.inputs.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        if (net.layers[l].in_dim() != static_cast<Index>(z.cols())) {
            throw DimensionMismatch("layer " + std::to_string(l) + " expects " +
                                    std::to_string(net.layers[l].in_dim()) + " inputs");
        }
        cache.inputs[l] = std::move(z);
        z = detail::embed_forward(net.layers[l], silu_matrix(cache.inputs[l]));
    }
    cache.fingerprint = cache_fingerprint(net, inputs);
    cache.valid = true;
    return z;
}

MlpGradients network_backward(const MlpNetwork& net, const PropagatedFeatures& inputs,
                              const MlpForwardCache& cache, const DenseMatrix& upstream) {
    if (!cache.valid || cache.inputs.size() != net.layers.size() ||
        cache.fingerprint != cache_fingerprint(net, inputs)) {
        throw StaleForwardCache("backward needs a forward pass on the current parameters and inputs");
    }
    if (upstream.rows() != inputs.raw.rows() ||
        upstream.cols() != static_cast<Eigen::Index>(net.classes())) {
        throw DimensionMismatch("upstream gradient must be N x C");
    }
    MlpGradients grads;
    grads.layers.resize(net.layers.size());
    DenseMatrix grad_out = upstream;
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const DenseMatrix& z = cache.inputs[l];
        const DenseMatrix act = silu_matrix(z);
        grads.layers[l].weight = grad_out.transpose() * act;
        grads.layers[l].bias = grad_out.colwise().sum().transpose();
        const DenseMatrix grad_act = grad_out * net.layers[l].weight;
        grad_out = grad_act.cwiseProduct(z.unaryExpr([](double t) { return silu_derivative(t); }));
    }
    detail::front_backward(net.hop_weights, net.embed, inputs, cache.aggregated, grad_out,
                           grads.hop_weights, grads.embed);
    return grads;
}

std::vector<std::span<double>> parameter_blocks(MlpNetwork& net) {
    return mlp_blocks<std::span<double>>(net);
}

std::vector<std::span<const double>> parameter_blocks(const MlpNetwork& net) {
    return mlp_blocks<std::span<const double>>(net);
}

std::vector<std::span<double>> parameter_blocks(MlpGradients& grads) {
    return mlp_blocks<std::span<double>>(grads);
}

}  // namespace hyperkan
