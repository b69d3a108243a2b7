#include "hyperkan/kan.hpp"

#include <string>

#include "network_common.hpp"

namespace hyperkan {

double activation_forward(const KanActivation& a, const BSplineBasis& basis, double t) {
    if (a.spline_coeffs.size() != basis.size()) {
        throw DimensionMismatch("activation has " + std::to_string(a.spline_coeffs.size()) +
                                " coefficients, basis has " + std::to_string(basis.size()));
    }
    const auto local = basis.evaluate_local(t);
    double spline = 0.0;
    for (unsigned r = 0; r <= basis.degree(); ++r) {
        spline += a.spline_coeffs[local.first + r] * local.values[r];
    }
    return a.w_base * silu(t) + a.w_spline * spline;
}

KanLayer::KanLayer(Index in_dim, Index out_dim, BSplineBasis basis)
    : in_dim_(in_dim), out_dim_(out_dim), basis_(std::move(basis)) {
    params_ = zero_params();
    params_.w_spline.assign(in_dim * out_dim, 1.0);
}

KanLayerParams KanLayer::zero_params() const {
    const std::size_t edges = in_dim_ * out_dim_;
    return {std::vector<double>(edges * basis_.size(), 0.0), std::vector<double>(edges, 0.0),
            std::vector<double>(edges, 0.0)};
}

KanActivation KanLayer::activation(Index out, Index in) const {
    const std::size_t edge = out * in_dim_ + in;
    const std::size_t nb = basis_.size();
    KanActivation a;
    a.spline_coeffs.assign(params_.coeffs.begin() + static_cast<std::ptrdiff_t>(edge * nb),
                           params_.coeffs.begin() + static_cast<std::ptrdiff_t>((edge + 1) * nb));
    a.w_base = params_.w_base[edge];
    a.w_spline = params_.w_spline[edge];
    return a;
}

void KanLayer::set_activation(Index out, Index in, const KanActivation& a) {
    const std::size_t nb = basis_.size();
    if (a.spline_coeffs.size() != nb) {
        throw DimensionMismatch("activation coefficient count does not match the basis");
    }
    const std::size_t edge = out * in_dim_ + in;
    std::copy(a.spline_coeffs.begin(), a.spline_coeffs.end(),
              params_.coeffs.begin() + static_cast<std::ptrdiff_t>(edge * nb));
    params_.w_base[edge] = a.w_base;
    params_.w_spline[edge] = a.w_spline;
}

namespace {

// Row-batched layer evaluation; fills `locals` (N * in) when given.
DenseMatrix layer_forward_batch(const KanLayer& layer, const DenseMatrix& z,
                                std::vector<BSplineBasis::Local>* locals) {
    const Index in = layer.in_dim();
    const Index out = layer.out_dim();
    if (static_cast<Index>(z.cols()) != in) {
        throw DimensionMismatch("KAN layer expects " + std::to_string(in) + " inputs, got " +
                                std::to_string(z.cols()));
    }
    const auto& basis = layer.basis();
    const auto& prm = layer.params();
    const std::size_t nb = basis.size();
    const unsigned deg = basis.degree();
    const Index rows = static_cast<Index>(z.rows());

    std::vector<BSplineBasis::Local> scratch;
    std::vector<BSplineBasis::Local>& loc = locals ? *locals : scratch;
    loc.resize(rows * in);
    std::vector<double> base(rows * in);
    for (Index n = 0; n < rows; ++n) {
        for (Index i = 0; i < in; ++i) {
            const double t = z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
            loc[n * in + i] = basis.evaluate_local(t);
            base[n * in + i] = silu(t);
        }
    }

    DenseMatrix result = DenseMatrix::Zero(static_cast<Eigen::Index>(rows),
                                           static_cast<Eigen::Index>(out));
    for (Index n = 0; n < rows; ++n) {
        for (Index o = 0; o < out; ++o) {
            double acc = 0.0;
            for (Index i = 0; i < in; ++i) {
                const std::size_t edge = o * in + i;
                const auto& l = loc[n * in + i];
                const double* c = prm.coeffs.data() + edge * nb + l.first;
                double spline = 0.0;
                for (unsigned r = 0; r <= deg; ++r) spline += c[r] * l.values[r];
                acc += prm.w_base[edge] * base[n * in + i] + prm.w_spline[edge] * spline;
            }
            result(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(o)) = acc;
        }
    }
    return result;
}

void check_chain(const KanNetwork& net) {
    if (net.layers.empty()) throw DimensionMismatch("network has no KAN layers");
    Index expected = net.embed.out_dim();
    if (net.embed.bias.size() != static_cast<Eigen::Index>(expected)) {
        throw DimensionMismatch("embedding bias length differs from its output dimension");
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        if (net.layers[l].in_dim() != expected) {
            throw DimensionMismatch("KAN layer " + std::to_string(l) + " expects " +
                                    std::to_string(net.layers[l].in_dim()) +
                                    " inputs but receives " + std::to_string(expected));
        }
        expected = net.layers[l].out_dim();
    }
}

std::uint64_t cache_fingerprint(const KanNetwork& net, const PropagatedFeatures& inputs) {
    detail::Fnv1a h;
    for (auto block : parameter_blocks(net)) h.add(block);
    detail::hash_inputs(h, inputs);
    return h.value();
}

}  // namespace

std::vector<double> layer_forward(const KanLayer& layer, std::span<const double> z) {
    if (z.size() != layer.in_dim()) {
        throw DimensionMismatch("KAN layer expects " + std::to_string(layer.in_dim()) +
                                " inputs, got " + std::to_string(z.size()));
    }
    DenseMatrix row(1, static_cast<Eigen::Index>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) row(0, static_cast<Eigen::Index>(i)) = z[i];
    const DenseMatrix out = layer_forward_batch(layer, row, nullptr);
    return {out.data(), out.data() + out.size()};
}

PropagatedFeatures propagate(const AdjustedStructuralFeatures& adj, const FeatureMatrix& x) {
    PropagatedFeatures p;
    p.raw = x.values();
    for (const auto& hop : adj.hops) {
        if (hop.rows() != x.rows() || hop.cols() != x.rows()) {
            throw DimensionMismatch("adjusted hop is " + std::to_string(hop.rows()) + "x" +
                                    std::to_string(hop.cols()) + " but there are " +
                                    std::to_string(x.rows()) + " feature rows");
        }
        DenseMatrix mixed = DenseMatrix::Zero(p.raw.rows(), p.raw.cols());
        for (Index i = 0; i < hop.rows(); ++i) {
            const auto row = hop.row(i);
            for (std::size_t t = 0; t < row.size(); ++t) {
                mixed.row(static_cast<Eigen::Index>(i)) +=
                    row.values[t] * p.raw.row(static_cast<Eigen::Index>(row.cols[t]));
            }
        }
        p.hops.push_back(std::move(mixed));
    }
    return p;
}

DenseMatrix aggregate(const PropagatedFeatures& inputs, std::span<const double> hop_weights) {
    if (hop_weights.size() != inputs.k() + 1) {
        throw DimensionMismatch("expected " + std::to_string(inputs.k() + 1) +
                                " hop weights, got " + std::to_string(hop_weights.size()));
    }
    DenseMatrix e = hop_weights[0] * inputs.raw;
    for (std::size_t p = 0; p < inputs.hops.size(); ++p) e += hop_weights[p + 1] * inputs.hops[p];
    return e;
}

FeatureMatrix aggregate(const AdjustedStructuralFeatures& adj, const FeatureMatrix& x,
                        std::span<const double> hop_weights) {
    return FeatureMatrix(aggregate(propagate(adj, x), hop_weights));
}

KanNetwork make_kan_network(const KanArchitecture& arch, std::mt19937_64& rng) {
    if (arch.raw_dim < 1 || arch.embed_dim < 1 || arch.classes < 1) {
        throw InvalidConfig("network dimensions must be positive");
    }
    for (Index w : arch.hidden) {
        if (w < 1) throw InvalidConfig("hidden layer widths must be positive");
    }
    KanNetwork net;
    net.hop_weights.assign(arch.hops + 1, 1.0);

    const double embed_bound = 1.0 / std::sqrt(static_cast<double>(arch.raw_dim));
    std::uniform_real_distribution<double> embed_dist(-embed_bound, embed_bound);
    net.embed.weight.resize(static_cast<Eigen::Index>(arch.embed_dim),
                            static_cast<Eigen::Index>(arch.raw_dim));
    for (Eigen::Index r = 0; r < net.embed.weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < net.embed.weight.cols(); ++c) {
            net.embed.weight(r, c) = embed_dist(rng);
        }
    }
    net.embed.bias = DenseVector::Zero(static_cast<Eigen::Index>(arch.embed_dim));

    std::vector<Index> dims{arch.embed_dim};
    dims.insert(dims.end(), arch.hidden.begin(), arch.hidden.end());
    dims.push_back(arch.classes);

    const double coeff_std = 0.1 / std::sqrt(static_cast<double>(arch.basis.size()));
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        KanLayer layer(dims[l], dims[l + 1], arch.basis);
        auto& prm = layer.params();
        std::normal_distribution<double> coeff_dist(0.0, coeff_std);
        for (double& c : prm.coeffs) c = coeff_dist(rng);
        const double base_bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
        std::uniform_real_distribution<double> base_dist(-base_bound, base_bound);
        for (double& w : prm.w_base) w = base_dist(rng);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

DenseMatrix network_forward(const KanNetwork& net, const PropagatedFeatures& inputs,
                            KanForwardCache& cache) {
    detail::check_front(net.hop_weights, net.embed, inputs);
    check_chain(net);
    cache.valid = false;
    cache.aggregated = aggregate(inputs, net.hop_weights);
    DenseMatrix z = detail::embed_forward(net.embed, cache.aggregated);
    cache.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& lc = cache.layers[l];
        lc.input = std::move(z);
        z = layer_forward_batch(net.layers[l], lc.input, &lc.basis);
    }
    cache.fingerprint = cache_fingerprint(net, inputs);
    cache.valid = true;
    return z;
}

DenseMatrix network_forward(const KanNetwork& net, const PropagatedFeatures& inputs) {
    KanForwardCache cache;
    return network_forward(net, inputs, cache);
}

DenseMatrix network_forward(const KanNetwork& net, const AdjustedStructuralFeatures& adj,
                            const FeatureMatrix& x) {
    return network_forward(net, propagate(adj, x));
}

KanGradients network_backward(const KanNetwork& net, const PropagatedFeatures& inputs,
                              const KanForwardCache& cache, const DenseMatrix& upstream) {
    if (!cache.valid || cache.layers.size() != net.layers.size() ||
        cache.fingerprint != cache_fingerprint(net, inputs)) {
        throw StaleForwardCache("backward needs a forward pass on the current parameters and inputs");
    }
    if (upstream.rows() != inputs.raw.rows() ||
        upstream.cols() != static_cast<Eigen::Index>(net.classes())) {
        throw DimensionMismatch("upstream gradient must be N x C");
    }

    KanGradients grads;
    grads.layers.resize(net.layers.size());
    DenseMatrix grad_out = upstream;
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const KanLayer& layer = net.layers[l];
        const auto& lc = cache.layers[l];
        const auto& prm = layer.params();
        auto& g = grads.layers[l];
        g = layer.zero_params();

        const Index in = layer.in_dim();
        const Index out = layer.out_dim();
        const std::size_t nb = layer.basis().size();
        const unsigned deg = layer.basis().degree();
        const Eigen::Index rows = lc.input.rows();
        DenseMatrix grad_in = DenseMatrix::Zero(rows, static_cast<Eigen::Index>(in));

        for (Eigen::Index n = 0; n < rows; ++n) {
            for (Index i = 0; i < in; ++i) {
                const double t = lc.input(n, static_cast<Eigen::Index>(i));
                const double base = silu(t);
                const double dbase = silu_derivative(t);
                const auto& loc = lc.basis[static_cast<std::size_t>(n) * in + i];
                double acc_in = 0.0;
                for (Index o = 0; o < out; ++o) {
                    const double up = grad_out(n, static_cast<Eigen::Index>(o));
                    if (up == 0.0) continue;
                    const std::size_t edge = o * in + i;
                    const std::size_t off = edge * nb + loc.first;
                    const double* c = prm.coeffs.data() + off;
                    double spline = 0.0;
                    double dspline = 0.0;
                    for (unsigned r = 0; r <= deg; ++r) {
                        spline += c[r] * loc.values[r];
                        dspline += c[r] * loc.derivatives[r];
                    }
                    const double ws = prm.w_spline[edge];
                    g.w_base[edge] += up * base;
                    g.w_spline[edge] += up * spline;
                    for (unsigned r = 0; r <= deg; ++r) g.coeffs[off + r] += up * ws * loc.values[r];
                    acc_in += up * (prm.w_base[edge] * dbase + ws * dspline);
                }
                grad_in(n, static_cast<Eigen::Index>(i)) = acc_in;
            }
        }
        grad_out = std::move(grad_in);
    }
    detail::front_backward(net.hop_weights, net.embed, inputs, cache.aggregated, grad_out,
                           grads.hop_weights, grads.embed);
    return grads;
}

namespace {

template <typename Span, typename Net>
std::vector<Span> network_blocks(Net& net) {
    std::vector<Span> blocks;
    blocks.emplace_back(net.hop_weights);
    blocks.emplace_back(net.embed.weight.data(), static_cast<std::size_t>(net.embed.weight.size()));
    blocks.emplace_back(net.embed.bias.data(), static_cast<std::size_t>(net.embed.bias.size()));
    for (auto& layer : net.layers) {
        auto& prm = layer.params();
        blocks.emplace_back(prm.coeffs);
        blocks.emplace_back(prm.w_base);
        blocks.emplace_back(prm.w_spline);
    }
    return blocks;
}

}  // namespace

std::vector<std::span<double>> parameter_blocks(KanNetwork& net) {
    return network_blocks<std::span<double>>(net);
}

std::vector<std::span<const double>> parameter_blocks(const KanNetwork& net) {
    return network_blocks<std::span<const double>>(net);
}

std::vector<std::span<double>> parameter_blocks(KanGradients& grads) {
    std::vector<std::span<double>> blocks;
    blocks.emplace_back(grads.hop_weights);
    blocks.emplace_back(grads.embed.weight.data(),
                        static_cast<std::size_t>(grads.embed.weight.size()));
    blocks.emplace_back(grads.embed.bias.data(), static_cast<std::size_t>(grads.embed.bias.size()));
    for (auto& prm : grads.layers) {
        blocks.emplace_back(prm.coeffs);
        blocks.emplace_back(prm.w_base);
        blocks.emplace_back(prm.w_spline);
    }
    return blocks;
}

std::uint64_t parameter_fingerprint(const KanNetwork& net) {
    detail::Fnv1a h;
    for (auto block : parameter_blocks(net)) h.add(block);
    return h.value();
}

}  // namespace hyperkan
