#include "hyperkan/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace hyperkan {

SynthFamily parse_synth_family(std::string_view name) {
    if (name == "separated" || name == "feature_separated") return SynthFamily::feature_separated;
    if (name == "structure" || name == "structure_only") return SynthFamily::structure_only;
    throw InvalidConfig("unknown synthetic family '" + std::string(name) +
                        "' (expected separated or structure)");
}

Dataset make_synthetic(SynthFamily family, const SynthOptions& opts, std::uint64_t seed) {
    if (opts.per_class < 2 || opts.classes < 2 || opts.dim < 1 || opts.edge_size < 2 ||
        opts.edge_size > opts.per_class) {
        throw InvalidConfig("synthetic options need per_class >= edge_size >= 2, classes >= 2, dim >= 1");
    }
    std::mt19937_64 rng(seed);
    const Index n = opts.per_class * opts.classes;

    std::vector<std::vector<Index>> edges;
    for (Index c = 0; c < opts.classes; ++c) {
        std::vector<Index> members(opts.per_class);
        std::iota(members.begin(), members.end(), c * opts.per_class);
        std::shuffle(members.begin(), members.end(), rng);
        Index made = 0;
        // Cover each member once, wrapping around to fill the last edge.
        for (Index start = 0; start < opts.per_class; start += opts.edge_size, ++made) {
            std::vector<Index> e;
            for (Index t = 0; t < opts.edge_size; ++t) {
                e.push_back(members[(start + t) % opts.per_class]);
            }
            edges.push_back(std::move(e));
        }
        for (; made < opts.edges_per_class; ++made) {
            std::shuffle(members.begin(), members.end(), rng);
            edges.emplace_back(members.begin(),
                               members.begin() + static_cast<std::ptrdiff_t>(opts.edge_size));
        }
    }
    std::uniform_int_distribution<Index> any(0, n - 1);
    for (Index e = 0; e < opts.cross_edges; ++e) {
        Index a = any(rng);
        Index b = any(rng);
        while (b / opts.per_class == a / opts.per_class) b = any(rng);
        edges.push_back({a, b});
    }

    std::normal_distribution<double> noise(0.0, 1.0);
    DenseMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(opts.dim));
    std::vector<int> labels(n);
    for (Index i = 0; i < n; ++i) {
        const Index c = i / opts.per_class;
        labels[i] = static_cast<int>(c);
        for (Index j = 0; j < opts.dim; ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = noise(rng);
        }
        if (family == SynthFamily::feature_separated) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c % opts.dim)) +=
                opts.separation;
        }
    }

    Dataset data;
    data.graph = build_hypergraph(n, edges);
    data.features = FeatureMatrix(std::move(x));
    data.labels = std::move(labels);
    data.num_classes = opts.classes;
    return data;
}

}  // namespace hyperkan
