#pragma once

#include <cstdint>
#include <string_view>

#include "hyperkan/training.hpp"

namespace hyperkan {

/// Community-structured synthetic hypergraphs for smoke tests and benchmarks.
///
/// Every class is a community of `per_class` vertices. Hyperedges of
/// `edge_size` vertices are drawn inside a community (the first few cover
/// every member once), plus `cross_edges` two-vertex edges joining random
/// vertices of different communities.
struct SynthOptions {
    Index per_class = 30;
    Index classes = 2;
    Index dim = 16;
    Index edges_per_class = 20;
    Index edge_size = 5;
    Index cross_edges = 0;
    /// Offset of each class mean along its own axis (feature-separated family).
    double separation = 4.0;
};

enum class SynthFamily {
    /// Gaussian features whose class means differ; structure follows the classes too.
    feature_separated,
    /// Every vertex draws features from the same N(0, I); only hyperedge
    /// membership reveals the class.
    structure_only,
};

SynthFamily parse_synth_family(std::string_view name);

Dataset make_synthetic(SynthFamily family, const SynthOptions& opts, std::uint64_t seed);

}  // namespace hyperkan
