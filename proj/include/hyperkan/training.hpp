#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperkan/kan.hpp"
#include "hyperkan/mlp.hpp"

namespace hyperkan {

/// A labeled hypergraph: structure, raw features and one class per vertex.
struct Dataset {
    Hypergraph graph;
    FeatureMatrix features;
    std::vector<int> labels;
    Index num_classes = 0;

    Index num_vertices() const { return graph.num_vertices(); }
    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Which parts of the pipeline are active.
///   full      structure extraction + adjustment + KAN stack
///   no_fe_fa  raw features straight into embedding + KAN stack
///   no_kan    structure extraction + adjustment + MLP stack
///   no_both   raw features + MLP stack
enum class AblationVariant { full, no_fe_fa, no_kan, no_both };

std::string_view to_string(AblationVariant v);
/// Throws InvalidConfig for an unknown name.
AblationVariant parse_variant(std::string_view name);
bool uses_structure(AblationVariant v);
bool uses_kan(AblationVariant v);

enum class OptimizerKind { adagrad, adam };

std::string_view to_string(OptimizerKind k);
OptimizerKind parse_optimizer(std::string_view name);

/// Everything a single training run needs besides data, variant and seed.
struct TrainConfig {
    unsigned k = 2;
    Index n_max = 32;
    Index m_min = 4;
    Index embed_dim = 64;     // d
    unsigned layers = 2;      // L hidden KAN layers (plus the classification layer)
    Index hidden = 64;        // width of each hidden layer
    unsigned grid_size = 5;   // G
    unsigned spline_degree = 3;
    double grid_lo = -1.0;
    double grid_hi = 1.0;
    OptimizerKind optimizer = OptimizerKind::adam;
    double learning_rate = 0.01;
    unsigned epochs = 300;

    /// Throws InvalidConfig when a count is zero, m_min > n_max or lo >= hi.
    void validate() const;
    AdjustmentConfig adjustment() const { return {n_max, m_min, k}; }
};

struct SplitAssignment {
    std::vector<Index> train;
    std::vector<Index> val;
    std::vector<Index> test;
    std::uint64_t seed = 0;
};

/// Seeded shuffle, then round(N/2) train, ceil(rest/2) val, the remainder test.
/// Throws TooFewVertices when num_labeled < 4.
SplitAssignment make_split(Index num_labeled, std::uint64_t seed);

struct LossResult {
    double loss = 0.0;
    DenseMatrix grad;  // N x C, nonzero only on subset rows
};

/// Mean negative log-softmax of the true class over `subset`.
/// Throws EmptySubset, DimensionMismatch, or LabelOutOfRange.
LossResult cross_entropy(const DenseMatrix& logits, std::span<const int> labels,
                         std::span<const Index> subset);

/// Fraction of `subset` whose argmax logit (first on ties) equals the label.
double accuracy(const DenseMatrix& logits, std::span<const int> labels,
                std::span<const Index> subset);

struct OptimizerState {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 0.01;
    double epsilon = 1e-8;
    double beta1 = 0.9;
    double beta2 = 0.999;
    // adagrad: first = running sum of squared gradients; adam: first/second moments.
    std::vector<std::vector<double>> first;
    std::vector<std::vector<double>> second;
    std::uint64_t step = 0;
};

/// epsilon defaults to 1e-10 for adagrad and 1e-8 for adam.
OptimizerState make_optimizer(OptimizerKind kind, double learning_rate);

/// One in-place update. Accumulators are shaped on the first call; later calls
/// with different shapes throw ShapeMismatch.
void optimizer_step(OptimizerState& state, std::span<const std::span<double>> params,
                    std::span<const std::span<double>> grads);

struct RunMetrics {
    AblationVariant variant = AblationVariant::full;
    std::uint64_t seed = 0;
    std::vector<double> train_loss;    // per epoch
    std::vector<double> val_accuracy;  // per epoch
    std::vector<double> epoch_seconds; // per epoch
    std::size_t best_epoch = 0;
    double best_val_accuracy = 0.0;
    double test_accuracy = 0.0;
    double preprocess_seconds = 0.0;
    double wall_seconds = 0.0;
};

/// Network input for a variant: propagated hop features when structure is used,
/// raw features alone otherwise.
PropagatedFeatures prepare_inputs(const Dataset& data, AblationVariant variant,
                                  const TrainConfig& config);

/// Full-graph training. Each epoch evaluates the current parameters (train loss,
/// validation and test accuracy) and then takes one optimizer step. The reported
/// test accuracy belongs to the epoch with the best validation accuracy (ties:
/// lower validation loss, then earlier epoch). When `best_model` is given and the
/// variant uses KAN layers, it receives the parameters of that epoch.
RunMetrics train(const Dataset& data, AblationVariant variant, const TrainConfig& config,
                 std::uint64_t seed, KanNetwork* best_model = nullptr);

/// Same as train() but reuses inputs from prepare_inputs().
RunMetrics train_prepared(const Dataset& data, const PropagatedFeatures& inputs,
                          AblationVariant variant, const TrainConfig& config, std::uint64_t seed,
                          KanNetwork* best_model = nullptr);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1)
};

MeanStd mean_std(std::span<const double> values);

struct RepeatedResult {
    std::vector<RunMetrics> runs;
    MeanStd accuracy;
};

/// Trains once per seed on shared preprocessed inputs. Throws InvalidConfig
/// with fewer than two seeds.
RepeatedResult evaluate_repeated(const Dataset& data, AblationVariant variant,
                                 const TrainConfig& config, std::span<const std::uint64_t> seeds);

}  // namespace hyperkan
