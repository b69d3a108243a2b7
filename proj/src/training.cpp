#include "hyperkan/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <type_traits>

namespace hyperkan {

std::string_view to_string(AblationVariant v) {
    switch (v) {
        case AblationVariant::full: return "full";
        case AblationVariant::no_fe_fa: return "no_fe_fa";
        case AblationVariant::no_kan: return "no_kan";
        case AblationVariant::no_both: return "no_both";
    }
    return "unknown";
}

AblationVariant parse_variant(std::string_view name) {
    for (auto v : {AblationVariant::full, AblationVariant::no_fe_fa, AblationVariant::no_kan,
                   AblationVariant::no_both}) {
        if (name == to_string(v)) return v;
    }
    throw InvalidConfig("unknown variant '" + std::string(name) +
                        "' (expected full, no_fe_fa, no_kan or no_both)");
}

bool uses_structure(AblationVariant v) {
    return v == AblationVariant::full || v == AblationVariant::no_kan;
}

bool uses_kan(AblationVariant v) {
    return v == AblationVariant::full || v == AblationVariant::no_fe_fa;
}

std::string_view to_string(OptimizerKind k) {
    return k == OptimizerKind::adam ? "adam" : "adagrad";
}

OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "adam") return OptimizerKind::adam;
    if (name == "adagrad") return OptimizerKind::adagrad;
    throw InvalidConfig("unknown optimizer '" + std::string(name) + "' (expected adam or adagrad)");
}

void TrainConfig::validate() const {
    if (k < 1 || n_max < 1 || m_min < 1 || embed_dim < 1 || layers < 1 || hidden < 1 ||
        grid_size < 1 || spline_degree < 1 || epochs < 1) {
        throw InvalidConfig("all counts in the run configuration must be at least 1");
    }
    if (m_min > n_max) throw InvalidConfig("m_min must not exceed n_max");
    if (!(grid_lo < grid_hi)) throw InvalidConfig("grid range requires lo < hi");
    if (!(learning_rate > 0.0)) throw InvalidConfig("learning rate must be positive");
    if (spline_degree > BSplineBasis::kMaxDegree) {
        throw InvalidConfig("spline degree must be at most " +
                            std::to_string(BSplineBasis::kMaxDegree));
    }
}

SplitAssignment make_split(Index num_labeled, std::uint64_t seed) {
    if (num_labeled < 4) {
        throw TooFewVertices("a 2:1:1 split needs at least 4 labeled vertices, got " +
                             std::to_string(num_labeled));
    }
    std::vector<Index> order(num_labeled);
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const Index n_train = (num_labeled + 1) / 2;
    const Index rest = num_labeled - n_train;
    const Index n_val = (rest + 1) / 2;

    SplitAssignment s;
    s.seed = seed;
    const auto at = [&](Index i) { return order.begin() + static_cast<std::ptrdiff_t>(i); };
    s.train.assign(at(0), at(n_train));
    s.val.assign(at(n_train), at(n_train + n_val));
    s.test.assign(at(n_train + n_val), order.end());
    return s;
}

namespace {

void check_labels(const DenseMatrix& logits, std::span<const int> labels,
                  std::span<const Index> subset) {
    if (static_cast<Eigen::Index>(labels.size()) != logits.rows()) {
        throw DimensionMismatch("label count differs from the number of logit rows");
    }
    for (Index i : subset) {
        if (i >= labels.size()) throw DimensionMismatch("subset index out of range");
        if (labels[i] < 0 || labels[i] >= logits.cols()) {
            throw LabelOutOfRange("label " + std::to_string(labels[i]) + " of vertex " +
                                  std::to_string(i) + " is outside [0, " +
                                  std::to_string(logits.cols()) + ")");
        }
    }
}

}  // namespace

LossResult cross_entropy(const DenseMatrix& logits, std::span<const int> labels,
                         std::span<const Index> subset) {
    if (subset.empty()) throw EmptySubset("cross-entropy over an empty vertex subset");
    check_labels(logits, labels, subset);
    LossResult out;
    out.grad = DenseMatrix::Zero(logits.rows(), logits.cols());
    const double scale = 1.0 / static_cast<double>(subset.size());
    for (Index i : subset) {
        const auto row = logits.row(static_cast<Eigen::Index>(i));
        const double max = row.maxCoeff();
        const auto shifted = (row.array() - max).eval();
        const double log_sum = std::log(shifted.exp().sum());
        const int y = labels[i];
        out.loss -= (shifted(y) - log_sum) * scale;
        auto g = out.grad.row(static_cast<Eigen::Index>(i));
        g = (shifted - log_sum).exp().matrix() * scale;
        g(y) -= scale;
    }
    return out;
}

double accuracy(const DenseMatrix& logits, std::span<const int> labels,
                std::span<const Index> subset) {
    if (subset.empty()) throw EmptySubset("accuracy over an empty vertex subset");
    check_labels(logits, labels, subset);
    std::size_t correct = 0;
    for (Index i : subset) {
        Eigen::Index best = 0;
        logits.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
        if (best == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(subset.size());
}

OptimizerState make_optimizer(OptimizerKind kind, double learning_rate) {
    OptimizerState s;
    s.kind = kind;
    s.learning_rate = learning_rate;
    s.epsilon = kind == OptimizerKind::adagrad ? 1e-10 : 1e-8;
    return s;
}

void optimizer_step(OptimizerState& state, std::span<const std::span<double>> params,
                    std::span<const std::span<double>> grads) {
    if (params.size() != grads.size()) {
        throw ShapeMismatch("parameter and gradient block counts differ");
    }
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (params[b].size() != grads[b].size()) {
            throw ShapeMismatch("block " + std::to_string(b) + ": " +
                                std::to_string(params[b].size()) + " parameters but " +
                                std::to_string(grads[b].size()) + " gradients");
        }
    }
    if (state.step == 0 && state.first.empty()) {
        for (const auto& p : params) {
            state.first.emplace_back(p.size(), 0.0);
            if (state.kind == OptimizerKind::adam) state.second.emplace_back(p.size(), 0.0);
        }
    }
    if (state.first.size() != params.size()) {
        throw ShapeMismatch("optimizer state was built for a different parameter layout");
    }
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (state.first[b].size() != params[b].size()) {
            throw ShapeMismatch("optimizer state block " + std::to_string(b) +
                                " has a different size");
        }
    }
    ++state.step;

    const double lr = state.learning_rate;
    const double eps = state.epsilon;
    if (state.kind == OptimizerKind::adagrad) {
        for (std::size_t b = 0; b < params.size(); ++b) {
            auto& acc = state.first[b];
            for (std::size_t i = 0; i < params[b].size(); ++i) {
                const double g = grads[b][i];
                acc[i] += g * g;
                params[b][i] -= lr * g / (std::sqrt(acc[i]) + eps);
            }
        }
        return;
    }
    const double b1 = state.beta1;
    const double b2 = state.beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
    for (std::size_t b = 0; b < params.size(); ++b) {
        auto& m = state.first[b];
        auto& v = state.second[b];
        for (std::size_t i = 0; i < params[b].size(); ++i) {
            const double g = grads[b][i];
            m[i] = b1 * m[i] + (1.0 - b1) * g;
            v[i] = b2 * v[i] + (1.0 - b2) * g * g;
            const double m_hat = m[i] / correction1;
            const double v_hat = v[i] / correction2;
            params[b][i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
        }
    }
}

PropagatedFeatures prepare_inputs(const Dataset& data, AblationVariant variant,
                                  const TrainConfig& config) {
    config.validate();
    if (!uses_structure(variant)) return propagate(AdjustedStructuralFeatures{}, data.features);
    const auto sf = structural_features(data.graph, config.k);
    const auto sim = cosine_similarity(data.features);
    return propagate(adjust_all(sf, sim, config.adjustment()), data.features);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

KanArchitecture architecture(const Dataset& data, const PropagatedFeatures& inputs,
                             const TrainConfig& config) {
    KanArchitecture arch;
    arch.raw_dim = data.features.dim();
    arch.hops = inputs.k();
    arch.embed_dim = config.embed_dim;
    arch.hidden.assign(config.layers, config.hidden);
    arch.classes = data.num_classes;
    arch.basis = BSplineBasis(config.spline_degree, config.grid_size, config.grid_lo, config.grid_hi);
    return arch;
}

template <typename Net, typename Cache>
RunMetrics run_loop(Net& net, const Dataset& data, const PropagatedFeatures& inputs,
                    const TrainConfig& config, const SplitAssignment& split, RunMetrics metrics,
                    KanNetwork* best_model) {
    OptimizerState opt = make_optimizer(config.optimizer, config.learning_rate);
    Cache cache;
    double best_val_loss = 0.0;
    bool have_best = false;
    for (unsigned epoch = 0; epoch < config.epochs; ++epoch) {
        const auto start = Clock::now();
        const DenseMatrix logits = network_forward(net, inputs, cache);
        const LossResult train_loss = cross_entropy(logits, data.labels, split.train);
        const double val_acc = accuracy(logits, data.labels, split.val);
        const double val_loss = cross_entropy(logits, data.labels, split.val).loss;

        metrics.train_loss.push_back(train_loss.loss);
        metrics.val_accuracy.push_back(val_acc);
        const bool better = !have_best || val_acc > metrics.best_val_accuracy ||
                            (val_acc == metrics.best_val_accuracy && val_loss < best_val_loss);
        if (better) {
            have_best = true;
            metrics.best_epoch = epoch;
            metrics.best_val_accuracy = val_acc;
            metrics.test_accuracy = accuracy(logits, data.labels, split.test);
            best_val_loss = val_loss;
            if constexpr (std::is_same_v<Net, KanNetwork>) {
                if (best_model) *best_model = net;
            }
        }

        auto grads = network_backward(net, inputs, cache, train_loss.grad);
        const auto param_blocks = parameter_blocks(net);
        const auto grad_blocks = parameter_blocks(grads);
        optimizer_step(opt, param_blocks, grad_blocks);
        metrics.epoch_seconds.push_back(seconds_since(start));
    }
    return metrics;
}

}  // namespace

RunMetrics train_prepared(const Dataset& data, const PropagatedFeatures& inputs,
                          AblationVariant variant, const TrainConfig& config, std::uint64_t seed,
                          KanNetwork* best_model) {
    config.validate();
    if (data.labels.size() != data.num_vertices()) {
        throw DimensionMismatch("dataset has " + std::to_string(data.labels.size()) +
                                " labels for " + std::to_string(data.num_vertices()) + " vertices");
    }
    if (inputs.rows() != data.num_vertices()) {
        throw DimensionMismatch("prepared inputs do not match the dataset");
    }
    const auto start = Clock::now();
    const SplitAssignment split = make_split(data.num_vertices(), seed);
    std::seed_seq init_seed{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                            0x4b414eU};
    std::mt19937_64 rng(init_seed);
    const KanArchitecture arch = architecture(data, inputs, config);

    RunMetrics metrics;
    metrics.variant = variant;
    metrics.seed = seed;
    if (uses_kan(variant)) {
        KanNetwork net = make_kan_network(arch, rng);
        metrics = run_loop<KanNetwork, KanForwardCache>(net, data, inputs, config, split,
                                                        std::move(metrics), best_model);
    } else {
        MlpNetwork net = make_mlp_network(arch, rng);
        metrics = run_loop<MlpNetwork, MlpForwardCache>(net, data, inputs, config, split,
                                                        std::move(metrics), nullptr);
    }
    metrics.wall_seconds = seconds_since(start);
    return metrics;
}

RunMetrics train(const Dataset& data, AblationVariant variant, const TrainConfig& config,
                 std::uint64_t seed, KanNetwork* best_model) {
    const auto start = Clock::now();
    const PropagatedFeatures inputs = prepare_inputs(data, variant, config);
    const double prep = seconds_since(start);
    RunMetrics m = train_prepared(data, inputs, variant, config, seed, best_model);
    m.preprocess_seconds = prep;
    m.wall_seconds += prep;
    return m;
}

MeanStd mean_std(std::span<const double> values) {
    MeanStd out;
    if (values.empty()) return out;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
        out.mean = values[0];
        return out;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return out;
}

RepeatedResult evaluate_repeated(const Dataset& data, AblationVariant variant,
                                 const TrainConfig& config, std::span<const std::uint64_t> seeds) {
    if (seeds.size() < 2) throw InvalidConfig("repeated evaluation needs at least two seeds");
    const auto start = Clock::now();
    const PropagatedFeatures inputs = prepare_inputs(data, variant, config);
    const double prep = seconds_since(start);

    RepeatedResult result;
    std::vector<double> accs;
    for (std::uint64_t seed : seeds) {
        RunMetrics m = train_prepared(data, inputs, variant, config, seed);
        m.preprocess_seconds = prep;
        accs.push_back(m.test_accuracy);
        result.runs.push_back(std::move(m));
    }
    result.accuracy = mean_std(accs);
    return result;
}

}  // namespace hyperkan
