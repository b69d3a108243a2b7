#pragma once

// Reference implementations used only by tests. Each one follows the textbook
// definition with dense storage and no shared code with the library paths
// they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "hyperkan/adjustment.hpp"
#include "hyperkan/features.hpp"
#include "hyperkan/hypergraph.hpp"
#include "hyperkan/training.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RealMatrix = std::vector<std::vector<double>>;

inline IntMatrix dense_incidence(std::size_t n, const std::vector<std::vector<std::size_t>>& edges) {
    IntMatrix h(n, std::vector<std::int64_t>(edges.size(), 0));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (auto v : edges[e]) h[v][e] = 1;
    }
    return h;
}

inline IntMatrix transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix t(a[0].size(), std::vector<std::int64_t>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner,
                          std::size_t cols) {
    IntMatrix c(a.size(), std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t t = 0; t < inner; ++t) c[i][j] += a[i][t] * b[t][j];
    return c;
}

/// Dense H * H^T (handles M = 0).
inline IntMatrix adjacency(std::size_t n, const std::vector<std::vector<std::size_t>>& edges) {
    const auto h = dense_incidence(n, edges);
    IntMatrix a(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t e = 0; e < edges.size(); ++e) a[i][j] += h[i][e] * h[j][e];
    return a;
}

inline IntMatrix power(const IntMatrix& a, unsigned p) {
    IntMatrix r = a;
    for (unsigned t = 1; t < p; ++t) r = multiply(r, a, a.size(), a.size());
    return r;
}

template <typename T>
IntMatrix to_dense(const hyperkan::SparseRowMatrix<T>& m) {
    IntMatrix d(m.rows(), std::vector<std::int64_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        for (std::size_t t = 0; t < row.size(); ++t) d[r][row.cols[t]] = row.values[t];
    }
    return d;
}

inline RealMatrix to_dense_real(const hyperkan::RealSparseMatrix& m) {
    RealMatrix d(m.rows(), std::vector<double>(m.cols(), 0.0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        for (std::size_t t = 0; t < row.size(); ++t) d[r][row.cols[t]] = row.values[t];
    }
    return d;
}

inline hyperkan::CountMatrix to_sparse(const IntMatrix& d, std::size_t cols) {
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> trip;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (d[i][j] != 0) trip.emplace_back(i, j, d[i][j]);
    return hyperkan::CountMatrix::from_triplets(d.size(), cols, trip);
}

inline std::vector<std::vector<std::size_t>> random_edges(std::mt19937_64& rng, std::size_t n,
                                                          std::size_t m) {
    std::uniform_int_distribution<std::size_t> size_dist(1, n);
    std::vector<std::vector<std::size_t>> edges(m);
    for (auto& e : edges) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        perm.resize(size_dist(rng));
        e = perm;
    }
    return edges;
}

/// Dense 0/1 brute force of the binary adjustment stage for one hop: for every
/// row, set nonzero -> 1, clear the diagonal, pad to m_min with the best
/// non-neighbors and cap at n_max keeping the best neighbors. "Best" means a
/// stable sort by descending similarity.
inline std::vector<std::vector<int>> binary_adjust(const IntMatrix& hop, const RealMatrix& sim,
                                                   std::size_t n_max, std::size_t m_min) {
    const std::size_t n = hop.size();
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> row(n, 0);
        for (std::size_t j = 0; j < n; ++j) row[j] = (hop[i][j] != 0 && j != i) ? 1 : 0;
        const auto by_similarity = [&](std::vector<std::size_t> idx) {
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return sim[i][a] > sim[i][b]; });
            return idx;
        };
        std::size_t count = static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
        if (count < m_min) {
            std::vector<std::size_t> cand;
            for (std::size_t j = 0; j < n; ++j)
                if (row[j] == 0 && j != i) cand.push_back(j);
            cand = by_similarity(cand);
            for (std::size_t t = 0; t < cand.size() && count < m_min; ++t, ++count) row[cand[t]] = 1;
        }
        if (count > n_max) {
            std::vector<std::size_t> nb;
            for (std::size_t j = 0; j < n; ++j)
                if (row[j] == 1) nb.push_back(j);
            nb = by_similarity(nb);
            for (std::size_t t = n_max; t < nb.size(); ++t) row[nb[t]] = 0;
        }
        out[i] = row;
    }
    return out;
}

/// Random symmetric similarity rows with deliberate ties (values on a coarse grid).
inline RealMatrix random_similarity(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> level(-4, 4);
    RealMatrix s(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s[i][j] = s[j][i] = level(rng) / 4.0;
    return s;
}

inline hyperkan::SimilarityMatrix to_similarity(const RealMatrix& s) {
    hyperkan::SimilarityMatrix out;
    out.values.resize(static_cast<long>(s.size()), static_cast<long>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) out.values(static_cast<long>(i), static_cast<long>(j)) = s[i][j];
    return out;
}

/// Recursive Cox-de Boor definition with the half-open convention, except that
/// the last domain interval is closed on the right.
inline double cox_de_boor(const std::vector<double>& knots, std::size_t i, unsigned p, double t,
                          std::size_t last_span) {
    if (p == 0) {
        if (t == knots[last_span + 1]) return i == last_span ? 1.0 : 0.0;
        return (knots[i] <= t && t < knots[i + 1]) ? 1.0 : 0.0;
    }
    double left = 0.0;
    double right = 0.0;
    const double d1 = knots[i + p] - knots[i];
    const double d2 = knots[i + p + 1] - knots[i + 1];
    if (d1 > 0) left = (t - knots[i]) / d1 * cox_de_boor(knots, i, p - 1, t, last_span);
    if (d2 > 0) right = (knots[i + p + 1] - t) / d2 * cox_de_boor(knots, i + 1, p - 1, t, last_span);
    return left + right;
}

/// Uniform extended knot vector, built independently of BSplineBasis.
inline std::vector<double> uniform_knots(unsigned degree, unsigned intervals, double lo, double hi) {
    std::vector<double> k;
    const double h = (hi - lo) / intervals;
    for (int i = -static_cast<int>(degree); i <= static_cast<int>(intervals + degree); ++i) {
        k.push_back(lo + i * h);
    }
    k[degree] = lo;
    k[degree + intervals] = hi;
    return k;
}

/// Random well-formed dataset with awkward reals (tiny, huge, many digits).
inline hyperkan::Dataset random_dataset(std::mt19937_64& rng) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t d = 1 + rng() % 5;
    const std::size_t c = 1 + rng() % 4;
    hyperkan::Dataset data;
    data.graph = hyperkan::build_hypergraph(n, random_edges(rng, n, rng() % 10));
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> expo(-300, 300);
    hyperkan::DenseMatrix x(static_cast<long>(n), static_cast<long>(d));
    for (long i = 0; i < x.size(); ++i) {
        switch (rng() % 4) {
            case 0: x.data()[i] = g(rng); break;
            case 1: x.data()[i] = std::ldexp(g(rng), expo(rng) * 3); break;
            case 2: x.data()[i] = static_cast<double>(static_cast<std::int64_t>(rng() % 2001) - 1000); break;
            default: x.data()[i] = 4.9e-324 * static_cast<double>(rng() % 5); break;
        }
    }
    data.features = hyperkan::FeatureMatrix(x);
    data.labels.resize(n);
    for (auto& y : data.labels) y = static_cast<int>(rng() % c);
    data.num_classes = c;
    return data;
}

/// Leave-nothing-out nearest centroid accuracy on a train/test split.
inline double nearest_centroid_accuracy(const hyperkan::Dataset& data,
                                        const hyperkan::SplitAssignment& split) {
    const auto& x = data.features.values();
    const auto c = data.num_classes;
    hyperkan::DenseMatrix centroids = hyperkan::DenseMatrix::Zero(static_cast<long>(c), x.cols());
    std::vector<double> counts(c, 0.0);
    for (auto i : split.train) {
        centroids.row(data.labels[i]) += x.row(static_cast<long>(i));
        counts[static_cast<std::size_t>(data.labels[i])] += 1.0;
    }
    for (std::size_t k = 0; k < c; ++k)
        if (counts[k] > 0) centroids.row(static_cast<long>(k)) /= counts[k];
    std::size_t correct = 0;
    for (auto i : split.test) {
        long best = 0;
        double best_d = 1e300;
        for (long k = 0; k < static_cast<long>(c); ++k) {
            const double d = (x.row(static_cast<long>(i)) - centroids.row(k)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best == data.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(split.test.size());
}

}  // namespace oracle
