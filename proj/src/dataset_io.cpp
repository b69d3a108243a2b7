#include "hyperkan/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "text_reader.hpp"

namespace hyperkan {

namespace {

void write_real(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

Dataset parse_dataset(std::istream& raw_in) {
    // Line counts are checked against the header before any field is parsed,
    // so a missing hyperedge line reports HeaderMismatch rather than a type error.
    const std::string text(std::istreambuf_iterator<char>(raw_in), {});
    std::size_t content_lines = 0;
    {
        std::istringstream scan(text);
        detail::TextReader counter(scan);
        while (counter.next_line(true)) ++content_lines;
    }
    std::istringstream in(text);
    detail::TextReader reader(in);
    if (!reader.next_line(true)) throw HeaderMismatch("dataset is empty; expected header 'N M d C'");
    const auto& header = reader.tokens();
    if (header.size() != 4) reader.fail("header must have exactly 4 fields: N M d C");
    const auto n = reader.parse_int<Index>(header[0]);
    const auto m = reader.parse_int<Index>(header[1]);
    const auto d = reader.parse_int<Index>(header[2]);
    const auto c = reader.parse_int<Index>(header[3]);
    if (n < 1 || d < 1 || c < 1) reader.fail("N, d and C must be at least 1");
    const std::size_t declared = 1 + m + 2 * n;
    if (content_lines != declared) {
        throw HeaderMismatch("header 'N=" + std::to_string(n) + " M=" + std::to_string(m) +
                             "' implies " + std::to_string(declared) + " non-blank lines, found " +
                             std::to_string(content_lines));
    }

    const auto need_line = [&](const char* what, Index index, Index total) {
        if (!reader.next_line(true)) {
            throw HeaderMismatch("header declares " + std::to_string(total) + " " + what +
                                 " lines but the file ends after " + std::to_string(index));
        }
    };

    std::vector<std::vector<Index>> edges(m);
    for (Index e = 0; e < m; ++e) {
        need_line("hyperedge", e, m);
        for (const auto& tok : reader.tokens()) {
            const auto v = reader.parse_int<Index>(tok);
            if (v >= n) {
                reader.fail("vertex " + std::to_string(v) + " is out of range for N = " +
                                std::to_string(n),
                            tok.column);
            }
            edges[e].push_back(v);
        }
    }

    DenseMatrix features(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Index i = 0; i < n; ++i) {
        need_line("feature", i, n);
        const auto& toks = reader.tokens();
        if (toks.size() != d) {
            reader.fail("expected " + std::to_string(d) + " feature values, found " +
                        std::to_string(toks.size()));
        }
        for (Index j = 0; j < d; ++j) {
            const double v = reader.parse_double(toks[j]);
            if (!std::isfinite(v)) reader.fail("feature value is not finite", toks[j].column);
            features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }

    std::vector<int> labels(n);
    for (Index i = 0; i < n; ++i) {
        need_line("label", i, n);
        const auto& toks = reader.tokens();
        if (toks.size() != 1) reader.fail("a label line holds exactly one integer");
        const auto y = reader.parse_int<long long>(toks[0]);
        if (y < 0 || static_cast<Index>(y) >= c) {
            throw LabelOutOfRange("line " + std::to_string(reader.line()) + ": label " +
                                  std::to_string(y) + " is outside [0, " + std::to_string(c) + ")");
        }
        labels[i] = static_cast<int>(y);
    }
    if (reader.next_line(true)) {
        throw HeaderMismatch("line " + std::to_string(reader.line()) +
                             ": content beyond the lines declared by the header");
    }

    Dataset data;
    data.graph = build_hypergraph(n, edges);
    data.features = FeatureMatrix(std::move(features));
    data.labels = std::move(labels);
    data.num_classes = c;
    return data;
}

Dataset parse_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset '" + path + "'");
    try {
        return parse_dataset(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.message(), e.line(), e.column());
    }
}

void serialize_dataset(const Dataset& data, std::ostream& out) {
    const auto& x = data.features.values();
    out << data.num_vertices() << ' ' << data.graph.num_hyperedges() << ' ' << x.cols() << ' '
        << data.num_classes << '\n';
    for (const auto& edge : data.graph.hyperedges()) {
        for (std::size_t t = 0; t < edge.size(); ++t) out << (t ? " " : "") << edge[t];
        out << '\n';
    }
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (j) out << ' ';
            write_real(out, x(i, j));
        }
        out << '\n';
    }
    for (int y : data.labels) out << y << '\n';
}

void write_dataset_file(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    serialize_dataset(data, out);
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace hyperkan
