#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "hyperkan/kan.hpp"
#include "text_reader.hpp"

// Layout (one record per line, values as hex floats):
//
//   hyperkan-kan-checkpoint 1
//   hop_weights <k+1> v...
//   embed_weight <rows> <cols> v...
//   embed_bias <rows> v...
//   layers <L>
//   layer <in> <out> <degree> <intervals> <lo> <hi>
//   coeffs <count> v...
//   w_base <count> v...
//   w_spline <count> v...
//   end

namespace hyperkan {

namespace {

constexpr std::string_view kMagic = "hyperkan-kan-checkpoint";
constexpr int kVersion = 1;

void write_hex(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
    out.write(buf, res.ptr - buf);
}

void write_values(std::ostream& out, const double* data, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        out << ' ';
        write_hex(out, data[i]);
    }
    out << '\n';
}

class CheckpointReader {
public:
    explicit CheckpointReader(std::istream& in) : reader_(in) {}

    // Reads a line starting with `tag`, returning the remaining tokens.
    const std::vector<detail::TextReader::Token>& expect(std::string_view tag) {
        if (!reader_.next_line(true)) reader_.fail("unexpected end of checkpoint, wanted '" +
                                                   std::string(tag) + "'");
        const auto& toks = reader_.tokens();
        if (toks.front().text != tag) {
            reader_.fail("expected '" + std::string(tag) + "', found '" +
                             std::string(toks.front().text) + "'",
                         toks.front().column);
        }
        return toks;
    }

    std::size_t size_at(const std::vector<detail::TextReader::Token>& toks, std::size_t i) {
        if (i >= toks.size()) reader_.fail("missing size field");
        return reader_.parse_int<std::size_t>(toks[i]);
    }

    double real_at(const std::vector<detail::TextReader::Token>& toks, std::size_t i) {
        if (i >= toks.size()) reader_.fail("missing value");
        return reader_.parse_double(toks[i], std::chars_format::hex);
    }

    // `tag count v...`; checks count == expected when expected is given.
    std::vector<double> values(std::string_view tag, std::size_t header_fields,
                               std::vector<std::size_t>* dims = nullptr) {
        const auto& toks = expect(tag);
        std::size_t count = 1;
        std::vector<std::size_t> d;
        for (std::size_t f = 1; f <= header_fields; ++f) {
            d.push_back(size_at(toks, f));
            count *= d.back();
        }
        if (toks.size() != 1 + header_fields + count) {
            reader_.fail("'" + std::string(tag) + "' declares " + std::to_string(count) +
                         " values but the line holds " +
                         std::to_string(toks.size() - std::min(toks.size(), 1 + header_fields)));
        }
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = real_at(toks, 1 + header_fields + i);
        if (dims) *dims = d;
        return out;
    }

    detail::TextReader& reader() { return reader_; }

private:
    detail::TextReader reader_;
};

}  // namespace

void save_checkpoint(const KanNetwork& net, std::ostream& out) {
    out << kMagic << ' ' << kVersion << '\n';
    out << "hop_weights " << net.hop_weights.size();
    write_values(out, net.hop_weights.data(), net.hop_weights.size());
    out << "embed_weight " << net.embed.weight.rows() << ' ' << net.embed.weight.cols();
    write_values(out, net.embed.weight.data(), static_cast<std::size_t>(net.embed.weight.size()));
    out << "embed_bias " << net.embed.bias.size();
    write_values(out, net.embed.bias.data(), static_cast<std::size_t>(net.embed.bias.size()));
    out << "layers " << net.layers.size() << '\n';
    for (const auto& layer : net.layers) {
        const auto& b = layer.basis();
        out << "layer " << layer.in_dim() << ' ' << layer.out_dim() << ' ' << b.degree() << ' '
            << b.intervals() << ' ';
        write_hex(out, b.lo());
        out << ' ';
        write_hex(out, b.hi());
        out << '\n';
        const auto& prm = layer.params();
        out << "coeffs " << prm.coeffs.size();
        write_values(out, prm.coeffs.data(), prm.coeffs.size());
        out << "w_base " << prm.w_base.size();
        write_values(out, prm.w_base.data(), prm.w_base.size());
        out << "w_spline " << prm.w_spline.size();
        write_values(out, prm.w_spline.data(), prm.w_spline.size());
    }
    out << "end\n";
    if (!out) throw IoError("failed to write checkpoint");
}

KanNetwork load_checkpoint(std::istream& in) {
    CheckpointReader cr(in);
    auto& reader = cr.reader();
    {
        const auto& toks = cr.expect(kMagic);
        if (toks.size() != 2 || reader.parse_int<int>(toks[1]) != kVersion) {
            reader.fail("unsupported checkpoint version");
        }
    }
    KanNetwork net;
    net.hop_weights = cr.values("hop_weights", 1);

    std::vector<std::size_t> dims;
    const auto weight = cr.values("embed_weight", 2, &dims);
    net.embed.weight.resize(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
    std::copy(weight.begin(), weight.end(), net.embed.weight.data());
    const auto bias = cr.values("embed_bias", 1);
    net.embed.bias = Eigen::Map<const DenseVector>(bias.data(), static_cast<Eigen::Index>(bias.size()));

    const auto& layer_toks = cr.expect("layers");
    const std::size_t layer_count = cr.size_at(layer_toks, 1);
    for (std::size_t l = 0; l < layer_count; ++l) {
        const auto& toks = cr.expect("layer");
        if (toks.size() != 7) reader.fail("layer header needs 6 fields");
        const auto in_dim = cr.size_at(toks, 1);
        const auto out_dim = cr.size_at(toks, 2);
        const auto degree = static_cast<unsigned>(cr.size_at(toks, 3));
        const auto intervals = static_cast<unsigned>(cr.size_at(toks, 4));
        const double lo = cr.real_at(toks, 5);
        const double hi = cr.real_at(toks, 6);
        const std::size_t line = reader.line();
        KanLayer layer = [&] {
            try {
                return KanLayer(in_dim, out_dim, BSplineBasis(degree, intervals, lo, hi));
            } catch (const InvalidConfig& e) {
                throw ParseError(e.what(), line, 1);
            }
        }();
        auto& prm = layer.params();
        auto coeffs = cr.values("coeffs", 1);
        auto w_base = cr.values("w_base", 1);
        auto w_spline = cr.values("w_spline", 1);
        if (coeffs.size() != prm.coeffs.size() || w_base.size() != prm.w_base.size() ||
            w_spline.size() != prm.w_spline.size()) {
            reader.fail("layer parameter counts do not match the layer shape");
        }
        prm.coeffs = std::move(coeffs);
        prm.w_base = std::move(w_base);
        prm.w_spline = std::move(w_spline);
        net.layers.push_back(std::move(layer));
    }
    cr.expect("end");
    return net;
}

}  // namespace hyperkan
