#include "hyperkan/run_config.hpp"

#include <charconv>
#include <fstream>
#include <string>

namespace hyperkan {

std::vector<std::uint64_t> RunConfig::seed_list() const {
    std::vector<std::uint64_t> out(seeds);
    for (unsigned i = 0; i < seeds; ++i) out[i] = i;
    return out;
}

void RunConfig::validate() const {
    train.validate();
    if (seeds < 1) throw InvalidConfig("seeds must be at least 1");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || value.empty()) {
        throw InvalidConfig("invalid value '" + std::string(value) + "' for '" + std::string(key) +
                            "'");
    }
    return out;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    auto& t = cfg.train;
    if (key == "k") t.k = parse_number<unsigned>(key, value);
    else if (key == "n_max") t.n_max = parse_number<Index>(key, value);
    else if (key == "m_min") t.m_min = parse_number<Index>(key, value);
    else if (key == "d") t.embed_dim = parse_number<Index>(key, value);
    else if (key == "layers") t.layers = parse_number<unsigned>(key, value);
    else if (key == "hidden") t.hidden = parse_number<Index>(key, value);
    else if (key == "grid_size") t.grid_size = parse_number<unsigned>(key, value);
    else if (key == "spline_degree") t.spline_degree = parse_number<unsigned>(key, value);
    else if (key == "grid_lo") t.grid_lo = parse_number<double>(key, value);
    else if (key == "grid_hi") t.grid_hi = parse_number<double>(key, value);
    else if (key == "optimizer") t.optimizer = parse_optimizer(value);
    else if (key == "learning_rate") t.learning_rate = parse_number<double>(key, value);
    else if (key == "epochs") t.epochs = parse_number<unsigned>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "seeds") cfg.seeds = parse_number<unsigned>(key, value);
    else if (key == "variant") cfg.variant = parse_variant(value);
    else throw InvalidConfig("unknown configuration key '" + std::string(key) + "'");
}

void load_config(RunConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no, 1);
        }
        try {
            apply_setting(cfg, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
        } catch (const InvalidConfig& e) {
            throw ParseError(e.what(), line_no, eq + 2);
        }
    }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    load_config(cfg, in);
}

nlohmann::json to_json(const RunConfig& cfg) {
    const auto& t = cfg.train;
    return nlohmann::json{
        {"k", t.k},
        {"n_max", t.n_max},
        {"m_min", t.m_min},
        {"d", t.embed_dim},
        {"layers", t.layers},
        {"hidden", t.hidden},
        {"grid_size", t.grid_size},
        {"spline_degree", t.spline_degree},
        {"grid_lo", t.grid_lo},
        {"grid_hi", t.grid_hi},
        {"optimizer", std::string(to_string(t.optimizer))},
        {"learning_rate", t.learning_rate},
        {"epochs", t.epochs},
        {"variant", std::string(to_string(cfg.variant))},
        {"seeds", cfg.seeds},
    };
}

}  // namespace hyperkan
