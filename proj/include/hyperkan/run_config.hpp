#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperkan/training.hpp"

namespace hyperkan {

/// Complete description of a CLI run: model/training settings plus the
/// variant and seeds to use.
struct RunConfig {
    TrainConfig train;
    AblationVariant variant = AblationVariant::full;
    std::uint64_t seed = 0;
    unsigned seeds = 10;

    /// Seeds 0 .. seeds-1.
    std::vector<std::uint64_t> seed_list() const;
    void validate() const;
};

/// Sets one key. Keys: k, n_max, m_min, d, layers, hidden, grid_size,
/// spline_degree, grid_lo, grid_hi, optimizer, learning_rate, epochs, seed,
/// seeds, variant. Throws InvalidConfig on an unknown key or bad value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file ('#' starts a comment). Throws ParseError.
void load_config(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Every setting as a JSON object, for echoing into metrics records.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace hyperkan
