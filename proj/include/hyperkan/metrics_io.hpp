#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperkan/run_config.hpp"

namespace hyperkan {

/// {"record":"run", variant, seed, best_epoch, best_val_accuracy, test_accuracy,
///  final_train_loss, wall_seconds, config}
nlohmann::json run_record(const RunMetrics& m, const RunConfig& cfg);

/// {"record":"summary", variant, runs, mean_accuracy, std_accuracy, config}
nlohmann::json summary_record(AblationVariant variant, const MeanStd& acc, std::size_t runs,
                              const RunConfig& cfg);

/// One compact JSON object per line.
void write_records(const std::vector<nlohmann::json>& records, std::ostream& out);

/// Appends records to `path`, creating it if needed. Throws IoError naming the path.
void write_metrics(const std::vector<nlohmann::json>& records, const std::string& path);

/// "97.50% ± 1.20" (accuracy in percent, std in percentage points).
std::string format_mean_std(const MeanStd& acc);

}  // namespace hyperkan
