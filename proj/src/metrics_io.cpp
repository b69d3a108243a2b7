#include "hyperkan/metrics_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace hyperkan {

nlohmann::json run_record(const RunMetrics& m, const RunConfig& cfg) {
    return nlohmann::json{
        {"record", "run"},
        {"variant", std::string(to_string(m.variant))},
        {"seed", m.seed},
        {"best_epoch", m.best_epoch},
        {"best_val_accuracy", m.best_val_accuracy},
        {"test_accuracy", m.test_accuracy},
        {"final_train_loss", m.train_loss.empty() ? 0.0 : m.train_loss.back()},
        {"wall_seconds", m.wall_seconds},
        {"config", to_json(cfg)},
    };
}

nlohmann::json summary_record(AblationVariant variant, const MeanStd& acc, std::size_t runs,
                              const RunConfig& cfg) {
    return nlohmann::json{
        {"record", "summary"},
        {"variant", std::string(to_string(variant))},
        {"runs", runs},
        {"mean_accuracy", acc.mean},
        {"std_accuracy", acc.std},
        {"config", to_json(cfg)},
    };
}

void write_records(const std::vector<nlohmann::json>& records, std::ostream& out) {
    for (const auto& r : records) out << r.dump() << '\n';
}

void write_metrics(const std::vector<nlohmann::json>& records, const std::string& path) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoError("cannot open metrics file '" + path + "' for appending");
    write_records(records, out);
    out.flush();
    if (!out) throw IoError("failed while writing metrics file '" + path + "'");
}

std::string format_mean_std(const MeanStd& acc) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f%% \xC2\xB1 %.2f", acc.mean * 100.0, acc.std * 100.0);
    return buf;
}

}  // namespace hyperkan
