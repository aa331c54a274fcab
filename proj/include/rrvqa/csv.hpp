#pragma once

#include <string>
#include <vector>

#include "rrvqa/fusion.hpp"
#include "rrvqa/gbt.hpp"
#include "rrvqa/metrics.hpp"
#include "rrvqa/ssim.hpp"
#include "rrvqa/tuning.hpp"
#include "rrvqa/vca.hpp"

namespace rrvqa {

// All CSV output: LF line endings, '.' decimal separator, 9 significant
// digits for floating point.
std::string format_g9(double value);

// Minimal numeric CSV table (header + double cells). No quoting; the toolkit
// formats never need it.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

// Fused-dataset schema: r_E,r_h,r_L,r_EU,r_LU,r_EV,r_LV,mu_ssim[,mos].
// Throws ParseError naming the missing or unexpected column. `allow_pred`
// additionally accepts a trailing `pred` column (predict output).
void validate_fused_columns(const CsvTable& table, bool require_mos, bool allow_pred = false);

std::vector<FeatureRow> feature_rows_from_table(const CsvTable& table);
TrainingSet training_set_from_table(const CsvTable& table);  // requires mos

// Writers for the pinned file formats.
void write_frame_features_csv(const std::string& path, const std::vector<FrameFeatures>& rows);
void write_pooled_features_csv(const std::string& path, const PooledFeatures& pooled);
void write_ssim_csv(const std::string& path, const SsimResult& result);
void write_fused_csv(std::ostream& out, const std::vector<FusedFeature>& rows,
                     const std::vector<double>* mos = nullptr,
                     const std::vector<double>* kl = nullptr);
void write_fused_csv(const std::string& path, const std::vector<FusedFeature>& rows,
                     const std::vector<double>* mos = nullptr,
                     const std::vector<double>* kl = nullptr);
void write_importance_csv(const std::string& path,
                          const std::vector<std::string>& feature_names,
                          const std::array<double, kNumFeatures>& gain_share);
void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& history);
std::string metrics_csv(const MetricsReport& report);  // header + one row

}  // namespace rrvqa
