#include "rrvqa/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rrvqa/errors.hpp"

namespace rrvqa {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw IoError(path + ": cannot open file for writing");
    return out;
}

}  // namespace

std::string format_g9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

int CsvTable::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");

    CsvTable table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (table.columns.empty()) {
            table.columns = split_line(line);
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != table.columns.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(table.columns.size()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (size_t c = 0; c < cells.size(); ++c) {
            char* end = nullptr;
            row[c] = std::strtod(cells[c].c_str(), &end);
            if (end == cells[c].c_str() || *end != '\0')
                throw ParseError(path + ":" + std::to_string(line_no) + ": column '" +
                                 table.columns[c] + "': not a number: '" + cells[c] + "'");
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw ParseError(path + ": empty CSV");
    return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
    auto out = open_out(path);
    for (size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_g9(row[c]);
        out << "\n";
    }
    if (!out) throw IoError(path + ": write failed");
}

void validate_fused_columns(const CsvTable& table, bool require_mos, bool allow_pred) {
    const auto& names = fused_feature_names();
    for (size_t i = 0; i < names.size(); ++i) {
        if (i >= table.columns.size())
            throw ParseError(std::string("missing column '") + names[i] + "'");
        if (table.columns[i] != names[i])
            throw ParseError(std::string("expected column '") + names[i] + "', got '" +
                             table.columns[i] + "'");
    }
    bool seen_mos = false;
    for (size_t i = names.size(); i < table.columns.size(); ++i) {
        const std::string& col = table.columns[i];
        if (col == "mos" && !seen_mos)
            seen_mos = true;
        else if (!(allow_pred && col == "pred"))
            throw ParseError("unexpected column '" + col + "'");
    }
    if (require_mos && !seen_mos) throw ParseError("missing column 'mos'");
}

std::vector<FeatureRow> feature_rows_from_table(const CsvTable& table) {
    std::vector<FeatureRow> rows(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r)
        for (int f = 0; f < kNumFeatures; ++f) rows[r][f] = table.rows[r][f];
    return rows;
}

TrainingSet training_set_from_table(const CsvTable& table) {
    validate_fused_columns(table, /*require_mos=*/true);
    TrainingSet data;
    data.features = feature_rows_from_table(table);
    const int mos = table.column_index("mos");
    data.labels.resize(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) data.labels[r] = table.rows[r][mos];
    return data;
}

void write_frame_features_csv(const std::string& path, const std::vector<FrameFeatures>& rows) {
    auto out = open_out(path);
    out << "frame,E_Y,h,L_Y,E_U,L_U,E_V,L_V\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        out << i;
        for (double v : rows[i].to_array()) out << "," << format_g9(v);
        out << "\n";
    }
    if (!out) throw IoError(path + ": write failed");
}

void write_pooled_features_csv(const std::string& path, const PooledFeatures& pooled) {
    auto out = open_out(path);
    out << "E_Y,h,L_Y,E_U,L_U,E_V,L_V\n";
    for (size_t c = 0; c < pooled.mean.size(); ++c)
        out << (c ? "," : "") << format_g9(pooled.mean[c]);
    out << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_ssim_csv(const std::string& path, const SsimResult& result) {
    auto out = open_out(path);
    out << "frame,ssim\n";
    for (size_t i = 0; i < result.per_frame.size(); ++i)
        out << i << "," << format_g9(result.per_frame[i]) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_fused_csv(std::ostream& out, const std::vector<FusedFeature>& rows,
                     const std::vector<double>* mos, const std::vector<double>* kl) {
    const auto& names = fused_feature_names();
    for (size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    if (mos) out << ",mos";
    if (kl) out << ",kl_proxy";
    out << "\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto z = rows[r].flatten();
        for (size_t c = 0; c < z.size(); ++c) out << (c ? "," : "") << format_g9(z[c]);
        if (mos) out << "," << format_g9((*mos)[r]);
        if (kl) out << "," << format_g9((*kl)[r]);
        out << "\n";
    }
}

void write_fused_csv(const std::string& path, const std::vector<FusedFeature>& rows,
                     const std::vector<double>* mos, const std::vector<double>* kl) {
    auto out = open_out(path);
    write_fused_csv(out, rows, mos, kl);
    if (!out) throw IoError(path + ": write failed");
}

void write_importance_csv(const std::string& path, const std::vector<std::string>& feature_names,
                          const std::array<double, kNumFeatures>& gain_share) {
    std::vector<size_t> order(gain_share.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return gain_share[a] > gain_share[b]; });
    auto out = open_out(path);
    out << "feature,gain_share\n";
    for (size_t idx : order)
        out << feature_names[idx] << "," << format_g9(gain_share[idx]) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& history) {
    auto out = open_out(path);
    out << "trial,n_estimators,max_depth,learning_rate,subsample,colsample_bytree,mean_plcc\n";
    for (size_t t = 0; t < history.size(); ++t) {
        const GbtParams& p = history[t].params;
        out << t << "," << p.n_estimators << "," << p.max_depth << ","
            << format_g9(p.learning_rate) << "," << format_g9(p.subsample) << ","
            << format_g9(p.colsample_bytree) << "," << format_g9(history[t].mean_plcc) << "\n";
    }
    if (!out) throw IoError(path + ": write failed");
}

std::string metrics_csv(const MetricsReport& report) {
    std::ostringstream out;
    out << "srocc,plcc,krocc,rmse,n\n"
        << format_g9(report.srocc) << "," << format_g9(report.plcc) << ","
        << format_g9(report.krocc) << "," << format_g9(report.rmse) << "," << report.n << "\n";
    return out.str();
}

}  // namespace rrvqa
