#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrvqa/csv.hpp"
#include "rrvqa/parallel.hpp"
#include "rrvqa/pipeline.hpp"
#include "rrvqa/synth.hpp"

namespace {

using namespace rrvqa;

// Tracks files a command intends to write; anything not committed is removed
// when the command fails, so a nonzero exit never leaves partial outputs.
class OutputGuard {
public:
    std::string track(const std::string& path) {
        if (!path.empty()) paths_.push_back(path);
        return path;
    }
    void commit() { committed_ = true; }
    ~OutputGuard() {
        if (committed_) return;
        std::error_code ec;
        for (const std::string& p : paths_) std::filesystem::remove(p, ec);
    }

private:
    std::vector<std::string> paths_;
    bool committed_ = false;
};

std::optional<RawParams> parse_raw_flag(const std::string& raw) {
    if (raw.empty()) return std::nullopt;
    return RawParams::parse(raw);
}

void require_readable(const std::string& path) {
    if (!std::filesystem::exists(path)) throw IoError(path + ": no such file");
}

// Re-raises toolkit errors with the pipeline stage prepended, so failures
// read "error: <stage>: <file...>: <cause>".
template <typename Fn>
auto with_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(stage + ": " + e.what());
    }
}

struct FeaturesArgs {
    std::string ref, test, output, raw, dump_dir;
    int threads = 0;
    bool diagnostics = false;
    double mos = std::numeric_limits<double>::quiet_NaN();
};

int run_features(const FeaturesArgs& args) {
    require_readable(args.ref);
    require_readable(args.test);
    OutputGuard guard;
    guard.track(args.output);

    const auto raw = parse_raw_flag(args.raw);
    VideoSequence ref = with_stage("reading reference", [&] {
        return read_video(args.ref, guess_format(args.ref), raw);
    });
    VideoSequence test = with_stage("reading test", [&] {
        return read_video(args.test, guess_format(args.test), raw);
    });
    const CompareResult result = with_stage("feature extraction", [&] {
        return compare_sequences(std::move(ref), std::move(test), args.threads);
    });
    if (result.truncated)
        std::cerr << "warning: frame counts differ; both sequences truncated to "
                  << result.frames_used << " frames\n";

    const std::vector<FusedFeature> rows{result.fused};
    std::vector<double> kl{result.kl};
    std::vector<double> mos{args.mos};
    const std::vector<double>* mos_ptr = std::isnan(args.mos) ? nullptr : &mos;
    const std::vector<double>* kl_ptr = args.diagnostics ? &kl : nullptr;
    if (args.output.empty())
        write_fused_csv(std::cout, rows, mos_ptr, kl_ptr);
    else
        write_fused_csv(args.output, rows, mos_ptr, kl_ptr);

    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        write_frame_features_csv(guard.track(args.dump_dir + "/ref_frames.csv"),
                                 result.ref_frames);
        write_pooled_features_csv(guard.track(args.dump_dir + "/ref_pooled.csv"),
                                  result.ref_pooled);
        write_frame_features_csv(guard.track(args.dump_dir + "/test_frames.csv"),
                                 result.test_frames);
        write_pooled_features_csv(guard.track(args.dump_dir + "/test_pooled.csv"),
                                  result.test_pooled);
    }
    guard.commit();
    return 0;
}

struct SsimArgs {
    std::string ref, test, output, raw;
    int threads = 0;
};

int run_ssim(const SsimArgs& args) {
    require_readable(args.ref);
    require_readable(args.test);
    OutputGuard guard;
    guard.track(args.output);

    const auto raw = parse_raw_flag(args.raw);
    VideoSequence ref = with_stage("reading reference", [&] {
        return read_video(args.ref, guess_format(args.ref), raw);
    });
    VideoSequence test = with_stage("reading test", [&] {
        return read_video(args.test, guess_format(args.test), raw);
    });
    if (align_pair(ref, test))
        std::cerr << "warning: frame counts differ; both sequences truncated to "
                  << ref.frame_count() << " frames\n";
    const SsimResult result = ssim_sequence(ref, test, args.threads);

    if (!args.output.empty()) write_ssim_csv(args.output, result);
    std::cout << format_g9(result.mu_ssim) << "\n";
    guard.commit();
    return 0;
}

struct TrainArgs {
    std::string input, model;
    GbtParams params;
};

int run_train(const TrainArgs& args) {
    require_readable(args.input);
    OutputGuard guard;
    guard.track(args.model);

    const TrainingSet data = training_set_from_table(read_csv(args.input));
    const TrainResult result = train(data, args.params);
    save_model(result.model, args.model);
    std::cout << format_g9(result.round_rmse.back()) << "\n";
    guard.commit();
    return 0;
}

struct PredictArgs {
    std::string input, model, output;
};

int run_predict(const PredictArgs& args) {
    require_readable(args.input);
    require_readable(args.model);
    OutputGuard guard;
    guard.track(args.output);

    CsvTable table = read_csv(args.input);
    validate_fused_columns(table, /*require_mos=*/false);
    const GbtModel model = load_model(args.model);
    const auto rows = feature_rows_from_table(table);

    table.columns.push_back("pred");
    for (size_t r = 0; r < table.rows.size(); ++r)
        table.rows[r].push_back(model.predict(rows[r]));
    write_csv(args.output, table);
    guard.commit();
    return 0;
}

struct EvaluateArgs {
    std::string input, output;
};

int run_evaluate(const EvaluateArgs& args) {
    require_readable(args.input);
    OutputGuard guard;
    guard.track(args.output);

    const CsvTable table = read_csv(args.input);
    validate_fused_columns(table, /*require_mos=*/true, /*allow_pred=*/true);
    const int pred_col = table.column_index("pred");
    if (pred_col < 0) throw ParseError(args.input + ": missing column 'pred'");
    const int mos_col = table.column_index("mos");

    std::vector<double> pred(table.rows.size()), truth(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) {
        pred[r] = table.rows[r][pred_col];
        truth[r] = table.rows[r][mos_col];
    }
    const std::string report = metrics_csv(evaluate_metrics(pred, truth));
    std::cout << report;
    if (!args.output.empty()) {
        std::ofstream out(args.output, std::ios::binary);
        if (!out) throw IoError(args.output + ": cannot open file for writing");
        out << report;
    }
    guard.commit();
    return 0;
}

struct TuneArgs {
    std::string input, output, best;
    int trials = 50;
    int folds = 5;
    uint64_t seed = 0;
};

int run_tune(const TuneArgs& args) {
    require_readable(args.input);
    OutputGuard guard;
    guard.track(args.output);
    guard.track(args.best);

    const TrainingSet data = training_set_from_table(read_csv(args.input));
    const SearchResult result = random_search(data, SearchSpace{}, args.trials, args.folds,
                                              args.seed);
    if (!args.output.empty()) write_trials_csv(args.output, result.history);

    double best_plcc = 0.0;
    for (const TrialRecord& t : result.history) best_plcc = std::max(best_plcc, t.mean_plcc);
    nlohmann::json best{{"n_estimators", result.best.n_estimators},
                        {"max_depth", result.best.max_depth},
                        {"learning_rate", result.best.learning_rate},
                        {"subsample", result.best.subsample},
                        {"colsample_bytree", result.best.colsample_bytree},
                        {"lambda", result.best.lambda_l2},
                        {"gamma", result.best.gamma},
                        {"min_child_weight", result.best.min_child_weight},
                        {"seed", result.best.seed},
                        {"mean_plcc", best_plcc}};
    const std::string text = best.dump(2) + "\n";
    std::cout << text;
    if (!args.best.empty()) {
        std::ofstream out(args.best, std::ios::binary);
        if (!out) throw IoError(args.best + ": cannot open file for writing");
        out << text;
    }
    guard.commit();
    return 0;
}

struct ImportanceArgs {
    std::string model, output;
};

int run_importance(const ImportanceArgs& args) {
    require_readable(args.model);
    OutputGuard guard;
    guard.track(args.output);

    const GbtModel model = load_model(args.model);
    const auto share = gain_importance(model);
    if (args.output.empty()) {
        std::vector<size_t> order(share.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return share[a] > share[b]; });
        std::cout << "feature,gain_share\n";
        for (size_t idx : order)
            std::cout << model.feature_names[idx] << "," << format_g9(share[idx]) << "\n";
    } else {
        write_importance_csv(args.output, model.feature_names, share);
    }
    guard.commit();
    return 0;
}

struct SynthArgs {
    std::string output;
    SynthConfig cfg;
};

int run_synth(const SynthArgs& args) {
    const auto entries = generate_corpus(args.output, args.cfg);
    std::cout << "wrote " << args.cfg.contents << " references, " << entries.size()
              << " renditions and manifest.csv to " << args.output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced-reference video quality toolkit: DCT-energy complexity "
                 "features + SSIM fused into a gradient-boosted-tree quality model"};
    app.require_subcommand(1);

    FeaturesArgs features_args;
    auto* features = app.add_subcommand(
        "features", "Extract the fused 8-dimensional feature row for a video pair");
    features->add_option("--ref", features_args.ref, "Reference video (Y4M or raw YUV)")
        ->required();
    features->add_option("--test", features_args.test, "Test video")->required();
    features->add_option("--output", features_args.output, "Output CSV (stdout if omitted)");
    features->add_option("--raw", features_args.raw, "Raw input geometry WxH:bitdepth");
    features->add_option("--threads", features_args.threads, "Worker threads (0 = all cores)");
    features->add_flag("--diagnostics", features_args.diagnostics,
                       "Append the kl_proxy diagnostic column");
    features->add_option("--mos", features_args.mos, "Append a mos label column");
    features->add_option("--dump-features", features_args.dump_dir,
                         "Directory for per-frame and pooled feature CSVs");

    SsimArgs ssim_args;
    auto* ssim_cmd = app.add_subcommand("ssim", "Mean SSIM between a video pair");
    ssim_cmd->add_option("--ref", ssim_args.ref, "Reference video")->required();
    ssim_cmd->add_option("--test", ssim_args.test, "Test video")->required();
    ssim_cmd->add_option("--output", ssim_args.output, "Per-frame SSIM CSV");
    ssim_cmd->add_option("--raw", ssim_args.raw, "Raw input geometry WxH:bitdepth");
    ssim_cmd->add_option("--threads", ssim_args.threads, "Worker threads (0 = all cores)");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Train the quality model on a fused CSV");
    train_cmd->add_option("--input", train_args.input, "Fused dataset CSV with mos column")
        ->required();
    train_cmd->add_option("--model", train_args.model, "Output model JSON")->required();
    train_cmd->add_option("--n-estimators", train_args.params.n_estimators, "Boosting rounds");
    train_cmd->add_option("--max-depth", train_args.params.max_depth, "Tree depth limit");
    train_cmd->add_option("--learning-rate", train_args.params.learning_rate, "Shrinkage");
    train_cmd->add_option("--subsample", train_args.params.subsample, "Row subsample fraction");
    train_cmd->add_option("--colsample", train_args.params.colsample_bytree,
                          "Per-tree feature subsample fraction");
    train_cmd->add_option("--lambda", train_args.params.lambda_l2, "L2 leaf regularizer");
    train_cmd->add_option("--gamma", train_args.params.gamma, "Split penalty");
    train_cmd->add_option("--min-child-weight", train_args.params.min_child_weight,
                          "Minimum hessian per child");
    train_cmd->add_option("--seed", train_args.params.seed, "Subsampling seed");

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "Append model predictions to a fused CSV");
    predict_cmd->add_option("--input", predict_args.input, "Fused dataset CSV")->required();
    predict_cmd->add_option("--model", predict_args.model, "Model JSON")->required();
    predict_cmd->add_option("--output", predict_args.output, "Output CSV with pred column")
        ->required();

    EvaluateArgs evaluate_args;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "SROCC/PLCC/KROCC/RMSE of predictions vs mos");
    evaluate_cmd->add_option("--input", evaluate_args.input, "CSV with mos and pred columns")
        ->required();
    evaluate_cmd->add_option("--output", evaluate_args.output, "Also write the report here");

    TuneArgs tune_args;
    auto* tune_cmd =
        app.add_subcommand("tune", "Seeded random hyperparameter search with k-fold CV");
    tune_cmd->add_option("--input", tune_args.input, "Fused dataset CSV with mos column")
        ->required();
    tune_cmd->add_option("--trials", tune_args.trials, "Number of sampled configurations");
    tune_cmd->add_option("--folds", tune_args.folds, "Cross-validation folds");
    tune_cmd->add_option("--seed", tune_args.seed, "Search seed");
    tune_cmd->add_option("--output", tune_args.output, "Trial history CSV");
    tune_cmd->add_option("--best", tune_args.best, "Best configuration JSON");

    ImportanceArgs importance_args;
    auto* importance_cmd =
        app.add_subcommand("importance", "Per-feature gain share of a trained model");
    importance_cmd->add_option("--model", importance_args.model, "Model JSON")->required();
    importance_cmd->add_option("--output", importance_args.output,
                               "Output CSV (stdout if omitted)");

    SynthArgs synth_args;
    auto* synth_cmd =
        app.add_subcommand("synth", "Generate a seeded synthetic corpus with pseudo-MOS labels");
    synth_cmd->add_option("--output", synth_args.output, "Corpus directory")->required();
    synth_cmd->add_option("--contents", synth_args.cfg.contents, "Distinct source contents");
    synth_cmd->add_option("--levels", synth_args.cfg.levels, "Degradation levels per content");
    synth_cmd->add_option("--frames", synth_args.cfg.frames, "Frames per clip");
    synth_cmd->add_option("--width", synth_args.cfg.width, "Clip width");
    synth_cmd->add_option("--height", synth_args.cfg.height, "Clip height");
    synth_cmd->add_option("--seed", synth_args.cfg.seed, "Corpus seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (features->parsed()) return run_features(features_args);
        if (ssim_cmd->parsed()) return run_ssim(ssim_args);
        if (train_cmd->parsed()) return run_train(train_args);
        if (predict_cmd->parsed()) return run_predict(predict_args);
        if (evaluate_cmd->parsed()) return run_evaluate(evaluate_args);
        if (tune_cmd->parsed()) return run_tune(tune_args);
        if (importance_cmd->parsed()) return run_importance(importance_args);
        if (synth_cmd->parsed()) return run_synth(synth_args);
    } catch (const rrvqa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
