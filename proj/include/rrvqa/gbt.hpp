#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rrvqa/errors.hpp"

namespace rrvqa {

constexpr int kNumFeatures = 8;

using FeatureRow = std::array<double, kNumFeatures>;

// Labeled fused-feature rows.
struct TrainingSet {
    std::vector<FeatureRow> features;
    std::vector<double> labels;

    size_t size() const { return labels.size(); }
};

// Defaults are the tuned configuration shipped with the toolkit; lambda_l2,
// gamma and min_child_weight use the conventional defaults of the method.
struct GbtParams {
    int n_estimators = 95;
    int max_depth = 8;
    double learning_rate = 0.072;
    double subsample = 0.999;
    double colsample_bytree = 0.852;
    double lambda_l2 = 1.0;        // L2 leaf regularizer
    double gamma = 0.0;            // split penalty
    double min_child_weight = 1.0;
    uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// feature < 0 marks a leaf. `gain` is the split gain recorded at training
// time; it feeds gain_importance and is carried in the model file.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double leaf_value = 0.0;
    double gain = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    // Routes z down the tree: left iff z[feature] < threshold.
    double value_at(const FeatureRow& z) const;
};

// Additive ensemble: prediction = base_score + learning_rate * sum of leaf
// values along each tree's routing path. Immutable once trained; safe for
// concurrent prediction.
struct GbtModel {
    double base_score = 0.0;
    double learning_rate = 0.0;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;

    double predict(const FeatureRow& z) const;
    std::vector<double> predict(const std::vector<FeatureRow>& rows) const;
};

struct TrainResult {
    GbtModel model;
    std::vector<double> round_rmse;  // training RMSE after each boosting round
};

// Squared-error gradient boosting with exact greedy splits:
//   base_score   = mean(labels)
//   gradients    g_i = pred_i - y_i, hessian 1
//   leaf value   = -G / (H + lambda)
//   split gain   = 0.5*(GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)) - gamma,
// accepting only positive-gain splits over midpoints of consecutive distinct
// sorted feature values. Row and per-tree feature subsampling draw from an
// RNG derived from (params.seed, round). Deterministic: identical data and
// params give a byte-identical serialized model.
TrainResult train(const TrainingSet& data, const GbtParams& params);

// Total split gain per feature across all trees, normalized to sum to 1.
// An all-leaf model reports zeros.
std::array<double, kNumFeatures> gain_importance(const GbtModel& model);

// RMSE increase when one feature column is shuffled (seeded), per feature.
// Complementary diagnostic to gain_importance.
std::array<double, kNumFeatures> permutation_importance(const GbtModel& model,
                                                        const TrainingSet& data,
                                                        uint64_t seed);

// JSON round trip. Serialization keeps full double precision, so a loaded
// model predicts bit-identically. load_model validates the schema and reports
// the JSON path of the offending node.
void save_model(const GbtModel& model, const std::string& path);
GbtModel load_model(const std::string& path);

std::string model_to_json(const GbtModel& model);
GbtModel model_from_json(const std::string& text);

}  // namespace rrvqa
