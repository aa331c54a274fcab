#include "rrvqa/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rrvqa/errors.hpp"
#include "rrvqa/fusion.hpp"
#include "rrvqa/rng.hpp"

namespace rrvqa {

namespace {

using json = nlohmann::json;

// Sums in ascending value order, so results are exactly invariant to the
// ordering of the training rows (required when subsample = 1).
double canonical_sum(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

struct SplitCandidate {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

struct TreeBuilder {
    const TrainingSet& data;
    const GbtParams& params;
    const std::vector<double>& grad;
    const std::vector<int>& features;
    Tree tree;

    // Returns the node index within tree.nodes.
    int build(std::vector<uint32_t> rows, int depth) {
        const double h_total = static_cast<double>(rows.size());
        std::vector<double> grads(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) grads[i] = grad[rows[i]];
        const double g_total = canonical_sum(grads);

        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        SplitCandidate best;
        if (depth < params.max_depth && rows.size() >= 2)
            best = find_split(rows, g_total, h_total);

        if (best.feature < 0) {
            tree.nodes[node_index].leaf_value = -g_total / (h_total + params.lambda_l2);
            return node_index;
        }

        std::vector<uint32_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (uint32_t r : rows) {
            if (data.features[r][best.feature] < best.threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left = build(std::move(left_rows), depth + 1);
        const int right = build(std::move(right_rows), depth + 1);
        TreeNode& node = tree.nodes[node_index];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.gain = best.gain;
        node.left = left;
        node.right = right;
        return node_index;
    }

    // Exact greedy enumeration over midpoints of consecutive distinct sorted
    // feature values. Iterating features and thresholds in ascending order
    // with a strict > comparison breaks ties toward the lower feature index,
    // then the lower threshold.
    SplitCandidate find_split(const std::vector<uint32_t>& rows, double g_total, double h_total) {
        SplitCandidate best;
        const double parent_score = g_total * g_total / (h_total + params.lambda_l2);

        std::vector<std::pair<double, double>> order(rows.size());  // (value, grad)
        for (int f : features) {
            for (size_t i = 0; i < rows.size(); ++i)
                order[i] = {data.features[rows[i]][f], grad[rows[i]]};
            std::sort(order.begin(), order.end());

            double g_left = 0.0;
            double h_left = 0.0;
            for (size_t i = 0; i + 1 < order.size(); ++i) {
                g_left += order[i].second;
                h_left += 1.0;
                const double lo = order[i].first;
                const double hi = order[i + 1].first;
                if (lo == hi) continue;  // interior of a tied group
                const double h_right = h_total - h_left;
                if (h_left < params.min_child_weight || h_right < params.min_child_weight)
                    continue;
                const double threshold = 0.5 * (lo + hi);
                if (!(threshold > lo && threshold <= hi)) continue;  // adjacent floats
                const double g_right = g_total - g_left;
                const double gain =
                    0.5 * (g_left * g_left / (h_left + params.lambda_l2) +
                           g_right * g_right / (h_right + params.lambda_l2) - parent_score) -
                    params.gamma;
                if (gain > best.gain) best = {f, threshold, gain};
            }
        }
        return best;
    }
};

void check_finite(const TrainingSet& data) {
    for (size_t i = 0; i < data.size(); ++i) {
        for (int f = 0; f < kNumFeatures; ++f)
            if (!std::isfinite(data.features[i][f]))
                throw DataError("training row " + std::to_string(i) + ": feature " +
                                std::to_string(f) + " is not finite");
        if (!std::isfinite(data.labels[i]))
            throw DataError("training row " + std::to_string(i) + ": label is not finite");
    }
}

std::string node_path(size_t tree_index, size_t node_index, const char* field) {
    std::ostringstream os;
    os << "trees[" << tree_index << "].nodes[" << node_index << "]";
    if (field) os << "." << field;
    return os.str();
}

}  // namespace

void GbtParams::validate() const {
    if (n_estimators < 1) throw ConfigError("n_estimators must be >= 1");
    if (max_depth < 0) throw ConfigError("max_depth must be >= 0");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw ConfigError("learning_rate must be in (0, 1]");
    if (!(subsample > 0.0 && subsample <= 1.0)) throw ConfigError("subsample must be in (0, 1]");
    if (!(colsample_bytree > 0.0 && colsample_bytree <= 1.0))
        throw ConfigError("colsample_bytree must be in (0, 1]");
    if (!(lambda_l2 >= 0.0)) throw ConfigError("lambda must be >= 0");
    if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
    if (!(min_child_weight >= 0.0)) throw ConfigError("min_child_weight must be >= 0");
}

double Tree::value_at(const FeatureRow& z) const {
    const TreeNode* node = &nodes[0];
    while (!node->is_leaf())
        node = &nodes[z[node->feature] < node->threshold ? node->left : node->right];
    return node->leaf_value;
}

double GbtModel::predict(const FeatureRow& z) const {
    double sum = 0.0;
    for (const Tree& tree : trees) sum += tree.value_at(z);
    return base_score + learning_rate * sum;
}

std::vector<double> GbtModel::predict(const std::vector<FeatureRow>& rows) const {
    std::vector<double> out(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) out[i] = predict(rows[i]);
    return out;
}

TrainResult train(const TrainingSet& data, const GbtParams& params) {
    params.validate();
    if (data.size() == 0) throw DataError("training set is empty");
    if (data.size() < 2) throw DataError("training needs at least 2 rows");
    if (data.features.size() != data.labels.size())
        throw DataError("feature/label count mismatch");
    check_finite(data);

    const size_t n = data.size();
    TrainResult result;
    GbtModel& model = result.model;
    model.base_score = canonical_sum(data.labels) / static_cast<double>(n);
    model.learning_rate = params.learning_rate;
    model.feature_names.assign(fused_feature_names().begin(), fused_feature_names().end());

    std::vector<double> pred(n, model.base_score);
    std::vector<double> grad(n);

    for (int round = 0; round < params.n_estimators; ++round) {
        Rng rng = Rng::derive(params.seed, static_cast<uint64_t>(round));

        // Row subsample (without replacement), then per-tree feature subsample.
        std::vector<uint32_t> rows(n);
        std::iota(rows.begin(), rows.end(), 0u);
        const size_t take =
            std::clamp<size_t>(static_cast<size_t>(std::llround(params.subsample * n)), 1, n);
        if (take < n) {
            rng.shuffle(rows);
            rows.resize(take);
            std::sort(rows.begin(), rows.end());
        }

        std::vector<int> feats(kNumFeatures);
        std::iota(feats.begin(), feats.end(), 0);
        const int keep = std::clamp(
            static_cast<int>(std::ceil(params.colsample_bytree * kNumFeatures)), 1, kNumFeatures);
        if (keep < kNumFeatures) {
            rng.shuffle(feats);
            feats.resize(keep);
            std::sort(feats.begin(), feats.end());
        }

        for (size_t i = 0; i < n; ++i) grad[i] = pred[i] - data.labels[i];

        TreeBuilder builder{data, params, grad, feats, {}};
        builder.build(std::move(rows), 0);
        model.trees.push_back(std::move(builder.tree));

        double se = 0.0;
        for (size_t i = 0; i < n; ++i) {
            pred[i] += params.learning_rate * model.trees.back().value_at(data.features[i]);
            const double d = pred[i] - data.labels[i];
            se += d * d;
        }
        result.round_rmse.push_back(std::sqrt(se / static_cast<double>(n)));
    }
    return result;
}

std::array<double, kNumFeatures> gain_importance(const GbtModel& model) {
    std::array<double, kNumFeatures> totals{};
    for (const Tree& tree : model.trees)
        for (const TreeNode& node : tree.nodes)
            if (!node.is_leaf()) totals[node.feature] += node.gain;
    double sum = 0.0;
    for (double v : totals) sum += v;
    if (sum > 0.0)
        for (double& v : totals) v /= sum;
    return totals;
}

std::array<double, kNumFeatures> permutation_importance(const GbtModel& model,
                                                        const TrainingSet& data, uint64_t seed) {
    const auto base_pred = model.predict(data.features);
    double base_se = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        const double d = base_pred[i] - data.labels[i];
        base_se += d * d;
    }
    const double base_rmse = std::sqrt(base_se / static_cast<double>(data.size()));

    std::array<double, kNumFeatures> importance{};
    for (int f = 0; f < kNumFeatures; ++f) {
        Rng rng = Rng::derive(seed, static_cast<uint64_t>(f));
        std::vector<double> column(data.size());
        for (size_t i = 0; i < data.size(); ++i) column[i] = data.features[i][f];
        rng.shuffle(column);

        double se = 0.0;
        FeatureRow row;
        for (size_t i = 0; i < data.size(); ++i) {
            row = data.features[i];
            row[f] = column[i];
            const double d = model.predict(row) - data.labels[i];
            se += d * d;
        }
        importance[f] = std::sqrt(se / static_cast<double>(data.size())) - base_rmse;
    }
    return importance;
}

std::string model_to_json(const GbtModel& model) {
    json root;
    root["format_version"] = 1;
    root["base_score"] = model.base_score;
    root["learning_rate"] = model.learning_rate;
    root["feature_names"] = model.feature_names;
    json trees = json::array();
    for (const Tree& tree : model.trees) {
        json nodes = json::array();
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf()) {
                nodes.push_back({{"leaf", node.leaf_value}});
            } else {
                nodes.push_back({{"feature", node.feature},
                                 {"threshold", node.threshold},
                                 {"left", node.left},
                                 {"right", node.right},
                                 {"gain", node.gain}});
            }
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    root["trees"] = std::move(trees);
    return root.dump(2) + "\n";
}

namespace {

Tree tree_from_json(const json& jtree, size_t tree_index) {
    if (!jtree.is_object() || !jtree.contains("nodes") || !jtree["nodes"].is_array())
        throw ParseError("trees[" + std::to_string(tree_index) + "]: expected {\"nodes\": [...]}");
    const json& jnodes = jtree["nodes"];
    if (jnodes.empty())
        throw ParseError("trees[" + std::to_string(tree_index) + "].nodes: tree has no nodes");

    Tree tree;
    const int count = static_cast<int>(jnodes.size());
    for (size_t i = 0; i < jnodes.size(); ++i) {
        const json& jn = jnodes[i];
        if (!jn.is_object()) throw ParseError(node_path(tree_index, i, nullptr) + ": not an object");
        TreeNode node;
        if (jn.contains("leaf")) {
            if (!jn["leaf"].is_number())
                throw ParseError(node_path(tree_index, i, "leaf") + ": not a number");
            node.leaf_value = jn["leaf"].get<double>();
            if (!std::isfinite(node.leaf_value))
                throw ParseError(node_path(tree_index, i, "leaf") + ": not finite");
        } else {
            for (const char* field : {"feature", "threshold", "left", "right"})
                if (!jn.contains(field))
                    throw ParseError(node_path(tree_index, i, field) + ": missing");
            node.feature = jn["feature"].get<int>();
            if (node.feature < 0 || node.feature >= kNumFeatures)
                throw ParseError(node_path(tree_index, i, "feature") + ": index " +
                                 std::to_string(node.feature) + " outside [0, " +
                                 std::to_string(kNumFeatures) + ")");
            node.threshold = jn["threshold"].get<double>();
            node.left = jn["left"].get<int>();
            node.right = jn["right"].get<int>();
            node.gain = jn.value("gain", 0.0);
            for (const char* field : {"left", "right"}) {
                const int child = jn[field].get<int>();
                if (child < 0 || child >= count)
                    throw ParseError(node_path(tree_index, i, field) + ": child index " +
                                     std::to_string(child) + " outside [0, " +
                                     std::to_string(count) + ")");
                if (child == static_cast<int>(i))
                    throw ParseError(node_path(tree_index, i, field) + ": node references itself");
            }
        }
        tree.nodes.push_back(node);
    }

    // Structure check: exactly one root (node 0), every node reached once.
    std::vector<int> seen(tree.nodes.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const TreeNode& node = tree.nodes[idx];
        if (node.is_leaf()) continue;
        for (int child : {node.left, node.right}) {
            if (seen[child]++)
                throw ParseError(node_path(tree_index, static_cast<size_t>(child), nullptr) +
                                 ": reached through more than one parent (not a tree)");
            stack.push_back(child);
        }
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ParseError(node_path(tree_index, i, nullptr) + ": unreachable from the root");
    return tree;
}

}  // namespace

namespace {

GbtModel model_from_json_impl(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("model JSON: top level is not an object");
    if (!root.contains("format_version") || !root["format_version"].is_number_integer() ||
        root["format_version"].get<int>() != 1)
        throw ParseError("format_version: missing or unsupported (expected 1)");
    for (const char* field : {"base_score", "learning_rate"})
        if (!root.contains(field) || !root[field].is_number())
            throw ParseError(std::string(field) + ": missing or not a number");
    if (!root.contains("feature_names") || !root["feature_names"].is_array() ||
        root["feature_names"].size() != kNumFeatures)
        throw ParseError("feature_names: expected an array of " + std::to_string(kNumFeatures) +
                         " names");
    if (!root.contains("trees") || !root["trees"].is_array())
        throw ParseError("trees: missing or not an array");

    GbtModel model;
    model.base_score = root["base_score"].get<double>();
    model.learning_rate = root["learning_rate"].get<double>();
    for (const json& name : root["feature_names"]) {
        if (!name.is_string()) throw ParseError("feature_names: entries must be strings");
        model.feature_names.push_back(name.get<std::string>());
    }
    for (size_t t = 0; t < root["trees"].size(); ++t)
        model.trees.push_back(tree_from_json(root["trees"][t], t));
    return model;
}

}  // namespace

GbtModel model_from_json(const std::string& text) {
    try {
        return model_from_json_impl(text);
    } catch (const json::exception& e) {
        // Wrong JSON types slip past the explicit checks as library errors.
        throw ParseError(std::string("model JSON: ") + e.what());
    }
}

void save_model(const GbtModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << model_to_json(model);
    if (!out) throw IoError(path + ": write failed");
}

GbtModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return model_from_json(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace rrvqa
