#include "rrvqa/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rrvqa/errors.hpp"
#include "rrvqa/metrics.hpp"

namespace rrvqa {

std::vector<std::vector<size_t>> k_fold_split(size_t n_rows, int k, uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be >= 2, got " + std::to_string(k));
    if (static_cast<size_t>(k) > n_rows)
        throw ConfigError("fold count " + std::to_string(k) + " exceeds row count " +
                          std::to_string(n_rows));

    std::vector<size_t> order(n_rows);
    std::iota(order.begin(), order.end(), 0u);
    Rng rng = Rng::derive(seed, 0xf01d);
    rng.shuffle(order);

    const size_t base = n_rows / static_cast<size_t>(k);
    const size_t extra = n_rows % static_cast<size_t>(k);
    std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
    size_t pos = 0;
    for (size_t f = 0; f < folds.size(); ++f) {
        const size_t size = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + pos, order.begin() + pos + size);
        pos += size;
    }
    return folds;
}

GbtParams sample_params(const SearchSpace& space, Rng& rng) {
    GbtParams p;  // unsampled fields keep the conventional defaults
    p.n_estimators = static_cast<int>(rng.next_int(space.n_estimators_min, space.n_estimators_max));
    p.max_depth = static_cast<int>(rng.next_int(space.max_depth_min, space.max_depth_max));
    p.learning_rate = rng.log_uniform(space.learning_rate_min, space.learning_rate_max);
    p.subsample = rng.uniform(space.subsample_min, space.subsample_max);
    p.colsample_bytree = rng.uniform(space.colsample_min, space.colsample_max);
    p.lambda_l2 = 1.0;
    p.gamma = 0.0;
    p.min_child_weight = 1.0;
    return p;
}

SearchResult random_search(const TrainingSet& data, const SearchSpace& space, int trials, int k,
                           uint64_t seed) {
    if (trials < 1) throw ConfigError("trial count must be >= 1");
    const auto folds = k_fold_split(data.size(), k, seed);
    for (size_t f = 0; f < folds.size(); ++f)
        if (folds[f].size() < 2)
            throw ConfigError("fold " + std::to_string(f) +
                              " has fewer than 2 validation rows; reduce --folds");

    SearchResult result;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, static_cast<uint64_t>(t));
        TrialRecord record;
        record.params = sample_params(space, rng);
        record.params.seed = rng.next_u64();

        for (const auto& fold : folds) {
            std::vector<char> held(data.size(), 0);
            for (size_t idx : fold) held[idx] = 1;

            TrainingSet train_split;
            std::vector<FeatureRow> val_x;
            std::vector<double> val_y;
            for (size_t i = 0; i < data.size(); ++i) {
                if (held[i]) {
                    val_x.push_back(data.features[i]);
                    val_y.push_back(data.labels[i]);
                } else {
                    train_split.features.push_back(data.features[i]);
                    train_split.labels.push_back(data.labels[i]);
                }
            }
            const GbtModel model = train(train_split, record.params).model;
            record.fold_plcc.push_back(plcc(model.predict(val_x), val_y));
        }

        double sum = 0.0;
        for (double v : record.fold_plcc) sum += v;
        record.mean_plcc = sum / static_cast<double>(record.fold_plcc.size());
        result.history.push_back(std::move(record));
    }

    size_t best = 0;
    for (size_t t = 1; t < result.history.size(); ++t)
        if (result.history[t].mean_plcc > result.history[best].mean_plcc) best = t;
    result.best = result.history[best].params;
    return result;
}

}  // namespace rrvqa
