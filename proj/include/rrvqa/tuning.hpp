#pragma once

#include <cstdint>
#include <vector>

#include "rrvqa/errors.hpp"

#include "rrvqa/gbt.hpp"
#include "rrvqa/rng.hpp"

namespace rrvqa {

// Hyperparameter search box. Defaults are the bounds the shipped
// configuration was tuned over.
struct SearchSpace {
    int n_estimators_min = 50;
    int n_estimators_max = 300;
    int max_depth_min = 3;
    int max_depth_max = 10;
    double learning_rate_min = 0.01;  // sampled log-uniform
    double learning_rate_max = 0.3;
    double subsample_min = 0.6;
    double subsample_max = 1.0;
    double colsample_min = 0.6;
    double colsample_max = 1.0;
};

struct TrialRecord {
    GbtParams params;
    std::vector<double> fold_plcc;  // validation PLCC per fold
    double mean_plcc = 0.0;
};

struct SearchResult {
    GbtParams best;
    std::vector<TrialRecord> history;
};

// Seeded shuffle then contiguous partition; the first n_rows % k folds carry
// one extra row. Folds are disjoint and cover every index exactly once.
std::vector<std::vector<size_t>> k_fold_split(size_t n_rows, int k, uint64_t seed);

// Samples `params` within the requested bounds from rng, in a fixed draw
// order. Unsampled fields keep the conventional defaults.
GbtParams sample_params(const SearchSpace& space, Rng& rng);

// Random search with k-fold cross-validation, selecting the trial with the
// highest mean validation PLCC (ties broken by earlier trial index). Each
// trial's RNG stream derives from (seed, trial index), so trials could run
// concurrently without changing results; folds are drawn once from `seed`
// and shared across trials.
SearchResult random_search(const TrainingSet& data, const SearchSpace& space,
                           int trials, int k, uint64_t seed);

}  // namespace rrvqa
