#pragma once

#include <cstddef>
#include <vector>

#include "rrvqa/errors.hpp"

namespace rrvqa {

struct MetricsReport {
    double srocc = 0.0;
    double plcc = 0.0;
    double krocc = 0.0;
    double rmse = 0.0;
    size_t n = 0;
};

// Pearson product-moment coefficient. Throws DataError on length mismatch,
// fewer than 2 samples, or zero variance in either input.
double plcc(const std::vector<double>& pred, const std::vector<double>& truth);

// Spearman: Pearson correlation of ranks, ties assigned average ranks.
double srocc(const std::vector<double>& pred, const std::vector<double>& truth);

// Kendall tau-b with tie correction, O(n log n) via merge-sort inversion
// counting. Throws DataError when either input is all-tied.
double krocc(const std::vector<double>& pred, const std::vector<double>& truth);

// Root mean square error; requires equal nonzero lengths.
double rmse(const std::vector<double>& pred, const std::vector<double>& truth);

// Average ranks (1-based, fractional for ties). Exposed for tests.
std::vector<double> average_ranks(const std::vector<double>& values);

MetricsReport evaluate_metrics(const std::vector<double>& pred,
                               const std::vector<double>& truth);

}  // namespace rrvqa
