#include "rrvqa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rrvqa/errors.hpp"

namespace rrvqa {

namespace {

void check_lengths(const std::vector<double>& a, const std::vector<double>& b, size_t min_len) {
    if (a.size() != b.size())
        throw DataError("length mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
    if (a.size() < min_len)
        throw DataError("need at least " + std::to_string(min_len) + " samples, got " +
                        std::to_string(a.size()));
}

// Strict inversions (a[i] > a[j], i < j) via merge sort.
size_t count_inversions(std::vector<double>& values, std::vector<double>& scratch, size_t lo,
                        size_t hi) {
    if (hi - lo < 2) return 0;
    const size_t mid = (lo + hi) / 2;
    size_t count = count_inversions(values, scratch, lo, mid) +
                   count_inversions(values, scratch, mid, hi);
    size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) {
        if (values[j] < values[i]) {
            count += mid - i;
            scratch[out++] = values[j++];
        } else {
            scratch[out++] = values[i++];
        }
    }
    while (i < mid) scratch[out++] = values[i++];
    while (j < hi) scratch[out++] = values[j++];
    std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
    return count;
}

// Sum of t*(t-1)/2 over runs of equal values in a sorted range.
double tie_term(const std::vector<double>& sorted) {
    double total = 0.0;
    size_t run = 1;
    for (size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            total += 0.5 * static_cast<double>(run) * static_cast<double>(run - 1);
            run = 1;
        }
    }
    return total;
}

}  // namespace

double plcc(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_lengths(pred, truth, 2);
    const double n = static_cast<double>(pred.size());
    double mean_p = 0.0, mean_t = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        mean_p += pred[i];
        mean_t += truth[i];
    }
    mean_p /= n;
    mean_t /= n;
    double spp = 0.0, stt = 0.0, spt = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const double dp = pred[i] - mean_p;
        const double dt = truth[i] - mean_t;
        spp += dp * dp;
        stt += dt * dt;
        spt += dp * dt;
    }
    if (spp == 0.0 || stt == 0.0)
        throw DataError("correlation undefined: input has zero variance");
    return spt / std::sqrt(spp * stt);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(values.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double srocc(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_lengths(pred, truth, 2);
    return plcc(average_ranks(pred), average_ranks(truth));
}

double krocc(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_lengths(pred, truth, 2);
    const size_t n = pred.size();

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (pred[a] != pred[b]) return pred[a] < pred[b];
        return truth[a] < truth[b];
    });

    // Tie terms over x runs, y runs, and joint runs in (x, y)-sorted order.
    double ties_x = 0.0, ties_xy = 0.0;
    {
        size_t run_x = 1, run_xy = 1;
        auto flush = [](double& total, size_t& run) {
            total += 0.5 * static_cast<double>(run) * static_cast<double>(run - 1);
            run = 1;
        };
        for (size_t i = 1; i <= n; ++i) {
            const bool same_x = i < n && pred[order[i]] == pred[order[i - 1]];
            const bool same_xy = same_x && truth[order[i]] == truth[order[i - 1]];
            if (same_xy)
                ++run_xy;
            else
                flush(ties_xy, run_xy);
            if (same_x)
                ++run_x;
            else
                flush(ties_x, run_x);
        }
    }
    std::vector<double> sorted_truth(truth);
    std::sort(sorted_truth.begin(), sorted_truth.end());
    const double ties_y = tie_term(sorted_truth);

    // Discordant pairs: strict inversions of y in the (x, y)-sorted order.
    std::vector<double> y_seq(n);
    for (size_t i = 0; i < n; ++i) y_seq[i] = truth[order[i]];
    std::vector<double> scratch(n);
    const double discordant =
        static_cast<double>(count_inversions(y_seq, scratch, 0, n));

    const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double denom_x = n0 - ties_x;
    const double denom_y = n0 - ties_y;
    if (denom_x == 0.0 || denom_y == 0.0)
        throw DataError("correlation undefined: input is entirely tied");
    const double s = n0 - ties_x - ties_y + ties_xy - 2.0 * discordant;
    return s / std::sqrt(denom_x * denom_y);
}

double rmse(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_lengths(pred, truth, 1);
    double se = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        se += d * d;
    }
    return std::sqrt(se / static_cast<double>(pred.size()));
}

MetricsReport evaluate_metrics(const std::vector<double>& pred, const std::vector<double>& truth) {
    MetricsReport report;
    report.srocc = srocc(pred, truth);
    report.plcc = plcc(pred, truth);
    report.krocc = krocc(pred, truth);
    report.rmse = rmse(pred, truth);
    report.n = pred.size();
    return report;
}

}  // namespace rrvqa
