#include "rrvqa/dct.hpp"

#include <cmath>

#include "rrvqa/errors.hpp"

namespace rrvqa {

DctPlan::DctPlan(int block_size) : size_(block_size) {
    if (block_size < 1) throw ConfigError("DCT block size must be positive");
    const int w = size_;
    basis_.resize(static_cast<size_t>(w) * w);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < w; ++k) {
        const double a = k == 0 ? std::sqrt(1.0 / w) : std::sqrt(2.0 / w);
        for (int n = 0; n < w; ++n)
            basis_[static_cast<size_t>(k) * w + n] = a * std::cos(pi * (2 * n + 1) * k / (2.0 * w));
    }
}

void DctPlan::forward(const double* in, double* out, double* scratch) const {
    const int w = size_;
    const double* m = basis_.data();

    // scratch = M * in  (transform columns of each row set)
    for (int k = 0; k < w; ++k) {
        const double* mk = m + static_cast<size_t>(k) * w;
        double* dst = scratch + static_cast<size_t>(k) * w;
        for (int j = 0; j < w; ++j) dst[j] = 0.0;
        for (int n = 0; n < w; ++n) {
            const double c = mk[n];
            const double* src = in + static_cast<size_t>(n) * w;
            for (int j = 0; j < w; ++j) dst[j] += c * src[j];
        }
    }

    // out = scratch * M^T
    for (int k = 0; k < w; ++k) {
        const double* src = scratch + static_cast<size_t>(k) * w;
        double* dst = out + static_cast<size_t>(k) * w;
        for (int l = 0; l < w; ++l) {
            const double* ml = m + static_cast<size_t>(l) * w;
            double acc = 0.0;
            for (int j = 0; j < w; ++j) acc += src[j] * ml[j];
            dst[l] = acc;
        }
    }
}

std::vector<double> dct2d(const std::vector<double>& block, int block_size) {
    if (block.size() != static_cast<size_t>(block_size) * block_size)
        throw DataError("dct2d: block has " + std::to_string(block.size()) +
                        " samples, expected " + std::to_string(block_size * block_size));
    DctPlan plan(block_size);
    std::vector<double> out(block.size());
    std::vector<double> scratch(block.size());
    plan.forward(block.data(), out.data(), scratch.data());
    return out;
}

}  // namespace rrvqa
