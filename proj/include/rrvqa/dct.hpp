#pragma once

#include <vector>

namespace rrvqa {

// Orthonormal 2-D DCT-II of a w-by-w block, computed as two passes against a
// precomputed basis matrix (O(w^3) per block). Orthonormality gives Parseval:
// sum of squared coefficients equals sum of squared samples.
class DctPlan {
public:
    explicit DctPlan(int block_size);

    int block_size() const { return size_; }

    // in/out are row-major w*w; scratch must hold w*w doubles. in == out is
    // allowed.
    void forward(const double* in, double* out, double* scratch) const;

private:
    int size_;
    std::vector<double> basis_;  // basis_[k*w + n] = a_k * cos(pi*(2n+1)k / 2w)
};

// Convenience one-shot transform (allocates a plan; use DctPlan in loops).
std::vector<double> dct2d(const std::vector<double>& block, int block_size);

}  // namespace rrvqa
