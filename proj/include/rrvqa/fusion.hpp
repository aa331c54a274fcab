#pragma once

#include <array>

#include "rrvqa/vca.hpp"

namespace rrvqa {

// Reference-minus-test difference of pooled features. Component order mirrors
// FrameFeatures.
struct ResidualVector {
    double r_e = 0.0;
    double r_h = 0.0;
    double r_l = 0.0;
    double r_eu = 0.0;
    double r_lu = 0.0;
    double r_ev = 0.0;
    double r_lv = 0.0;

    std::array<double, 7> to_array() const { return {r_e, r_h, r_l, r_eu, r_lu, r_ev, r_lv}; }
    static ResidualVector from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
};

// The 8-dimensional model input z = [r | mu_ssim]. Flattened order
// (r_E, r_h, r_L, r_EU, r_LU, r_EV, r_LV, mu_ssim) is the file-format and
// model contract.
struct FusedFeature {
    ResidualVector residual;
    double mu_ssim = 0.0;

    std::array<double, 8> flatten() const;
    static FusedFeature unflatten(const std::array<double, 8>& z);
};

// Names of the flattened components, also the fused-dataset CSV header.
const std::array<const char*, 8>& fused_feature_names();

// Component-wise ref minus test.
ResidualVector residual(const PooledFeatures& ref_pooled, const PooledFeatures& test_pooled);

// Diagnostic KL-divergence proxy 0.5 * ||r||^2. Reported only, never a model
// input.
double kl_proxy(const ResidualVector& r);

// Throws DataError when mu_ssim is outside [-1, 1].
FusedFeature fuse(const ResidualVector& r, double mu_ssim);

}  // namespace rrvqa
