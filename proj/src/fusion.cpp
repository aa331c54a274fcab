#include "rrvqa/fusion.hpp"

#include <cmath>
#include <string>

#include "rrvqa/errors.hpp"

namespace rrvqa {

std::array<double, 8> FusedFeature::flatten() const {
    const auto r = residual.to_array();
    return {r[0], r[1], r[2], r[3], r[4], r[5], r[6], mu_ssim};
}

FusedFeature FusedFeature::unflatten(const std::array<double, 8>& z) {
    FusedFeature f;
    f.residual = ResidualVector::from_array({z[0], z[1], z[2], z[3], z[4], z[5], z[6]});
    f.mu_ssim = z[7];
    return f;
}

const std::array<const char*, 8>& fused_feature_names() {
    static const std::array<const char*, 8> names = {"r_E",  "r_h",  "r_L",  "r_EU",
                                                     "r_LU", "r_EV", "r_LV", "mu_ssim"};
    return names;
}

ResidualVector residual(const PooledFeatures& ref_pooled, const PooledFeatures& test_pooled) {
    std::array<double, 7> r{};
    for (size_t i = 0; i < r.size(); ++i) r[i] = ref_pooled.mean[i] - test_pooled.mean[i];
    return ResidualVector::from_array(r);
}

double kl_proxy(const ResidualVector& r) {
    double sq = 0.0;
    for (double v : r.to_array()) sq += v * v;
    return 0.5 * sq;
}

FusedFeature fuse(const ResidualVector& r, double mu_ssim) {
    if (!(mu_ssim >= -1.0 && mu_ssim <= 1.0))
        throw DataError("fuse: mu_ssim " + std::to_string(mu_ssim) + " outside [-1, 1]");
    FusedFeature f;
    f.residual = r;
    f.mu_ssim = mu_ssim;
    return f;
}

}  // namespace rrvqa
