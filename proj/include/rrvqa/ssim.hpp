#pragma once

#include <vector>

#include "rrvqa/video.hpp"

namespace rrvqa {

struct SsimResult {
    std::vector<double> per_frame;  // SSIM_i, each in [-1, 1]
    double mu_ssim = 0.0;           // arithmetic mean of per_frame
};

// Single-scale SSIM between two aligned luma planes on the 0..255 scale:
// 11x11 Gaussian window (sigma 1.5), C1 = (0.01*255)^2, C2 = (0.03*255)^2,
// averaged over all fully-interior window positions.
double ssim_frame(const Plane& ref_luma, const Plane& test_luma);

// Per-frame SSIM over co-located frame pairs plus the pooled mean. Frame
// pairs are evaluated in parallel (threads <= 0 means all cores); the mean is
// reduced in frame order, so mu_ssim is identical for any worker count.
SsimResult ssim_sequence(const VideoSequence& ref, const VideoSequence& test,
                         int threads = 1);

}  // namespace rrvqa
