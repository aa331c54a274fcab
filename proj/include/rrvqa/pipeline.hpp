#pragma once

#include <string>

#include "rrvqa/fusion.hpp"
#include "rrvqa/ssim.hpp"
#include "rrvqa/vca.hpp"
#include "rrvqa/video_io.hpp"

namespace rrvqa {

// Full reference/test comparison: normalize -> rescale test to reference
// geometry -> truncate to the common frame count -> features + SSIM ->
// residual -> fused vector.
struct CompareResult {
    FusedFeature fused;
    double kl = 0.0;  // diagnostic, 0.5*||r||^2
    SsimResult ssim;
    std::vector<FrameFeatures> ref_frames;
    std::vector<FrameFeatures> test_frames;
    PooledFeatures ref_pooled;
    PooledFeatures test_pooled;
    size_t frames_used = 0;
    bool truncated = false;  // frame counts differed; both cut to the minimum
};

// Normalizes both sequences, rescales test onto the reference geometry and
// truncates both to the common frame count. Returns true when truncation
// happened.
bool align_pair(VideoSequence& ref, VideoSequence& test);

CompareResult compare_sequences(VideoSequence ref, VideoSequence test, int threads = 1);

// File-level wrapper; raw inputs take their geometry from raw params.
CompareResult compare_files(const std::string& ref_path, const std::string& test_path,
                            const std::optional<RawParams>& raw = std::nullopt,
                            int threads = 1);

}  // namespace rrvqa
