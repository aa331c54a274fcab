#include "rrvqa/pipeline.hpp"

namespace rrvqa {

bool align_pair(VideoSequence& ref, VideoSequence& test) {
    ref = normalize_bit_depth(std::move(ref));
    test = normalize_bit_depth(std::move(test));

    // Residuals and SSIM need aligned domains: the test rendition is brought
    // onto the reference geometry before anything is computed from it.
    test = rescale_to(std::move(test), ref.width, ref.height);

    const size_t n = std::min(ref.frame_count(), test.frame_count());
    const bool truncated = ref.frame_count() != test.frame_count();
    if (n < 2) throw DataError("aligned sequences have fewer than 2 frames");
    ref.frames.resize(n);
    test.frames.resize(n);
    return truncated;
}

CompareResult compare_sequences(VideoSequence ref, VideoSequence test, int threads) {
    CompareResult result;
    result.truncated = align_pair(ref, test);
    result.frames_used = ref.frame_count();

    result.ref_frames = extract_sequence_features(ref, threads);
    result.test_frames = extract_sequence_features(test, threads);
    result.ref_pooled = temporal_pool(result.ref_frames);
    result.test_pooled = temporal_pool(result.test_frames);
    result.ssim = ssim_sequence(ref, test, threads);

    const ResidualVector r = residual(result.ref_pooled, result.test_pooled);
    result.fused = fuse(r, result.ssim.mu_ssim);
    result.kl = kl_proxy(r);
    return result;
}

CompareResult compare_files(const std::string& ref_path, const std::string& test_path,
                            const std::optional<RawParams>& raw, int threads) {
    VideoSequence ref = read_video(ref_path, guess_format(ref_path), raw);
    VideoSequence test = read_video(test_path, guess_format(test_path), raw);
    return compare_sequences(std::move(ref), std::move(test), threads);
}

}  // namespace rrvqa
