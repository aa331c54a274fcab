#pragma once

#include <optional>
#include <string>

#include "rrvqa/video.hpp"

namespace rrvqa {

enum class VideoFormat { Y4m, Raw };

// Geometry/depth for headerless raw planar YUV. Only 4:2:0 is supported.
struct RawParams {
    int width = 0;
    int height = 0;
    int bit_depth = 8;

    // Parses the CLI "WxH:bitdepth" form ("1920x1080:10"); bit depth optional.
    static RawParams parse(const std::string& text);
};

// Decodes a Y4M or raw planar YUV file. For raw input, params must be present
// and the file size an exact multiple of the frame size. Y4M header fields
// override params. 10-bit samples are read from little-endian 16-bit
// containers.
VideoSequence read_video(const std::string& path, VideoFormat format,
                         const std::optional<RawParams>& params = std::nullopt);

// Picks Y4m for a ".y4m" extension, Raw otherwise.
VideoFormat guess_format(const std::string& path);

// Writes an integer-valued sequence back out as Y4M (C420 or C420p10).
// Samples are rounded and clamped to the code-value range.
void write_y4m(const VideoSequence& seq, const std::string& path);

// Divides every sample by 2^(bit_depth-8), mapping onto the 0..255 scale.
// 8-bit input passes through unchanged (only the `normalized` flag flips).
VideoSequence normalize_bit_depth(VideoSequence seq);

// Resamples every plane independently with a Catmull-Rom bicubic kernel
// (a = -0.5), edge samples replicated. Identity geometry is a bit-exact
// pass-through. Chroma planes resample to ceil(target/2).
VideoSequence rescale_to(VideoSequence seq, int target_width, int target_height);

// Single-plane resampler used by rescale_to (and directly testable).
Plane rescale_plane(const Plane& src, int target_width, int target_height);

}  // namespace rrvqa
