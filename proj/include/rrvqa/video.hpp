#pragma once

#include <cstddef>
#include <vector>

#include "rrvqa/errors.hpp"

namespace rrvqa {

// One sample grid, row-major. Samples are float: integer code values as
// decoded (0..2^bit_depth-1), or fractional values on the 0..255 scale after
// bit-depth normalization. All math downstream runs in double.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<float> samples;

    Plane() = default;
    Plane(int w, int h, float fill = 0.0f)
        : width(w), height(h), samples(static_cast<size_t>(w) * h, fill) {}

    float at(int x, int y) const { return samples[static_cast<size_t>(y) * width + x]; }
    float& at(int x, int y) { return samples[static_cast<size_t>(y) * width + x]; }

    // Edge-replicated access for out-of-range coordinates.
    float at_clamped(int x, int y) const {
        if (x < 0) x = 0;
        if (x >= width) x = width - 1;
        if (y < 0) y = 0;
        if (y >= height) y = height - 1;
        return at(x, y);
    }

    const float* row(int y) const { return samples.data() + static_cast<size_t>(y) * width; }
    float* row(int y) { return samples.data() + static_cast<size_t>(y) * width; }
};

struct FramePlanes {
    Plane luma;
    Plane chroma_u;
    Plane chroma_v;
};

// 4:2:0 chroma geometry for a given luma geometry.
inline int chroma_width(int luma_width) { return (luma_width + 1) / 2; }
inline int chroma_height(int luma_height) { return (luma_height + 1) / 2; }

// Decoded planar 4:2:0 sequence. Immutable after construction as far as the
// pipeline is concerned; safe to share across concurrent readers.
struct VideoSequence {
    int width = 0;
    int height = 0;
    int bit_depth = 8;        // source bit depth, {8, 10}
    bool normalized = false;  // true once samples are on the 0..255 scale
    std::vector<FramePlanes> frames;

    size_t frame_count() const { return frames.size(); }

    // Enforces the sequence invariants; throws DataError/FormatError.
    void validate() const;
};

}  // namespace rrvqa
