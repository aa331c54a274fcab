#include "rrvqa/video.hpp"

#include <cmath>
#include <string>

namespace rrvqa {

void VideoSequence::validate() const {
    if (bit_depth != 8 && bit_depth != 10)
        throw FormatError("unsupported bit depth " + std::to_string(bit_depth));
    if (frames.size() < 2)
        throw DataError("sequence has " + std::to_string(frames.size()) +
                        " frame(s); at least 2 are required");
    const int cw = chroma_width(width);
    const int ch = chroma_height(height);
    const float code_max = static_cast<float>((1 << bit_depth) - 1);
    const float max_value = normalized ? code_max / static_cast<float>(1 << (bit_depth - 8)) : code_max;
    for (size_t i = 0; i < frames.size(); ++i) {
        const FramePlanes& f = frames[i];
        if (f.luma.width != width || f.luma.height != height ||
            f.chroma_u.width != cw || f.chroma_u.height != ch ||
            f.chroma_v.width != cw || f.chroma_v.height != ch)
            throw DataError("frame " + std::to_string(i) + " geometry differs from sequence");
        for (const Plane* p : {&f.luma, &f.chroma_u, &f.chroma_v}) {
            for (float s : p->samples) {
                if (!std::isfinite(s) || s < 0.0f || s > max_value)
                    throw DataError("frame " + std::to_string(i) + " sample " +
                                    std::to_string(s) + " outside [0, " +
                                    std::to_string(max_value) + "]");
            }
        }
    }
}

}  // namespace rrvqa
