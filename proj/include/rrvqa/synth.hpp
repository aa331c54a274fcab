#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrvqa/video.hpp"

namespace rrvqa {

// One reference/test pair of the synthetic corpus.
struct SynthEntry {
    std::string ref;   // file name relative to the corpus directory
    std::string test;
    int content = 0;
    int level = 0;
    double mos = 0.0;  // pseudo-MOS, 5 - 4*(strength/max_strength)
};

struct SynthConfig {
    int contents = 12;
    int levels = 5;
    int width = 64;
    int height = 64;
    int frames = 30;
    uint64_t seed = 0;
};

// Seeded moving-texture content: a blurred random tile drifting with
// wraparound plus sinusoidal gratings. 8-bit, integer code values.
VideoSequence make_synth_content(const SynthConfig& cfg, int content_index);

// Graded degradation of one content. Even-index contents get additive
// Gaussian noise, odd-index contents Gaussian blur; strength scales with
// level/(levels-1). Level 0 is a bit-identical copy of the reference.
VideoSequence degrade_content(const VideoSequence& ref, const SynthConfig& cfg,
                              int content_index, int level);

// Writes refs, renditions and the manifest CSV (`ref,test,mos`) into out_dir.
// Fully seeded: the same config regenerates a byte-identical corpus.
std::vector<SynthEntry> generate_corpus(const std::string& out_dir, const SynthConfig& cfg);

}  // namespace rrvqa
