#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "rrvqa/rng.hpp"
#include "rrvqa/video.hpp"

namespace test_helpers {

inline rrvqa::Plane constant_plane(int w, int h, float value) {
    return rrvqa::Plane(w, h, value);
}

inline rrvqa::Plane random_plane(int w, int h, rrvqa::Rng& rng, float lo = 0.0f,
                                 float hi = 255.0f) {
    rrvqa::Plane p(w, h);
    for (float& s : p.samples)
        s = static_cast<float>(std::lround(rng.uniform(lo, hi)));
    return p;
}

inline rrvqa::FramePlanes constant_frame(int w, int h, float y, float u, float v) {
    rrvqa::FramePlanes f;
    f.luma = rrvqa::Plane(w, h, y);
    f.chroma_u = rrvqa::Plane(rrvqa::chroma_width(w), rrvqa::chroma_height(h), u);
    f.chroma_v = rrvqa::Plane(rrvqa::chroma_width(w), rrvqa::chroma_height(h), v);
    return f;
}

// Normalized (0..255 scale) sequence of n constant frames.
inline rrvqa::VideoSequence constant_sequence(int w, int h, size_t n, float y = 128.0f) {
    rrvqa::VideoSequence seq;
    seq.width = w;
    seq.height = h;
    seq.bit_depth = 8;
    seq.normalized = true;
    for (size_t i = 0; i < n; ++i) seq.frames.push_back(constant_frame(w, h, y, 128.0f, 128.0f));
    return seq;
}

// Integer-valued random 8-bit sequence (pre-normalization).
inline rrvqa::VideoSequence random_sequence(int w, int h, size_t n, uint64_t seed) {
    rrvqa::Rng rng(seed);
    rrvqa::VideoSequence seq;
    seq.width = w;
    seq.height = h;
    seq.bit_depth = 8;
    for (size_t i = 0; i < n; ++i) {
        rrvqa::FramePlanes f;
        f.luma = random_plane(w, h, rng);
        f.chroma_u = random_plane(rrvqa::chroma_width(w), rrvqa::chroma_height(h), rng);
        f.chroma_v = random_plane(rrvqa::chroma_width(w), rrvqa::chroma_height(h), rng);
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = (std::filesystem::temp_directory_path() /
                 ("rrvqa_" + tag + "_" + std::to_string(counter()++)))
                    .string();
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace test_helpers
