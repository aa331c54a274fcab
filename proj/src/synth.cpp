#include "rrvqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "rrvqa/csv.hpp"
#include "rrvqa/rng.hpp"
#include "rrvqa/video_io.hpp"

namespace rrvqa {

namespace {

// Stream tags so content, noise and blur draws never share an RNG stream.
constexpr uint64_t kContentStream = 0xc0000000ULL;
constexpr uint64_t kDegradeStream = 0xd0000000ULL;

constexpr int kTileSize = 128;
constexpr double kMaxNoiseSigma = 18.0;  // at strength 1, on the 0..255 scale
constexpr double kMaxBlurSigma = 2.2;

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        taps[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += taps[i + radius];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// Separable blur with edge replication, then rounding back to code values.
Plane blur_plane(const Plane& src, double sigma, int max_code) {
    const auto taps = gaussian_kernel(sigma);
    const int radius = static_cast<int>(taps.size()) / 2;

    std::vector<double> mid(src.samples.size());
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[k + radius] * src.at_clamped(x + k, y);
            mid[static_cast<size_t>(y) * src.width + x] = acc;
        }
    }
    Plane dst(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int yy = std::clamp(y + k, 0, src.height - 1);
                acc += taps[k + radius] * mid[static_cast<size_t>(yy) * src.width + x];
            }
            dst.at(x, y) = static_cast<float>(
                std::clamp<long>(std::lround(acc), 0, max_code));
        }
    }
    return dst;
}

void add_noise(Plane& plane, Rng& rng, double sigma, int max_code) {
    for (float& s : plane.samples) {
        const double v = s + rng.normal(0.0, sigma);
        s = static_cast<float>(std::clamp<long>(std::lround(v), 0, max_code));
    }
}

// Smooth wrap-around random tile: the drifting texture layer of a content.
std::vector<double> make_tile(Rng& rng) {
    std::vector<double> tile(kTileSize * kTileSize);
    for (double& v : tile) v = rng.uniform(-1.0, 1.0);

    const auto taps = gaussian_kernel(1.0);
    const int radius = static_cast<int>(taps.size()) / 2;
    std::vector<double> mid(tile.size());
    for (int y = 0; y < kTileSize; ++y)
        for (int x = 0; x < kTileSize; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[k + radius] * tile[y * kTileSize + (x + k + kTileSize) % kTileSize];
            mid[y * kTileSize + x] = acc;
        }
    for (int y = 0; y < kTileSize; ++y)
        for (int x = 0; x < kTileSize; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[k + radius] * mid[((y + k + kTileSize) % kTileSize) * kTileSize + x];
            tile[y * kTileSize + x] = acc;
        }
    return tile;
}

std::string ref_name(int content) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "ref_c%02d.y4m", content);
    return buf;
}

std::string test_name(int content, int level) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "test_c%02d_l%02d.y4m", content, level);
    return buf;
}

}  // namespace

VideoSequence make_synth_content(const SynthConfig& cfg, int content_index) {
    Rng rng = Rng::derive(cfg.seed, kContentStream + static_cast<uint64_t>(content_index));

    const auto tile = make_tile(rng);
    const double amp = rng.uniform(28.0, 55.0);
    const double base = rng.uniform(100.0, 150.0);
    const int vx = static_cast<int>(rng.next_int(1, 3)) * (rng.next_double() < 0.5 ? -1 : 1);
    const int vy = static_cast<int>(rng.next_int(1, 3)) * (rng.next_double() < 0.5 ? -1 : 1);

    struct Grating {
        double fx, fy, phase, speed, amp;
    };
    Grating g1{rng.uniform(0.15, 0.9), rng.uniform(0.15, 0.9), rng.uniform(0.0, 6.28),
               rng.uniform(0.1, 0.5), rng.uniform(8.0, 20.0)};
    Grating g2{rng.uniform(0.4, 1.4), rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.28),
               rng.uniform(0.2, 0.8), rng.uniform(5.0, 12.0)};
    const double uo = rng.uniform(0.0, 6.28);
    const double vo = rng.uniform(0.0, 6.28);

    VideoSequence seq;
    seq.width = cfg.width;
    seq.height = cfg.height;
    seq.bit_depth = 8;

    const int cw = chroma_width(cfg.width);
    const int ch = chroma_height(cfg.height);
    for (int t = 0; t < cfg.frames; ++t) {
        FramePlanes frame;
        frame.luma = Plane(cfg.width, cfg.height);
        const int sx = vx * t;
        const int sy = vy * t;
        for (int y = 0; y < cfg.height; ++y) {
            for (int x = 0; x < cfg.width; ++x) {
                const int tx = ((x + sx) % kTileSize + kTileSize) % kTileSize;
                const int ty = ((y + sy) % kTileSize + kTileSize) % kTileSize;
                double v = base + amp * tile[ty * kTileSize + tx];
                v += g1.amp * std::sin(g1.fx * x + g1.fy * y + g1.phase + g1.speed * t);
                v += g2.amp * std::sin(g2.fx * x + g2.fy * y + g2.phase + g2.speed * t);
                frame.luma.at(x, y) =
                    static_cast<float>(std::clamp<long>(std::lround(v), 0, 255));
            }
        }
        frame.chroma_u = Plane(cw, ch);
        frame.chroma_v = Plane(cw, ch);
        for (int y = 0; y < ch; ++y) {
            for (int x = 0; x < cw; ++x) {
                const int tx = ((x + sx / 2) % kTileSize + kTileSize) % kTileSize;
                const int ty = ((y + sy / 2) % kTileSize + kTileSize) % kTileSize;
                const double tv = tile[ty * kTileSize + tx];
                const double u =
                    128.0 + 14.0 * tv + 10.0 * std::sin(0.3 * x + 0.2 * y + uo + 0.1 * t);
                const double v =
                    128.0 - 12.0 * tv + 10.0 * std::sin(0.25 * x + 0.35 * y + vo + 0.15 * t);
                frame.chroma_u.at(x, y) =
                    static_cast<float>(std::clamp<long>(std::lround(u), 0, 255));
                frame.chroma_v.at(x, y) =
                    static_cast<float>(std::clamp<long>(std::lround(v), 0, 255));
            }
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

VideoSequence degrade_content(const VideoSequence& ref, const SynthConfig& cfg, int content_index,
                              int level) {
    VideoSequence out = ref;
    const double strength = cfg.levels > 1
                                ? static_cast<double>(level) / (cfg.levels - 1)
                                : 0.0;
    if (level == 0 || strength == 0.0) return out;  // bit-identical copy

    Rng rng = Rng::derive(cfg.seed, kDegradeStream +
                                        static_cast<uint64_t>(content_index) * 256 +
                                        static_cast<uint64_t>(level));
    if (content_index % 2 == 0) {
        const double sigma = kMaxNoiseSigma * strength;
        for (FramePlanes& frame : out.frames) {
            add_noise(frame.luma, rng, sigma, 255);
            add_noise(frame.chroma_u, rng, 0.5 * sigma, 255);
            add_noise(frame.chroma_v, rng, 0.5 * sigma, 255);
        }
    } else {
        const double sigma = kMaxBlurSigma * strength;
        for (FramePlanes& frame : out.frames) {
            frame.luma = blur_plane(frame.luma, sigma, 255);
            frame.chroma_u = blur_plane(frame.chroma_u, sigma, 255);
            frame.chroma_v = blur_plane(frame.chroma_v, sigma, 255);
        }
    }
    return out;
}

std::vector<SynthEntry> generate_corpus(const std::string& out_dir, const SynthConfig& cfg) {
    if (cfg.contents < 1 || cfg.levels < 1)
        throw ConfigError("synth needs at least 1 content and 1 level");
    if (cfg.frames < 2) throw ConfigError("synth needs at least 2 frames per clip");

    std::filesystem::create_directories(out_dir);
    std::vector<SynthEntry> entries;
    std::vector<std::string> written;  // removed again if generation fails partway
    try {
        for (int c = 0; c < cfg.contents; ++c) {
            const VideoSequence ref = make_synth_content(cfg, c);
            written.push_back(out_dir + "/" + ref_name(c));
            write_y4m(ref, written.back());
            for (int l = 0; l < cfg.levels; ++l) {
                const VideoSequence test = degrade_content(ref, cfg, c, l);
                written.push_back(out_dir + "/" + test_name(c, l));
                write_y4m(test, written.back());
                SynthEntry entry;
                entry.ref = ref_name(c);
                entry.test = test_name(c, l);
                entry.content = c;
                entry.level = l;
                const double strength =
                    cfg.levels > 1 ? static_cast<double>(l) / (cfg.levels - 1) : 0.0;
                entry.mos = 5.0 - 4.0 * strength;
                entries.push_back(std::move(entry));
            }
        }

        written.push_back(out_dir + "/manifest.csv");
        std::ofstream manifest(written.back(), std::ios::binary);
        if (!manifest) throw IoError(written.back() + ": cannot open file for writing");
        manifest << "ref,test,mos\n";
        for (const SynthEntry& e : entries)
            manifest << e.ref << "," << e.test << "," << format_g9(e.mos) << "\n";
        if (!manifest) throw IoError(written.back() + ": write failed");
    } catch (...) {
        std::error_code ec;
        for (const std::string& path : written) std::filesystem::remove(path, ec);
        throw;
    }
    return entries;
}

}  // namespace rrvqa
