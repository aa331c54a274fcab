#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rrvqa/video_io.hpp"
#include "test_utils.hpp"

using namespace rrvqa;
using test_helpers::TempDir;

namespace {

// Hand-assembled Y4M bytes: header + FRAME markers + planes.
std::string y4m_bytes(const std::string& header, int w, int h, int frames, uint8_t fill) {
    std::string data = header + "\n";
    const size_t frame_size = static_cast<size_t>(w) * h +
                              2 * (static_cast<size_t>((w + 1) / 2) * ((h + 1) / 2));
    for (int f = 0; f < frames; ++f) {
        data += "FRAME\n";
        data.append(frame_size, static_cast<char>(fill));
    }
    return data;
}

}  // namespace

TEST_CASE("y4m header fields are echoed into the sequence") {
    TempDir dir("y4m");
    const auto path = dir.file("a.y4m");
    test_helpers::spit(path, y4m_bytes("YUV4MPEG2 W64 H64 F30:1 C420", 64, 64, 3, 7));

    const VideoSequence seq = read_video(path, VideoFormat::Y4m);
    CHECK(seq.width == 64);
    CHECK(seq.height == 64);
    CHECK(seq.bit_depth == 8);
    CHECK(seq.frame_count() == 3);
    CHECK(seq.frames[0].luma.at(5, 5) == 7.0f);
    CHECK(seq.frames[2].chroma_v.at(31, 31) == 7.0f);
}

TEST_CASE("y4m accepts the 4:2:0 tag family") {
    TempDir dir("y4mtags");
    for (const char* tag : {"C420", "C420jpeg", "C420mpeg2"}) {
        const auto path = dir.file(std::string(tag) + ".y4m");
        test_helpers::spit(path, y4m_bytes(std::string("YUV4MPEG2 W16 H16 F25:1 ") + tag, 16, 16,
                                           2, 0));
        CHECK(read_video(path, VideoFormat::Y4m).bit_depth == 8);
    }
}

TEST_CASE("y4m 10-bit samples come from little-endian 16-bit containers") {
    TempDir dir("y4m10");
    const auto path = dir.file("ten.y4m");
    std::string data = "YUV4MPEG2 W4 H4 F30:1 C420p10\n";
    for (int f = 0; f < 2; ++f) {
        data += "FRAME\n";
        for (size_t i = 0; i < 16 + 4 + 4; ++i) {
            data += static_cast<char>(0xff);  // 0x3ff little-endian = 1023
            data += static_cast<char>(0x03);
        }
    }
    test_helpers::spit(path, data);

    const VideoSequence seq = read_video(path, VideoFormat::Y4m);
    CHECK(seq.bit_depth == 10);
    CHECK(seq.frames[1].luma.at(3, 3) == 1023.0f);

    const VideoSequence norm = normalize_bit_depth(seq);
    CHECK(norm.frames[1].luma.at(3, 3) == doctest::Approx(255.75).epsilon(1e-12));
}

TEST_CASE("y4m parse failures name the offending token") {
    TempDir dir("y4mbad");

    test_helpers::spit(dir.file("magic.y4m"), y4m_bytes("YUVBAD W4 H4 C420", 4, 4, 2, 0));
    expect_error<ParseError>([&] { read_video(dir.file("magic.y4m"), VideoFormat::Y4m); },
                             "YUVBAD");

    test_helpers::spit(dir.file("chroma.y4m"), y4m_bytes("YUV4MPEG2 W4 H4 C444", 4, 4, 2, 0));
    expect_error<FormatError>([&] { read_video(dir.file("chroma.y4m"), VideoFormat::Y4m); },
                              "C444");

    test_helpers::spit(dir.file("now.y4m"), y4m_bytes("YUV4MPEG2 H4 C420", 4, 4, 2, 0));
    expect_error<ParseError>([&] { read_video(dir.file("now.y4m"), VideoFormat::Y4m); }, "W or H");
}

TEST_CASE("y4m truncated frame reports expected vs actual bytes") {
    TempDir dir("y4mtrunc");
    const auto path = dir.file("t.y4m");
    std::string data = y4m_bytes("YUV4MPEG2 W16 H16 C420", 16, 16, 2, 3);
    data.resize(data.size() - 10);
    test_helpers::spit(path, data);
    expect_error<IoError>([&] { read_video(path, VideoFormat::Y4m); }, "expected");
}

TEST_CASE("a single-frame sequence violates the pairing invariant") {
    TempDir dir("oneframe");
    const auto path = dir.file("one.y4m");
    test_helpers::spit(path, y4m_bytes("YUV4MPEG2 W8 H8 C420", 8, 8, 1, 0));
    expect_error<DataError>([&] { read_video(path, VideoFormat::Y4m); }, "at least 2");
}

TEST_CASE("raw frame count is file size over frame size") {
    TempDir dir("raw");
    const auto path = dir.file("a.yuv");
    test_helpers::spit(path, std::string(768, '\x40'));  // 2 frames of 16x16 8-bit 4:2:0

    RawParams params{16, 16, 8};
    const VideoSequence seq = read_video(path, VideoFormat::Raw, params);
    CHECK(seq.frame_count() == 2);
    CHECK(seq.frames[0].luma.at(0, 0) == 64.0f);
}

TEST_CASE("raw size that is not a frame multiple is rejected") {
    TempDir dir("rawbad");
    const auto path = dir.file("short.yuv");
    test_helpers::spit(path, std::string(767, '\0'));
    expect_error<IoError>(
        [&] { read_video(path, VideoFormat::Raw, RawParams{16, 16, 8}); },
        "expected multiple of 384 bytes");
}

TEST_CASE("raw input without geometry is a configuration error") {
    TempDir dir("rawnone");
    const auto path = dir.file("a.yuv");
    test_helpers::spit(path, std::string(768, '\0'));
    expect_error<ConfigError>([&] { read_video(path, VideoFormat::Raw); }, "--raw");
}

TEST_CASE("raw geometry flag parsing") {
    const RawParams a = RawParams::parse("1920x1080:10");
    CHECK(a.width == 1920);
    CHECK(a.height == 1080);
    CHECK(a.bit_depth == 10);

    const RawParams b = RawParams::parse("64x64");
    CHECK(b.bit_depth == 8);

    CHECK_THROWS_AS(RawParams::parse("64:64"), ConfigError);
    CHECK_THROWS_AS(RawParams::parse("4x4:12"), ConfigError);
    CHECK_THROWS_AS(RawParams::parse("wide"), ConfigError);
}

TEST_CASE("y4m round trip is bit identical") {
    TempDir dir("roundtrip");
    for (int bd : {8, 10}) {
        VideoSequence seq = test_helpers::random_sequence(20, 12, 3, 99 + bd);
        if (bd == 10) {
            seq.bit_depth = 10;
            for (auto& f : seq.frames)
                for (Plane* p : {&f.luma, &f.chroma_u, &f.chroma_v})
                    for (float& s : p->samples) s = std::floor(s * 4.01f);
        }
        const auto path = dir.file("rt" + std::to_string(bd) + ".y4m");
        write_y4m(seq, path);
        const VideoSequence back = read_video(path, VideoFormat::Y4m);
        REQUIRE(back.frame_count() == seq.frame_count());
        CHECK(back.bit_depth == bd);
        for (size_t f = 0; f < seq.frame_count(); ++f) {
            CHECK(back.frames[f].luma.samples == seq.frames[f].luma.samples);
            CHECK(back.frames[f].chroma_u.samples == seq.frames[f].chroma_u.samples);
            CHECK(back.frames[f].chroma_v.samples == seq.frames[f].chroma_v.samples);
        }
    }
}

TEST_CASE("normalize divides by 2^(bit_depth-8) and keeps 8-bit unchanged") {
    VideoSequence seq = test_helpers::constant_sequence(8, 8, 2, 128.0f);
    seq.normalized = false;
    const VideoSequence same = normalize_bit_depth(seq);
    CHECK(same.frames[0].luma.at(0, 0) == 128.0f);
    CHECK(same.normalized);

    VideoSequence ten;
    ten.width = 8;
    ten.height = 8;
    ten.bit_depth = 10;
    ten.frames.push_back(test_helpers::constant_frame(8, 8, 512.0f, 512.0f, 512.0f));
    ten.frames.push_back(test_helpers::constant_frame(8, 8, 1023.0f, 0.0f, 4.0f));
    const VideoSequence norm = normalize_bit_depth(ten);
    CHECK(norm.frames[0].luma.at(1, 1) == 128.0f);
    CHECK(norm.frames[1].luma.at(0, 0) == 255.75f);
    CHECK(norm.frames[1].chroma_u.at(0, 0) == 0.0f);
    CHECK(norm.frames[1].chroma_v.at(0, 0) == 1.0f);
}

TEST_CASE("normalize preserves sample ordering and maps extremes to extremes") {
    Rng rng(7);
    VideoSequence seq;
    seq.width = 16;
    seq.height = 16;
    seq.bit_depth = 10;
    seq.frames.push_back(test_helpers::constant_frame(16, 16, 0.0f, 0.0f, 0.0f));
    seq.frames.push_back(test_helpers::constant_frame(16, 16, 0.0f, 0.0f, 0.0f));
    for (float& s : seq.frames[0].luma.samples)
        s = static_cast<float>(rng.next_int(0, 1023));
    seq.frames[0].luma.at(0, 0) = 0.0f;
    seq.frames[0].luma.at(1, 0) = 1023.0f;

    const std::vector<float> before = seq.frames[0].luma.samples;
    const VideoSequence norm = normalize_bit_depth(seq);
    const std::vector<float>& after = norm.frames[0].luma.samples;
    bool order_preserved = true;
    for (size_t i = 0; i < before.size(); ++i)
        for (size_t j = i + 1; j < before.size(); ++j)
            order_preserved &= (before[i] < before[j]) == (after[i] < after[j]);
    CHECK(order_preserved);
    CHECK(after[0] == 0.0f);
    CHECK(after[1] == 255.75f);
}

TEST_CASE("rescale to identical geometry is a bit-exact pass-through") {
    Rng rng(11);
    const Plane p = test_helpers::random_plane(31, 17, rng);
    const Plane q = rescale_plane(p, 31, 17);
    CHECK(q.samples == p.samples);
}

TEST_CASE("rescale preserves constant planes") {
    const Plane p = test_helpers::constant_plane(32, 32, 100.0f);
    const Plane up = rescale_plane(p, 64, 64);
    REQUIRE(up.width == 64);
    for (float s : up.samples) CHECK(std::fabs(s - 100.0) <= 1e-9);
}

TEST_CASE("2x upscale reproduces a linear ramp at interior samples") {
    // Cubic interpolation is exact on degree <= 1; small amplitudes keep
    // float storage quantization well under the tolerance.
    const int w = 64, h = 8;
    Plane ramp(w, h);
    const double a = 0.125, b = 0.011;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) ramp.at(x, y) = static_cast<float>(a + b * x);

    const Plane up = rescale_plane(ramp, 2 * w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 4; x < 2 * w - 4; ++x) {  // interior: away from replicated edges
            const double sx = (x + 0.5) * 0.5 - 0.5;
            CHECK(std::fabs(up.at(x, y) - (a + b * sx)) <= 1e-6);
        }
    }
}

TEST_CASE("rescale is resolution-idempotent") {
    VideoSequence seq = test_helpers::random_sequence(24, 16, 2, 5);
    seq = normalize_bit_depth(std::move(seq));
    const VideoSequence once = rescale_to(seq, 40, 28);
    const VideoSequence twice = rescale_to(once, 40, 28);
    for (size_t f = 0; f < once.frame_count(); ++f) {
        CHECK(twice.frames[f].luma.samples == once.frames[f].luma.samples);
        CHECK(twice.frames[f].chroma_u.samples == once.frames[f].chroma_u.samples);
    }
}

TEST_CASE("rescale adjusts chroma geometry to ceil(target/2)") {
    VideoSequence seq = test_helpers::random_sequence(16, 16, 2, 3);
    seq = normalize_bit_depth(std::move(seq));
    const VideoSequence up = rescale_to(std::move(seq), 33, 21);
    CHECK(up.frames[0].luma.width == 33);
    CHECK(up.frames[0].chroma_u.width == 17);
    CHECK(up.frames[0].chroma_u.height == 11);
}

TEST_CASE("rescale rejects degenerate targets") {
    VideoSequence seq = test_helpers::constant_sequence(8, 8, 2);
    CHECK_THROWS_AS(rescale_to(std::move(seq), 1, 8), ConfigError);
}
