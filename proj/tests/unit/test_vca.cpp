#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "rrvqa/dct.hpp"
#include "rrvqa/vca.hpp"
#include "test_utils.hpp"

using namespace rrvqa;

namespace {

std::vector<double> random_block(int w, Rng& rng, double lo = 0.0, double hi = 255.0) {
    std::vector<double> block(static_cast<size_t>(w) * w);
    for (double& v : block) v = rng.uniform(lo, hi);
    return block;
}

double parseval_gap(const std::vector<double>& block, const std::vector<double>& coeffs) {
    double in = 0.0, out = 0.0;
    for (double v : block) in += v * v;
    for (double v : coeffs) out += v * v;
    return std::fabs(in - out) / in;
}

}  // namespace

TEST_CASE("dct of a constant block concentrates in DC") {
    for (int w : {4, 16, 32}) {
        const double c = 3.75;
        const auto coeffs = dct2d(std::vector<double>(static_cast<size_t>(w) * w, c), w);
        CHECK(coeffs[0] == doctest::Approx(w * c).epsilon(1e-12));
        for (size_t i = 1; i < coeffs.size(); ++i) CHECK(std::fabs(coeffs[i]) <= 1e-9);
    }
}

TEST_CASE("dct of zeros is zero") {
    const auto coeffs = dct2d(std::vector<double>(16 * 16, 0.0), 16);
    for (double v : coeffs) CHECK(v == 0.0);
}

TEST_CASE("dct matches the naive O(w^4) definition") {
    Rng rng(42);
    for (int w : {4, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto block = random_block(w, rng);
            const auto fast = dct2d(block, w);
            const auto slow = oracle::naive_dct2d(block, w);
            double max_err = 0.0;
            for (size_t i = 0; i < fast.size(); ++i)
                max_err = std::max(max_err, std::fabs(fast[i] - slow[i]));
            CHECK(max_err <= 1e-9);
        }
    }
}

TEST_CASE("dct satisfies Parseval within 1e-9 relative") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto block = random_block(32, rng);
        CHECK(parseval_gap(block, dct2d(block, 32)) <= 1e-9);
    }
}

TEST_CASE("texture energy of an AC-free block is zero") {
    std::vector<double> coeffs(32 * 32, 0.0);
    coeffs[0] = 1234.5;  // DC only
    CHECK(block_texture_energy(coeffs, 32) == 0.0);
}

TEST_CASE("texture energy weight for coefficient (1,1) at w=32") {
    std::vector<double> coeffs(32 * 32, 0.0);
    coeffs[1 * 32 + 1] = 1.0;
    // Independent evaluation of the pinned weight formula.
    const double expected = std::exp(std::fabs(std::pow(1.0 / (32.0 * 32.0), 2) - 1.0));
    CHECK(block_texture_energy(coeffs, 32) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(2.7182792).epsilon(1e-6));
}

TEST_CASE("texture energy is positively homogeneous") {
    Rng rng(3);
    std::vector<double> coeffs = random_block(16, rng, -50.0, 50.0);
    std::vector<double> doubled = coeffs;
    for (double& v : doubled) v *= 2.0;
    CHECK(block_texture_energy(doubled, 16) ==
          doctest::Approx(2.0 * block_texture_energy(coeffs, 16)).epsilon(1e-12));
}

TEST_CASE("energy map geometry and content") {
    SUBCASE("constant plane maps to zeros") {
        const EnergyMap map = frame_energy_map(test_helpers::constant_plane(64, 64, 90.0f), 32);
        CHECK(map.blocks_x == 2);
        CHECK(map.blocks_y == 2);
        for (double e : map.energies) CHECK(std::fabs(e) <= 1e-9);
    }
    SUBCASE("64x64 with block 32 yields a 2x2 grid") {
        const EnergyMap map = frame_energy_map(Plane(64, 64), 32);
        CHECK(map.block_count() == 4);
    }
    SUBCASE("ragged plane geometry uses ceils") {
        const EnergyMap map = frame_energy_map(Plane(65, 33), 32);
        CHECK(map.blocks_x == 3);
        CHECK(map.blocks_y == 2);
    }
    SUBCASE("texture confined to the top-left block") {
        Rng rng(9);
        Plane plane = test_helpers::constant_plane(64, 64, 80.0f);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x)
                plane.at(x, y) = static_cast<float>(rng.uniform(0.0, 255.0));
        const EnergyMap map = frame_energy_map(plane, 32);
        CHECK(map.energies[0] > 1.0);
        CHECK(std::fabs(map.energies[1]) <= 1e-9);
        CHECK(std::fabs(map.energies[2]) <= 1e-9);
        CHECK(std::fabs(map.energies[3]) <= 1e-9);
    }
}

TEST_CASE("constant gray frame has zero energy and level 128") {
    const auto [f, map] =
        extract_frame_features(test_helpers::constant_frame(64, 64, 128, 128, 128), std::nullopt);
    CHECK(std::fabs(f.energy_y) <= 1e-9);
    CHECK(std::fabs(f.energy_u) <= 1e-9);
    CHECK(std::fabs(f.energy_v) <= 1e-9);
    CHECK(f.level_y == doctest::Approx(128.0));
    CHECK(f.level_u == doctest::Approx(128.0));
    CHECK(f.level_v == doctest::Approx(128.0));
    CHECK(f.temporal_grad == 0.0);
    CHECK(map.block_count() == 4);
}

TEST_CASE("identical textured frames give h = 0") {
    Rng rng(21);
    FramePlanes frame;
    frame.luma = test_helpers::random_plane(64, 64, rng);
    frame.chroma_u = test_helpers::random_plane(32, 32, rng);
    frame.chroma_v = test_helpers::random_plane(32, 32, rng);

    const auto [f1, map1] = extract_frame_features(frame, std::nullopt);
    const auto [f2, map2] = extract_frame_features(frame, map1);
    CHECK(f2.temporal_grad == 0.0);
    CHECK(f2.energy_y == f1.energy_y);
}

TEST_CASE("a pure DC offset moves L but not h") {
    Rng rng(22);
    FramePlanes a;
    a.luma = test_helpers::random_plane(64, 64, rng, 20.0f, 200.0f);
    a.chroma_u = test_helpers::constant_plane(32, 32, 128.0f);
    a.chroma_v = test_helpers::constant_plane(32, 32, 128.0f);
    FramePlanes b = a;
    for (float& s : b.luma.samples) s += 10.0f;

    const auto [f1, map1] = extract_frame_features(a, std::nullopt);
    const auto [f2, map2] = extract_frame_features(b, map1);
    CHECK(std::fabs(f2.temporal_grad) <= 1e-9);  // DC is excluded from energy
    CHECK(f2.level_y - f1.level_y == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("energy map geometry mismatch is an internal-consistency error") {
    const auto [f, small] =
        extract_frame_features(test_helpers::constant_frame(32, 32, 10, 10, 10), std::nullopt);
    expect_error<DataError>(
        [&] {
            extract_frame_features(test_helpers::constant_frame(64, 64, 10, 10, 10), small);
        },
        "geometry mismatch");
}

TEST_CASE("sequence features: identical frames") {
    VideoSequence seq = test_helpers::random_sequence(64, 64, 4, 31);
    for (size_t i = 1; i < seq.frames.size(); ++i) seq.frames[i] = seq.frames[0];
    seq.normalized = true;

    const auto rows = extract_sequence_features(seq);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.temporal_grad == 0.0);
        CHECK(row.energy_y == rows[0].energy_y);
        CHECK(row.level_y == rows[0].level_y);
    }
}

TEST_CASE("alternating constant frames carry no texture change") {
    // h tracks texture-energy change, not luminance change: constant frames
    // have zero AC energy regardless of their level.
    VideoSequence seq;
    seq.width = 64;
    seq.height = 64;
    seq.bit_depth = 8;
    seq.normalized = true;
    for (int i = 0; i < 4; ++i)
        seq.frames.push_back(
            test_helpers::constant_frame(64, 64, i % 2 ? 255.0f : 0.0f, 128.0f, 128.0f));

    const auto rows = extract_sequence_features(seq);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::fabs(rows[i].energy_y) <= 1e-9);
        CHECK(std::fabs(rows[i].temporal_grad) <= 1e-9);
        CHECK(rows[i].level_y == doctest::Approx(i % 2 ? 255.0 : 0.0));
    }
}

TEST_CASE("h spikes exactly at a scene cut") {
    Rng rng(17);
    const Plane texture_a = test_helpers::random_plane(64, 64, rng);
    const Plane texture_b = test_helpers::random_plane(64, 64, rng);

    VideoSequence seq;
    seq.width = 64;
    seq.height = 64;
    seq.bit_depth = 8;
    seq.normalized = true;
    for (int i = 0; i < 6; ++i) {
        FramePlanes f;
        f.luma = i < 3 ? texture_a : texture_b;
        f.chroma_u = test_helpers::constant_plane(32, 32, 128.0f);
        f.chroma_v = test_helpers::constant_plane(32, 32, 128.0f);
        seq.frames.push_back(std::move(f));
    }

    const auto rows = extract_sequence_features(seq);
    CHECK(rows[0].temporal_grad == 0.0);
    CHECK(rows[1].temporal_grad == 0.0);
    CHECK(rows[2].temporal_grad == 0.0);
    CHECK(rows[3].temporal_grad > 0.01);
    CHECK(rows[4].temporal_grad == 0.0);
    CHECK(rows[5].temporal_grad == 0.0);
}

TEST_CASE("sequence features are identical across worker counts") {
    VideoSequence seq = test_helpers::random_sequence(64, 64, 6, 77);
    seq.normalized = true;
    const auto one = extract_sequence_features(seq, 1);
    const auto eight = extract_sequence_features(seq, 8);
    REQUIRE(one.size() == eight.size());
    for (size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].to_array() == eight[i].to_array());
    }
}

TEST_CASE("temporal pooling") {
    SUBCASE("identical rows pool to the row") {
        FrameFeatures f{1.5, 0.25, 100.0, 0.5, 90.0, 0.25, 80.0};
        FrameFeatures first = f;
        first.temporal_grad = 0.0;
        const PooledFeatures pooled = temporal_pool({first, f, f});
        CHECK(pooled.mean[0] == doctest::Approx(1.5));
        CHECK(pooled.mean[1] == doctest::Approx(0.25));  // frame 0's h excluded
        CHECK(pooled.mean[2] == doctest::Approx(100.0));
        CHECK(pooled.frame_count == 3);
    }
    SUBCASE("pooled E is the arithmetic mean") {
        FrameFeatures a{}, b{};
        a.energy_y = 2.0;
        b.energy_y = 4.0;
        CHECK(temporal_pool({a, b}).mean[0] == doctest::Approx(3.0));
    }
    SUBCASE("pooled h averages frames 1..N-1 only") {
        FrameFeatures a{}, b{}, c{};
        a.temporal_grad = 0.0;
        b.temporal_grad = 1.0;
        c.temporal_grad = 3.0;
        CHECK(temporal_pool({a, b, c}).mean[1] == doctest::Approx(2.0));
    }
    SUBCASE("single row pools to zero h") {
        FrameFeatures a{};
        a.energy_y = 5.0;
        const PooledFeatures pooled = temporal_pool({a});
        CHECK(pooled.mean[0] == doctest::Approx(5.0));
        CHECK(pooled.mean[1] == 0.0);
    }
    SUBCASE("empty list is an error") {
        CHECK_THROWS_AS(temporal_pool({}), DataError);
    }
}

TEST_CASE("pooled values are convex combinations of per-frame values") {
    Rng rng(55);
    std::vector<FrameFeatures> rows;
    for (int i = 0; i < 10; ++i) {
        FrameFeatures f;
        f.energy_y = rng.uniform(0, 30);
        f.temporal_grad = i == 0 ? 0.0 : rng.uniform(0, 5);
        f.level_y = rng.uniform(0, 255);
        f.energy_u = rng.uniform(0, 10);
        f.level_u = rng.uniform(0, 255);
        f.energy_v = rng.uniform(0, 10);
        f.level_v = rng.uniform(0, 255);
        rows.push_back(f);
    }
    const PooledFeatures pooled = temporal_pool(rows);
    for (size_t c = 0; c < 7; ++c) {
        double lo = 1e300, hi = -1e300;
        for (size_t i = c == 1 ? 1 : 0; i < rows.size(); ++i) {
            lo = std::min(lo, rows[i].to_array()[c]);
            hi = std::max(hi, rows[i].to_array()[c]);
        }
        CHECK(pooled.mean[c] >= lo - 1e-12);
        CHECK(pooled.mean[c] <= hi + 1e-12);
    }
}

TEST_CASE("shuffling pixels within a block changes E; shifting changes only L") {
    Rng rng(88);
    FramePlanes frame;
    frame.luma = test_helpers::random_plane(64, 64, rng, 40.0f, 210.0f);
    frame.chroma_u = test_helpers::constant_plane(32, 32, 128.0f);
    frame.chroma_v = test_helpers::constant_plane(32, 32, 128.0f);
    const auto [base, m0] = extract_frame_features(frame, std::nullopt);

    SUBCASE("in-block shuffle moves texture energy") {
        FramePlanes shuffled = frame;
        std::vector<float> block;
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) block.push_back(shuffled.luma.at(x, y));
        rng.shuffle(block);
        size_t idx = 0;
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) shuffled.luma.at(x, y) = block[idx++];
        const auto [after, m1] = extract_frame_features(shuffled, std::nullopt);
        CHECK(std::fabs(after.energy_y - base.energy_y) > 1e-6);
        CHECK(after.level_y == doctest::Approx(base.level_y).epsilon(1e-12));
    }
    SUBCASE("adding a constant moves only the level") {
        FramePlanes shifted = frame;
        for (float& s : shifted.luma.samples) s += 12.0f;
        const auto [after, m1] = extract_frame_features(shifted, std::nullopt);
        CHECK(std::fabs(after.energy_y - base.energy_y) <= 1e-9);
        CHECK(after.level_y - base.level_y == doctest::Approx(12.0).epsilon(1e-12));
    }
}
