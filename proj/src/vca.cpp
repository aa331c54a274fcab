#include "rrvqa/vca.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "rrvqa/dct.hpp"
#include "rrvqa/parallel.hpp"

namespace rrvqa {

namespace {

const DctPlan& plan_for(int block_size) {
    static const DctPlan plan32(kLumaBlockSize);
    static const DctPlan plan16(kChromaBlockSize);
    if (block_size == kLumaBlockSize) return plan32;
    if (block_size == kChromaBlockSize) return plan16;
    throw ConfigError("unsupported block size " + std::to_string(block_size));
}

const std::vector<double>& weights_for(int block_size) {
    auto build = [](int w) {
        std::vector<double> table(static_cast<size_t>(w) * w);
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j)
                table[static_cast<size_t>(i) * w + j] = texture_weight(i, j, w);
        return table;
    };
    static const std::vector<double> w32 = build(kLumaBlockSize);
    static const std::vector<double> w16 = build(kChromaBlockSize);
    if (block_size == kLumaBlockSize) return w32;
    if (block_size == kChromaBlockSize) return w16;
    throw ConfigError("unsupported block size " + std::to_string(block_size));
}

double plane_mean(const Plane& plane) {
    double sum = 0.0;
    for (float s : plane.samples) sum += s;
    return plane.samples.empty() ? 0.0 : sum / static_cast<double>(plane.samples.size());
}

double plane_energy(const EnergyMap& map) {
    double sum = 0.0;
    for (double h : map.energies) sum += h;
    const double denom = static_cast<double>(map.block_count()) *
                         static_cast<double>(map.block_size) * map.block_size;
    return sum / denom;
}

}  // namespace

double texture_weight(int i, int j, int block_size) {
    if (i == 0 && j == 0) return 0.0;  // DC carries no texture
    const double f = static_cast<double>(i) * j / (static_cast<double>(block_size) * block_size);
    return std::exp(std::fabs(f * f - 1.0));
}

double block_texture_energy(const std::vector<double>& coeffs, int block_size) {
    const std::vector<double>& weights = weights_for(block_size);
    if (coeffs.size() != weights.size())
        throw DataError("block_texture_energy: coefficient count mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i) sum += weights[i] * std::fabs(coeffs[i]);
    return sum;
}

EnergyMap frame_energy_map(const Plane& plane, int block_size) {
    const int w = block_size;
    const DctPlan& plan = plan_for(w);
    const std::vector<double>& weights = weights_for(w);

    EnergyMap map;
    map.block_size = w;
    map.blocks_x = (plane.width + w - 1) / w;
    map.blocks_y = (plane.height + w - 1) / w;
    map.energies.resize(static_cast<size_t>(map.blocks_x) * map.blocks_y);

    std::vector<double> block(static_cast<size_t>(w) * w);
    std::vector<double> coeffs(block.size());
    std::vector<double> scratch(block.size());

    for (int by = 0; by < map.blocks_y; ++by) {
        for (int bx = 0; bx < map.blocks_x; ++bx) {
            const int x0 = bx * w;
            const int y0 = by * w;
            if (x0 + w <= plane.width && y0 + w <= plane.height) {
                for (int y = 0; y < w; ++y) {
                    const float* src = plane.row(y0 + y) + x0;
                    double* dst = block.data() + static_cast<size_t>(y) * w;
                    for (int x = 0; x < w; ++x) dst[x] = src[x];
                }
            } else {
                // Edge block: replicate border samples out to the block size.
                for (int y = 0; y < w; ++y) {
                    double* dst = block.data() + static_cast<size_t>(y) * w;
                    for (int x = 0; x < w; ++x) dst[x] = plane.at_clamped(x0 + x, y0 + y);
                }
            }
            plan.forward(block.data(), coeffs.data(), scratch.data());
            double sum = 0.0;
            for (size_t i = 0; i < coeffs.size(); ++i) sum += weights[i] * std::fabs(coeffs[i]);
            map.energies[static_cast<size_t>(by) * map.blocks_x + bx] = sum;
        }
    }
    return map;
}

std::pair<FrameFeatures, EnergyMap> extract_frame_features(
    const FramePlanes& frame, const std::optional<EnergyMap>& prev_luma_energy) {
    EnergyMap luma_map = frame_energy_map(frame.luma, kLumaBlockSize);
    const EnergyMap u_map = frame_energy_map(frame.chroma_u, kChromaBlockSize);
    const EnergyMap v_map = frame_energy_map(frame.chroma_v, kChromaBlockSize);

    FrameFeatures f;
    f.energy_y = plane_energy(luma_map);
    f.energy_u = plane_energy(u_map);
    f.energy_v = plane_energy(v_map);
    f.level_y = plane_mean(frame.luma);
    f.level_u = plane_mean(frame.chroma_u);
    f.level_v = plane_mean(frame.chroma_v);

    if (prev_luma_energy) {
        const EnergyMap& prev = *prev_luma_energy;
        if (prev.block_size != luma_map.block_size || prev.blocks_x != luma_map.blocks_x ||
            prev.blocks_y != luma_map.blocks_y)
            throw DataError("energy map geometry mismatch between consecutive frames");
        double sad = 0.0;
        for (size_t k = 0; k < luma_map.energies.size(); ++k)
            sad += std::fabs(luma_map.energies[k] - prev.energies[k]);
        f.temporal_grad = sad / (static_cast<double>(luma_map.block_count()) *
                                 kLumaBlockSize * kLumaBlockSize);
    }
    return {f, std::move(luma_map)};
}

std::vector<FrameFeatures> extract_sequence_features(const VideoSequence& seq, int threads) {
    if (!seq.normalized)
        throw DataError("feature extraction requires a bit-depth-normalized sequence");
    const size_t n = seq.frame_count();
    if (n == 0) throw DataError("cannot extract features from an empty sequence");

    // Frames are independent up to the h chain: compute per-frame maps and
    // static features in parallel, then run the sequential h pass.
    std::vector<FrameFeatures> features(n);
    std::vector<EnergyMap> luma_maps(n);
    parallel_for(n, threads, [&](size_t i) {
        auto [f, map] = extract_frame_features(seq.frames[i], std::nullopt);
        features[i] = f;
        luma_maps[i] = std::move(map);
    });

    for (size_t i = 1; i < n; ++i) {
        const EnergyMap& cur = luma_maps[i];
        const EnergyMap& prev = luma_maps[i - 1];
        double sad = 0.0;
        for (size_t k = 0; k < cur.energies.size(); ++k)
            sad += std::fabs(cur.energies[k] - prev.energies[k]);
        features[i].temporal_grad =
            sad / (static_cast<double>(cur.block_count()) * kLumaBlockSize * kLumaBlockSize);
    }
    return features;
}

PooledFeatures temporal_pool(const std::vector<FrameFeatures>& features) {
    if (features.empty()) throw DataError("temporal_pool: empty feature list");

    PooledFeatures pooled;
    pooled.frame_count = features.size();
    const double n = static_cast<double>(features.size());
    for (const FrameFeatures& f : features) {
        const auto row = f.to_array();
        for (size_t c = 0; c < row.size(); ++c) pooled.mean[c] += row[c];
    }
    for (double& v : pooled.mean) v /= n;

    // h: the first frame has no predecessor, so its placeholder 0 is excluded.
    if (features.size() > 1) {
        double hsum = 0.0;
        for (size_t i = 1; i < features.size(); ++i) hsum += features[i].temporal_grad;
        pooled.mean[1] = hsum / static_cast<double>(features.size() - 1);
    } else {
        pooled.mean[1] = 0.0;
    }
    return pooled;
}

}  // namespace rrvqa
