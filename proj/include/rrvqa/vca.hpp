#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "rrvqa/video.hpp"

namespace rrvqa {

// Luma blocks are 32x32; 4:2:0 chroma planes are half resolution, so 16x16
// blocks keep the block grids aligned.
constexpr int kLumaBlockSize = 32;
constexpr int kChromaBlockSize = 16;

// Per-frame complexity vector. Component order is the file-format and model
// contract: (E_Y, h, L_Y, E_U, L_U, E_V, L_V).
struct FrameFeatures {
    double energy_y = 0.0;       // E_Y: luma texture energy
    double temporal_grad = 0.0;  // h: texture-energy gradient vs previous frame
    double level_y = 0.0;        // L_Y: mean luma, 0..255
    double energy_u = 0.0;       // E_U
    double level_u = 0.0;        // L_U
    double energy_v = 0.0;       // E_V
    double level_v = 0.0;        // L_V

    std::array<double, 7> to_array() const {
        return {energy_y, temporal_grad, level_y, energy_u, level_u, energy_v, level_v};
    }
    static FrameFeatures from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
};

// Per-block texture energies of one plane, raster order,
// ceil(height/w) x ceil(width/w) blocks.
struct EnergyMap {
    int block_size = 0;
    int blocks_x = 0;
    int blocks_y = 0;
    std::vector<double> energies;

    size_t block_count() const { return energies.size(); }
};

// Segment-level mean of the per-frame vectors.
struct PooledFeatures {
    std::array<double, 7> mean{};
    size_t frame_count = 0;
};

// Texture-energy weight for coefficient (i, j): exp(|((i*j)/w^2)^2 - 1|),
// with the DC coefficient excluded (weight 0).
double texture_weight(int i, int j, int block_size);

// Weighted sum of absolute AC coefficients of one transformed block.
double block_texture_energy(const std::vector<double>& coeffs, int block_size);

// Blockwise texture energy of a plane; edge blocks are filled by edge
// replication before the transform.
EnergyMap frame_energy_map(const Plane& plane, int block_size);

// E/L for all three planes plus the temporal gradient h against the previous
// frame's luma energy map (h = 0 when prev is absent). Returns the luma map
// for chaining. Frame samples must be on the normalized 0..255 scale.
std::pair<FrameFeatures, EnergyMap> extract_frame_features(
    const FramePlanes& frame, const std::optional<EnergyMap>& prev_luma_energy);

// Per-frame features for the whole sequence; element 0 has h = 0. Energy maps
// are computed in parallel across frames (threads <= 0 means all cores); the
// h chain is a sequential pass, so results do not depend on the worker count.
std::vector<FrameFeatures> extract_sequence_features(const VideoSequence& seq,
                                                     int threads = 1);

// Component-wise arithmetic mean. h is averaged over entries 1..N-1 only; the
// first frame's placeholder h = 0 would otherwise bias short clips.
PooledFeatures temporal_pool(const std::vector<FrameFeatures>& features);

}  // namespace rrvqa
