#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace rrvqa {

// Deterministic splitmix64-based generator. Implemented by hand (rather than
// <random> distributions) so that sampled sequences are identical across
// standard-library implementations; model files, tuning histories and the
// synthetic corpus are byte-reproducible from a seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // Independent stream for (seed, index) pairs: boosting rounds, tuning
    // trials, synth contents. Streams with distinct indices never collide.
    static Rng derive(uint64_t seed, uint64_t index) {
        uint64_t s = seed;
        s ^= index + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        Rng rng(s);
        rng.next_u64();  // decorrelate nearby seeds
        return rng;
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) without modulo bias.
    uint64_t next_below(uint64_t n) {
        const uint64_t threshold = -n % n;  // = 2^64 mod n
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer in [lo, hi], inclusive.
    int64_t next_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Marsaglia polar method; caches the second deviate.
    double normal(double mean = 0.0, double stddev = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return mean + stddev * u * m;
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (size_t i = values.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rrvqa
