#include "rrvqa/ssim.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "rrvqa/parallel.hpp"

namespace rrvqa {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> gaussian_taps() {
    std::array<double, kWindow> g{};
    const int half = kWindow / 2;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - half;
        g[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
        sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
}

}  // namespace

double ssim_frame(const Plane& ref, const Plane& test) {
    if (ref.width != test.width || ref.height != test.height)
        throw AlignmentError("ssim: plane geometry mismatch: " + std::to_string(ref.width) + "x" +
                             std::to_string(ref.height) + " vs " + std::to_string(test.width) +
                             "x" + std::to_string(test.height));
    if (ref.width < kWindow || ref.height < kWindow)
        throw DataError("ssim: plane " + std::to_string(ref.width) + "x" +
                        std::to_string(ref.height) + " is smaller than the " +
                        std::to_string(kWindow) + "x" + std::to_string(kWindow) + " window");

    static const std::array<double, kWindow> g = gaussian_taps();
    const int w = ref.width;
    const int h = ref.height;
    const int out_w = w - (kWindow - 1);
    const int out_h = h - (kWindow - 1);

    // Ring of horizontally-convolved rows for the five windowed signals
    // (x, y, x^2, y^2, xy); the vertical pass consumes 11 consecutive rows.
    enum { SX, SY, SXX, SYY, SXY, kSignals };
    std::vector<double> ring(static_cast<size_t>(kSignals) * kWindow * out_w);
    auto ring_row = [&](int signal, int y) {
        return ring.data() + (static_cast<size_t>(signal) * kWindow + y % kWindow) * out_w;
    };

    std::vector<double> px(w), py(w), pxx(w), pyy(w), pxy(w);
    double total = 0.0;

    for (int y = 0; y < h; ++y) {
        const float* xr = ref.row(y);
        const float* yr = test.row(y);
        for (int i = 0; i < w; ++i) {
            const double a = xr[i];
            const double b = yr[i];
            px[i] = a;
            py[i] = b;
            pxx[i] = a * a;
            pyy[i] = b * b;
            pxy[i] = a * b;
        }
        double* rx = ring_row(SX, y);
        double* ry = ring_row(SY, y);
        double* rxx = ring_row(SXX, y);
        double* ryy = ring_row(SYY, y);
        double* rxy = ring_row(SXY, y);
        for (int xo = 0; xo < out_w; ++xo) {
            double ax = 0.0, ay = 0.0, axx = 0.0, ayy = 0.0, axy = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                const double gk = g[k];
                ax += gk * px[xo + k];
                ay += gk * py[xo + k];
                axx += gk * pxx[xo + k];
                ayy += gk * pyy[xo + k];
                axy += gk * pxy[xo + k];
            }
            rx[xo] = ax;
            ry[xo] = ay;
            rxx[xo] = axx;
            ryy[xo] = ayy;
            rxy[xo] = axy;
        }

        if (y < kWindow - 1) continue;
        const int r = y - (kWindow - 1);

        const double* rowsx[kWindow];
        const double* rowsy[kWindow];
        const double* rowsxx[kWindow];
        const double* rowsyy[kWindow];
        const double* rowsxy[kWindow];
        for (int k = 0; k < kWindow; ++k) {
            rowsx[k] = ring_row(SX, r + k);
            rowsy[k] = ring_row(SY, r + k);
            rowsxx[k] = ring_row(SXX, r + k);
            rowsyy[k] = ring_row(SYY, r + k);
            rowsxy[k] = ring_row(SXY, r + k);
        }

        double row_sum = 0.0;
        for (int xo = 0; xo < out_w; ++xo) {
            double mu1 = 0.0, mu2 = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                const double gk = g[k];
                mu1 += gk * rowsx[k][xo];
                mu2 += gk * rowsy[k][xo];
                sxx += gk * rowsxx[k][xo];
                syy += gk * rowsyy[k][xo];
                sxy += gk * rowsxy[k][xo];
            }
            const double var1 = sxx - mu1 * mu1;
            const double var2 = syy - mu2 * mu2;
            const double cov = sxy - mu1 * mu2;
            const double num = (2.0 * mu1 * mu2 + kC1) * (2.0 * cov + kC2);
            const double den = (mu1 * mu1 + mu2 * mu2 + kC1) * (var1 + var2 + kC2);
            row_sum += num / den;
        }
        total += row_sum;
    }

    return total / (static_cast<double>(out_w) * out_h);
}

SsimResult ssim_sequence(const VideoSequence& ref, const VideoSequence& test, int threads) {
    if (!ref.normalized || !test.normalized)
        throw DataError("ssim: sequences must be bit-depth normalized");
    if (ref.width != test.width || ref.height != test.height)
        throw AlignmentError("ssim: sequence geometry mismatch: " + std::to_string(ref.width) +
                             "x" + std::to_string(ref.height) + " vs " +
                             std::to_string(test.width) + "x" + std::to_string(test.height));
    if (ref.frame_count() != test.frame_count())
        throw AlignmentError("ssim: frame count mismatch: " + std::to_string(ref.frame_count()) +
                             " vs " + std::to_string(test.frame_count()));
    if (ref.frame_count() == 0) throw DataError("ssim: empty sequence");

    SsimResult result;
    result.per_frame.resize(ref.frame_count());
    parallel_for(ref.frame_count(), threads, [&](size_t i) {
        result.per_frame[i] = ssim_frame(ref.frames[i].luma, test.frames[i].luma);
    });

    // Frame-ordered reduction: mu_ssim is independent of the worker count.
    double sum = 0.0;
    for (double v : result.per_frame) sum += v;
    result.mu_ssim = sum / static_cast<double>(result.per_frame.size());
    return result;
}

}  // namespace rrvqa
