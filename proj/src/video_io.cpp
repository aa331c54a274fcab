#include "rrvqa/video_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace rrvqa {

namespace {

size_t plane_bytes(int w, int h, int bit_depth) {
    return static_cast<size_t>(w) * h * (bit_depth > 8 ? 2 : 1);
}

size_t frame_bytes(int w, int h, int bit_depth) {
    return plane_bytes(w, h, bit_depth) +
           2 * plane_bytes(chroma_width(w), chroma_height(h), bit_depth);
}

// Reads one plane worth of bytes and converts to float code values.
void read_plane(std::ifstream& in, Plane& plane, int bit_depth, std::vector<uint8_t>& buf,
                const std::string& path, size_t frame_index) {
    const size_t bytes = plane_bytes(plane.width, plane.height, bit_depth);
    buf.resize(bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<size_t>(in.gcount()) != bytes)
        throw IoError(path + ": truncated at frame " + std::to_string(frame_index) +
                      ": expected " + std::to_string(bytes) + " plane bytes, got " +
                      std::to_string(in.gcount()));
    const size_t n = plane.samples.size();
    if (bit_depth > 8) {
        const int max_code = (1 << bit_depth) - 1;
        for (size_t i = 0; i < n; ++i) {
            const uint16_t v = static_cast<uint16_t>(buf[2 * i] | (buf[2 * i + 1] << 8));
            if (v > max_code)
                throw DataError(path + ": sample " + std::to_string(v) + " exceeds " +
                                std::to_string(max_code) + " at frame " +
                                std::to_string(frame_index));
            plane.samples[i] = static_cast<float>(v);
        }
    } else {
        for (size_t i = 0; i < n; ++i) plane.samples[i] = static_cast<float>(buf[i]);
    }
}

FramePlanes make_frame(int w, int h) {
    FramePlanes f;
    f.luma = Plane(w, h);
    f.chroma_u = Plane(chroma_width(w), chroma_height(h));
    f.chroma_v = Plane(chroma_width(w), chroma_height(h));
    return f;
}

struct Y4mHeader {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
};

Y4mHeader parse_y4m_header(const std::string& line, const std::string& path) {
    std::istringstream tokens(line);
    std::string tok;
    tokens >> tok;
    if (tok != "YUV4MPEG2")
        throw ParseError(path + ": not a Y4M stream: bad magic token '" + tok + "'");

    Y4mHeader hdr;
    bool have_w = false, have_h = false;
    while (tokens >> tok) {
        if (tok.empty()) continue;
        const std::string value = tok.substr(1);
        switch (tok[0]) {
            case 'W':
                hdr.width = std::atoi(value.c_str());
                have_w = true;
                break;
            case 'H':
                hdr.height = std::atoi(value.c_str());
                have_h = true;
                break;
            case 'C':
                if (value == "420" || value == "420jpeg" || value == "420mpeg2") {
                    hdr.bit_depth = 8;
                } else if (value == "420p10") {
                    hdr.bit_depth = 10;
                } else {
                    throw FormatError(path + ": unsupported chroma tag '" + tok +
                                      "' (only 4:2:0 layouts are handled)");
                }
                break;
            case 'F':
            case 'I':
            case 'A':
            case 'X':
                break;  // frame rate / interlacing / aspect / extensions: ignored
            default:
                throw ParseError(path + ": unrecognized Y4M header token '" + tok + "'");
        }
    }
    if (!have_w || !have_h)
        throw ParseError(path + ": Y4M header is missing the W or H token");
    if (hdr.width <= 0 || hdr.height <= 0)
        throw ParseError(path + ": invalid Y4M geometry " + std::to_string(hdr.width) + "x" +
                         std::to_string(hdr.height));
    return hdr;
}

VideoSequence read_y4m(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");

    std::string header_line;
    if (!std::getline(in, header_line)) throw ParseError(path + ": empty file");
    const Y4mHeader hdr = parse_y4m_header(header_line, path);

    VideoSequence seq;
    seq.width = hdr.width;
    seq.height = hdr.height;
    seq.bit_depth = hdr.bit_depth;

    std::vector<uint8_t> buf;
    std::string frame_line;
    while (std::getline(in, frame_line)) {
        if (frame_line.compare(0, 5, "FRAME") != 0)
            throw ParseError(path + ": expected FRAME marker before frame " +
                             std::to_string(seq.frames.size()) + ", got '" +
                             frame_line.substr(0, 16) + "'");
        FramePlanes frame = make_frame(seq.width, seq.height);
        read_plane(in, frame.luma, seq.bit_depth, buf, path, seq.frames.size());
        read_plane(in, frame.chroma_u, seq.bit_depth, buf, path, seq.frames.size());
        read_plane(in, frame.chroma_v, seq.bit_depth, buf, path, seq.frames.size());
        seq.frames.push_back(std::move(frame));
    }
    seq.validate();
    return seq;
}

VideoSequence read_raw(const std::string& path, const RawParams& params) {
    if (params.width <= 0 || params.height <= 0)
        throw ConfigError(path + ": raw input needs positive dimensions");
    if (params.bit_depth != 8 && params.bit_depth != 10)
        throw FormatError(path + ": raw bit depth must be 8 or 10, got " +
                          std::to_string(params.bit_depth));

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");
    in.seekg(0, std::ios::end);
    const size_t file_size = static_cast<size_t>(in.tellg());
    in.seekg(0, std::ios::beg);

    const size_t fsize = frame_bytes(params.width, params.height, params.bit_depth);
    if (file_size == 0 || file_size % fsize != 0)
        throw IoError(path + ": expected multiple of " + std::to_string(fsize) +
                      " bytes per frame, got " + std::to_string(file_size));

    VideoSequence seq;
    seq.width = params.width;
    seq.height = params.height;
    seq.bit_depth = params.bit_depth;

    const size_t n_frames = file_size / fsize;
    std::vector<uint8_t> buf;
    for (size_t i = 0; i < n_frames; ++i) {
        FramePlanes frame = make_frame(seq.width, seq.height);
        read_plane(in, frame.luma, seq.bit_depth, buf, path, i);
        read_plane(in, frame.chroma_u, seq.bit_depth, buf, path, i);
        read_plane(in, frame.chroma_v, seq.bit_depth, buf, path, i);
        seq.frames.push_back(std::move(frame));
    }
    seq.validate();
    return seq;
}

void write_plane(std::ofstream& out, const Plane& plane, int bit_depth,
                 std::vector<uint8_t>& buf) {
    const int max_code = (1 << bit_depth) - 1;
    const size_t n = plane.samples.size();
    if (bit_depth > 8) {
        buf.resize(2 * n);
        for (size_t i = 0; i < n; ++i) {
            long v = std::lround(plane.samples[i]);
            v = std::clamp(v, 0L, static_cast<long>(max_code));
            buf[2 * i] = static_cast<uint8_t>(v & 0xff);
            buf[2 * i + 1] = static_cast<uint8_t>(v >> 8);
        }
    } else {
        buf.resize(n);
        for (size_t i = 0; i < n; ++i) {
            long v = std::lround(plane.samples[i]);
            buf[i] = static_cast<uint8_t>(std::clamp(v, 0L, static_cast<long>(max_code)));
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

// Catmull-Rom kernel (cubic convolution, a = -0.5).
double cubic_kernel(double x) {
    x = std::fabs(x);
    if (x < 1.0) return ((1.5 * x - 2.5) * x) * x + 1.0;
    if (x < 2.0) return ((-0.5 * x + 2.5) * x - 4.0) * x + 2.0;
    return 0.0;
}

struct Taps {
    int index[4];
    double weight[4];
};

std::vector<Taps> make_taps(int src_n, int dst_n) {
    std::vector<Taps> taps(static_cast<size_t>(dst_n));
    const double scale = static_cast<double>(src_n) / dst_n;
    for (int d = 0; d < dst_n; ++d) {
        const double s = (d + 0.5) * scale - 0.5;
        const int base = static_cast<int>(std::floor(s));
        const double t = s - base;
        Taps& tp = taps[d];
        for (int k = 0; k < 4; ++k) {
            tp.index[k] = std::clamp(base - 1 + k, 0, src_n - 1);
            tp.weight[k] = cubic_kernel(t + 1.0 - k);
        }
    }
    return taps;
}

}  // namespace

RawParams RawParams::parse(const std::string& text) {
    RawParams p;
    char sep = 0;
    int consumed = 0;
    const int got = std::sscanf(text.c_str(), "%d%c%d:%d%n", &p.width, &sep, &p.height,
                                &p.bit_depth, &consumed);
    if (got >= 3 && (sep == 'x' || sep == 'X')) {
        if (got == 3) p.bit_depth = 8;
        if (p.width > 0 && p.height > 0 && (p.bit_depth == 8 || p.bit_depth == 10)) return p;
    }
    throw ConfigError("bad raw geometry '" + text + "': expected WxH or WxH:bitdepth");
}

VideoFormat guess_format(const std::string& path) {
    const size_t dot = path.find_last_of('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == "y4m") return VideoFormat::Y4m;
    }
    return VideoFormat::Raw;
}

VideoSequence read_video(const std::string& path, VideoFormat format,
                         const std::optional<RawParams>& params) {
    if (format == VideoFormat::Y4m) return read_y4m(path);
    if (!params)
        throw ConfigError(path + ": raw input requires geometry parameters (--raw WxH:bitdepth)");
    return read_raw(path, *params);
}

void write_y4m(const VideoSequence& seq, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "YUV4MPEG2 W" << seq.width << " H" << seq.height << " F30:1 Ip A1:1 C420"
        << (seq.bit_depth == 10 ? "p10" : "") << "\n";
    std::vector<uint8_t> buf;
    for (const FramePlanes& frame : seq.frames) {
        out << "FRAME\n";
        write_plane(out, frame.luma, seq.bit_depth, buf);
        write_plane(out, frame.chroma_u, seq.bit_depth, buf);
        write_plane(out, frame.chroma_v, seq.bit_depth, buf);
    }
    if (!out) throw IoError(path + ": write failed");
}

VideoSequence normalize_bit_depth(VideoSequence seq) {
    if (seq.normalized) return seq;
    if (seq.bit_depth != 8 && seq.bit_depth != 10)
        throw FormatError("unsupported bit depth " + std::to_string(seq.bit_depth));
    if (seq.bit_depth > 8) {
        const float inv = 1.0f / static_cast<float>(1 << (seq.bit_depth - 8));
        for (FramePlanes& frame : seq.frames)
            for (Plane* p : {&frame.luma, &frame.chroma_u, &frame.chroma_v})
                for (float& s : p->samples) s *= inv;
    }
    seq.normalized = true;
    return seq;
}

Plane rescale_plane(const Plane& src, int target_width, int target_height) {
    if (src.width == target_width && src.height == target_height) return src;

    const std::vector<Taps> xtaps = make_taps(src.width, target_width);
    const std::vector<Taps> ytaps = make_taps(src.height, target_height);

    // Horizontal pass into a double intermediate, then vertical.
    std::vector<double> mid(static_cast<size_t>(target_width) * src.height);
    for (int y = 0; y < src.height; ++y) {
        const float* in_row = src.row(y);
        double* mid_row = mid.data() + static_cast<size_t>(y) * target_width;
        for (int x = 0; x < target_width; ++x) {
            const Taps& tp = xtaps[x];
            mid_row[x] = tp.weight[0] * in_row[tp.index[0]] + tp.weight[1] * in_row[tp.index[1]] +
                         tp.weight[2] * in_row[tp.index[2]] + tp.weight[3] * in_row[tp.index[3]];
        }
    }

    Plane dst(target_width, target_height);
    for (int y = 0; y < target_height; ++y) {
        const Taps& tp = ytaps[y];
        const double* r0 = mid.data() + static_cast<size_t>(tp.index[0]) * target_width;
        const double* r1 = mid.data() + static_cast<size_t>(tp.index[1]) * target_width;
        const double* r2 = mid.data() + static_cast<size_t>(tp.index[2]) * target_width;
        const double* r3 = mid.data() + static_cast<size_t>(tp.index[3]) * target_width;
        float* out_row = dst.row(y);
        for (int x = 0; x < target_width; ++x) {
            out_row[x] = static_cast<float>(tp.weight[0] * r0[x] + tp.weight[1] * r1[x] +
                                            tp.weight[2] * r2[x] + tp.weight[3] * r3[x]);
        }
    }
    return dst;
}

VideoSequence rescale_to(VideoSequence seq, int target_width, int target_height) {
    if (target_width < 2 || target_height < 2)
        throw ConfigError("rescale target must be at least 2x2, got " +
                          std::to_string(target_width) + "x" + std::to_string(target_height));
    if (seq.width == target_width && seq.height == target_height) return seq;

    const int cw = chroma_width(target_width);
    const int ch = chroma_height(target_height);
    for (FramePlanes& frame : seq.frames) {
        frame.luma = rescale_plane(frame.luma, target_width, target_height);
        frame.chroma_u = rescale_plane(frame.chroma_u, cw, ch);
        frame.chroma_v = rescale_plane(frame.chroma_v, cw, ch);
    }
    seq.width = target_width;
    seq.height = target_height;
    return seq;
}

}  // namespace rrvqa
