#include "ngr/io.hpp"
#include "ngr/errors.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace ngr::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

Tensor3 read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw FormatError("read_png: cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw FormatError("read_png: not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("read_png: decode failure: " + path);
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8 || (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("read_png: only 8-bit grayscale or RGB supported: " + path);
    }
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int c = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;

    std::vector<png_byte> rowbuf(static_cast<std::size_t>(w) * c);
    Tensor3 out(h, w, c);
    for (int y = 0; y < h; ++y) {
        png_read_row(png, rowbuf.data(), nullptr);
        for (int x = 0; x < w; ++x)
            for (int ci = 0; ci < c; ++ci)
                out.at(y, x, ci) = rowbuf[static_cast<std::size_t>(x) * c + ci] / 255.0;
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void write_png(const Tensor3& x, const std::string& path) {
    if (x.channels() != 1 && x.channels() != 3)
        throw FormatError("write_png: only 1 or 3 channels supported");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw FormatError("write_png: cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw FormatError("write_png: encode failure: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, x.width(), x.height(), 8,
                 x.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> rowbuf(static_cast<std::size_t>(x.width()) * x.channels());
    for (int y = 0; y < x.height(); ++y) {
        for (int xi = 0; xi < x.width(); ++xi)
            for (int ci = 0; ci < x.channels(); ++ci) {
                const double v = std::clamp(x.at(y, xi, ci), 0.0, 1.0) * 255.0;
                rowbuf[static_cast<std::size_t>(xi) * x.channels() + ci] =
                    static_cast<png_byte>(std::lround(v));
            }
        png_write_row(png, rowbuf.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

namespace {

constexpr char kTensorMagic[4] = {'N', 'G', 'R', 'T'};
constexpr std::uint32_t kTensorVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is, const char* what) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4))
        throw FormatError(std::string("read_tensor: truncated ") + what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

} // namespace

Tensor3 read_tensor(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("read_tensor: cannot open " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kTensorMagic, 4) != 0)
        throw FormatError("read_tensor: bad magic in " + path);
    if (get_u32(is, "version") != kTensorVersion)
        throw FormatError("read_tensor: unsupported version in " + path);
    const int h = static_cast<int>(get_u32(is, "height"));
    const int w = static_cast<int>(get_u32(is, "width"));
    const int c = static_cast<int>(get_u32(is, "channels"));
    if (h < 1 || w < 1 || c < 1) throw FormatError("read_tensor: bad dimensions in " + path);

    const std::size_t n = static_cast<std::size_t>(h) * w * c;
    std::vector<unsigned char> payload(n * 4);
    if (!is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size())))
        throw FormatError("read_tensor: truncated payload in " + path);
    char extra;
    if (is.read(&extra, 1)) throw FormatError("read_tensor: trailing bytes in " + path);

    Tensor3 out(h, w, c);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(payload[4 * i]) |
                          (static_cast<std::uint32_t>(payload[4 * i + 1]) << 8) |
                          (static_cast<std::uint32_t>(payload[4 * i + 2]) << 16) |
                          (static_cast<std::uint32_t>(payload[4 * i + 3]) << 24);
        float f;
        std::memcpy(&f, &u, 4);
        out[i] = static_cast<double>(f);
    }
    if (!out.all_finite()) throw FormatError("read_tensor: non-finite values in " + path);
    return out;
}

void write_tensor(const Tensor3& x, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("write_tensor: cannot open " + path);
    os.write(kTensorMagic, 4);
    put_u32(os, kTensorVersion);
    put_u32(os, static_cast<std::uint32_t>(x.height()));
    put_u32(os, static_cast<std::uint32_t>(x.width()));
    put_u32(os, static_cast<std::uint32_t>(x.channels()));
    std::vector<unsigned char> payload(x.size() * 4);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const float f = static_cast<float>(x[i]);
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        payload[4 * i] = static_cast<unsigned char>(u & 0xff);
        payload[4 * i + 1] = static_cast<unsigned char>((u >> 8) & 0xff);
        payload[4 * i + 2] = static_cast<unsigned char>((u >> 16) & 0xff);
        payload[4 * i + 3] = static_cast<unsigned char>((u >> 24) & 0xff);
    }
    os.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!os) throw FormatError("write_tensor: write failed: " + path);
}

namespace {

bool has_png_ext(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0;
}

} // namespace

Tensor3 read_image(const std::string& path) {
    return has_png_ext(path) ? read_png(path) : read_tensor(path);
}

void write_image(const Tensor3& x, const std::string& path) {
    if (has_png_ext(path)) write_png(x, path);
    else write_tensor(x, path);
}

namespace {

// One setter per known key; setters do their own range checks and report the
// line number on failure.
using Setter = std::function<void(const std::string& value, int line)>;

[[noreturn]] void bad(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) bad(line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad(line, "not a number: '" + v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) bad(line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad(line, "not an integer: '" + v + "'");
    }
}

void parse_kv(const std::string& path, const std::map<std::string, Setter>& setters) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
        auto trim = [](std::string& t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) bad(line, "expected 'key = value'");
        std::string key = s.substr(0, eq), value = s.substr(eq + 1);
        trim(key);
        trim(value);
        if (key.empty() || value.empty()) bad(line, "expected 'key = value'");
        auto it = setters.find(key);
        if (it == setters.end()) bad(line, "unknown key '" + key + "'");
        it->second(value, line);
    }
}

void add_net_keys(std::map<std::string, Setter>& m, net::NetConfig& nc) {
    m["blocks"] = [&nc](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "blocks must be >= 1");
        nc.blocks = static_cast<int>(n);
    };
    m["width"] = [&nc](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "width must be >= 1");
        nc.width = static_cast<int>(n);
    };
    m["kernel"] = [&nc](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1 || n % 2 == 0) bad(l, "kernel must be odd and positive");
        nc.kernel = static_cast<int>(n);
    };
    m["skip"] = [&nc](const std::string& v, int l) {
        if (v == "true" || v == "1") nc.skip = true;
        else if (v == "false" || v == "0") nc.skip = false;
        else bad(l, "skip must be true/false");
    };
    m["leaky_slope"] = [&nc](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0 || d >= 1) bad(l, "leaky_slope must be in (0,1)");
        nc.leaky_slope = d;
    };
    m["normalization"] = [&nc](const std::string& v, int l) {
        if (v == "none") nc.normalization = net::Norm::none;
        else if (v == "per-channel") nc.normalization = net::Norm::per_channel;
        else bad(l, "normalization must be none|per-channel");
    };
    m["input_channels"] = [&nc](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "input_channels must be >= 1");
        nc.input_channels = static_cast<int>(n);
    };
}

void add_solver_keys(std::map<std::string, Setter>& m, solver::SolverConfig& cfg) {
    auto lam = [](double& target) {
        return [&target](const std::string& v, int l) {
            const double d = parse_double(v, l);
            if (d < 0) bad(l, "lambda weights must be nonnegative");
            target = d;
        };
    };
    m["lambda_h"] = lam(cfg.lambda_h);
    m["lambda_v"] = lam(cfg.lambda_v);
    m["lambda_t"] = lam(cfg.lambda_t);
    m["mu"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0) bad(l, "mu must be positive");
        cfg.mu = d;
    };
    m["outer_iters"] = [&cfg](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "outer_iters must be >= 1");
        cfg.outer_iters = static_cast<int>(n);
    };
    m["adam_steps_per_iter"] = [&cfg](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "adam_steps_per_iter must be >= 1");
        cfg.adam_steps_per_iter = static_cast<int>(n);
    };
    m["lr"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0) bad(l, "lr must be positive");
        cfg.lr = d;
    };
    m["seed"] = [&cfg](const std::string& v, int l) {
        cfg.seed = static_cast<std::uint64_t>(parse_int(v, l));
    };
    m["tol"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d < 0) bad(l, "tol must be nonnegative");
        cfg.tol = d;
    };
    m["snapshot_every"] = [&cfg](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 0) bad(l, "snapshot_every must be >= 0");
        cfg.snapshot_every = static_cast<int>(n);
    };
    m["input_amplitude"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0) bad(l, "input_amplitude must be positive");
        cfg.input_amplitude = d;
    };
    add_net_keys(m, cfg.net);
}

} // namespace

solver::SolverConfig read_solver_config(const std::string& path) {
    solver::SolverConfig cfg;
    std::map<std::string, Setter> m;
    add_solver_keys(m, cfg);
    parse_kv(path, m);
    return cfg;
}

solver::DenoiseConfig read_denoise_config(const std::string& path) {
    solver::DenoiseConfig cfg;
    std::map<std::string, Setter> m;
    add_solver_keys(m, cfg.base);
    m["beta"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0) bad(l, "beta must be positive");
        cfg.beta = d;
    };
    m["tau"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d < 0) bad(l, "tau must be nonnegative");
        cfg.tau = d;
    };
    parse_kv(path, m);
    return cfg;
}

baselines::TvConfig read_tv_config(const std::string& path) {
    baselines::TvConfig cfg;
    std::map<std::string, Setter> m;
    auto lam = [](double& target) {
        return [&target](const std::string& v, int l) {
            const double d = parse_double(v, l);
            if (d < 0) bad(l, "lambda weights must be nonnegative");
            target = d;
        };
    };
    m["lambda_h"] = lam(cfg.lambda_h);
    m["lambda_v"] = lam(cfg.lambda_v);
    m["lambda_t"] = lam(cfg.lambda_t);
    m["mu"] = [&cfg](const std::string& v, int l) {
        const double d = parse_double(v, l);
        if (d <= 0) bad(l, "mu must be positive");
        cfg.mu = d;
    };
    m["iters"] = [&cfg](const std::string& v, int l) {
        const long n = parse_int(v, l);
        if (n < 1) bad(l, "iters must be >= 1");
        cfg.iters = static_cast<int>(n);
    };
    parse_kv(path, m);
    return cfg;
}

void write_text(const std::string& content, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("write_text: cannot open " + path);
    os << content;
    if (!os) throw FormatError("write_text: write failed: " + path);
}

} // namespace ngr::io
