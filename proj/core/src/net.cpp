#include "ngr/net.hpp"
#include "ngr/errors.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

extern "C" void openblas_set_num_threads(int);

namespace ngr::net {

namespace {

// Within-solve determinism requires a fixed BLAS summation order.
struct BlasSetup {
    BlasSetup() { openblas_set_num_threads(1); }
};
const BlasSetup blas_setup;

constexpr double kNormEps = 1e-5;

std::size_t conv_weight_count(int kernel, int in, int out) {
    return static_cast<std::size_t>(kernel) * kernel * in * out;
}

// Zero-padded "same" convolution via im2col. col is row-major [k*k*in][H*W]:
// each patch row cidx = (ky*k + kx)*in + ci is the input plane ci shifted by
// (ky-pad, kx-pad), so building and unbuilding it is contiguous row copies and
// the H*W dimension lines up with Tensor3's plane layout on both gemm sides.
void im2col(const Tensor3& x, int kernel, std::vector<double>& col) {
    const int h = x.height(), w = x.width(), cin = x.channels();
    const int pad = kernel / 2;
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    const std::size_t rows = conv_weight_count(kernel, cin, 1);
    col.resize(rows * hw);
    auto src = x.data();
    for (int ky = 0; ky < kernel; ++ky) {
        const int dy = ky - pad;
        for (int kx = 0; kx < kernel; ++kx) {
            const int dx = kx - pad;
            // clamped so kernels wider than the image degenerate to empty copies
            const int x0 = std::min(w, std::max(0, -dx));
            const int x1 = std::max(x0, std::min(w, w - dx));
            for (int ci = 0; ci < cin; ++ci) {
                const std::size_t cidx = (static_cast<std::size_t>(ky) * kernel + kx) * cin + ci;
                const double* plane = src.data() + ci * hw;
                double* dst = col.data() + cidx * hw;
                for (int y = 0; y < h; ++y) {
                    double* row = dst + static_cast<std::size_t>(y) * w;
                    const int sy = y + dy;
                    if (sy < 0 || sy >= h) {
                        std::memset(row, 0, sizeof(double) * w);
                        continue;
                    }
                    const double* srow = plane + static_cast<std::size_t>(sy) * w + dx;
                    if (x0 > 0) std::memset(row, 0, sizeof(double) * x0);
                    std::memcpy(row + x0, srow + x0, sizeof(double) * (x1 - x0));
                    if (x1 < w) std::memset(row + x1, 0, sizeof(double) * (w - x1));
                }
            }
        }
    }
}

// Accumulate a col-layout gradient back onto the input grid (transpose of
// im2col); contiguous row-wise adds.
void col2im_add(const std::vector<double>& col, int kernel, Tensor3& dx_t) {
    const int h = dx_t.height(), w = dx_t.width(), cin = dx_t.channels();
    const int pad = kernel / 2;
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    auto dst = dx_t.data();
    for (int ky = 0; ky < kernel; ++ky) {
        const int dy = ky - pad;
        for (int kx = 0; kx < kernel; ++kx) {
            const int dx = kx - pad;
            // clamped so kernels wider than the image degenerate to empty copies
            const int x0 = std::min(w, std::max(0, -dx));
            const int x1 = std::max(x0, std::min(w, w - dx));
            for (int ci = 0; ci < cin; ++ci) {
                const std::size_t cidx = (static_cast<std::size_t>(ky) * kernel + kx) * cin + ci;
                const double* srcrow = col.data() + cidx * hw;
                double* plane = dst.data() + ci * hw;
                for (int y = 0; y < h; ++y) {
                    const int sy = y + dy;
                    if (sy < 0 || sy >= h) continue;
                    const double* row = srcrow + static_cast<std::size_t>(y) * w;
                    double* drow = plane + static_cast<std::size_t>(sy) * w + dx;
                    for (int x2 = x0; x2 < x1; ++x2) drow[x2] += row[x2];
                }
            }
        }
    }
}

// out plane o = b[o] + W[:,o] . col, computed for all planes in one gemm that
// writes straight into the Tensor3 layout.
Tensor3 conv_forward_precol(const Conv& conv, int h, int w, const std::vector<double>& col) {
    const int hw = h * w;
    const int K = conv.kernel * conv.kernel * conv.in_channels;
    Tensor3 out(h, w, conv.out_channels);
    auto dst = out.data();
    cblas_dgemm(CblasRowMajor, CblasTrans, CblasNoTrans, conv.out_channels, hw, K,
                1.0, conv.w.data(), conv.out_channels, col.data(), hw,
                0.0, dst.data(), hw);
    const std::size_t hwz = static_cast<std::size_t>(hw);
    for (int o = 0; o < conv.out_channels; ++o) {
        double* plane = dst.data() + o * hwz;
        const double bias = conv.b[o];
        for (int p = 0; p < hw; ++p) plane[p] += bias;
    }
    return out;
}

Tensor3 conv_forward(const Conv& conv, const Tensor3& x, std::vector<double>& col) {
    im2col(x, conv.kernel, col);
    return conv_forward_precol(conv, x.height(), x.width(), col);
}

// Given dOut and the cached col matrix, fills dW/db and (optionally)
// accumulates the input gradient into dx. dOut's plane layout is already the
// gemm-ready [out][H*W] matrix.
void conv_backward(const Conv& conv, const std::vector<double>& col, const Tensor3& d_out,
                   Conv& d_conv, Tensor3* dx) {
    const int h = d_out.height(), w = d_out.width();
    const int hw = h * w;
    const int K = conv.kernel * conv.kernel * conv.in_channels;
    auto src = d_out.data();
    const std::size_t hwz = static_cast<std::size_t>(hw);

    // dW = col . dOut^T
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, K, conv.out_channels, hw,
                1.0, col.data(), hw, src.data(), hw,
                0.0, d_conv.w.data(), conv.out_channels);
    for (int o = 0; o < conv.out_channels; ++o) {
        double s = 0.0;
        const double* plane = src.data() + o * hwz;
        for (int p = 0; p < hw; ++p) s += plane[p];
        d_conv.b[o] = s;
    }

    if (dx) {
        // dCol = W . dOut, then accumulate back onto the grid
        thread_local std::vector<double> dcol;
        dcol.resize(static_cast<std::size_t>(K) * hw);
        cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, K, hw, conv.out_channels,
                    1.0, conv.w.data(), conv.out_channels, src.data(), hw,
                    0.0, dcol.data(), hw);
        col2im_add(dcol, conv.kernel, *dx);
    }
}

// Affine-free per-channel normalization over spatial positions.
struct NormCache {
    std::vector<double> inv_std;  // per channel
};

// In place; one statistics pass (var = E[z^2] - mean^2) plus one write pass.
void norm_forward(Tensor3& z, NormCache& cache) {
    const int h = z.height(), w = z.width(), c = z.channels();
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    cache.inv_std.resize(c);
    auto buf = z.data();
    for (int ci = 0; ci < c; ++ci) {
        double* zp = buf.data() + ci * hw;
        double sum = 0.0, sumsq = 0.0;
        for (std::size_t p = 0; p < hw; ++p) {
            sum += zp[p];
            sumsq += zp[p] * zp[p];
        }
        const double mean = sum / static_cast<double>(hw);
        const double var = std::max(0.0, sumsq / static_cast<double>(hw) - mean * mean);
        const double inv = 1.0 / std::sqrt(var + kNormEps);
        cache.inv_std[ci] = inv;
        for (std::size_t p = 0; p < hw; ++p) zp[p] = (zp[p] - mean) * inv;
    }
}

// Backward through leaky ReLU then the normalization, fused and in place:
// dn = da * leaky'(n); dz = inv_std * (dn - mean(dn) - n * mean(dn*n)).
// The pre-activation n is recovered from the stored activation a: the leaky
// ReLU is strictly monotone, so n = a for a > 0 and n = a/slope otherwise.
void leaky_norm_backward_inplace(Tensor3& da, const Tensor3& a, double slope,
                                 const NormCache& cache) {
    const int h = a.height(), w = a.width(), c = a.channels();
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    const double inv_slope = 1.0 / slope;
    auto dap = da.data();
    auto ap = a.data();
    for (int ci = 0; ci < c; ++ci) {
        double* d = dap.data() + ci * hw;
        const double* av = ap.data() + ci * hw;
        double mean_d = 0.0, mean_dn = 0.0;
        for (std::size_t p = 0; p < hw; ++p) {
            const bool pos = av[p] > 0.0;
            const double dn = pos ? d[p] : slope * d[p];
            const double n = pos ? av[p] : av[p] * inv_slope;
            mean_d += dn;
            mean_dn += dn * n;
        }
        mean_d /= static_cast<double>(hw);
        mean_dn /= static_cast<double>(hw);
        const double inv = cache.inv_std[ci];
        for (std::size_t p = 0; p < hw; ++p) {
            const bool pos = av[p] > 0.0;
            const double dn = pos ? d[p] : slope * d[p];
            const double n = pos ? av[p] : av[p] * inv_slope;
            d[p] = inv * (dn - mean_d - n * mean_dn);
        }
    }
}

void leaky_forward_inplace(Tensor3& n, double slope) {
    for (std::size_t i = 0; i < n.size(); ++i)
        if (n[i] <= 0.0) n[i] *= slope;
}

// Uses the activation's sign, which the leaky ReLU preserves.
void leaky_backward_inplace(Tensor3& da, const Tensor3& a, double slope) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] <= 0.0) da[i] *= slope;
}

struct BlockCache {
    std::vector<double> col;
    NormCache norm;
    Tensor3 a;  // post-activation (pre-activation recoverable, see norm_backward)
};

struct ForwardCache {
    std::vector<BlockCache> blocks;
    Tensor3 trunk_out;
    std::vector<double> head_col;  // shared by the three heads
    GradientTriple pred;
};

void run_forward(const NetParams& params, const NetConfig& cfg, const Tensor3& input,
                 ForwardCache& fc) {
    cfg.validate();
    if (input.channels() != cfg.input_channels)
        throw std::invalid_argument("forward: input channel count does not match NetConfig");
    if (static_cast<int>(params.trunk.size()) != cfg.blocks)
        throw std::invalid_argument("forward: params do not match NetConfig");

    fc.blocks.resize(cfg.blocks);
    const Tensor3* prev = &input;
    for (int b = 0; b < cfg.blocks; ++b) {
        BlockCache& bc = fc.blocks[b];
        Tensor3 z = conv_forward(params.trunk[b], *prev, bc.col);
        if (cfg.normalization == Norm::per_channel) norm_forward(z, bc.norm);
        leaky_forward_inplace(z, cfg.leaky_slope);
        bc.a = std::move(z);
        prev = &bc.a;
    }
    if (cfg.skip && cfg.blocks > 1)
        fc.trunk_out = fc.blocks.back().a + fc.blocks.front().a;
    else
        fc.trunk_out = fc.blocks.back().a;

    im2col(fc.trunk_out, cfg.kernel, fc.head_col);
    const int h = fc.trunk_out.height(), w = fc.trunk_out.width();
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    const Conv& h0 = params.heads[0];
    const int oc = h0.out_channels;
    const int K = h0.kernel * h0.kernel * h0.in_channels;

    // The three heads share the col matrix, so one stacked gemm over 3*oc
    // output channels packs it once instead of three times.
    thread_local std::vector<double> w_stack, out_stack;
    w_stack.resize(static_cast<std::size_t>(K) * 3 * oc);
    for (int k = 0; k < K; ++k)
        for (int hd = 0; hd < 3; ++hd)
            for (int o = 0; o < oc; ++o)
                w_stack[(static_cast<std::size_t>(k) * 3 + hd) * oc + o] =
                    params.heads[hd].w[static_cast<std::size_t>(k) * oc + o];
    out_stack.resize(static_cast<std::size_t>(3) * oc * hw);
    cblas_dgemm(CblasRowMajor, CblasTrans, CblasNoTrans, 3 * oc, static_cast<int>(hw), K,
                1.0, w_stack.data(), 3 * oc, fc.head_col.data(), static_cast<int>(hw),
                0.0, out_stack.data(), static_cast<int>(hw));

    std::array<Tensor3*, 3> preds = {&fc.pred.g_h, &fc.pred.g_v, &fc.pred.g_t};
    for (int hd = 0; hd < 3; ++hd) {
        *preds[hd] = Tensor3(h, w, oc);
        auto dst = preds[hd]->data();
        for (int o = 0; o < oc; ++o) {
            const double* src = out_stack.data() + (static_cast<std::size_t>(hd) * oc + o) * hw;
            double* plane = dst.data() + static_cast<std::size_t>(o) * hw;
            const double bias = params.heads[hd].b[o];
            for (std::size_t p = 0; p < hw; ++p) plane[p] = src[p] + bias;
        }
    }
}

} // namespace

void NetConfig::validate() const {
    if (blocks < 1) throw std::invalid_argument("NetConfig: blocks must be >= 1");
    if (width < 1) throw std::invalid_argument("NetConfig: width must be >= 1");
    if (kernel < 1 || kernel % 2 == 0) throw std::invalid_argument("NetConfig: kernel must be odd and positive");
    if (leaky_slope <= 0.0 || leaky_slope >= 1.0) throw std::invalid_argument("NetConfig: leaky_slope must be in (0,1)");
    if (input_channels < 1) throw std::invalid_argument("NetConfig: input_channels must be set");
}

Conv Conv::zeros(int kernel, int in_channels, int out_channels) {
    Conv c;
    c.kernel = kernel;
    c.in_channels = in_channels;
    c.out_channels = out_channels;
    c.w.assign(conv_weight_count(kernel, in_channels, out_channels), 0.0);
    c.b.assign(out_channels, 0.0);
    return c;
}

NetParams NetParams::zeros(const NetConfig& cfg) {
    cfg.validate();
    NetParams p;
    p.trunk.reserve(cfg.blocks);
    int in = cfg.input_channels;
    for (int b = 0; b < cfg.blocks; ++b) {
        p.trunk.push_back(Conv::zeros(cfg.kernel, in, cfg.width));
        in = cfg.width;
    }
    for (auto& h : p.heads) h = Conv::zeros(cfg.kernel, cfg.width, cfg.head_channels());
    return p;
}

bool NetParams::shapes_match(const NetParams& o) const {
    if (trunk.size() != o.trunk.size()) return false;
    auto same = [](const Conv& a, const Conv& b) {
        return a.kernel == b.kernel && a.in_channels == b.in_channels &&
               a.out_channels == b.out_channels;
    };
    for (std::size_t i = 0; i < trunk.size(); ++i)
        if (!same(trunk[i], o.trunk[i])) return false;
    for (std::size_t i = 0; i < heads.size(); ++i)
        if (!same(heads[i], o.heads[i])) return false;
    return true;
}

AdamState AdamState::init(const NetConfig& cfg, double lr) {
    AdamState s;
    s.m = NetParams::zeros(cfg);
    s.v = NetParams::zeros(cfg);
    s.lr = lr;
    return s;
}

Tensor3 init_input(Rng& rng, int height, int width, int channels, double amplitude) {
    if (amplitude <= 0.0) throw std::invalid_argument("init_input: amplitude must be positive");
    return uniform(rng, height, width, channels, 0.0, amplitude);
}

NetParams init_params(Rng& rng, const NetConfig& cfg) {
    NetParams p = NetParams::zeros(cfg);
    auto fill = [&](Conv& c) {
        const double std = std::sqrt(2.0 / (static_cast<double>(c.kernel) * c.kernel * c.in_channels));
        for (double& w : c.w) w = rng.normal() * std;
        // biases stay zero
    };
    for (auto& c : p.trunk) fill(c);
    for (auto& c : p.heads) fill(c);
    return p;
}

GradientTriple forward(const NetParams& params, const NetConfig& cfg, const Tensor3& input) {
    // reused across calls so the online-training loop does not reallocate the
    // large patch matrices every iteration
    thread_local ForwardCache fc;
    run_forward(params, cfg, input, fc);
    return std::move(fc.pred);
}

LossGrad loss_and_grad(const NetParams& params, const NetConfig& cfg, const Tensor3& input,
                       const GradientTriple& target, const std::array<double, 3>& lambda) {
    for (double l : lambda)
        if (l < 0.0) throw std::invalid_argument("loss_and_grad: lambda must be nonnegative");

    thread_local ForwardCache fc;
    run_forward(params, cfg, input, fc);
    const std::array<const Tensor3*, 3> tgt = {&target.g_h, &target.g_v, &target.g_t};
    const std::array<const Tensor3*, 3> pred = {&fc.pred.g_h, &fc.pred.g_v, &fc.pred.g_t};
    for (int i = 0; i < 3; ++i)
        if (!tgt[i]->same_shape(*pred[i]))
            throw std::invalid_argument("loss_and_grad: target shape mismatch");

    LossGrad out;
    out.grads = NetParams::zeros(cfg);

    // Heads: dLoss/dpred_i = lambda_i * (pred_i - target_i). The three heads'
    // input gradients sum, so their dCol products collapse into one gemm over
    // the stacked output channels instead of three skinny, bandwidth-bound
    // ones.
    const int th = fc.trunk_out.height(), tw = fc.trunk_out.width();
    const int hw = th * tw;
    const int oc = params.heads[0].out_channels;
    const int K = params.heads[0].kernel * params.heads[0].kernel * params.heads[0].in_channels;
    thread_local std::vector<double> w_stack, dout_stack, head_dcol;
    w_stack.resize(static_cast<std::size_t>(K) * 3 * oc);
    dout_stack.resize(static_cast<std::size_t>(3) * oc * hw);
    for (int i = 0; i < 3; ++i) {
        Tensor3 diff = *pred[i] - *tgt[i];
        out.loss += 0.5 * lambda[i] * dot(diff, diff);
        diff *= lambda[i];
        conv_backward(params.heads[i], fc.head_col, diff, out.grads.heads[i], nullptr);
        std::memcpy(dout_stack.data() + static_cast<std::size_t>(i) * oc * hw,
                    diff.data().data(), sizeof(double) * oc * hw);
        const double* wsrc = params.heads[i].w.data();
        for (int k = 0; k < K; ++k)
            std::memcpy(w_stack.data() + static_cast<std::size_t>(k) * 3 * oc + i * oc,
                        wsrc + static_cast<std::size_t>(k) * oc, sizeof(double) * oc);
    }
    head_dcol.resize(static_cast<std::size_t>(K) * hw);
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, K, hw, 3 * oc,
                1.0, w_stack.data(), 3 * oc, dout_stack.data(), hw,
                0.0, head_dcol.data(), hw);
    Tensor3 d_trunk(th, tw, fc.trunk_out.channels());
    col2im_add(head_dcol, params.heads[0].kernel, d_trunk);

    // Trunk, last block to first. The long skip adds d_trunk to the first
    // block's activation gradient as well.
    std::vector<Tensor3> da(cfg.blocks);
    da[cfg.blocks - 1] = d_trunk;
    const bool skip = cfg.skip && cfg.blocks > 1;
    if (skip) da[0] = d_trunk;

    for (int b = cfg.blocks - 1; b >= 0; --b) {
        const BlockCache& bc = fc.blocks[b];
        if (cfg.normalization == Norm::per_channel)
            leaky_norm_backward_inplace(da[b], bc.a, cfg.leaky_slope, bc.norm);
        else
            leaky_backward_inplace(da[b], bc.a, cfg.leaky_slope);
        if (b > 0) {
            if (da[b - 1].size() == 0)
                da[b - 1] = Tensor3(bc.a.height(), bc.a.width(), params.trunk[b].in_channels);
            conv_backward(params.trunk[b], bc.col, da[b], out.grads.trunk[b], &da[b - 1]);
        } else {
            conv_backward(params.trunk[b], bc.col, da[b], out.grads.trunk[b], nullptr);
        }
    }

    out.prediction = std::move(fc.pred);
    return out;
}

void adam_step(NetParams& params, const NetParams& grads, AdamState& state) {
    if (!params.shapes_match(grads) || !params.shapes_match(state.m))
        throw std::invalid_argument("adam_step: shape mismatch");
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    auto step = [&](std::vector<double>& th, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
        for (std::size_t i = 0; i < th.size(); ++i) {
            m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
            v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            th[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
        }
    };
    for (std::size_t l = 0; l < params.trunk.size(); ++l) {
        step(params.trunk[l].w, grads.trunk[l].w, state.m.trunk[l].w, state.v.trunk[l].w);
        step(params.trunk[l].b, grads.trunk[l].b, state.m.trunk[l].b, state.v.trunk[l].b);
    }
    for (std::size_t l = 0; l < params.heads.size(); ++l) {
        step(params.heads[l].w, grads.heads[l].w, state.m.heads[l].w, state.v.heads[l].w);
        step(params.heads[l].b, grads.heads[l].b, state.m.heads[l].b, state.v.heads[l].b);
    }
}

namespace {

constexpr char kMagic[4] = {'N', 'G', 'R', 'W'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("checkpoint: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw FormatError("checkpoint: truncated payload");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

} // namespace

void save_params(const NetParams& params, const NetConfig& cfg, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("checkpoint: cannot open for writing: " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(cfg.blocks));
    write_u32(os, static_cast<std::uint32_t>(cfg.width));
    write_u32(os, static_cast<std::uint32_t>(cfg.kernel));
    write_u32(os, cfg.skip ? 1 : 0);
    write_f64(os, cfg.leaky_slope);
    write_u32(os, cfg.normalization == Norm::per_channel ? 1 : 0);
    write_u32(os, static_cast<std::uint32_t>(cfg.input_channels));
    write_u32(os, static_cast<std::uint32_t>(cfg.output_channels));
    auto dump = [&](const Conv& c) {
        for (double v : c.w) write_f64(os, v);
        for (double v : c.b) write_f64(os, v);
    };
    for (const auto& c : params.trunk) dump(c);
    for (const auto& c : params.heads) dump(c);
    if (!os) throw FormatError("checkpoint: write failed: " + path);
}

NetParams load_params(const std::string& path, const NetConfig& expected_cfg) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("checkpoint: cannot open: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("checkpoint: bad magic");
    if (read_u32(is) != kVersion) throw FormatError("checkpoint: unsupported version");
    NetConfig cfg;
    cfg.blocks = static_cast<int>(read_u32(is));
    cfg.width = static_cast<int>(read_u32(is));
    cfg.kernel = static_cast<int>(read_u32(is));
    cfg.skip = read_u32(is) != 0;
    cfg.leaky_slope = read_f64(is);
    cfg.normalization = read_u32(is) != 0 ? Norm::per_channel : Norm::none;
    cfg.input_channels = static_cast<int>(read_u32(is));
    cfg.output_channels = static_cast<int>(read_u32(is));
    if (!(cfg == expected_cfg)) throw FormatError("checkpoint: NetConfig mismatch");

    NetParams p = NetParams::zeros(cfg);
    auto slurp = [&](Conv& c) {
        for (double& v : c.w) v = read_f64(is);
        for (double& v : c.b) v = read_f64(is);
    };
    for (auto& c : p.trunk) slurp(c);
    for (auto& c : p.heads) slurp(c);
    // no trailing bytes allowed
    char extra;
    if (is.read(&extra, 1)) throw FormatError("checkpoint: trailing bytes");
    return p;
}

} // namespace ngr::net
