#include "ngr/solver.hpp"
#include "ngr/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ngr::solver {

std::size_t ObservationMask::count_observed() const {
    std::size_t n = 0;
    for (auto v : data) n += v != 0;
    return n;
}

Tensor3 ObservationMask::to_tensor() const {
    Tensor3 t(height, width, channels);
    for (std::size_t i = 0; i < data.size(); ++i) t[i] = data[i] != 0 ? 1.0 : 0.0;
    return t;
}

ObservationMask ObservationMask::from_tensor(const Tensor3& t) {
    ObservationMask m(t.height(), t.width(), t.channels());
    for (std::size_t i = 0; i < t.size(); ++i) m.data[i] = t[i] != 0.0 ? 1 : 0;
    return m;
}

Tensor3 project(const Tensor3& x, const ObservationMask& omega) {
    if (!omega.same_shape(x)) throw std::invalid_argument("project: shape mismatch");
    Tensor3 out = x;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!omega.observed(i)) out[i] = 0.0;
    return out;
}

void SolverConfig::validate() const {
    if (lambda_h < 0 || lambda_v < 0 || lambda_t < 0)
        throw std::invalid_argument("SolverConfig: lambda weights must be nonnegative");
    if (mu <= 0) throw std::invalid_argument("SolverConfig: mu must be positive");
    if (outer_iters < 1) throw std::invalid_argument("SolverConfig: outer_iters must be >= 1");
    if (adam_steps_per_iter < 1)
        throw std::invalid_argument("SolverConfig: adam_steps_per_iter must be >= 1");
    if (lr <= 0) throw std::invalid_argument("SolverConfig: lr must be positive");
    if (tol < 0) throw std::invalid_argument("SolverConfig: tol must be nonnegative");
    if (snapshot_every < 0) throw std::invalid_argument("SolverConfig: snapshot_every must be >= 0");
    if (input_amplitude <= 0)
        throw std::invalid_argument("SolverConfig: input_amplitude must be positive");
}

void DenoiseConfig::validate() const {
    base.validate();
    if (beta <= 0) throw std::invalid_argument("DenoiseConfig: beta must be positive");
    if (tau < 0) throw std::invalid_argument("DenoiseConfig: tau must be nonnegative");
}

std::string IterationTrace::to_csv() const {
    std::ostringstream os;
    os << "iter,objective,residual_max,ms\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.iter << ',' << r.objective << ',' << r.residual_max << ',' << r.ms << '\n';
    return os.str();
}

Tensor3 soft_threshold(const Tensor3& x, double tau) {
    if (tau < 0) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
    Tensor3 out(x.height(), x.width(), x.channels());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::fabs(x[i]) - tau;
        out[i] = a > 0.0 ? (x[i] > 0.0 ? a : -a) : 0.0;
    }
    return out;
}

void update_theta(AdmmState& state, const SolverConfig& cfg) {
    net::GradientTriple target;
    target.g_h = grad(state.x, Axis::h);
    target.g_v = grad(state.x, Axis::v);
    target.g_t = grad(state.x, Axis::t);
    for (int s = 0; s < cfg.adam_steps_per_iter; ++s) {
        auto lg = net::loss_and_grad(state.params, cfg.net, state.input, target, cfg.lambdas());
        net::adam_step(state.params, lg.grads, state.adam);
        state.last_prediction = std::move(lg.prediction);
    }
}

void update_k(AdmmState& state, const Tensor3& y, const ObservationMask& omega, double mu) {
    if (!omega.same_shape(y)) throw std::invalid_argument("update_k: shape mismatch");
    Tensor3& k = state.k;
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = omega.observed(i) ? 0.0 : -state.x[i] + state.lambda[i] / mu;
}

Tensor3 compute_rhs(const AdmmState& state, const Tensor3& y, const ObservationMask& omega,
                    const SolverConfig& cfg, const net::GradientTriple& triple) {
    Tensor3 r(y.height(), y.width(), y.channels());
    const std::array<const Tensor3*, 3> g = {&triple.g_h, &triple.g_v, &triple.g_t};
    const std::array<Axis, 3> axes = {Axis::h, Axis::v, Axis::t};
    const auto lambda = cfg.lambdas();
    for (int i = 0; i < 3; ++i) {
        if (lambda[i] == 0.0) continue;
        Tensor3 adj = grad_adjoint(*g[i], axes[i]);
        for (std::size_t p = 0; p < r.size(); ++p) r[p] += lambda[i] * adj[p];
    }
    for (std::size_t p = 0; p < r.size(); ++p) {
        const double py = omega.observed(p) ? y[p] : 0.0;
        r[p] += cfg.mu * (py - state.k[p]) + state.lambda[p];
    }
    return r;
}

Tensor3 update_x(const Tensor3& r, const SolverConfig& cfg) {
    if (cfg.mu <= 0) throw std::invalid_argument("update_x: mu must be positive");
    const auto spec_h = grad_spectrum(r.height());
    const auto spec_v = grad_spectrum(r.width());
    const auto spec_t = grad_spectrum(r.channels());
    ComplexTensor3 z = fft3(r);
    const int h = r.height(), w = r.width(), c = r.channels();
    std::size_t idx = 0;
    for (int ci = 0; ci < c; ++ci) {
        const double dt = cfg.lambda_t * spec_t[ci];
        for (int y = 0; y < h; ++y) {
            const double dh = cfg.lambda_h * spec_h[y];
            for (int x = 0; x < w; ++x, ++idx) {
                const double denom = cfg.mu + dt + dh + cfg.lambda_v * spec_v[x];
                z.data[idx] /= denom;
            }
        }
    }
    return ifft3(z);
}

void update_lambda(AdmmState& state, const Tensor3& y, const ObservationMask& omega, double mu) {
    // Off the observation set the K-update enforces the split residual to
    // zero exactly, so the multiplier only ever accumulates on observed
    // entries (where K = 0). Restricting the update keeps Lambda identically
    // zero off the mask instead of letting it pick up the rounding drift of
    // the X-update that runs between the K-update and this step.
    for (std::size_t i = 0; i < state.lambda.size(); ++i) {
        if (!omega.observed(i)) continue;
        state.lambda[i] += mu * (y[i] - state.x[i] - state.k[i]);
    }
}

double objective_value(const AdmmState& state, const Tensor3& y, const ObservationMask& omega,
                       const SolverConfig& cfg) {
    const std::array<const Tensor3*, 3> g = {&state.last_prediction.g_h,
                                             &state.last_prediction.g_v,
                                             &state.last_prediction.g_t};
    const std::array<Axis, 3> axes = {Axis::h, Axis::v, Axis::t};
    const auto lambda = cfg.lambdas();
    double val = 0.0;
    for (int i = 0; i < 3; ++i) {
        Tensor3 diff = grad(state.x, axes[i]);
        if (g[i]->size() == diff.size()) diff -= *g[i];
        val += 0.5 * lambda[i] * dot(diff, diff);
    }
    double quad = 0.0;
    for (std::size_t p = 0; p < y.size(); ++p) {
        const double py = omega.observed(p) ? y[p] : 0.0;
        const double res = py - state.x[p] - state.k[p] + state.lambda[p] / cfg.mu;
        quad += res * res;
    }
    return val + 0.5 * cfg.mu * quad;
}

namespace {

double on_omega_residual(const AdmmState& state, const Tensor3& y, const ObservationMask& omega) {
    double m = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (omega.observed(i)) m = std::max(m, std::fabs(y[i] - state.x[i] - state.k[i]));
    return m;
}

void check_finite(const Tensor3& x, const char* what) {
    if (!x.all_finite()) throw NumericError(std::string("non-finite values in ") + what);
}

Tensor3 clamp01(Tensor3 x) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
    return x;
}

net::NetConfig net_config_for(const SolverConfig& cfg, const Tensor3& y) {
    net::NetConfig nc = cfg.net;
    if (nc.input_channels == 0) nc.input_channels = y.channels();
    if (nc.output_channels == 0) nc.output_channels = y.channels();
    return nc;
}

} // namespace

InpaintResult run_inpainting(const Tensor3& y_in, const ObservationMask& omega,
                             const SolverConfig& cfg_in) {
    SolverConfig cfg = cfg_in;
    cfg.net = net_config_for(cfg_in, y_in);
    cfg.validate();
    if (!omega.same_shape(y_in)) throw std::invalid_argument("run_inpainting: mask/image shape mismatch");
    if (omega.count_observed() == 0) throw std::invalid_argument("run_inpainting: empty observation set");
    if (!y_in.all_finite()) throw std::invalid_argument("run_inpainting: Y contains non-finite values");

    const Tensor3 y = project(y_in, omega);  // Y is zero off Omega by contract

    Rng rng(cfg.seed);
    AdmmState state;
    state.x = y;
    state.k = Tensor3(y.height(), y.width(), y.channels());
    state.lambda = Tensor3(y.height(), y.width(), y.channels());
    state.input = net::init_input(rng, y.height(), y.width(), cfg.net.input_channels,
                                  cfg.input_amplitude);
    state.params = net::init_params(rng, cfg.net);
    state.adam = net::AdamState::init(cfg.net, cfg.lr);

    IterationTrace trace;
    trace.rows.reserve(cfg.outer_iters);
    const auto t0 = std::chrono::steady_clock::now();

    for (int it = 0; it < cfg.outer_iters; ++it) {
        state.iter = it;
        update_theta(state, cfg);
        update_k(state, y, omega, cfg.mu);
        Tensor3 r = compute_rhs(state, y, omega, cfg, state.last_prediction);
        Tensor3 x_new = update_x(r, cfg);
        check_finite(x_new, "X");
        const double change = norm2(x_new - state.x);
        const double scale = std::max(norm2(state.x), 1e-12);
        state.x = std::move(x_new);
        update_lambda(state, y, omega, cfg.mu);

        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0).count();
        trace.rows.push_back({it, objective_value(state, y, omega, cfg),
                              on_omega_residual(state, y, omega), ms});
        if (cfg.snapshot_every > 0 && (it + 1) % cfg.snapshot_every == 0)
            trace.snapshots.push_back({it, state.last_prediction});

        if (cfg.tol > 0 && change / scale < cfg.tol) break;
    }

    return {clamp01(std::move(state.x)), std::move(trace)};
}

DenoiseResult run_denoising(const Tensor3& y, const DenoiseConfig& dcfg_in) {
    DenoiseConfig dcfg = dcfg_in;
    dcfg.base.net = net_config_for(dcfg_in.base, y);
    dcfg.validate();
    if (!y.all_finite()) throw std::invalid_argument("run_denoising: Y contains non-finite values");
    const SolverConfig& cfg = dcfg.base;

    // Block coordinate descent on
    //   (beta/2)||Y - X - S||^2 + tau||S||_1 + sum_i (lambda_i/2)||grad_i X - f_i||^2
    Rng rng(cfg.seed);
    AdmmState state;
    state.x = y;
    state.k = Tensor3(y.height(), y.width(), y.channels());
    state.lambda = Tensor3(y.height(), y.width(), y.channels());
    state.input = net::init_input(rng, y.height(), y.width(), cfg.net.input_channels,
                                  cfg.input_amplitude);
    state.params = net::init_params(rng, cfg.net);
    state.adam = net::AdamState::init(cfg.net, cfg.lr);

    Tensor3 s(y.height(), y.width(), y.channels());

    // X-update reuses the screened solve with beta in place of mu.
    SolverConfig xcfg = cfg;
    xcfg.mu = dcfg.beta;

    IterationTrace trace;
    trace.rows.reserve(cfg.outer_iters);
    const auto t0 = std::chrono::steady_clock::now();
    const std::array<Axis, 3> axes = {Axis::h, Axis::v, Axis::t};
    const auto lambda = cfg.lambdas();

    for (int it = 0; it < cfg.outer_iters; ++it) {
        state.iter = it;
        update_theta(state, cfg);

        if (dcfg.tau > 0) {
            s = soft_threshold(y - state.x, dcfg.tau / dcfg.beta);
        }

        Tensor3 r(y.height(), y.width(), y.channels());
        const std::array<const Tensor3*, 3> g = {&state.last_prediction.g_h,
                                                 &state.last_prediction.g_v,
                                                 &state.last_prediction.g_t};
        for (int i = 0; i < 3; ++i) {
            if (lambda[i] == 0.0) continue;
            Tensor3 adj = grad_adjoint(*g[i], axes[i]);
            for (std::size_t p = 0; p < r.size(); ++p) r[p] += lambda[i] * adj[p];
        }
        for (std::size_t p = 0; p < r.size(); ++p) r[p] += dcfg.beta * (y[p] - s[p]);

        Tensor3 x_new = update_x(r, xcfg);
        check_finite(x_new, "X");
        const double change = norm2(x_new - state.x);
        const double scale = std::max(norm2(state.x), 1e-12);
        state.x = std::move(x_new);

        double obj = 0.0;
        for (int i = 0; i < 3; ++i) {
            Tensor3 diff = grad(state.x, axes[i]) - *g[i];
            obj += 0.5 * lambda[i] * dot(diff, diff);
        }
        double fid = 0.0, l1 = 0.0;
        for (std::size_t p = 0; p < y.size(); ++p) {
            const double res = y[p] - state.x[p] - s[p];
            fid += res * res;
            l1 += std::fabs(s[p]);
        }
        obj += 0.5 * dcfg.beta * fid + dcfg.tau * l1;

        double res_max = 0.0;
        for (std::size_t p = 0; p < y.size(); ++p)
            res_max = std::max(res_max, std::fabs(y[p] - state.x[p] - s[p]));

        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0).count();
        trace.rows.push_back({it, obj, res_max, ms});
        if (cfg.snapshot_every > 0 && (it + 1) % cfg.snapshot_every == 0)
            trace.snapshots.push_back({it, state.last_prediction});

        if (cfg.tol > 0 && change / scale < cfg.tol) break;
    }

    return {clamp01(std::move(state.x)), std::move(s), std::move(trace)};
}

} // namespace ngr::solver
