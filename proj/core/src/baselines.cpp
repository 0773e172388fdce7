#include "ngr/baselines.hpp"
#include "ngr/errors.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ngr::baselines {

void TvConfig::validate() const {
    if (lambda_h < 0 || lambda_v < 0 || lambda_t < 0)
        throw std::invalid_argument("TvConfig: lambda weights must be nonnegative");
    if (mu <= 0) throw std::invalid_argument("TvConfig: mu must be positive");
    if (iters < 1) throw std::invalid_argument("TvConfig: iters must be >= 1");
}

double tv_objective(const Tensor3& x, const TvConfig& cfg) {
    const std::array<Axis, 3> axes = {Axis::h, Axis::v, Axis::t};
    const std::array<double, 3> lambda = {cfg.lambda_h, cfg.lambda_v, cfg.lambda_t};
    double obj = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (lambda[i] == 0.0) continue;
        Tensor3 g = grad(x, axes[i]);
        double s = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) s += std::fabs(g[p]);
        obj += lambda[i] * s;
    }
    return obj;
}

Tensor3 tv3d_inpaint(const Tensor3& y_in, const solver::ObservationMask& omega,
                     const TvConfig& cfg, solver::IterationTrace* trace) {
    cfg.validate();
    if (!omega.same_shape(y_in)) throw std::invalid_argument("tv3d_inpaint: shape mismatch");
    if (omega.count_observed() == 0) throw std::invalid_argument("tv3d_inpaint: empty observation set");

    const Tensor3 y = solver::project(y_in, omega);
    const std::array<Axis, 3> axes = {Axis::h, Axis::v, Axis::t};
    const std::array<double, 3> lambda = {cfg.lambda_h, cfg.lambda_v, cfg.lambda_t};

    Tensor3 x = mean_fill(y, omega);
    std::array<Tensor3, 3> z, u;
    for (int i = 0; i < 3; ++i) {
        z[i] = Tensor3(y.height(), y.width(), y.channels());
        u[i] = Tensor3(y.height(), y.width(), y.channels());
    }

    // X-step: min (mu/2) sum_i ||grad_i X - Z_i + U_i||^2 + (mu/2)||X - X_prev||^2,
    // a screened solve with unit weights.
    solver::SolverConfig xcfg;
    xcfg.lambda_h = xcfg.lambda_v = xcfg.lambda_t = 1.0;
    xcfg.mu = 1.0;

    const auto t0 = std::chrono::steady_clock::now();

    for (int it = 0; it < cfg.iters; ++it) {
        for (int i = 0; i < 3; ++i) {
            Tensor3 gi = grad(x, axes[i]);
            z[i] = solver::soft_threshold(gi + u[i], lambda[i] / cfg.mu);
        }
        Tensor3 r = x;
        for (int i = 0; i < 3; ++i) r += grad_adjoint(z[i] - u[i], axes[i]);
        x = solver::update_x(r, xcfg);
        if (!x.all_finite()) throw NumericError("tv3d_inpaint: non-finite X");
        // exact constraint enforcement
        for (std::size_t p = 0; p < x.size(); ++p)
            if (omega.observed(p)) x[p] = y[p];
        for (int i = 0; i < 3; ++i) {
            Tensor3 gi = grad(x, axes[i]);
            u[i] += gi - z[i];
        }
        if (trace) {
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0).count();
            trace->rows.push_back({it, tv_objective(x, cfg), 0.0, ms});
        }
    }
    return x;
}

Tensor3 zero_fill(const Tensor3& y, const solver::ObservationMask& omega) {
    return solver::project(y, omega);
}

Tensor3 mean_fill(const Tensor3& y, const solver::ObservationMask& omega) {
    if (!omega.same_shape(y)) throw std::invalid_argument("mean_fill: shape mismatch");
    const std::size_t n = omega.count_observed();
    if (n == 0) throw std::invalid_argument("mean_fill: empty observation set");
    double mean = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (omega.observed(i)) mean += y[i];
    mean /= static_cast<double>(n);
    Tensor3 out = y;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!omega.observed(i)) out[i] = mean;
    return out;
}

} // namespace ngr::baselines
