#pragma once

#include "ngr/solver.hpp"
#include "ngr/tensor.hpp"

namespace ngr::baselines {

// Anisotropic 3-D total-variation inpainting via split-variable ADMM.
struct TvConfig {
    // A large mu keeps the projected ADMM iteration monotone in the TV
    // objective; smaller values converge faster but oscillate near the
    // fixed point.
    double lambda_h = 1.0, lambda_v = 1.0, lambda_t = 1.0;
    double mu = 256.0;
    int iters = 1000;

    void validate() const;
};

// min sum_i lambda_i ||grad_i X||_1  s.t.  P(X) = P(Y), solved with auxiliary
// Z_i = grad_i X, soft-threshold Z-updates, an FFT screened solve for X, and
// exact re-projection of observed entries every iteration.
Tensor3 tv3d_inpaint(const Tensor3& y, const solver::ObservationMask& omega, const TvConfig& cfg,
                     solver::IterationTrace* trace = nullptr);

// Anisotropic TV objective of x under cfg's weights.
double tv_objective(const Tensor3& x, const TvConfig& cfg);

// Unobserved entries set to 0 / to the mean of observed entries.
Tensor3 zero_fill(const Tensor3& y, const solver::ObservationMask& omega);
Tensor3 mean_fill(const Tensor3& y, const solver::ObservationMask& omega);

} // namespace ngr::baselines
