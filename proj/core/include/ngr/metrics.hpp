#pragma once

#include "ngr/tensor.hpp"

#include <string>

namespace ngr::metrics {

constexpr double kPsnrCap = 100.0;

// Mean over bands of 10*log10(1/MSE_b); per-band values capped at 100 dB.
double psnr(const Tensor3& x, const Tensor3& ref);

// Per-band SSIM with 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
// dynamic range 1; mean over fully interior windows, then over bands.
double ssim(const Tensor3& x, const Tensor3& ref);

// Mean per-pixel spectral angle in degrees; zero-spectrum pixels skipped.
double sam(const Tensor3& x, const Tensor3& ref);

// 100 * sqrt(mean_b(MSE_b / mean(ref_b)^2)), scale ratio 1.
double ergas(const Tensor3& x, const Tensor3& ref);

struct MetricReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double sam = 0.0;    // NaN when channels < 2
    double ergas = 0.0;  // NaN when undefined

    static std::string csv_header();
    std::string to_csv() const;
};

// All four metrics (SAM/ERGAS skipped with NaN when not applicable).
MetricReport evaluate(const Tensor3& x, const Tensor3& ref);

} // namespace ngr::metrics
