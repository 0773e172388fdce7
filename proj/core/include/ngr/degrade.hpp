#pragma once

#include "ngr/solver.hpp"
#include "ngr/tensor.hpp"

#include <array>
#include <vector>

namespace ngr::degrade {

using solver::ObservationMask;

// Composite Gaussian + impulse + stripe + deadline corruption.
struct MixedNoisePreset {
    std::array<double, 2> gaussian_sigma_range = {0.0, 0.0};
    double impulse_ratio = 0.0;
    double affected_band_fraction = 0.0;
    int stripes_per_band = 0;
    int deadlines_per_band = 0;
    std::array<double, 2> stripe_magnitude_range = {-0.25, 0.25};

    void validate() const;
    static MixedNoisePreset weak();    // sigma U[0.1,0.4], impulse 0.1, 20% bands, 35+35
    static MixedNoisePreset strong();  // impulse 0.25, 50% bands
    static MixedNoisePreset by_name(const std::string& name);  // "weak" | "strong"
};

// Each entry observed independently with probability sr.
ObservationMask random_mask(Rng& rng, int height, int width, int channels, double sr);

// The chosen column count is unobserved across all channels.
ObservationMask deadline_mask(Rng& rng, int height, int width, int channels, int columns);

// x + N(0, sigma^2), unclamped.
Tensor3 add_gaussian(Rng& rng, const Tensor3& x, double sigma);

// Salt-and-pepper: each entry replaced by 0 or 1 (equal probability) with
// probability `ratio`.
Tensor3 add_impulse(Rng& rng, const Tensor3& x, double ratio);

// In round(bands_fraction*C) randomly chosen bands, stripes_per_band random
// columns receive a constant additive offset drawn from magnitude_range.
Tensor3 add_stripes(Rng& rng, const Tensor3& x, double bands_fraction, int stripes_per_band,
                    std::array<double, 2> magnitude_range);

// Composition order: per-band Gaussian with sigma ~ U(range), then impulse,
// then stripes and zeroed deadline columns on the selected band fraction.
Tensor3 apply_mixed(Rng& rng, const Tensor3& x, const MixedNoisePreset& preset);

// Channel concatenation of volumes sharing H and W.
Tensor3 stack_temporal(const std::vector<Tensor3>& volumes);

// Deterministic piecewise-smooth test image in [0,1]: smooth ramps plus
// shaded shapes with sharp boundaries, channels correlated.
Tensor3 synthetic_image(int height, int width, int channels);

} // namespace ngr::degrade
