#include "ngr/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ngr::degrade {

void MixedNoisePreset::validate() const {
    if (gaussian_sigma_range[0] > gaussian_sigma_range[1] ||
        stripe_magnitude_range[0] > stripe_magnitude_range[1])
        throw std::invalid_argument("MixedNoisePreset: range bounds out of order");
    if (impulse_ratio < 0 || impulse_ratio > 1 ||
        affected_band_fraction < 0 || affected_band_fraction > 1)
        throw std::invalid_argument("MixedNoisePreset: fractions must be in [0,1]");
    if (stripes_per_band < 0 || deadlines_per_band < 0)
        throw std::invalid_argument("MixedNoisePreset: counts must be nonnegative");
}

MixedNoisePreset MixedNoisePreset::weak() {
    MixedNoisePreset p;
    p.gaussian_sigma_range = {0.1, 0.4};
    p.impulse_ratio = 0.1;
    p.affected_band_fraction = 0.2;
    p.stripes_per_band = 35;
    p.deadlines_per_band = 35;
    return p;
}

MixedNoisePreset MixedNoisePreset::strong() {
    MixedNoisePreset p = weak();
    p.impulse_ratio = 0.25;
    p.affected_band_fraction = 0.5;
    return p;
}

MixedNoisePreset MixedNoisePreset::by_name(const std::string& name) {
    if (name == "weak") return weak();
    if (name == "strong") return strong();
    throw std::invalid_argument("unknown mixed-noise preset: " + name);
}

ObservationMask random_mask(Rng& rng, int height, int width, int channels, double sr) {
    if (!(sr > 0.0 && sr <= 1.0)) throw std::invalid_argument("random_mask: sr must be in (0,1]");
    ObservationMask m(height, width, channels);
    for (auto& v : m.data) v = rng.next_double() < sr ? 1 : 0;
    return m;
}

ObservationMask deadline_mask(Rng& rng, int height, int width, int channels, int columns) {
    if (columns < 0 || columns > width)
        throw std::invalid_argument("deadline_mask: column count out of range");
    ObservationMask m(height, width, channels, true);
    const auto cols = rng.sample_without_replacement(width, columns);
    const std::size_t hw = static_cast<std::size_t>(height) * width;
    for (int col : cols)
        for (int c = 0; c < channels; ++c)
            for (int y = 0; y < height; ++y)
                m.data[c * hw + static_cast<std::size_t>(y) * width + col] = 0;
    return m;
}

Tensor3 add_gaussian(Rng& rng, const Tensor3& x, double sigma) {
    if (sigma < 0) throw std::invalid_argument("add_gaussian: sigma must be nonnegative");
    Tensor3 out = x;
    if (sigma == 0) return out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += sigma * rng.normal();
    return out;
}

Tensor3 add_impulse(Rng& rng, const Tensor3& x, double ratio) {
    if (ratio < 0 || ratio > 1) throw std::invalid_argument("add_impulse: ratio must be in [0,1]");
    Tensor3 out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.next_double() < ratio) out[i] = rng.next_double() < 0.5 ? 0.0 : 1.0;
    }
    return out;
}

namespace {

void corrupt_band_columns(Tensor3& x, int band, const std::vector<int>& cols, double offset,
                          bool zero) {
    for (int col : cols)
        for (int y = 0; y < x.height(); ++y) {
            double& v = x.at(y, col, band);
            v = zero ? 0.0 : v + offset;
        }
}

} // namespace

Tensor3 add_stripes(Rng& rng, const Tensor3& x, double bands_fraction, int stripes_per_band,
                    std::array<double, 2> magnitude_range) {
    if (bands_fraction < 0 || bands_fraction > 1)
        throw std::invalid_argument("add_stripes: bands_fraction must be in [0,1]");
    if (stripes_per_band < 0 || stripes_per_band > x.width())
        throw std::invalid_argument("add_stripes: stripes_per_band out of range");
    Tensor3 out = x;
    const int nbands = static_cast<int>(std::lround(bands_fraction * x.channels()));
    const auto bands = rng.sample_without_replacement(x.channels(), nbands);
    for (int band : bands) {
        const auto cols = rng.sample_without_replacement(x.width(), stripes_per_band);
        for (int col : cols) {
            const double offset = rng.uniform(magnitude_range[0], magnitude_range[1]);
            corrupt_band_columns(out, band, {col}, offset, false);
        }
    }
    return out;
}

Tensor3 apply_mixed(Rng& rng, const Tensor3& x, const MixedNoisePreset& preset) {
    preset.validate();
    Tensor3 out = x;
    const std::size_t hw = static_cast<std::size_t>(x.height()) * x.width();

    // 1. per-band Gaussian
    if (preset.gaussian_sigma_range[1] > 0) {
        for (int c = 0; c < x.channels(); ++c) {
            const double sigma = rng.uniform(preset.gaussian_sigma_range[0],
                                             preset.gaussian_sigma_range[1]);
            double* plane = out.data().data() + c * hw;
            for (std::size_t p = 0; p < hw; ++p) plane[p] += sigma * rng.normal();
        }
    }
    // 2. impulse over the whole cube
    if (preset.impulse_ratio > 0) out = add_impulse(rng, out, preset.impulse_ratio);

    // 3. stripes and deadlines on the selected band fraction
    const int nbands = static_cast<int>(std::lround(preset.affected_band_fraction * x.channels()));
    const auto bands = rng.sample_without_replacement(x.channels(), nbands);
    const int nstripes = std::min(preset.stripes_per_band, x.width());
    const int ndead = std::min(preset.deadlines_per_band, x.width());
    for (int band : bands) {
        const auto stripe_cols = rng.sample_without_replacement(x.width(), nstripes);
        for (int col : stripe_cols) {
            const double offset = rng.uniform(preset.stripe_magnitude_range[0],
                                              preset.stripe_magnitude_range[1]);
            corrupt_band_columns(out, band, {col}, offset, false);
        }
        const auto dead_cols = rng.sample_without_replacement(x.width(), ndead);
        corrupt_band_columns(out, band, dead_cols, 0.0, true);
    }
    return out;
}

Tensor3 stack_temporal(const std::vector<Tensor3>& volumes) {
    if (volumes.empty()) throw std::invalid_argument("stack_temporal: empty input");
    const int h = volumes[0].height(), w = volumes[0].width();
    int c_total = 0;
    for (const auto& v : volumes) {
        if (v.height() != h || v.width() != w)
            throw std::invalid_argument("stack_temporal: spatial dimension mismatch");
        c_total += v.channels();
    }
    Tensor3 out(h, w, c_total);
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    std::size_t offset = 0;
    for (const auto& v : volumes) {
        std::copy(v.data().begin(), v.data().end(), out.data().begin() + offset);
        offset += hw * v.channels();
    }
    return out;
}

Tensor3 synthetic_image(int height, int width, int channels) {
    Tensor3 out(height, width, channels);
    for (int c = 0; c < channels; ++c) {
        const double phase = 0.5 + 0.35 * c;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const double fy = static_cast<double>(y) / height;
                const double fx = static_cast<double>(x) / width;
                // smooth background ramp with a gentle wave
                double v = 0.25 + 0.3 * fx + 0.15 * fy +
                           0.08 * std::sin(2.0 * std::numbers::pi * (fx + 0.5 * fy) + phase);
                // disk with smooth radial shading
                const double dx = fx - 0.42, dy = fy - 0.38;
                const double r = std::sqrt(dx * dx + dy * dy);
                if (r < 0.22) v += 0.28 * (1.0 - r / 0.22);
                // rectangle with a diagonal shade
                if (fx > 0.58 && fx < 0.9 && fy > 0.55 && fy < 0.85)
                    v -= 0.22 - 0.1 * (fx - 0.58);
                out.at(y, x, c) = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return out;
}

} // namespace ngr::degrade
