#include "ngr/tensor.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include <fftw3.h>

namespace ngr {

Tensor3::Tensor3(int height, int width, int channels, double fill)
    : h_(height), w_(width), c_(channels) {
    if (height <= 0 || width <= 0 || channels <= 0)
        throw std::invalid_argument("Tensor3: dimensions must be positive");
    data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

bool Tensor3::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
    if (!same_shape(o)) throw std::invalid_argument("Tensor3 +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
    if (!same_shape(o)) throw std::invalid_argument("Tensor3 -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

double dot(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Tensor3& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Tensor3& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_without_replacement: k out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        // index in [i, n)
        int j = i + static_cast<int>(next_double() * (n - i));
        if (j >= n) j = n - 1;
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

namespace {

// Axis extent and stride in the flat layout index(y,x,c) = c*H*W + y*W + x.
struct AxisView {
    int n;            // extent along the axis
    std::size_t stride;
    std::size_t lines;  // number of 1-D lines
};

AxisView axis_view(const Tensor3& x, Axis axis) {
    const std::size_t hw = static_cast<std::size_t>(x.height()) * x.width();
    switch (axis) {
        case Axis::h: return {x.height(), static_cast<std::size_t>(x.width()), 0};
        case Axis::v: return {x.width(), 1, 0};
        case Axis::t: return {x.channels(), hw, 0};
    }
    throw std::invalid_argument("axis_view: bad axis");
}

// Applies fn(flat_base, stride, n) once per 1-D line along the axis.
template <typename F>
void for_each_line(const Tensor3& x, Axis axis, F&& fn) {
    const int h = x.height(), w = x.width(), c = x.channels();
    const std::size_t hw = static_cast<std::size_t>(h) * w;
    switch (axis) {
        case Axis::h:
            for (int ci = 0; ci < c; ++ci)
                for (int xi = 0; xi < w; ++xi)
                    fn(ci * hw + static_cast<std::size_t>(xi), static_cast<std::size_t>(w), h);
            break;
        case Axis::v:
            for (int ci = 0; ci < c; ++ci)
                for (int yi = 0; yi < h; ++yi)
                    fn(ci * hw + static_cast<std::size_t>(yi) * w, std::size_t{1}, w);
            break;
        case Axis::t:
            for (std::size_t p = 0; p < hw; ++p)
                fn(p, hw, c);
            break;
    }
}

} // namespace

Tensor3 grad(const Tensor3& x, Axis axis) {
    Tensor3 out(x.height(), x.width(), x.channels());
    auto src = x.data();
    auto dst = out.data();
    for_each_line(x, axis, [&](std::size_t base, std::size_t stride, int n) {
        for (int k = 0; k < n; ++k) {
            const int kp = (k + 1 == n) ? 0 : k + 1;
            dst[base + k * stride] = src[base + kp * stride] - src[base + k * stride];
        }
    });
    return out;
}

Tensor3 grad_adjoint(const Tensor3& g, Axis axis) {
    Tensor3 out(g.height(), g.width(), g.channels());
    auto src = g.data();
    auto dst = out.data();
    for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
        for (int k = 0; k < n; ++k) {
            const int km = (k == 0) ? n - 1 : k - 1;
            dst[base + k * stride] = src[base + km * stride] - src[base + k * stride];
        }
    });
    return out;
}

std::vector<double> grad_spectrum(int n) {
    if (n < 1) throw std::invalid_argument("grad_spectrum: n must be >= 1");
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sin(std::numbers::pi * k / n);
        v[k] = 4.0 * s * s;
    }
    return v;
}

namespace {

// Plan cache keyed by (C,H,W,sign). Plans are created with FFTW_UNALIGNED so
// they can execute on any buffer via the new-array interface. Creation is
// serialized; execution is thread-safe.
class FftPlans {
public:
    static fftw_plan get(int c, int h, int w, int sign) {
        static FftPlans instance;
        std::lock_guard lock(instance.mu_);
        auto key = std::make_tuple(c, h, w, sign);
        auto it = instance.plans_.find(key);
        if (it != instance.plans_.end()) return it->second;
        std::vector<std::complex<double>> tmp(static_cast<std::size_t>(c) * h * w);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan plan = fftw_plan_dft_3d(c, h, w, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        instance.plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

} // namespace

ComplexTensor3 fft3(const Tensor3& x) {
    ComplexTensor3 z;
    z.height = x.height();
    z.width = x.width();
    z.channels = x.channels();
    z.data.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z.data[i] = x[i];
    fftw_plan plan = FftPlans::get(z.channels, z.height, z.width, FFTW_FORWARD);
    auto* p = reinterpret_cast<fftw_complex*>(z.data.data());
    fftw_execute_dft(plan, p, p);
    return z;
}

Tensor3 ifft3(const ComplexTensor3& z) {
    std::vector<std::complex<double>> buf = z.data;
    fftw_plan plan = FftPlans::get(z.channels, z.height, z.width, FFTW_BACKWARD);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
    Tensor3 out(z.height, z.width, z.channels);
    const double scale = 1.0 / static_cast<double>(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * scale;
    return out;
}

Tensor3 uniform(Rng& rng, int height, int width, int channels, double lo, double hi) {
    if (lo >= hi) throw std::invalid_argument("uniform: lo must be < hi");
    Tensor3 out(height, width, channels);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform(lo, hi);
    return out;
}

} // namespace ngr
