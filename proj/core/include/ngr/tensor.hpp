#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ngr {

// Axis of a 3-D volume: h = height (rows), v = width (columns), t = channel.
enum class Axis { h, v, t };

// Dense H×W×C volume of doubles. Element order is channel-major planes,
// row-major within a plane: index(y, x, c) = c*H*W + y*W + x.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(int height, int width, int channels, double fill = 0.0);

    int height() const { return h_; }
    int width() const { return w_; }
    int channels() const { return c_; }
    std::size_t size() const { return data_.size(); }

    double& at(int y, int x, int c) {
        return data_[static_cast<std::size_t>(c) * h_ * w_ + static_cast<std::size_t>(y) * w_ + x];
    }
    double at(int y, int x, int c) const {
        return data_[static_cast<std::size_t>(c) * h_ * w_ + static_cast<std::size_t>(y) * w_ + x];
    }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool same_shape(const Tensor3& o) const {
        return h_ == o.h_ && w_ == o.w_ && c_ == o.c_;
    }
    bool all_finite() const;

    Tensor3& operator+=(const Tensor3& o);
    Tensor3& operator-=(const Tensor3& o);
    Tensor3& operator*=(double s);

    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
    friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
    friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

private:
    int h_ = 0, w_ = 0, c_ = 0;
    std::vector<double> data_;
};

// Complex-valued companion of Tensor3, same element order.
struct ComplexTensor3 {
    int height = 0, width = 0, channels = 0;
    std::vector<std::complex<double>> data;
};

double dot(const Tensor3& a, const Tensor3& b);
double norm2(const Tensor3& a);     // Euclidean norm
double max_abs(const Tensor3& a);

// Deterministic seeded generator. Uses the mt19937_64 engine (algorithm fixed
// by the C++ standard) with explicit mappings to doubles, so identical seeds
// produce identical sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal();

    // k distinct values in [0, n) via partial Fisher-Yates.
    std::vector<int> sample_without_replacement(int n, int k);

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Circular forward difference along `axis`: out[k] = x[k+1 mod N] - x[k].
Tensor3 grad(const Tensor3& x, Axis axis);

// Exact adjoint of grad: out[k] = g[k-1 mod N] - g[k].
Tensor3 grad_adjoint(const Tensor3& g, Axis axis);

// Squared DFT magnitudes of the length-n circular forward difference:
// value[k] = 4 sin^2(pi k / n).
std::vector<double> grad_spectrum(int n);

// Unnormalized forward 3-D DFT / inverse with 1/(HWC) normalization.
ComplexTensor3 fft3(const Tensor3& x);
Tensor3 ifft3(const ComplexTensor3& z);

// i.i.d. uniform samples in [lo, hi); throws std::invalid_argument if lo >= hi.
Tensor3 uniform(Rng& rng, int height, int width, int channels, double lo, double hi);

} // namespace ngr
