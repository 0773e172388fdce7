#include "ngr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ngr::metrics {

namespace {

void check_shapes(const Tensor3& x, const Tensor3& ref, const char* what) {
    if (!x.same_shape(ref)) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

} // namespace

double psnr(const Tensor3& x, const Tensor3& ref) {
    check_shapes(x, ref, "psnr");
    const std::size_t hw = static_cast<std::size_t>(x.height()) * x.width();
    double acc = 0.0;
    for (int c = 0; c < x.channels(); ++c) {
        double mse = 0.0;
        for (std::size_t p = 0; p < hw; ++p) {
            const double d = x[c * hw + p] - ref[c * hw + p];
            mse += d * d;
        }
        mse /= static_cast<double>(hw);
        const double band = mse > 0.0 ? 10.0 * std::log10(1.0 / mse) : kPsnrCap;
        acc += std::min(band, kPsnrCap);
    }
    return acc / x.channels();
}

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

std::vector<double> gaussian_window() {
    std::vector<double> w(static_cast<std::size_t>(kWin) * kWin);
    const int half = kWin / 2;
    double sum = 0.0;
    for (int y = 0; y < kWin; ++y)
        for (int x = 0; x < kWin; ++x) {
            const double dy = y - half, dx = x - half;
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * kSigma * kSigma));
            w[static_cast<std::size_t>(y) * kWin + x] = v;
            sum += v;
        }
    for (double& v : w) v /= sum;
    return w;
}

} // namespace

double ssim(const Tensor3& x, const Tensor3& ref) {
    check_shapes(x, ref, "ssim");
    if (x.height() < kWin || x.width() < kWin)
        throw std::invalid_argument("ssim: spatial dims must be >= 11");
    static const std::vector<double> win = gaussian_window();
    const double c1 = kK1 * kK1, c2 = kK2 * kK2;
    const int h = x.height(), w = x.width();
    const std::size_t hw = static_cast<std::size_t>(h) * w;

    double band_acc = 0.0;
    for (int c = 0; c < x.channels(); ++c) {
        const double* a = x.data().data() + c * hw;
        const double* b = ref.data().data() + c * hw;
        double acc = 0.0;
        std::size_t count = 0;
        for (int y0 = 0; y0 + kWin <= h; ++y0) {
            for (int x0 = 0; x0 + kWin <= w; ++x0) {
                double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
                for (int dy = 0; dy < kWin; ++dy)
                    for (int dx = 0; dx < kWin; ++dx) {
                        const double wgt = win[static_cast<std::size_t>(dy) * kWin + dx];
                        const double va = a[static_cast<std::size_t>(y0 + dy) * w + (x0 + dx)];
                        const double vb = b[static_cast<std::size_t>(y0 + dy) * w + (x0 + dx)];
                        ma += wgt * va;
                        mb += wgt * vb;
                        saa += wgt * va * va;
                        sbb += wgt * vb * vb;
                        sab += wgt * va * vb;
                    }
                const double va = saa - ma * ma;
                const double vb = sbb - mb * mb;
                const double cov = sab - ma * mb;
                acc += ((2 * ma * mb + c1) * (2 * cov + c2)) /
                       ((ma * ma + mb * mb + c1) * (va + vb + c2));
                ++count;
            }
        }
        band_acc += acc / static_cast<double>(count);
    }
    return band_acc / x.channels();
}

double sam(const Tensor3& x, const Tensor3& ref) {
    check_shapes(x, ref, "sam");
    if (x.channels() < 2) throw std::invalid_argument("sam: requires >= 2 channels");
    const std::size_t hw = static_cast<std::size_t>(x.height()) * x.width();
    const int c = x.channels();
    double acc = 0.0;
    std::size_t used = 0, skipped = 0;
    for (std::size_t p = 0; p < hw; ++p) {
        double d = 0, na = 0, nb = 0;
        for (int ci = 0; ci < c; ++ci) {
            const double va = x[ci * hw + p], vb = ref[ci * hw + p];
            d += va * vb;
            na += va * va;
            nb += vb * vb;
        }
        if (na == 0.0 || nb == 0.0) {
            ++skipped;
            continue;
        }
        const double cosv = std::clamp(d / std::sqrt(na * nb), -1.0, 1.0);
        acc += std::acos(cosv);
        ++used;
    }
    if (used == 0) return 0.0;
    return acc / static_cast<double>(used) * 180.0 / std::numbers::pi;
}

double ergas(const Tensor3& x, const Tensor3& ref) {
    check_shapes(x, ref, "ergas");
    const std::size_t hw = static_cast<std::size_t>(x.height()) * x.width();
    double acc = 0.0;
    for (int c = 0; c < x.channels(); ++c) {
        double mse = 0.0, mean = 0.0;
        for (std::size_t p = 0; p < hw; ++p) {
            const double d = x[c * hw + p] - ref[c * hw + p];
            mse += d * d;
            mean += ref[c * hw + p];
        }
        mse /= static_cast<double>(hw);
        mean /= static_cast<double>(hw);
        if (mean == 0.0) throw std::invalid_argument("ergas: zero band mean in reference");
        acc += mse / (mean * mean);
    }
    return 100.0 * std::sqrt(acc / x.channels());
}

std::string MetricReport::csv_header() { return "psnr,ssim,sam,ergas"; }

std::string MetricReport::to_csv() const {
    std::ostringstream os;
    os.precision(10);
    os << psnr << ',' << ssim << ',';
    if (std::isnan(sam)) os << "na"; else os << sam;
    os << ',';
    if (std::isnan(ergas)) os << "na"; else os << ergas;
    return os.str();
}

MetricReport evaluate(const Tensor3& x, const Tensor3& ref) {
    MetricReport r;
    r.psnr = psnr(x, ref);
    r.ssim = ssim(x, ref);
    r.sam = x.channels() >= 2 ? sam(x, ref) : std::numeric_limits<double>::quiet_NaN();
    try {
        r.ergas = ergas(x, ref);
    } catch (const std::invalid_argument&) {
        r.ergas = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

} // namespace ngr::metrics
