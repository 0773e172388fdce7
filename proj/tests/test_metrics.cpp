#include <doctest.h>

#include "ngr/degrade.hpp"
#include "ngr/metrics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace ngr;
using namespace ngr::metrics;

namespace {

// Independent direct-summation SSIM (same windowing convention, written
// separately as an oracle).
double ssim_reference(const Tensor3& x, const Tensor3& ref) {
    const int win = 11;
    const double sigma = 1.5, k1 = 0.01, k2 = 0.03;
    const double c1 = k1 * k1, c2 = k2 * k2;
    std::vector<double> g(win * win);
    double wsum = 0;
    for (int dy = 0; dy < win; ++dy)
        for (int dx = 0; dx < win; ++dx) {
            const double yy = dy - win / 2, xx = dx - win / 2;
            g[dy * win + dx] = std::exp(-(xx * xx + yy * yy) / (2 * sigma * sigma));
            wsum += g[dy * win + dx];
        }
    for (auto& v : g) v /= wsum;

    double band_total = 0;
    for (int c = 0; c < x.channels(); ++c) {
        double total = 0;
        int count = 0;
        for (int y0 = 0; y0 + win <= x.height(); ++y0)
            for (int x0 = 0; x0 + win <= x.width(); ++x0) {
                double mx = 0, my = 0;
                for (int dy = 0; dy < win; ++dy)
                    for (int dx = 0; dx < win; ++dx) {
                        mx += g[dy * win + dx] * x.at(y0 + dy, x0 + dx, c);
                        my += g[dy * win + dx] * ref.at(y0 + dy, x0 + dx, c);
                    }
                double vx = 0, vy = 0, cov = 0;
                for (int dy = 0; dy < win; ++dy)
                    for (int dx = 0; dx < win; ++dx) {
                        const double a = x.at(y0 + dy, x0 + dx, c) - mx;
                        const double b = ref.at(y0 + dy, x0 + dx, c) - my;
                        vx += g[dy * win + dx] * a * a;
                        vy += g[dy * win + dx] * b * b;
                        cov += g[dy * win + dx] * a * b;
                    }
                total += ((2 * mx * my + c1) * (2 * cov + c2)) /
                         ((mx * mx + my * my + c1) * (vx + vy + c2));
                ++count;
            }
        band_total += total / count;
    }
    return band_total / x.channels();
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("psnr worked examples") {
    Tensor3 ref(12, 12, 2, 0.5);
    Tensor3 x = ref;
    CHECK(psnr(x, ref) == 100.0);

    // uniform MSE 0.01 -> 20 dB
    Tensor3 off = ref;
    for (std::size_t i = 0; i < off.size(); ++i) off[i] += 0.1;
    CHECK(psnr(off, ref) == doctest::Approx(20.0).epsilon(1e-10));

    Tensor3 zeros(12, 12, 2, 0.0), ones(12, 12, 2, 1.0);
    CHECK(psnr(zeros, ones) == doctest::Approx(0.0).epsilon(1e-12));

    Tensor3 wrong(12, 11, 2);
    CHECK_THROWS_AS(psnr(x, wrong), std::invalid_argument);
}

TEST_CASE("psnr decreases with noise level") {
    Tensor3 img = degrade::synthetic_image(32, 32, 3);
    double last = 1e9;
    for (double sigma : {0.01, 0.05, 0.1}) {
        Rng rng(1);
        const double p = psnr(degrade::add_gaussian(rng, img, sigma), img);
        CHECK(p < last);
        last = p;
    }
}

TEST_CASE("ssim unit value and constant closed form") {
    Tensor3 img = degrade::synthetic_image(24, 24, 2);
    CHECK(ssim(img, img) == doctest::Approx(1.0).epsilon(1e-12));

    Tensor3 a(16, 16, 1, 0.3), b(16, 16, 1, 0.7);
    const double c1 = 1e-4;
    const double expect = (2 * 0.3 * 0.7 + c1) / (0.09 + 0.49 + c1);
    CHECK(ssim(a, b) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(expect == doctest::Approx(0.7242).epsilon(1e-3));

    Tensor3 tiny(8, 8, 1, 0.5);
    CHECK_THROWS_AS(ssim(tiny, tiny), std::invalid_argument);
}

TEST_CASE("ssim matches the direct-summation oracle") {
    Rng rng(2);
    Tensor3 a = uniform(rng, 20, 18, 2, 0.0, 1.0);
    Tensor3 b = uniform(rng, 20, 18, 2, 0.0, 1.0);
    CHECK(ssim(a, b) == doctest::Approx(ssim_reference(a, b)).epsilon(1e-6));
}

TEST_CASE("sam worked examples") {
    Tensor3 a(4, 4, 2, 0.5);
    CHECK(sam(a, a) == doctest::Approx(0.0).epsilon(1e-10));

    // orthogonal spectra -> 90 degrees
    Tensor3 e1(4, 4, 2, 0.0), e2(4, 4, 2, 0.0);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            e1.at(y, x, 0) = 1.0;
            e2.at(y, x, 1) = 1.0;
        }
    CHECK(sam(e1, e2) == doctest::Approx(90.0).epsilon(1e-10));

    // scale invariance
    Rng rng(3);
    Tensor3 x = uniform(rng, 6, 6, 3, 0.1, 1.0);
    CHECK(sam(x, x * 2.0) == doctest::Approx(0.0).epsilon(1e-7));

    Tensor3 mono(4, 4, 1, 0.5);
    CHECK_THROWS_AS(sam(mono, mono), std::invalid_argument);
}

TEST_CASE("ergas worked examples and brute-force oracle") {
    Tensor3 a(8, 8, 2, 0.5);
    CHECK(ergas(a, a) == 0.0);

    // single band, mean 0.5, RMSE 0.05 -> 10
    Tensor3 ref(8, 8, 1, 0.5);
    Tensor3 x = ref;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.05;
    CHECK(ergas(x, ref) == doctest::Approx(10.0).epsilon(1e-10));

    Rng rng(4);
    Tensor3 u = uniform(rng, 7, 9, 3, 0.1, 1.0);
    Tensor3 v = uniform(rng, 7, 9, 3, 0.1, 1.0);
    // brute force
    double acc = 0;
    for (int c = 0; c < 3; ++c) {
        double mse = 0, mean = 0;
        for (int y = 0; y < 7; ++y)
            for (int xx = 0; xx < 9; ++xx) {
                const double d = u.at(y, xx, c) - v.at(y, xx, c);
                mse += d * d;
                mean += v.at(y, xx, c);
            }
        mse /= 63.0;
        mean /= 63.0;
        acc += mse / (mean * mean);
    }
    const double expect = 100.0 * std::sqrt(acc / 3.0);
    CHECK(ergas(u, v) == doctest::Approx(expect).epsilon(1e-10));

    Tensor3 zero_mean(8, 8, 2, 0.0);
    CHECK_THROWS_AS(ergas(a, zero_mean), std::invalid_argument);
}

TEST_CASE("evaluate bundles the four metrics") {
    Tensor3 img = degrade::synthetic_image(24, 24, 3);
    MetricReport r = evaluate(img, img);
    CHECK(r.psnr == 100.0);
    CHECK(r.ssim == doctest::Approx(1.0));
    CHECK(r.sam == doctest::Approx(0.0));
    CHECK(r.ergas == doctest::Approx(0.0));
}

} // TEST_SUITE
