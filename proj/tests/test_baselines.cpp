#include <doctest.h>

#include "ngr/baselines.hpp"
#include "ngr/degrade.hpp"
#include "ngr/metrics.hpp"

#include <cmath>

using namespace ngr;
using namespace ngr::baselines;

TEST_SUITE("baselines") {

TEST_CASE("tv3d_inpaint recovers a constant image") {
    Tensor3 truth(16, 16, 3, 0.4);
    Rng rng(1);
    auto omega = degrade::random_mask(rng, 16, 16, 3, 0.1);
    Tensor3 y = solver::project(truth, omega);
    TvConfig cfg;
    cfg.iters = 300;
    Tensor3 x = tv3d_inpaint(y, omega, cfg);
    CHECK(max_abs(x - truth) <= 1e-3);
}

TEST_CASE("tv3d_inpaint with everything observed returns Y") {
    Rng rng(2);
    Tensor3 y = uniform(rng, 12, 12, 2, 0.0, 1.0);
    solver::ObservationMask omega(12, 12, 2, true);
    TvConfig cfg;
    cfg.iters = 5;
    Tensor3 x = tv3d_inpaint(y, omega, cfg);
    CHECK(max_abs(x - y) <= 1e-6);
}

TEST_CASE("tv3d_inpaint output satisfies the projection constraint exactly") {
    Rng rng(3);
    Tensor3 y = uniform(rng, 10, 10, 2, 0.0, 1.0);
    auto omega = degrade::random_mask(rng, 10, 10, 2, 0.5);
    Tensor3 py = solver::project(y, omega);
    TvConfig cfg;
    cfg.iters = 20;
    Tensor3 x = tv3d_inpaint(py, omega, cfg);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (omega.observed(i)) CHECK(x[i] == py[i]);
}

TEST_CASE("tv objective is nonincreasing after burn-in") {
    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        Tensor3 truth = degrade::synthetic_image(16, 16, 2);
        auto omega = degrade::random_mask(rng, 16, 16, 2, 0.5);
        Tensor3 y = solver::project(truth, omega);
        TvConfig cfg;
        cfg.iters = 100;
        solver::IterationTrace trace;
        tv3d_inpaint(y, omega, cfg, &trace);
        const std::size_t burn = trace.rows.size() / 5;  // last 80%
        for (std::size_t i = burn + 1; i < trace.rows.size(); ++i)
            CHECK(trace.rows[i].objective <= trace.rows[i - 1].objective + 1e-8);
    }
}

TEST_CASE("tv3d_inpaint rejects an empty observation set") {
    Tensor3 y(4, 4, 1, 0.5);
    solver::ObservationMask omega(4, 4, 1);
    CHECK_THROWS_AS(tv3d_inpaint(y, omega, TvConfig{}), std::invalid_argument);
}

TEST_CASE("zero_fill and mean_fill") {
    Rng rng(5);
    Tensor3 y = uniform(rng, 8, 8, 2, 0.0, 1.0);
    solver::ObservationMask all(8, 8, 2, true);
    CHECK(max_abs(zero_fill(y, all) - y) == 0.0);
    CHECK(max_abs(mean_fill(y, all) - y) == 0.0);

    Tensor3 c(8, 8, 2, 0.7);
    auto omega = degrade::random_mask(rng, 8, 8, 2, 0.5);
    Tensor3 filled = mean_fill(solver::project(c, omega), omega);
    CHECK(max_abs(filled - c) <= 1e-12);
}

TEST_CASE("zero_fill PSNR on a half-observed constant 0.5 image") {
    // MSE = 0.5^2 * 0.5 = 0.125 exactly when exactly half the entries are missing
    const int h = 10, w = 10, c = 1;
    Tensor3 truth(h, w, c, 0.5);
    solver::ObservationMask omega(h, w, c);
    for (std::size_t i = 0; i < omega.data.size(); ++i) omega.data[i] = i % 2;
    Tensor3 z = zero_fill(solver::project(truth, omega), omega);
    const double expected = 10.0 * std::log10(1.0 / 0.125);
    CHECK(metrics::psnr(z, truth) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(9.0309).epsilon(1e-4));
}

} // TEST_SUITE
