#include <doctest.h>

#include "ngr/degrade.hpp"

#include <cmath>
#include <set>

using namespace ngr;
using namespace ngr::degrade;

TEST_SUITE("degrade") {

TEST_CASE("random_mask: full sampling, binomial count, determinism") {
    Rng rng(1);
    auto all = random_mask(rng, 4, 4, 2, 1.0);
    CHECK(all.count_observed() == all.data.size());

    Rng a(2), b(2);
    auto m1 = random_mask(a, 100, 100, 3, 0.5);
    auto m2 = random_mask(b, 100, 100, 3, 0.5);
    CHECK(m1.data == m2.data);
    const double n = 30000.0;
    const double sigma = std::sqrt(n * 0.25);
    CHECK(std::fabs(static_cast<double>(m1.count_observed()) - 15000.0) <= 3.0 * sigma);

    CHECK_THROWS_AS(random_mask(a, 4, 4, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(random_mask(a, 4, 4, 1, 1.5), std::invalid_argument);
}

TEST_CASE("deadline_mask removes whole columns across channels") {
    Rng rng(3);
    auto none = deadline_mask(rng, 6, 8, 3, 0);
    CHECK(none.count_observed() == none.data.size());

    auto m = deadline_mask(rng, 6, 8, 3, 3);
    std::set<int> missing;
    for (int x = 0; x < 8; ++x) {
        bool col_missing = !m.observed(static_cast<std::size_t>(x));
        for (int c = 0; c < 3; ++c)
            for (int y = 0; y < 6; ++y) {
                const std::size_t i = static_cast<std::size_t>(c) * 48 + static_cast<std::size_t>(y) * 8 + x;
                CHECK(m.observed(i) == !col_missing);
            }
        if (col_missing) missing.insert(x);
    }
    CHECK(missing.size() == 3);

    auto empty = deadline_mask(rng, 6, 8, 3, 8);
    CHECK(empty.count_observed() == 0);
    CHECK_THROWS_AS(deadline_mask(rng, 6, 8, 3, 9), std::invalid_argument);
}

TEST_CASE("add_gaussian: identity at sigma 0, sample std, determinism") {
    Rng rng(4);
    Tensor3 x = uniform(rng, 10, 10, 2, 0.0, 1.0);
    Tensor3 same = add_gaussian(rng, x, 0.0);
    CHECK(max_abs(same - x) == 0.0);

    Rng a(5), b(5);
    Tensor3 big(200, 100, 5, 0.5);
    Tensor3 n1 = add_gaussian(a, big, 0.1);
    Tensor3 n2 = add_gaussian(b, big, 0.1);
    CHECK(max_abs(n1 - n2) == 0.0);
    double var = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        const double d = n1[i] - big[i];
        var += d * d;
    }
    var /= static_cast<double>(big.size());
    CHECK(std::fabs(std::sqrt(var) - 0.1) < 0.002);
}

TEST_CASE("add_impulse: identity, saturation, empirical ratio") {
    Rng rng(6);
    Tensor3 x = uniform(rng, 10, 10, 2, 0.2, 0.8);
    Tensor3 same = add_impulse(rng, x, 0.0);
    CHECK(max_abs(same - x) == 0.0);

    Tensor3 all = add_impulse(rng, x, 1.0);
    for (std::size_t i = 0; i < all.size(); ++i)
        CHECK((all[i] == 0.0 || all[i] == 1.0));

    Tensor3 big = uniform(rng, 256, 256, 8, 0.25, 0.75);
    Tensor3 noisy = add_impulse(rng, big, 0.1);
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < big.size(); ++i)
        if (noisy[i] != big[i]) ++replaced;
    const double frac = static_cast<double>(replaced) / static_cast<double>(big.size());
    CHECK(std::fabs(frac - 0.1) < 0.01);
}

TEST_CASE("add_stripes: identity at zero fraction, band count, constant columns") {
    Rng rng(7);
    Tensor3 x = uniform(rng, 20, 20, 10, 0.0, 1.0);
    Tensor3 same = add_stripes(rng, x, 0.0, 3, {-0.25, 0.25});
    CHECK(max_abs(same - x) == 0.0);

    Tensor3 striped = add_stripes(rng, x, 0.4, 2, {0.1, 0.3});
    int affected_bands = 0;
    for (int c = 0; c < 10; ++c) {
        std::set<int> cols;
        for (int xx = 0; xx < 20; ++xx) {
            // offset must be constant down each column
            const double off = striped.at(0, xx, c) - x.at(0, xx, c);
            bool touched = false;
            for (int y = 0; y < 20; ++y) {
                const double d = striped.at(y, xx, c) - x.at(y, xx, c);
                CHECK(d == doctest::Approx(off).epsilon(1e-12));
                if (d != 0.0) touched = true;
            }
            if (touched) cols.insert(xx);
        }
        if (!cols.empty()) {
            ++affected_bands;
            CHECK(cols.size() == 2);
        }
    }
    CHECK(affected_bands == 4);  // round(0.4 * 10)
}

TEST_CASE("apply_mixed: zero preset is identity, band selection counts") {
    Rng rng(8);
    Tensor3 x = uniform(rng, 30, 40, 10, 0.2, 0.8);
    MixedNoisePreset none;
    Tensor3 same = apply_mixed(rng, x, none);
    CHECK(max_abs(same - x) == 0.0);

    // weak preset corrupts round(0.2*C) bands with stripes/deadlines
    MixedNoisePreset weak = MixedNoisePreset::weak();
    weak.gaussian_sigma_range = {0.0, 0.0};
    weak.impulse_ratio = 0.0;
    weak.stripes_per_band = 0;
    weak.deadlines_per_band = 5;
    Tensor3 wk = apply_mixed(rng, x, weak);
    int dead_bands = 0;
    for (int c = 0; c < 10; ++c) {
        int zero_cols = 0;
        for (int xx = 0; xx < 40; ++xx) {
            bool all_zero = true;
            for (int y = 0; y < 30; ++y)
                if (wk.at(y, xx, c) != 0.0) all_zero = false;
            if (all_zero) ++zero_cols;
        }
        if (zero_cols > 0) {
            ++dead_bands;
            CHECK(zero_cols == 5);
        }
    }
    CHECK(dead_bands == 2);  // round(0.2 * 10)

    // strong preset: impulse fraction about 0.25
    MixedNoisePreset strong = MixedNoisePreset::strong();
    CHECK(strong.impulse_ratio == 0.25);
    CHECK(strong.affected_band_fraction == 0.5);
    MixedNoisePreset impulse_only;
    impulse_only.impulse_ratio = 0.25;
    Rng r2(9);
    Tensor3 big = uniform(r2, 256, 256, 8, 0.3, 0.7);
    Tensor3 noisy = apply_mixed(r2, big, impulse_only);
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < big.size(); ++i)
        if (noisy[i] != big[i]) ++replaced;
    CHECK(std::fabs(static_cast<double>(replaced) / big.size() - 0.25) < 0.01);

    // determinism
    Rng s1(10), s2(10);
    Tensor3 a = apply_mixed(s1, x, MixedNoisePreset::weak());
    Tensor3 b = apply_mixed(s2, x, MixedNoisePreset::weak());
    CHECK(max_abs(a - b) == 0.0);
}

TEST_CASE("stack_temporal") {
    Rng rng(11);
    Tensor3 a = uniform(rng, 6, 5, 4, 0.0, 1.0);
    Tensor3 b = uniform(rng, 6, 5, 4, 0.0, 1.0);

    Tensor3 single = stack_temporal({a});
    CHECK(max_abs(single - a) == 0.0);

    Tensor3 both = stack_temporal({a, b});
    CHECK(both.channels() == 8);
    for (int c = 0; c < 4; ++c)
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 5; ++x) {
                CHECK(both.at(y, x, c) == a.at(y, x, c));
                CHECK(both.at(y, x, c + 4) == b.at(y, x, c));
            }

    Tensor3 wrong = uniform(rng, 7, 5, 2, 0.0, 1.0);
    CHECK_THROWS_AS(stack_temporal({a, wrong}), std::invalid_argument);
}

} // TEST_SUITE
