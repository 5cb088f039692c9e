#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "parab/frac_ops.hpp"

using namespace parab;
using parab::testing::random_band_limited;
using parab::testing::unit_box;

TEST_CASE("every multiplier annihilates constants") {
    GridSpec s = unit_box(16, 64);
    ScalarField c(s, true);
    c.fill([](const ParabolicPoint&) { return 3.75; });
    for (auto m : {MultiplierSpec::d_alpha(0.5), MultiplierSpec::dn(), MultiplierSpec::parabolic(),
                   MultiplierSpec::riesz_j(1), MultiplierSpec::riesz_j(2)}) {
        ScalarField g = apply_multiplier(c, m);
        for (double v : g.values()) CHECK(std::fabs(v) < 1e-12);
    }
}

TEST_CASE("multiplier refuses non-periodic fields") {
    GridSpec s = unit_box(16, 64);
    ScalarField f(s, false);
    CHECK_THROWS_AS((void)apply_multiplier(f, MultiplierSpec::parabolic()),
                    std::invalid_argument);
}

TEST_CASE("D_{1/2} eigenvalue on a pure time harmonic") {
    GridSpec s = unit_box(8, 256);
    const double T = s.duration();
    const double om = 2.0 * std::numbers::pi / T;
    ScalarField f(s, true);
    f.fill([&](const ParabolicPoint& p) { return std::cos(om * p.t); });
    ScalarField g = apply_multiplier(f, MultiplierSpec::d_alpha(0.5));
    const double lam = std::sqrt(om);
    for (std::size_t i = 0; i < f.values().size(); ++i)
        CHECK(g.values()[i] == doctest::Approx(lam * f.values()[i]).epsilon(1e-9));
}

TEST_CASE("Dn kills pure spatial harmonics (tau = 0)") {
    GridSpec s = unit_box(32, 64);
    ScalarField f(s, true);
    f.fill([](const ParabolicPoint& p) { return std::cos(std::numbers::pi * (p.x[0] + 1.0)); });
    ScalarField g = apply_multiplier(f, MultiplierSpec::dn());
    for (double v : g.values()) CHECK(std::fabs(v) < 1e-10);
}

TEST_CASE("linearity to machine precision") {
    GridSpec s = unit_box(16, 64);
    ScalarField f = random_band_limited(s, 11);
    ScalarField g = random_band_limited(s, 12);
    ScalarField fg(s, true);
    for (std::size_t i = 0; i < fg.values().size(); ++i)
        fg.values()[i] = 2.0 * f.values()[i] - 0.5 * g.values()[i];
    auto m = MultiplierSpec::parabolic();
    ScalarField a = apply_multiplier(fg, m);
    ScalarField bf = apply_multiplier(f, m);
    ScalarField bg = apply_multiplier(g, m);
    for (std::size_t i = 0; i < a.values().size(); ++i)
        CHECK(a.values()[i] ==
              doctest::Approx(2.0 * bf.values()[i] - 0.5 * bg.values()[i]).epsilon(1e-11));
}

TEST_CASE("Riesz multipliers are contractions on L2 (modulus <= 1 per mode)") {
    GridSpec s = unit_box(16, 64);
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        ScalarField f = random_band_limited(s, seed);
        double nf = field_l2_norm(f);
        for (int j = 1; j <= 2; ++j) {
            ScalarField g = apply_multiplier(f, MultiplierSpec::riesz_j(j));
            CHECK(field_l2_norm(g) <= nf * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("Parseval round trip") {
    GridSpec s = unit_box(16, 64);
    ScalarField f = random_band_limited(s, 31);
    CHECK(fft_roundtrip_error(f) < 1e-12);
}

TEST_CASE("riesz decomposition is exact per mode") {
    GridSpec s = unit_box(16, 64);
    // pure spatial harmonic
    ScalarField fx(s, true);
    fx.fill([](const ParabolicPoint& p) { return std::cos(std::numbers::pi * (p.x[0] + 1.0)); });
    CHECK(riesz_decomposition_residual(fx).relative < 1e-10);
    // random band-limited fields, including mixed space-time modes
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScalarField f = random_band_limited(s, 100 + seed);
        auto r = riesz_decomposition_residual(f);
        CHECK(!r.trivial);
        CHECK(r.relative < 1e-10);
    }
    // constant input: flagged 0/0 case
    ScalarField c(s, true);
    c.fill([](const ParabolicPoint&) { return 1.0; });
    CHECK(riesz_decomposition_residual(c).trivial);
}

TEST_CASE("pointwise half derivative: constants and x-linear fields vanish") {
    GridSpec s = unit_box(8, 128);
    ScalarField c(s, true);
    c.fill([](const ParabolicPoint&) { return -2.5; });
    ScalarField dc = pointwise_half_time_derivative(c, 1.0);
    for (double v : dc.values()) CHECK(std::fabs(v) < 1e-12);

    ScalarField lin(s, true);
    lin.fill([](const ParabolicPoint& p) { return 4.0 * p.x[0]; });
    ScalarField dl = pointwise_half_time_derivative(lin, 1.0);
    for (double v : dl.values()) CHECK(std::fabs(v) < 1e-12);
}

TEST_CASE("calibrated kernel agrees with the multiplier on harmonics") {
    GridSpec s = unit_box(4, 2048);
    double cn = calibrate_cn(s);
    // analytic constant for this kernel ordering
    CHECK(cn < 0.0);
    CHECK(std::fabs(cn) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi))).epsilon(0.03));

    const double T = s.duration();
    for (int k = 1; k <= 4; ++k) {
        ScalarField f(s, true);
        const double om = 2.0 * std::numbers::pi * k / T;
        f.fill([&](const ParabolicPoint& p) { return std::cos(om * p.t); });
        ScalarField kd = pointwise_half_time_derivative(f, cn);
        ScalarField md = apply_multiplier(f, MultiplierSpec::d_alpha(0.5));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < kd.values().size(); ++i) {
            double d = kd.values()[i] - md.values()[i];
            num += d * d;
            den += md.values()[i] * md.values()[i];
        }
        CHECK(std::sqrt(num / den) < 0.02);
    }
}

TEST_CASE("c_n is stable under grid doubling") {
    double c1 = calibrate_cn(unit_box(4, 1024));
    double c2 = calibrate_cn(unit_box(4, 2048));
    CHECK(std::fabs(c2 - c1) / std::fabs(c2) < 0.01);
}
