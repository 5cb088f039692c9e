#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "parab/grid.hpp"

using namespace parab;

namespace {

GridSpec unit_box(std::size_t n, std::size_t nt, int nm1 = 1) {
    // box [-1,1]^{nm1} x [-1,1]: h = 2/n, time cells nt with dt = h^2
    double h = 2.0 / static_cast<double>(n);
    ParabolicPoint o;
    o.dim = nm1;
    o.x = {-1.0, -1.0};
    o.t = -static_cast<double>(nt) / 2.0 * h * h;
    return GridSpec(nm1, h, o, {n, n}, nt);
}

}  // namespace

TEST_CASE("parabolic norm basics") {
    CHECK(parabolic_norm(ParabolicPoint::make1(3.0, 4.0)) == doctest::Approx(5.0));
    CHECK(parabolic_norm(ParabolicPoint::make1(0.0, 0.0)) == 0.0);
    CHECK(parabolic_norm(ParabolicPoint::make2(1.0, 1.0, 0.25)) ==
          doctest::Approx(std::sqrt(2.0) + 0.5));
}

TEST_CASE("parabolic dist: identity, formula, triangle inequality") {
    auto a = ParabolicPoint::make1(0.3, -0.7);
    CHECK(parabolic_dist(a, a) == 0.0);
    CHECK(parabolic_dist(ParabolicPoint::make1(0.0, 0.0), ParabolicPoint::make1(1.0, 1.0)) ==
          doctest::Approx(2.0));

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        auto p = ParabolicPoint::make2(u(rng), u(rng), u(rng));
        auto q = ParabolicPoint::make2(u(rng), u(rng), u(rng));
        auto r = ParabolicPoint::make2(u(rng), u(rng), u(rng));
        CHECK(parabolic_dist(p, q) <= parabolic_dist(p, r) + parabolic_dist(r, q) + 1e-12);
        CHECK(parabolic_dist(p, q) == doctest::Approx(parabolic_dist(q, p)));
    }
}

TEST_CASE("cube volume from grid cells matches (2r)^{n-1} 2r^2") {
    GridSpec s = unit_box(16, 128);
    ParabolicCube q(ParabolicPoint::make1(0.0, 0.0), 4.0 * s.h);
    IndexBox b = cube_cells(s, q);
    double cellvol = s.cell_volume();
    CHECK(static_cast<double>(b.count()) * cellvol == doctest::Approx(q.volume()));
}

TEST_CASE("cube_average: constant, odd symmetry, x^2 with Richardson refinement") {
    for (std::size_t n : {16u, 32u}) {
        GridSpec s = unit_box(n, 2 * (n / 2) * (n / 2));
        ScalarField c(s);
        c.fill([](const ParabolicPoint&) { return 7.25; });
        ParabolicCube q(ParabolicPoint::make1(0.0, 0.0), 0.5);
        CHECK(cube_average(c, q) == doctest::Approx(7.25));

        ScalarField fx(s);
        fx.fill([](const ParabolicPoint& p) { return p.x[0]; });
        CHECK(cube_average(fx, q) == doctest::Approx(0.0).epsilon(1e-12));
    }
    // f = x^2 over Q_1 at origin: exact average r^2/3 = 1/3, midpoint error O(h^2)
    double err_coarse = 0.0, err_fine = 0.0;
    for (int lev = 0; lev < 2; ++lev) {
        std::size_t n = lev == 0 ? 16 : 32;
        GridSpec s = unit_box(n, 2 * (n / 2) * (n / 2));
        ScalarField f(s);
        f.fill([](const ParabolicPoint& p) { return p.x[0] * p.x[0]; });
        ParabolicCube q(ParabolicPoint::make1(0.0, 0.0), 1.0);
        double err = std::fabs(cube_average(f, q) - 1.0 / 3.0);
        (lev == 0 ? err_coarse : err_fine) = err;
    }
    CHECK(err_fine < 0.3 * err_coarse);  // ~ h^2 halving
}

TEST_CASE("cube outside box is an out-of-domain error") {
    GridSpec s = unit_box(16, 128);
    ScalarField f(s);
    ParabolicCube far(ParabolicPoint::make1(0.875, 0.0), 0.25);
    CHECK_THROWS_AS((void)cube_average(f, far), std::domain_error);
}

TEST_CASE("enumerate_cubes: dyadic counts by exhaustive walk and nesting") {
    GridSpec s = unit_box(16, 256);  // box radius 1 in space, sqrt(128)*h in time
    // exhaustive oracle: walk all grid-aligned dyadic tilings at r in {0.5, 1.0}
    auto count_at = [&](double r) {
        auto m = static_cast<std::ptrdiff_t>(std::llround(r / s.h));
        std::ptrdiff_t nsp = static_cast<std::ptrdiff_t>(s.nx[0]) / (2 * m);
        std::ptrdiff_t ntm = static_cast<std::ptrdiff_t>(s.nt) / (2 * m * m);
        return nsp * ntm;
    };
    CubeEnumOptions opt;
    opt.r_min = 1.0;
    opt.r_max = 1.0;
    auto top = enumerate_cubes(s, CubeMode::dyadic, opt);
    CHECK(top.size() == static_cast<std::size_t>(count_at(1.0)));
    CHECK(top.size() == 2);  // time axis holds two level-0 cubes (256 = 2*128 cells)

    opt.r_min = 0.5;
    auto both = enumerate_cubes(s, CubeMode::dyadic, opt);
    CHECK(both.size() == static_cast<std::size_t>(count_at(1.0) + count_at(0.5)));

    // nesting: every r=0.5 cube lies in exactly one r=1 cube
    for (const auto& q : both) {
        if (q.r > 0.75) continue;
        int parents = 0;
        for (const auto& p : both) {
            if (p.r < 0.75) continue;
            bool inside = std::fabs(q.center.x[0] - p.center.x[0]) + q.r <= p.r + 1e-12 &&
                          std::fabs(q.center.t - p.center.t) + q.r * q.r <= p.r * p.r + 1e-12;
            parents += inside ? 1 : 0;
        }
        CHECK(parents == 1);
    }
}

TEST_CASE("enumerate_cubes: sliding is a superset of dyadic at every scale") {
    GridSpec s = unit_box(16, 256);
    CubeEnumOptions opt;
    opt.r_min = s.h;
    auto dy = enumerate_cubes(s, CubeMode::dyadic, opt);
    auto sl = enumerate_cubes(s, CubeMode::sliding, opt);
    CHECK(sl.size() > dy.size());
    auto key = [](const ParabolicCube& q) {
        return std::make_tuple(std::llround(q.center.x[0] * 1e9), std::llround(q.center.t * 1e9),
                               std::llround(q.r * 1e9));
    };
    std::set<std::tuple<long long, long long, long long>> sset;
    for (const auto& q : sl) sset.insert(key(q));
    for (const auto& q : dy) CHECK(sset.count(key(q)) == 1);
}

TEST_CASE("enumerate_cubes: degenerate request yields empty result") {
    GridSpec s = unit_box(16, 256);
    CubeEnumOptions opt;
    opt.r_min = 8.0;  // exceeds box radius
    opt.r_max = 16.0;
    CHECK(enumerate_cubes(s, CubeMode::dyadic, opt).empty());
}

TEST_CASE("lip_constant_estimate: zero, linear, sqrt(|t|)") {
    GridSpec s = unit_box(32, 512);
    ScalarField z(s);
    z.fill([](const ParabolicPoint&) { return 0.0; });
    CHECK(lip_constant_estimate(z) == 0.0);

    ScalarField lin(s);
    lin.fill([](const ParabolicPoint& p) { return p.x[0]; });
    CHECK(lip_constant_estimate(lin) == doctest::Approx(1.0).epsilon(1e-9));

    ScalarField rt(s);
    rt.fill([](const ParabolicPoint& p) { return std::sqrt(std::fabs(p.t)); });
    double lhat = lip_constant_estimate(rt, 400000);
    CHECK(lhat > 0.95);
    CHECK(lhat < 1.0 + 1e-9);
}

TEST_CASE("BoxSum agrees with direct sums, including wrapped boxes") {
    GridSpec s = unit_box(16, 64);
    ScalarField f(s, true);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.values()) v = u(rng);
    BoxSum bs(f);
    std::uniform_int_distribution<std::ptrdiff_t> lo(-20, 20), len(1, 90);
    for (int trial = 0; trial < 200; ++trial) {
        IndexBox b;
        b.naxes = 2;
        b.lo = {lo(rng), lo(rng), 0};
        b.hi = {b.lo[0] + len(rng), b.lo[1] + len(rng), 1};
        double direct = 0.0;
        for (std::ptrdiff_t i = b.lo[0]; i < b.hi[0]; ++i)
            for (std::ptrdiff_t k = b.lo[1]; k < b.hi[1]; ++k) direct += f.at_wrapped(i, 0, k);
        CHECK(bs.sum(b, true) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("window_to_periodic keeps interior and is periodic-flagged") {
    GridSpec s = unit_box(32, 128);
    ScalarField f(s);
    f.fill([](const ParabolicPoint& p) { return p.x[0] * p.x[0] + 0.3 * p.t; });
    ScalarField w = window_to_periodic(f);
    CHECK(w.periodic());
    double mu = f.mean();
    // interior sample (center) untouched apart from the mean shift
    auto n = static_cast<std::ptrdiff_t>(s.nx[0]) / 2;
    auto k = static_cast<std::ptrdiff_t>(s.nt) / 2;
    CHECK(w.at(n, k) == doctest::Approx(f.at(n, k) - mu));
}

TEST_CASE("GridSpec invariants") {
    CHECK_THROWS_AS(GridSpec(1, -0.1, ParabolicPoint::make1(0, 0), {8, 8}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 0.1, ParabolicPoint::make1(0, 0), {2, 2}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(3, 0.1, ParabolicPoint::make1(0, 0), {8, 8}, 8),
                    std::invalid_argument);
}
