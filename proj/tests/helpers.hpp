#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "parab/grid.hpp"

namespace parab::testing {

/// Box [-1,1]^{nm1} x [-T/2, T/2] with n cells per spatial axis and nt time
/// cells (T = nt * h^2).
inline GridSpec unit_box(std::size_t n, std::size_t nt, int nm1 = 1) {
    double h = 2.0 / static_cast<double>(n);
    ParabolicPoint o;
    o.dim = nm1;
    o.x = {-1.0, -1.0};
    o.t = -static_cast<double>(nt) / 2.0 * h * h;
    return GridSpec(nm1, h, o, {n, n}, nt);
}

/// Random real band-limited periodic field: modes |kx|, |kt| <= counts/4.
inline ScalarField random_band_limited(const GridSpec& s, std::uint64_t seed, int modes = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> kx(-static_cast<int>(s.nx[0]) / 4,
                                          static_cast<int>(s.nx[0]) / 4);
    std::uniform_int_distribution<int> kt(-static_cast<int>(s.nt) / 4,
                                          static_cast<int>(s.nt) / 4);
    struct Mode {
        int kx, ky, kt;
        double a, ph;
    };
    std::vector<Mode> ms;
    for (int m = 0; m < modes; ++m) {
        Mode mm{kx(rng), s.nm1 == 2 ? kx(rng) : 0, kt(rng), amp(rng), amp(rng) * 3.0};
        ms.push_back(mm);
    }
    ScalarField f(s, true);
    const double Lx = s.length(0);
    const double Ly = s.nm1 == 2 ? s.length(1) : 1.0;
    const double T = s.duration();
    const double tp = 2.0 * std::numbers::pi;
    f.fill([&](const ParabolicPoint& p) {
        double v = 0.0;
        for (const auto& m : ms) {
            double phase = tp * (m.kx * (p.x[0] + 1.0) / Lx + m.kt * p.t / T) + m.ph;
            if (s.nm1 == 2) phase += tp * m.ky * (p.x[1] + 1.0) / Ly;
            v += m.a * std::cos(phase);
        }
        return v;
    });
    return f;
}

}  // namespace parab::testing
