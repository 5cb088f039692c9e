#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace parab {

/// Point of the parabolic space R^{n-1} x R: spatial part `x` (1 or 2
/// active components) and time coordinate `t`. Time scales like the
/// square of space throughout.
struct ParabolicPoint {
    std::array<double, 2> x{0.0, 0.0};
    double t = 0.0;
    int dim = 1;  // number of active spatial components (n-1)

    static ParabolicPoint make1(double x0, double t) { return {{x0, 0.0}, t, 1}; }
    static ParabolicPoint make2(double x0, double x1, double t) { return {{x0, x1}, t, 2}; }
};

/// |x| + |t|^{1/2}, the parabolic norm.
inline double parabolic_norm(const ParabolicPoint& p) {
    double sq = 0.0;
    for (int k = 0; k < p.dim; ++k) sq += p.x[k] * p.x[k];
    return std::sqrt(sq) + std::sqrt(std::fabs(p.t));
}

inline double parabolic_dist(const ParabolicPoint& a, const ParabolicPoint& b) {
    if (a.dim != b.dim) throw std::invalid_argument("parabolic_dist: dimension mismatch");
    ParabolicPoint d = a;
    for (int k = 0; k < a.dim; ++k) d.x[k] = a.x[k] - b.x[k];
    d.t = a.t - b.t;
    return parabolic_norm(d);
}

/// Parabolic cube Q_r: spatial sides 2r, time side 2r^2, centred at
/// `center`. Grid-aligned when r is a multiple of h and the center lies
/// on the cell-corner lattice.
struct ParabolicCube {
    ParabolicPoint center;
    double r = 0.0;

    ParabolicCube() = default;
    ParabolicCube(const ParabolicPoint& c, double radius) : center(c), r(radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("ParabolicCube: r must be positive");
    }

    double volume() const {
        double v = 2.0 * r * r;  // time side
        for (int k = 0; k < center.dim; ++k) v *= 2.0 * r;
        return v;
    }
};

}  // namespace parab
