#include "parab/lewis_murray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parab/bmo.hpp"
#include "parab/frac_ops.hpp"

namespace parab {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// 8-point Gauss-Legendre on [0,1]
constexpr std::array<double, 8> kGaussX = {0.01985507175123188, 0.10166676129318664,
                                           0.2372337950418355,  0.40828267875217505,
                                           0.5917173212478249,  0.7627662049581645,
                                           0.8983332387068134,  0.9801449282487681};
constexpr std::array<double, 8> kGaussW = {0.05061426814518813, 0.11119051722668723,
                                           0.15685332293894364, 0.18134189168918097,
                                           0.18134189168918097, 0.15685332293894364,
                                           0.11119051722668723, 0.05061426814518813};

struct CubeScan {
    std::vector<ParabolicCube> cubes;
    bool wrap = false;
};

/// Cubes eligible for a singular-integral scan with reach `reach_cells(m)`
/// spatial cells and `reach_cells_t(m)` time cells around each inner point.
/// Periodic fields wrap; otherwise cubes too close to the edge are dropped
/// and an empty family is a margin error.
template <typename ReachX, typename ReachT>
CubeScan margin_scan(const ScalarField& phi, double r_cap, ReachX reach_x, ReachT reach_t) {
    const GridSpec& s = phi.spec();
    CubeScan out;
    out.wrap = phi.periodic();
    CubeEnumOptions ce;
    ce.r_min = s.h;
    ce.r_max = r_cap > 0.0 ? std::min(r_cap, s.box_radius()) : s.box_radius();
    ce.wrap = false;  // cubes themselves always fit the box
    auto cubes = enumerate_cubes(s, CubeMode::sliding, ce);
    if (out.wrap) {
        out.cubes = std::move(cubes);
        if (out.cubes.empty()) throw std::domain_error("functional scan: no cube fits the box");
        return out;
    }
    double needed = 0.0;
    for (const auto& q : cubes) {
        IndexBox b = cube_cells(s, q, false);
        auto m = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        std::ptrdiff_t rx = reach_x(m), rt = reach_t(m);
        bool ok = true;
        for (int a = 0; a < s.nm1; ++a) {
            if (b.lo[static_cast<std::size_t>(a)] - rx < 0 ||
                b.hi[static_cast<std::size_t>(a)] + rx >
                    static_cast<std::ptrdiff_t>(s.nx[static_cast<std::size_t>(a)]))
                ok = false;
        }
        int ta = s.nm1;
        if (b.lo[static_cast<std::size_t>(ta)] - rt < 0 ||
            b.hi[static_cast<std::size_t>(ta)] + rt > static_cast<std::ptrdiff_t>(s.nt))
            ok = false;
        if (ok) out.cubes.push_back(q);
        else needed = std::max(needed, static_cast<double>(rx) * s.h);
    }
    if (out.cubes.empty())
        throw std::invalid_argument(
            "functional scan: margin too small; enlarge the box by about " +
            std::to_string(needed) + " per side or mark the field periodic");
    return out;
}

double sample(const ScalarField& f, std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it,
              bool wrap) {
    if (wrap) return f.at_wrapped(ix, iy, it);
    return f.spec().nm1 == 2 ? f.at(ix, iy, it) : f.at(ix, it);
}

template <typename Fn>
void for_cells(const GridSpec& s, const IndexBox& b, Fn&& fn) {
    if (s.nm1 == 1) {
        for (std::ptrdiff_t jt = b.lo[1]; jt < b.hi[1]; ++jt)
            for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) fn(ix, std::ptrdiff_t{0}, jt);
    } else {
        for (std::ptrdiff_t jt = b.lo[2]; jt < b.hi[2]; ++jt)
            for (std::ptrdiff_t iy = b.lo[1]; iy < b.hi[1]; ++iy)
                for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) fn(ix, iy, jt);
    }
}

}  // namespace

double functional_second_diff_spacetime(const ScalarField& phi, double r_cap) {
    const GridSpec& s = phi.spec();
    const int n = s.nm1 + 1;
    auto scan = margin_scan(
        phi, r_cap, [](std::ptrdiff_t m) { return m; }, [](std::ptrdiff_t m) { return m * m; });
    const double inner_measure = s.cell_volume();
    double best = 0.0;
    struct Off {
        std::ptrdiff_t y0, y1, st;
        double w;
    };
    std::vector<Off> offs;
    std::ptrdiff_t last_m = -1;
    for (const auto& q : scan.cubes) {
        auto m = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        if (m != last_m) {
            last_m = m;
            offs.clear();
            std::ptrdiff_t oy1max = s.nm1 == 2 ? m : 0;
            for (std::ptrdiff_t oy0 = -m; oy0 <= m; ++oy0)
                for (std::ptrdiff_t oy1 = -oy1max; oy1 <= oy1max; ++oy1)
                    for (std::ptrdiff_t os = -m * m; os <= m * m; ++os) {
                        double ynorm = s.nm1 == 2 ? std::hypot(static_cast<double>(oy0),
                                                               static_cast<double>(oy1))
                                                  : std::fabs(static_cast<double>(oy0));
                        double nrm = s.h * (ynorm + std::sqrt(std::fabs(static_cast<double>(os))));
                        if (nrm < s.h - 1e-12 || nrm > q.r + 1e-12) continue;
                        offs.push_back({oy0, oy1, os,
                                        inner_measure / std::pow(nrm, static_cast<double>(n + 3))});
                    }
        }
        IndexBox b = cube_cells(s, q, false);
        double acc = 0.0;
        for_cells(s, b, [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double center = 2.0 * sample(phi, ix, iy, it, false);
            double pt = 0.0;
            for (const auto& o : offs) {
                double fwd = sample(phi, ix + o.y0, iy + o.y1, it + o.st, scan.wrap);
                double bwd = sample(phi, ix - o.y0, iy - o.y1, it - o.st, scan.wrap);
                double d = fwd - center + bwd;
                pt += d * d * o.w;
            }
            acc += pt;
        });
        best = std::max(best, acc / static_cast<double>(b.count()));
    }
    return best;
}

double functional_second_diff_space(const ScalarField& phi, double r_cap) {
    const GridSpec& s = phi.spec();
    const int n = s.nm1 + 1;
    auto scan = margin_scan(
        phi, r_cap, [](std::ptrdiff_t m) { return m; }, [](std::ptrdiff_t) { return 0; });
    double inner_measure = s.h;
    if (s.nm1 == 2) inner_measure *= s.h;
    double best = 0.0;
    for (const auto& q : scan.cubes) {
        auto m = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        struct Off {
            std::ptrdiff_t y0, y1;
            double w;
        };
        std::vector<Off> offs;
        std::ptrdiff_t oy1max = s.nm1 == 2 ? m : 0;
        for (std::ptrdiff_t oy0 = -m; oy0 <= m; ++oy0)
            for (std::ptrdiff_t oy1 = -oy1max; oy1 <= oy1max; ++oy1) {
                double ynorm = s.nm1 == 2
                                   ? std::hypot(static_cast<double>(oy0), static_cast<double>(oy1))
                                   : std::fabs(static_cast<double>(oy0));
                if (ynorm < 0.5 || ynorm * s.h > q.r + 1e-12) continue;
                offs.push_back(
                    {oy0, oy1,
                     inner_measure / std::pow(ynorm * s.h, static_cast<double>(n + 1))});
            }
        IndexBox b = cube_cells(s, q, false);
        double acc = 0.0;
        for_cells(s, b, [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double center = 2.0 * sample(phi, ix, iy, it, false);
            double pt = 0.0;
            for (const auto& o : offs) {
                double d = sample(phi, ix + o.y0, iy + o.y1, it, scan.wrap) - center +
                           sample(phi, ix - o.y0, iy - o.y1, it, scan.wrap);
                pt += d * d * o.w;
            }
            acc += pt;
        });
        best = std::max(best, acc / static_cast<double>(b.count()));
    }
    return best;
}

double functional_time_quotient(const ScalarField& phi, double r_cap, bool wrap_time) {
    const GridSpec& s = phi.spec();
    CubeEnumOptions ce;
    ce.r_min = s.h;
    double spatial_radius = 0.5 * s.length(0);
    if (s.nm1 == 2) spatial_radius = std::min(spatial_radius, 0.5 * s.length(1));
    double r_box = wrap_time ? spatial_radius : s.box_radius();
    ce.r_max = r_cap > 0.0 ? std::min(r_cap, r_box) : r_box;
    ce.wrap = wrap_time;
    auto cubes = enumerate_cubes(s, CubeMode::sliding, ce);
    const double dt = s.dt();
    double best = 0.0;
    bool any = false;
    for (const auto& q : cubes) {
        IndexBox b = cube_cells(s, q, wrap_time);
        if (wrap_time) {
            bool ok = true;  // spatial axes still have to fit the stored box
            for (int a = 0; a < s.nm1; ++a)
                if (b.lo[static_cast<std::size_t>(a)] < 0 ||
                    b.hi[static_cast<std::size_t>(a)] >
                        static_cast<std::ptrdiff_t>(s.nx[static_cast<std::size_t>(a)]))
                    ok = false;
            if (!ok) continue;
        }
        any = true;
        int ta = s.nm1;
        std::ptrdiff_t tlo = b.lo[static_cast<std::size_t>(ta)];
        std::ptrdiff_t thi = b.hi[static_cast<std::size_t>(ta)];
        double acc = 0.0;
        for_cells(s, b, [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double fi = sample(phi, ix, iy, it, wrap_time);
            double pt = 0.0;
            for (std::ptrdiff_t js = tlo; js < thi; ++js) {
                if (js == it) continue;
                double d = sample(phi, ix, iy, js, wrap_time) - fi;
                double sep = static_cast<double>(js - it) * dt;
                pt += d * d / (sep * sep);
            }
            acc += pt * dt;
        });
        best = std::max(best, acc / static_cast<double>(b.count()));
    }
    if (!any) throw std::domain_error("time quotient: no cube fits the box");
    return best;
}

namespace {

/// Gradient of phi by centered differences (wrapped when periodic, one-sided
/// at non-periodic edges).
std::vector<ScalarField> spatial_gradient(const ScalarField& phi) {
    const GridSpec& s = phi.spec();
    const bool wrap = phi.periodic();
    std::vector<ScalarField> grad;
    for (int k = 0; k < s.nm1; ++k) grad.emplace_back(s, phi.periodic());
    auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    auto ntc = static_cast<std::ptrdiff_t>(s.nt);
    for (std::ptrdiff_t it = 0; it < ntc; ++it)
        for (std::ptrdiff_t iy = 0; iy < n1; ++iy)
            for (std::ptrdiff_t ix = 0; ix < n0; ++ix) {
                for (int k = 0; k < s.nm1; ++k) {
                    std::ptrdiff_t dx = k == 0 ? 1 : 0, dy = k == 1 ? 1 : 0;
                    double num, den;
                    std::ptrdiff_t ip = (k == 0 ? ix : iy) + 1, im = (k == 0 ? ix : iy) - 1;
                    std::ptrdiff_t nk = k == 0 ? n0 : n1;
                    if (wrap || (ip < nk && im >= 0)) {
                        num = sample(phi, ix + dx, iy + dy, it, wrap) -
                              sample(phi, ix - dx, iy - dy, it, wrap);
                        den = 2.0 * s.h;
                    } else if (im < 0) {
                        num = sample(phi, ix + dx, iy + dy, it, false) -
                              sample(phi, ix, iy, it, false);
                        den = s.h;
                    } else {
                        num = sample(phi, ix, iy, it, false) -
                              sample(phi, ix - dx, iy - dy, it, false);
                        den = s.h;
                    }
                    if (s.nm1 == 2) grad[static_cast<std::size_t>(k)].at(ix, iy, it) = num / den;
                    else grad[static_cast<std::size_t>(k)].at(ix, it) = num / den;
                }
            }
    return grad;
}

/// Mean of a field over the corner-anchored parabolic box with upper-right
/// corner cell (cx[,cy],ct), radius m cells, optionally shifted left by m
/// cells along `shift_axis` (time shift m^2).
bool corner_box_mean(const BoxSum& sums, const GridSpec& s, std::ptrdiff_t cx, std::ptrdiff_t cy,
                     std::ptrdiff_t ct, std::ptrdiff_t m, int shift_axis, bool wrap, double& out) {
    IndexBox b;
    b.naxes = s.nm1 + 1;
    std::ptrdiff_t sx = shift_axis == 0 ? m : 0;
    std::ptrdiff_t sy = shift_axis == 1 ? m : 0;
    std::ptrdiff_t st = shift_axis == s.nm1 ? m * m : 0;
    b.lo[0] = cx - 2 * m + 1 - sx;
    b.hi[0] = cx + 1 - sx;
    if (s.nm1 == 2) {
        b.lo[1] = cy - 2 * m + 1 - sy;
        b.hi[1] = cy + 1 - sy;
    }
    int ta = s.nm1;
    b.lo[static_cast<std::size_t>(ta)] = ct - 2 * m * m + 1 - st;
    b.hi[static_cast<std::size_t>(ta)] = ct + 1 - st;
    if (!wrap) {
        for (int a = 0; a <= s.nm1; ++a) {
            std::ptrdiff_t nax = a == ta ? static_cast<std::ptrdiff_t>(s.nt)
                                         : static_cast<std::ptrdiff_t>(
                                               s.nx[static_cast<std::size_t>(a)]);
            if (b.lo[static_cast<std::size_t>(a)] < 0 || b.hi[static_cast<std::size_t>(a)] > nax)
                return false;
        }
    }
    out = sums.mean(b, wrap);
    return true;
}

struct Direction {
    double u0, u1;  // spatial components, |u'| <= 1
};

std::vector<Direction> sphere_directions(int nm1) {
    if (nm1 == 1) return {{1.0, 0.0}, {-1.0, 0.0}};
    std::vector<Direction> dirs;
    for (int k = 0; k < 16; ++k) {
        double ang = 2.0 * std::numbers::pi * k / 16.0;
        dirs.push_back({std::cos(ang), std::sin(ang)});
    }
    return dirs;
}

}  // namespace

double functional_avg_gradient(const ScalarField& phi, double r_cap) {
    const GridSpec& s = phi.spec();
    auto scan = margin_scan(
        phi, r_cap, [](std::ptrdiff_t m) { return 4 * m; },
        [](std::ptrdiff_t m) { return 4 * m * m; });
    auto grad = spatial_gradient(phi);
    std::vector<BoxSum> gsums;
    gsums.reserve(grad.size());
    for (const auto& g : grad) gsums.emplace_back(g);
    auto dirs = sphere_directions(s.nm1);
    const double dir_weight = 1.0 / static_cast<double>(dirs.size());
    double best = 0.0;
    for (const auto& q : scan.cubes) {
        auto mr = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        IndexBox b = cube_cells(s, q, false);
        double acc = 0.0;
        for_cells(s, b, [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double pt = 0.0;
            for (std::ptrdiff_t m = mr; m >= 1; m /= 2) {
                const double rho = static_cast<double>(m) * s.h;
                std::array<double, 3> level_sq{0.0, 0.0, 0.0};  // per component k
                for (const auto& u : dirs) {
                    std::array<double, 3> a_val{0.0, 0.0, 0.0};
                    for (std::size_t gi = 0; gi < kGaussX.size(); ++gi) {
                        double lam = kGaussX[gi];
                        auto bx = ix + static_cast<std::ptrdiff_t>(
                                           std::llround(lam * rho * u.u0 / s.h));
                        auto by = iy + (s.nm1 == 2
                                            ? static_cast<std::ptrdiff_t>(
                                                  std::llround(lam * rho * u.u1 / s.h))
                                            : 0);
                        for (int k = 0; k <= s.nm1; ++k) {
                            double base_dot = 0.0, shift_dot = 0.0;
                            bool ok = true;
                            for (int c = 0; c < s.nm1; ++c) {
                                double mb = 0.0, ms = 0.0;
                                ok = ok &&
                                     corner_box_mean(gsums[static_cast<std::size_t>(c)], s, bx, by,
                                                     it, m, -1, scan.wrap, mb) &&
                                     corner_box_mean(gsums[static_cast<std::size_t>(c)], s, bx, by,
                                                     it, m, k, scan.wrap, ms);
                                double uc = c == 0 ? u.u0 : u.u1;
                                base_dot += uc * mb;
                                shift_dot += uc * ms;
                            }
                            if (!ok) continue;
                            a_val[static_cast<std::size_t>(k)] +=
                                kGaussW[gi] * rho * (base_dot - shift_dot);
                        }
                    }
                    for (int k = 0; k <= s.nm1; ++k)
                        level_sq[static_cast<std::size_t>(k)] +=
                            dir_weight * a_val[static_cast<std::size_t>(k)] *
                            a_val[static_cast<std::size_t>(k)];
                }
                // dyadic rho level: d(rho)/rho mass ln2, kernel 1/rho^3 -> /rho^2
                for (int k = 0; k <= s.nm1; ++k)
                    pt += level_sq[static_cast<std::size_t>(k)] * kLn2 / (rho * rho);
            }
            acc += pt;
        });
        best = std::max(best, acc / static_cast<double>(b.count()));
    }
    return best;
}

double functional_avg_gradient_alt(const ScalarField& phi, double r_cap) {
    const GridSpec& s = phi.spec();
    auto scan = margin_scan(
        phi, r_cap, [](std::ptrdiff_t m) { return 4 * m; },
        [](std::ptrdiff_t m) { return 4 * m * m; });
    BoxSum sums(phi);
    // directions on the parabolic unit sphere |w_y| + sqrt(|w_s|) = 1; the
    // time component enters only through the norm, so only the y fraction and
    // its spatial direction are sampled (y = 0 makes all four corners cancel).
    struct PDir {
        double ky;      // |y| / nu
        double c0, c1;  // spatial unit direction of y
    };
    std::vector<PDir> dirs;
    std::vector<std::pair<double, double>> angles;
    if (s.nm1 == 1) angles = {{1.0, 0.0}, {-1.0, 0.0}};
    else
        for (int k = 0; k < 8; ++k) {
            double a = 2.0 * std::numbers::pi * k / 8.0;
            angles.emplace_back(std::cos(a), std::sin(a));
        }
    for (double ky : {1.0 / 3.0, 2.0 / 3.0, 1.0})
        for (auto [c0, c1] : angles) dirs.push_back({ky, c0, c1});
    const double dw = 1.0 / static_cast<double>(dirs.size());
    double best = 0.0;
    for (const auto& q : scan.cubes) {
        auto mr = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        IndexBox b = cube_cells(s, q, false);
        double acc = 0.0;
        for_cells(s, b, [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double pt = 0.0;
            for (std::ptrdiff_t m = mr; m >= 1; m /= 2) {
                const double nu = static_cast<double>(m) * s.h;
                double level_sum = 0.0;
                for (const auto& d : dirs) {
                    auto oy0 = static_cast<std::ptrdiff_t>(std::llround(d.ky * m * d.c0));
                    auto oy1 = s.nm1 == 2
                                   ? static_cast<std::ptrdiff_t>(std::llround(d.ky * m * d.c1))
                                   : 0;
                    std::ptrdiff_t bx = ix + oy0, by = iy + oy1;
                    for (int k = 0; k <= s.nm1; ++k) {
                        double m_pp = 0.0, m_0p = 0.0, m_ps = 0.0, m_0s = 0.0;
                        bool ok = corner_box_mean(sums, s, bx, by, it, m, -1, scan.wrap, m_pp) &&
                                  corner_box_mean(sums, s, ix, iy, it, m, -1, scan.wrap, m_0p) &&
                                  corner_box_mean(sums, s, bx, by, it, m, k, scan.wrap, m_ps) &&
                                  corner_box_mean(sums, s, ix, iy, it, m, k, scan.wrap, m_0s);
                        if (!ok) continue;
                        double a = m_pp - m_0p - m_ps + m_0s;
                        level_sum += dw * a * a;
                    }
                }
                pt += level_sum * kLn2 / (nu * nu);
            }
            acc += pt;
        });
        best = std::max(best, acc / static_cast<double>(b.count()));
    }
    return best;
}

LmReport equivalence_report(const ScalarField& phi, double r_cap) {
    LmReport rep;
    auto leg = [&](const char* name, auto&& fn, double& slot) {
        try {
            slot = fn();
        } catch (const std::exception& e) {
            rep.failures.push_back(std::string(name) + ": " + e.what());
        }
    };
    leg("second_diff_spacetime",
        [&] { return functional_second_diff_spacetime(phi, r_cap); }, rep.B_iv);
    leg("second_diff_space", [&] { return functional_second_diff_space(phi, r_cap); },
        rep.B_v_grad);
    leg("time_quotient", [&] { return functional_time_quotient(phi, r_cap); }, rep.B_v_time);
    leg("avg_gradient", [&] { return functional_avg_gradient(phi, r_cap); }, rep.B_vi_grad);
    leg("avg_gradient_alt", [&] { return functional_avg_gradient_alt(phi, r_cap); },
        rep.B_vi_grad_alt);
    leg("parabolic_derivative_bmo",
        [&] {
            // the parabolic derivative annihilates x-affine parts; remove the
            // least-squares plane before windowing so affine inputs stay exact
            ScalarField work = phi;
            const GridSpec& s = phi.spec();
            for (int k = 0; k < s.nm1; ++k) {
                double num = 0.0, den = 0.0;
                double xm = s.origin.x[static_cast<std::size_t>(k)] + 0.5 * s.length(k);
                for_cells(s,
                          IndexBox{{0, 0, 0},
                                   {static_cast<std::ptrdiff_t>(s.nx[0]),
                                    static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : s.nt),
                                    static_cast<std::ptrdiff_t>(s.nt)},
                                   s.nm1 + 1},
                          [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
                              double xc = s.coord_x(k, k == 0 ? ix : iy) - xm;
                              double v = sample(work, ix, iy, it, false);
                              num += xc * v;
                              den += xc * xc;
                          });
                if (den <= 0.0) continue;
                double slope = num / den;
                for_cells(s,
                          IndexBox{{0, 0, 0},
                                   {static_cast<std::ptrdiff_t>(s.nx[0]),
                                    static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : s.nt),
                                    static_cast<std::ptrdiff_t>(s.nt)},
                                   s.nm1 + 1},
                          [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
                              double xc = s.coord_x(k, k == 0 ? ix : iy) - xm;
                              if (s.nm1 == 2) work.at(ix, iy, it) -= slope * xc;
                              else work.at(ix, it) -= slope * xc;
                          });
            }
            ScalarField per = work.periodic() ? work : window_to_periodic(work);
            ScalarField dphi = apply_multiplier(per, MultiplierSpec::parabolic());
            BmoOptions opt;
            opt.r_max = r_cap;
            double nrm = bmo_norm(dphi, opt).norm;
            return nrm * nrm;
        },
        rep.D_bmo_sq);

    auto qs = rep.quantities();
    double lo = *std::min_element(qs.begin(), qs.end());
    double hi = *std::max_element(qs.begin(), qs.end());
    if (hi < 1e-12) {
        rep.trivial = true;
        rep.max_pairwise_ratio = 1.0;
    } else if (lo > 0.0) {
        rep.max_pairwise_ratio = hi / lo;
    } else {
        rep.max_pairwise_ratio = std::numeric_limits<double>::infinity();
    }
    return rep;
}

ScalarField weierstrass_surface(const GridSpec& spec, int K, double amp) {
    const double Lx = spec.length(0);
    const double T = spec.duration();
    const double xmid = spec.origin.x[0] + 0.5 * Lx;
    const double tmid = spec.origin.t + 0.5 * T;
    ScalarField phi(spec, true);
    phi.fill([&](const ParabolicPoint& p) {
        double xi = 2.0 * (p.x[0] - xmid) / Lx;   // box -> [-1, 1]
        double tau = 2.0 * (p.t - tmid) / T;
        double v = 0.0;
        for (int k = 0; k <= K; ++k) {
            double a = std::pow(0.5, k);
            v += a * std::cos(std::pow(2.0, k) * std::numbers::pi * xi);
            v += a * std::cos(std::pow(4.0, k) * std::numbers::pi * tau);
        }
        return amp * v;
    });
    return phi;
}

}  // namespace parab
