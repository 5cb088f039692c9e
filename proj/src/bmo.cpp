#include "parab/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace parab {

namespace {

/// Sum of |f - c| over a cell box with optional wrap.
double abs_dev_sum(const ScalarField& f, const IndexBox& b, double c, bool wrap) {
    const GridSpec& s = f.spec();
    double acc = 0.0;
    if (s.nm1 == 1) {
        for (std::ptrdiff_t jt = b.lo[1]; jt < b.hi[1]; ++jt)
            for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix)
                acc += std::fabs((wrap ? f.at_wrapped(ix, 0, jt) : f.at(ix, jt)) - c);
    } else {
        for (std::ptrdiff_t jt = b.lo[2]; jt < b.hi[2]; ++jt)
            for (std::ptrdiff_t iy = b.lo[1]; iy < b.hi[1]; ++iy)
                for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix)
                    acc += std::fabs((wrap ? f.at_wrapped(ix, iy, jt) : f.at(ix, iy, jt)) - c);
    }
    return acc;
}

BmoReport oscillation_scan(const ScalarField& f, CubeMode mode, const BmoOptions& opt) {
    const GridSpec& s = f.spec();
    const bool wrap = opt.wrap_all.value_or(f.periodic()) || opt.wrap_time;
    CubeEnumOptions ce;
    ce.r_min = s.h;
    ce.r_max = opt.r_max;
    ce.wrap = wrap;
    ce.restrict_to = opt.restrict_to;
    if (opt.restrict_to && ce.r_max == 0.0) {
        const IndexBox& rb = *opt.restrict_to;
        std::ptrdiff_t m = (rb.hi[0] - rb.lo[0]) / 2;
        int ta = s.nm1;
        auto mt = static_cast<std::ptrdiff_t>(std::floor(std::sqrt(
            static_cast<double>(rb.hi[static_cast<std::size_t>(ta)] -
                                rb.lo[static_cast<std::size_t>(ta)]) /
            2.0)));
        m = std::min(m, mt);
        if (s.nm1 == 2) m = std::min(m, (rb.hi[1] - rb.lo[1]) / 2);
        ce.r_max = static_cast<double>(m) * s.h;
    }
    // When only the time axis wraps, keep spatial fitting by capping r_max at
    // the spatial box radius and filtering below.
    auto cubes = enumerate_cubes(s, mode, ce);
    BoxSum sums(f);
    BmoReport rep;
    bool any = false;
    const bool wrap_all = opt.wrap_all.value_or(f.periodic());
    for (const auto& q : cubes) {
        IndexBox b = cube_cells(s, q, wrap);
        if (!wrap_all) {
            // spatial axes must fit unless fully wrapped
            bool ok = true;
            for (int a = 0; a < s.nm1; ++a)
                if (b.lo[static_cast<std::size_t>(a)] < 0 ||
                    b.hi[static_cast<std::size_t>(a)] >
                        static_cast<std::ptrdiff_t>(s.nx[static_cast<std::size_t>(a)]))
                    ok = false;
            int ta = s.nm1;
            if (!opt.wrap_time && (b.lo[static_cast<std::size_t>(ta)] < 0 ||
                                   b.hi[static_cast<std::size_t>(ta)] >
                                       static_cast<std::ptrdiff_t>(s.nt)))
                ok = false;
            if (!ok) continue;
        }
        double mean = sums.mean(b, wrap);
        double osc = abs_dev_sum(f, b, mean, wrap) / static_cast<double>(b.count());
        any = true;
        auto& slot = rep.scale_profile[q.r];
        slot = std::max(slot, osc);
        if (osc > rep.norm) {
            rep.norm = osc;
            rep.argmax_cube = q;
        }
    }
    if (!any) throw std::domain_error("bmo scan: no cube fits the requested domain");
    return rep;
}

}  // namespace

BmoReport bmo_norm(const ScalarField& f, const BmoOptions& opt) {
    return oscillation_scan(f, CubeMode::sliding, opt);
}

BmoReport dyadic_bmo_norm(const ScalarField& f, const BmoOptions& opt) {
    return oscillation_scan(f, CubeMode::dyadic, opt);
}

double adjacent_average_gap(const ScalarField& f) {
    const GridSpec& s = f.spec();
    BoxSum sums(f);
    double best = 0.0;
    for (std::ptrdiff_t m = 1; static_cast<double>(m) * s.h <= s.box_radius() + 1e-12; m *= 2) {
        std::ptrdiff_t mt = m * m;
        auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]) / (2 * m);
        auto n1 = s.nm1 == 2 ? static_cast<std::ptrdiff_t>(s.nx[1]) / (2 * m)
                             : static_cast<std::ptrdiff_t>(1);
        auto ntc = static_cast<std::ptrdiff_t>(s.nt) / (2 * mt);
        if (n0 < 1 || n1 < 1 || ntc < 1) continue;
        auto box_at = [&](std::ptrdiff_t i0, std::ptrdiff_t i1, std::ptrdiff_t it) {
            IndexBox b;
            b.naxes = s.nm1 + 1;
            b.lo[0] = 2 * i0 * m;
            b.hi[0] = b.lo[0] + 2 * m;
            if (s.nm1 == 2) {
                b.lo[1] = 2 * i1 * m;
                b.hi[1] = b.lo[1] + 2 * m;
            }
            int ta = s.nm1;
            b.lo[static_cast<std::size_t>(ta)] = 2 * it * mt;
            b.hi[static_cast<std::size_t>(ta)] = b.lo[static_cast<std::size_t>(ta)] + 2 * mt;
            return b;
        };
        for (std::ptrdiff_t it = 0; it < ntc; ++it)
            for (std::ptrdiff_t i1 = 0; i1 < n1; ++i1)
                for (std::ptrdiff_t i0 = 0; i0 < n0; ++i0) {
                    double m0 = sums.mean(box_at(i0, i1, it), false);
                    if (i0 + 1 < n0)
                        best = std::max(best,
                                        std::fabs(sums.mean(box_at(i0 + 1, i1, it), false) - m0));
                    if (s.nm1 == 2 && i1 + 1 < n1)
                        best = std::max(best,
                                        std::fabs(sums.mean(box_at(i0, i1 + 1, it), false) - m0));
                    if (it + 1 < ntc)
                        best = std::max(best,
                                        std::fabs(sums.mean(box_at(i0, i1, it + 1), false) - m0));
                }
    }
    return best;
}

namespace {

/// Corner-anchored cube mean: 2m cells per spatial axis, 2m^2 time cells,
/// upper-right corner cell (ix[, iy], it); `shift_axis` >= 0 shifts left by
/// half a side along that axis (the time shift is m^2 cells).
bool corner_mean(const BoxSum& sums, const GridSpec& s, std::ptrdiff_t ix, std::ptrdiff_t iy,
                 std::ptrdiff_t it, std::ptrdiff_t m, int shift_axis, bool wrap, double& out) {
    IndexBox b;
    b.naxes = s.nm1 + 1;
    std::ptrdiff_t sx = shift_axis == 0 ? m : 0;
    std::ptrdiff_t sy = shift_axis == 1 ? m : 0;
    std::ptrdiff_t st = shift_axis == s.nm1 ? m * m : 0;
    b.lo[0] = ix - 2 * m + 1 - sx;
    b.hi[0] = ix + 1 - sx;
    if (s.nm1 == 2) {
        b.lo[1] = iy - 2 * m + 1 - sy;
        b.hi[1] = iy + 1 - sy;
    }
    int ta = s.nm1;
    b.lo[static_cast<std::size_t>(ta)] = it - 2 * m * m + 1 - st;
    b.hi[static_cast<std::size_t>(ta)] = it + 1 - st;
    if (!wrap) {
        for (int a = 0; a <= s.nm1; ++a) {
            std::ptrdiff_t n = a == ta ? static_cast<std::ptrdiff_t>(s.nt)
                                       : static_cast<std::ptrdiff_t>(
                                             s.nx[static_cast<std::size_t>(a)]);
            if (b.lo[static_cast<std::size_t>(a)] < 0 || b.hi[static_cast<std::size_t>(a)] > n)
                return false;
        }
    }
    out = sums.mean(b, wrap);
    return true;
}

}  // namespace

double strichartz_functional(const ScalarField& f) {
    const GridSpec& s = f.spec();
    const bool wrap = f.periodic();
    const double ln2 = std::log(2.0);
    BoxSum sums(f);
    CubeEnumOptions ce;
    ce.r_min = 2.0 * s.h;
    ce.wrap = wrap;
    auto cubes = enumerate_cubes(s, CubeMode::sliding, ce);
    double best = 0.0;
    for (const auto& q : cubes) {
        IndexBox b = cube_cells(s, q, wrap);
        auto mr = static_cast<std::ptrdiff_t>(std::llround(q.r / s.h));
        double acc = 0.0;
        std::size_t counted = 0;
        auto visit = [&](std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
            double point_sum = 0.0;
            bool complete = true;
            for (std::ptrdiff_t m = mr; m >= 1 && complete; m /= 2) {
                for (int k = 0; k <= s.nm1; ++k) {
                    double base = 0.0, shifted = 0.0;
                    if (!corner_mean(sums, s, ix, iy, it, m, -1, wrap, base) ||
                        !corner_mean(sums, s, ix, iy, it, m, k, wrap, shifted)) {
                        complete = false;
                        break;
                    }
                    double d = base - shifted;
                    point_sum += d * d * ln2;
                }
            }
            if (complete) {
                acc += point_sum;
                ++counted;
            }
        };
        if (s.nm1 == 1) {
            for (std::ptrdiff_t jt = b.lo[1]; jt < b.hi[1]; ++jt)
                for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) visit(ix, 0, jt);
        } else {
            for (std::ptrdiff_t jt = b.lo[2]; jt < b.hi[2]; ++jt)
                for (std::ptrdiff_t iy = b.lo[1]; iy < b.hi[1]; ++iy)
                    for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) visit(ix, iy, jt);
        }
        if (counted > 0) best = std::max(best, acc / static_cast<double>(counted));
    }
    return best;
}

namespace {

/// Centered parabolic box mollification at radius m cells.
ScalarField box_mollify(const ScalarField& f, std::ptrdiff_t m) {
    const GridSpec& s = f.spec();
    const bool wrap = f.periodic();
    BoxSum sums(f);
    ScalarField out(s, f.periodic());
    auto nx0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto nx1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    auto ntc = static_cast<std::ptrdiff_t>(s.nt);
    for (std::ptrdiff_t it = 0; it < ntc; ++it)
        for (std::ptrdiff_t iy = 0; iy < nx1; ++iy)
            for (std::ptrdiff_t ix = 0; ix < nx0; ++ix) {
                IndexBox b;
                b.naxes = s.nm1 + 1;
                b.lo[0] = ix - m;
                b.hi[0] = ix + m + 1;
                if (s.nm1 == 2) {
                    b.lo[1] = iy - m;
                    b.hi[1] = iy + m + 1;
                }
                int ta = s.nm1;
                b.lo[static_cast<std::size_t>(ta)] = it - m * m;
                b.hi[static_cast<std::size_t>(ta)] = it + m * m + 1;
                if (!wrap) {
                    for (int a = 0; a <= s.nm1; ++a) {
                        std::ptrdiff_t n = a == ta ? ntc
                                                   : static_cast<std::ptrdiff_t>(
                                                         s.nx[static_cast<std::size_t>(a)]);
                        b.lo[static_cast<std::size_t>(a)] =
                            std::max<std::ptrdiff_t>(0, b.lo[static_cast<std::size_t>(a)]);
                        b.hi[static_cast<std::size_t>(a)] =
                            std::min(n, b.hi[static_cast<std::size_t>(a)]);
                    }
                }
                double v = sums.mean(b, wrap);
                if (s.nm1 == 2) out.at(ix, iy, it) = v;
                else out.at(ix, it) = v;
            }
    return out;
}

/// Largest |g(p)-g(q)| / delta(dist(p,q)) over neighbour plus random pairs.
double modulus_excess(const ScalarField& g, const std::function<double(double)>& delta,
                      std::uint64_t seed) {
    const GridSpec& s = g.spec();
    double worst = 0.0;
    auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    auto nt = static_cast<std::ptrdiff_t>(s.nt);
    auto val = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t k) {
        return s.nm1 == 2 ? g.at(i, j, k) : g.at(i, k);
    };
    auto consider = [&](std::ptrdiff_t ia, std::ptrdiff_t ja, std::ptrdiff_t ka, std::ptrdiff_t ib,
                        std::ptrdiff_t jb, std::ptrdiff_t kb) {
        ParabolicPoint a, b;
        a.dim = b.dim = s.nm1;
        a.x[0] = s.coord_x(0, ia);
        b.x[0] = s.coord_x(0, ib);
        if (s.nm1 == 2) {
            a.x[1] = s.coord_x(1, ja);
            b.x[1] = s.coord_x(1, jb);
        }
        a.t = s.coord_t(ka);
        b.t = s.coord_t(kb);
        double dd = delta(parabolic_dist(a, b));
        if (dd <= 0.0) return;
        worst = std::max(worst, std::fabs(val(ia, ja, ka) - val(ib, jb, kb)) / dd);
    };
    for (std::ptrdiff_t k = 0; k < nt; ++k)
        for (std::ptrdiff_t j = 0; j < n1; ++j)
            for (std::ptrdiff_t i = 0; i < n0; ++i) {
                if (i + 1 < n0) consider(i, j, k, i + 1, j, k);
                if (s.nm1 == 2 && j + 1 < n1) consider(i, j, k, i, j + 1, k);
                if (k + 1 < nt) consider(i, j, k, i, j, k + 1);
            }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::ptrdiff_t> di(0, n0 - 1), dj(0, n1 - 1), dk(0, nt - 1);
    for (int trial = 0; trial < 20000; ++trial) {
        std::ptrdiff_t ia = di(rng), ja = dj(rng), ka = dk(rng);
        std::ptrdiff_t ib = di(rng), jb = dj(rng), kb = dk(rng);
        if (ia == ib && ja == jb && ka == kb) continue;
        consider(ia, ja, ka, ib, jb, kb);
    }
    return worst;
}

}  // namespace

VmoDistance dist_to_equicontinuous(const ScalarField& f,
                                   const std::function<double(double)>& delta, int trials) {
    VmoDistance res;
    res.distance = bmo_norm(f).norm;  // constant candidate, always admissible
    res.fallback = true;
    for (int m = 0; m <= trials; ++m) {
        std::ptrdiff_t rad = m == 0 ? 0 : (std::ptrdiff_t{1} << (m - 1));
        if (rad > static_cast<std::ptrdiff_t>(f.spec().nx[0]) / 4) break;
        ScalarField g = rad == 0 ? f : box_mollify(f, rad);
        double excess = modulus_excess(g, delta, 97 + static_cast<std::uint64_t>(m));
        if (excess > 1.0)
            for (double& v : g.values()) v /= excess;
        ScalarField diff(f.spec(), f.periodic());
        for (std::size_t i = 0; i < diff.values().size(); ++i)
            diff.values()[i] = f.values()[i] - g.values()[i];
        double d = bmo_norm(diff).norm;
        if (d < res.distance) {
            res.distance = d;
            res.fallback = false;
            res.best_scale = static_cast<double>(rad) * f.spec().h;
        }
    }
    return res;
}

JonesGap jones_gap_check(const ScalarField& f, const ParabolicCube& q0, const ParabolicCube& q1) {
    JonesGap out;
    IndexBox b0 = cube_cells(f.spec(), q0, false);
    IndexBox b1 = cube_cells(f.spec(), q1, false);
    for (int a = 0; a < b0.naxes; ++a)
        if (b0.lo[static_cast<std::size_t>(a)] < b1.lo[static_cast<std::size_t>(a)] ||
            b0.hi[static_cast<std::size_t>(a)] > b1.hi[static_cast<std::size_t>(a)])
            throw std::invalid_argument("jones_gap_check: Q0 must be nested in Q1");
    double m0 = cube_average(f, q0);
    double m1 = cube_average(f, q1);
    BmoOptions opt;
    opt.restrict_to = b1;
    opt.wrap_all = false;
    double norm1 = bmo_norm(f, opt).norm;
    if (norm1 <= 1e-14) {
        out.trivial = true;
        return out;
    }
    out.ratio = std::fabs(m0 - m1) / (std::log(2.0 + q1.r / q0.r) * norm1);
    return out;
}

double stein_product_check(const ScalarField& g, const ScalarField& h, const ParabolicCube& q) {
    IndexBox b = cube_cells(g.spec(), q, false);
    (void)cube_cells(h.spec(), q, false);
    const GridSpec& s = g.spec();
    double mg = 0.0, mh = 0.0, mgh = 0.0;
    double n = static_cast<double>(b.count());
    auto loop = [&](auto&& fn) {
        if (s.nm1 == 1) {
            for (std::ptrdiff_t jt = b.lo[1]; jt < b.hi[1]; ++jt)
                for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix)
                    fn(g.at(ix, jt), h.at(ix, jt));
        } else {
            for (std::ptrdiff_t jt = b.lo[2]; jt < b.hi[2]; ++jt)
                for (std::ptrdiff_t iy = b.lo[1]; iy < b.hi[1]; ++iy)
                    for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix)
                        fn(g.at(ix, iy, jt), h.at(ix, iy, jt));
        }
    };
    loop([&](double gv, double hv) {
        mg += gv;
        mh += hv;
        mgh += gv * hv;
    });
    mg /= n;
    mh /= n;
    mgh /= n;
    double lhs = 0.0, t1 = 0.0, t2 = 0.0;
    loop([&](double gv, double hv) {
        lhs += std::fabs(gv * hv - mgh);
        t1 += std::fabs(gv * (hv - mh));
        t2 += std::fabs(gv - mg);
    });
    lhs /= n;
    t1 /= n;
    t2 /= n;
    return lhs - (2.0 * t1 + std::fabs(mh) * t2);
}

}  // namespace parab
