#include "parab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace parab {

GridSpec::GridSpec(int nm1_, double h_, ParabolicPoint origin_, std::array<std::size_t, 2> nx_,
                   std::size_t nt_)
    : nm1(nm1_), h(h_), origin(origin_), nx(nx_), nt(nt_) {
    if (nm1 != 1 && nm1 != 2) throw std::invalid_argument("GridSpec: nm1 must be 1 or 2");
    if (!(h > 0.0)) throw std::invalid_argument("GridSpec: h must be positive");
    for (int k = 0; k < nm1; ++k)
        if (nx[static_cast<std::size_t>(k)] < 4)
            throw std::invalid_argument("GridSpec: need at least 4 cells per axis");
    if (nt < 4) throw std::invalid_argument("GridSpec: need at least 4 time cells");
    if (nm1 == 1) nx[1] = 1;
    origin.dim = nm1;
}

bool GridSpec::operator==(const GridSpec& o) const {
    if (nm1 != o.nm1 || h != o.h || nt != o.nt) return false;
    for (int k = 0; k < nm1; ++k) {
        if (nx[static_cast<std::size_t>(k)] != o.nx[static_cast<std::size_t>(k)]) return false;
        if (origin.x[static_cast<std::size_t>(k)] != o.origin.x[static_cast<std::size_t>(k)])
            return false;
    }
    return origin.t == o.origin.t;
}

double GridSpec::box_radius() const {
    std::size_t m = nx[0] / 2;
    if (nm1 == 2) m = std::min(m, nx[1] / 2);
    auto mt = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(nt) / 2.0)));
    m = std::min(m, mt);
    return static_cast<double>(m) * h;
}

ScalarField::ScalarField(GridSpec spec, bool periodic)
    : spec_(std::move(spec)), values_(spec_.total(), 0.0), periodic_(periodic) {}

ScalarField::ScalarField(GridSpec spec, std::vector<double> values, bool periodic)
    : spec_(std::move(spec)), values_(std::move(values)), periodic_(periodic) {
    if (values_.size() != spec_.total())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

static std::ptrdiff_t fold(std::ptrdiff_t i, std::ptrdiff_t n) {
    i %= n;
    return i < 0 ? i + n : i;
}

double ScalarField::at_wrapped(std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) const {
    ix = fold(ix, static_cast<std::ptrdiff_t>(spec_.nx[0]));
    it = fold(it, static_cast<std::ptrdiff_t>(spec_.nt));
    if (spec_.nm1 == 2) {
        iy = fold(iy, static_cast<std::ptrdiff_t>(spec_.nx[1]));
        return values_[index3(ix, iy, it)];
    }
    return values_[index2(ix, it)];
}

void ScalarField::fill(const std::function<double(const ParabolicPoint&)>& f) {
    const auto& s = spec_;
    for (std::size_t jt = 0; jt < s.nt; ++jt) {
        for (std::size_t iy = 0; iy < (s.nm1 == 2 ? s.nx[1] : 1); ++iy) {
            for (std::size_t ix = 0; ix < s.nx[0]; ++ix) {
                ParabolicPoint p;
                p.dim = s.nm1;
                p.x[0] = s.coord_x(0, static_cast<std::ptrdiff_t>(ix));
                if (s.nm1 == 2) p.x[1] = s.coord_x(1, static_cast<std::ptrdiff_t>(iy));
                p.t = s.coord_t(static_cast<std::ptrdiff_t>(jt));
                std::size_t idx = s.nm1 == 2 ? index3(static_cast<std::ptrdiff_t>(ix),
                                                      static_cast<std::ptrdiff_t>(iy),
                                                      static_cast<std::ptrdiff_t>(jt))
                                             : index2(static_cast<std::ptrdiff_t>(ix),
                                                      static_cast<std::ptrdiff_t>(jt));
                values_[idx] = f(p);
            }
        }
    }
}

bool ScalarField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double ScalarField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return values_.empty() ? 0.0 : s / static_cast<double>(values_.size());
}

// ---------------------------------------------------------------------------
// BoxSum

BoxSum::BoxSum(const ScalarField& f) : spec_(f.spec()), naxes_(f.spec().nm1 + 1) {
    dims_[0] = static_cast<std::ptrdiff_t>(spec_.nx[0]);
    dims_[1] = spec_.nm1 == 2 ? static_cast<std::ptrdiff_t>(spec_.nx[1]) : 1;
    dims_[2] = static_cast<std::ptrdiff_t>(spec_.nt);
    const std::ptrdiff_t d0 = dims_[0], d1 = dims_[1], d2 = dims_[2];
    table_.assign(static_cast<std::size_t>((d0 + 1) * (d1 + 1) * (d2 + 1)), 0.0);
    auto T = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t k) -> double& {
        return table_[static_cast<std::size_t>((k * (d1 + 1) + j) * (d0 + 1) + i)];
    };
    for (std::ptrdiff_t k = 1; k <= d2; ++k)
        for (std::ptrdiff_t j = 1; j <= d1; ++j)
            for (std::ptrdiff_t i = 1; i <= d0; ++i) {
                double v = spec_.nm1 == 2 ? f.at(i - 1, j - 1, k - 1) : f.at(i - 1, k - 1);
                T(i, j, k) = v + T(i - 1, j, k) + T(i, j - 1, k) - T(i - 1, j - 1, k) +
                             T(i, j, k - 1) - T(i - 1, j, k - 1) - T(i, j - 1, k - 1) +
                             T(i - 1, j - 1, k - 1);
            }
}

double BoxSum::sum_core(std::array<std::ptrdiff_t, 3> lo, std::array<std::ptrdiff_t, 3> hi) const {
    const std::ptrdiff_t d0 = dims_[0], d1 = dims_[1];
    auto T = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t k) {
        return table_[static_cast<std::size_t>((k * (d1 + 1) + j) * (d0 + 1) + i)];
    };
    return T(hi[0], hi[1], hi[2]) - T(lo[0], hi[1], hi[2]) - T(hi[0], lo[1], hi[2]) -
           T(hi[0], hi[1], lo[2]) + T(lo[0], lo[1], hi[2]) + T(lo[0], hi[1], lo[2]) +
           T(hi[0], lo[1], lo[2]) - T(lo[0], lo[1], lo[2]);
}

namespace {
struct Segment {
    std::ptrdiff_t lo, hi;
    double mult;
};
}  // namespace

double BoxSum::sum(const IndexBox& b, bool wrap) const {
    // Split each axis range into in-table segments (whole-axis copies get a
    // multiplicity when the range wraps more than once).
    std::array<std::vector<Segment>, 3> segs;
    // Box axes are (spatial..., time); table axes are (x, y, t) with y trivial
    // when nm1 == 1, so the time axis of a 2-axis box maps to table axis 2.
    for (int a = 0; a < 3; ++a) {
        int ba;  // box axis feeding table axis a, or -1 for the padded axis
        if (naxes_ == 2) ba = a == 0 ? 0 : (a == 2 ? 1 : -1);
        else ba = a;
        std::ptrdiff_t lo = ba >= 0 ? b.lo[static_cast<std::size_t>(ba)] : 0;
        std::ptrdiff_t hi = ba >= 0 ? b.hi[static_cast<std::size_t>(ba)] : 1;
        std::ptrdiff_t d = dims_[static_cast<std::size_t>(a)];
        if (hi <= lo) throw std::invalid_argument("BoxSum: empty box");
        std::ptrdiff_t len = hi - lo;
        if (!wrap) {
            if (lo < 0 || hi > d) throw std::domain_error("BoxSum: box outside field");
            segs[static_cast<std::size_t>(a)].push_back({lo, hi, 1.0});
            continue;
        }
        std::ptrdiff_t full = len / d;
        std::ptrdiff_t rem = len % d;
        if (full > 0)
            segs[static_cast<std::size_t>(a)].push_back({0, d, static_cast<double>(full)});
        if (rem > 0) {
            std::ptrdiff_t s = fold(lo, d);
            if (s + rem <= d) {
                segs[static_cast<std::size_t>(a)].push_back({s, s + rem, 1.0});
            } else {
                segs[static_cast<std::size_t>(a)].push_back({s, d, 1.0});
                segs[static_cast<std::size_t>(a)].push_back({0, s + rem - d, 1.0});
            }
        }
    }
    double acc = 0.0;
    for (const auto& s0 : segs[0])
        for (const auto& s1 : segs[1])
            for (const auto& s2 : segs[2])
                acc += s0.mult * s1.mult * s2.mult *
                       sum_core({s0.lo, s1.lo, s2.lo}, {s0.hi, s1.hi, s2.hi});
    return acc;
}

double BoxSum::mean(const IndexBox& b, bool wrap) const {
    return sum(b, wrap) / static_cast<double>(b.count());
}

// ---------------------------------------------------------------------------
// Cubes on the grid

IndexBox cube_cells(const GridSpec& spec, const ParabolicCube& q, bool wrap) {
    const double tol = 1e-9 * spec.h;
    double rm = q.r / spec.h;
    auto m = static_cast<std::ptrdiff_t>(std::llround(rm));
    if (m < 1 || std::fabs(rm - static_cast<double>(m)) > 1e-9)
        throw std::invalid_argument("cube_cells: radius not a positive multiple of h");
    IndexBox b;
    b.naxes = spec.nm1 + 1;
    for (int k = 0; k < spec.nm1; ++k) {
        double off = (q.center.x[static_cast<std::size_t>(k)] -
                      spec.origin.x[static_cast<std::size_t>(k)]) /
                     spec.h;
        auto c = static_cast<std::ptrdiff_t>(std::llround(off));
        if (std::fabs(off - static_cast<double>(c)) * spec.h > tol)
            throw std::invalid_argument("cube_cells: center not on the cell-corner lattice");
        b.lo[static_cast<std::size_t>(k)] = c - m;
        b.hi[static_cast<std::size_t>(k)] = c + m;
        if (!wrap && (b.lo[static_cast<std::size_t>(k)] < 0 ||
                      b.hi[static_cast<std::size_t>(k)] >
                          static_cast<std::ptrdiff_t>(spec.nx[static_cast<std::size_t>(k)])))
            throw std::domain_error("cube_cells: cube outside field box");
    }
    double offt = (q.center.t - spec.origin.t) / spec.dt();
    auto ct = static_cast<std::ptrdiff_t>(std::llround(offt));
    if (std::fabs(offt - static_cast<double>(ct)) * spec.dt() > tol * spec.h)
        throw std::invalid_argument("cube_cells: center not on the time lattice");
    std::ptrdiff_t mt = m * m;
    int ta = spec.nm1;  // time axis position in the box
    b.lo[static_cast<std::size_t>(ta)] = ct - mt;
    b.hi[static_cast<std::size_t>(ta)] = ct + mt;
    if (!wrap && (ct - mt < 0 || ct + mt > static_cast<std::ptrdiff_t>(spec.nt)))
        throw std::domain_error("cube_cells: cube outside field box");
    return b;
}

double cube_average(const ScalarField& f, const ParabolicCube& q) {
    IndexBox b = cube_cells(f.spec(), q, false);
    const GridSpec& s = f.spec();
    double acc = 0.0;
    if (s.nm1 == 1) {
        for (std::ptrdiff_t jt = b.lo[1]; jt < b.hi[1]; ++jt)
            for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) acc += f.at(ix, jt);
    } else {
        for (std::ptrdiff_t jt = b.lo[2]; jt < b.hi[2]; ++jt)
            for (std::ptrdiff_t iy = b.lo[1]; iy < b.hi[1]; ++iy)
                for (std::ptrdiff_t ix = b.lo[0]; ix < b.hi[0]; ++ix) acc += f.at(ix, iy, jt);
    }
    return acc / static_cast<double>(b.count());
}

std::vector<ParabolicCube> enumerate_cubes(const GridSpec& spec, CubeMode mode,
                                           const CubeEnumOptions& opt) {
    std::vector<ParabolicCube> out;
    double r_max = opt.r_max > 0.0 ? opt.r_max : spec.box_radius();
    double r_min = std::max(opt.r_min, spec.h);
    auto inside_restrict = [&](const IndexBox& b) {
        if (!opt.restrict_to) return true;
        const IndexBox& rb = *opt.restrict_to;
        for (int a = 0; a < b.naxes; ++a)
            if (b.lo[static_cast<std::size_t>(a)] < rb.lo[static_cast<std::size_t>(a)] ||
                b.hi[static_cast<std::size_t>(a)] > rb.hi[static_cast<std::size_t>(a)])
                return false;
        return true;
    };
    for (std::ptrdiff_t m = 1; static_cast<double>(m) * spec.h <= r_max + 1e-12; m *= 2) {
        double r = static_cast<double>(m) * spec.h;
        if (r < r_min - 1e-12) continue;
        std::ptrdiff_t mt = m * m;
        std::array<std::ptrdiff_t, 2> nsp{static_cast<std::ptrdiff_t>(spec.nx[0]),
                                          static_cast<std::ptrdiff_t>(spec.nm1 == 2 ? spec.nx[1]
                                                                                    : 1)};
        auto ntc = static_cast<std::ptrdiff_t>(spec.nt);
        bool fits = 2 * m <= nsp[0] && (spec.nm1 == 1 || 2 * m <= nsp[1]) && 2 * mt <= ntc;
        if (!fits && !opt.wrap) continue;

        // center offsets (cell units) per axis; sliding mode strides a
        // half-step in space and a quarter-step in time (the time side 2r^2
        // shrinks quadratically, so the coarser stride misses sups there)
        std::vector<std::ptrdiff_t> cx0, cx1, ct;
        auto positions = [&](std::ptrdiff_t n, std::ptrdiff_t half, std::ptrdiff_t stride,
                             std::vector<std::ptrdiff_t>& v) {
            if (mode == CubeMode::dyadic) {
                for (std::ptrdiff_t i = 0; (2 * i + 2) * half <= n; ++i)
                    v.push_back((2 * i + 1) * half);
            } else {
                if (opt.wrap) {
                    for (std::ptrdiff_t c = 0; c < std::max<std::ptrdiff_t>(n, 2 * half);
                         c += stride)
                        v.push_back(c);
                } else {
                    for (std::ptrdiff_t c = half; c + half <= n; c += stride) v.push_back(c);
                }
            }
        };
        positions(nsp[0], m, m, cx0);
        if (spec.nm1 == 2) positions(nsp[1], m, m, cx1);
        else cx1.push_back(0);
        positions(ntc, mt, std::max<std::ptrdiff_t>(1, mt / 2), ct);
        for (std::ptrdiff_t i0 : cx0)
            for (std::ptrdiff_t i1 : cx1)
                for (std::ptrdiff_t it : ct) {
                    ParabolicPoint c;
                    c.dim = spec.nm1;
                    c.x[0] = spec.origin.x[0] + static_cast<double>(i0) * spec.h;
                    if (spec.nm1 == 2) c.x[1] = spec.origin.x[1] + static_cast<double>(i1) * spec.h;
                    c.t = spec.origin.t + static_cast<double>(it) * spec.dt();
                    ParabolicCube q(c, r);
                    if (opt.restrict_to && !inside_restrict(cube_cells(spec, q, opt.wrap)))
                        continue;
                    out.push_back(q);
                }
    }
    return out;
}

// ---------------------------------------------------------------------------

double lip_constant_estimate(const ScalarField& f, std::size_t budget, std::uint64_t seed) {
    const GridSpec& s = f.spec();
    const bool wrap = f.periodic();
    double best = 0.0;
    auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    auto nt = static_cast<std::ptrdiff_t>(s.nt);
    auto value = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t k) {
        return s.nm1 == 2 ? f.at(i, j, k) : f.at(i, k);
    };
    auto quot_axis = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t k, int axis) {
        std::ptrdiff_t i2 = i + (axis == 0), j2 = j + (axis == 1), k2 = k + (axis == 2);
        double denom = axis == 2 ? s.h : s.h;  // |dt|^{1/2} = h for one time cell
        double v2;
        if (i2 >= n0 || j2 >= n1 || k2 >= nt) {
            if (!wrap) return;
            v2 = f.at_wrapped(i2, j2, k2);
        } else {
            v2 = value(i2, j2, k2);
        }
        best = std::max(best, std::fabs(v2 - value(i, j, k)) / denom);
    };
    for (std::ptrdiff_t k = 0; k < nt; ++k)
        for (std::ptrdiff_t j = 0; j < n1; ++j)
            for (std::ptrdiff_t i = 0; i < n0; ++i) {
                quot_axis(i, j, k, 0);
                if (s.nm1 == 2) quot_axis(i, j, k, 1);
                quot_axis(i, j, k, 2);
            }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::ptrdiff_t> di(0, n0 - 1), dj(0, n1 - 1), dk(0, nt - 1);
    for (std::size_t trial = 0; trial < budget; ++trial) {
        std::ptrdiff_t ia = di(rng), ja = dj(rng), ka = dk(rng);
        std::ptrdiff_t ib = di(rng), jb = dj(rng), kb = dk(rng);
        if (ia == ib && ja == jb && ka == kb) continue;
        ParabolicPoint pa, pb;
        pa.dim = pb.dim = s.nm1;
        pa.x[0] = s.coord_x(0, ia);
        pb.x[0] = s.coord_x(0, ib);
        if (s.nm1 == 2) {
            pa.x[1] = s.coord_x(1, ja);
            pb.x[1] = s.coord_x(1, jb);
        }
        pa.t = s.coord_t(ka);
        pb.t = s.coord_t(kb);
        double d = parabolic_dist(pa, pb);
        if (d <= 0.0) continue;
        best = std::max(best, std::fabs(value(ia, ja, ka) - value(ib, jb, kb)) / d);
    }
    return best;
}

double smoothstep01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

ScalarField window_to_periodic(const ScalarField& f, double frac) {
    const GridSpec& s = f.spec();
    ScalarField out(s, true);
    const double mu = f.mean();
    auto taper1 = [&](std::ptrdiff_t i, std::size_t n) {
        double xi = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        if (xi < frac) return smoothstep01(xi / frac);
        if (xi > 1.0 - frac) return smoothstep01((1.0 - xi) / frac);
        return 1.0;
    };
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(s.nt); ++k)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1); ++j)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s.nx[0]); ++i) {
                double w = taper1(i, s.nx[0]) * taper1(k, s.nt);
                if (s.nm1 == 2) w *= taper1(j, s.nx[1]);
                double v = (s.nm1 == 2 ? f.at(i, j, k) : f.at(i, k)) - mu;
                if (s.nm1 == 2) out.at(i, j, k) = v * w;
                else out.at(i, k) = v * w;
            }
    return out;
}

void GraphDomain::normalize_at_origin() {
    const GridSpec& s = phi.spec();
    auto nearest = [&](double coord, double o, double step, std::size_t n) {
        auto i = static_cast<std::ptrdiff_t>(std::llround((coord - o) / step - 0.5));
        return std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1);
    };
    std::ptrdiff_t i0 = nearest(0.0, s.origin.x[0], s.h, s.nx[0]);
    std::ptrdiff_t j0 = s.nm1 == 2 ? nearest(0.0, s.origin.x[1], s.h, s.nx[1]) : 0;
    std::ptrdiff_t k0 = nearest(0.0, s.origin.t, s.dt(), s.nt);
    double v0 = s.nm1 == 2 ? phi.at(i0, j0, k0) : phi.at(i0, k0);
    for (double& v : phi.values()) v -= v0;
}

}  // namespace parab
