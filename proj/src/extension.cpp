#include "parab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parab/bmo.hpp"
#include "parab/lewis_murray.hpp"

namespace parab {

ExtensionConfig ExtensionConfig::from_eta(double r, double eta, double d) {
    if (!(r > 0.0) || !(eta > 0.0)) throw std::invalid_argument("extension: need r, eta > 0");
    ExtensionConfig cfg;
    cfg.r = r;
    cfg.eta = eta;
    int k = eta >= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(1.0 / eta) - 1e-12));
    cfg.R = std::ldexp(r, k);
    cfg.d_prime = 0.5 * eta * d;
    return cfg;
}

namespace {

std::ptrdiff_t aligned_cells(double value, double step, const char* what) {
    double q = value / step;
    auto m = static_cast<std::ptrdiff_t>(std::llround(q));
    if (std::fabs(q - static_cast<double>(m)) > 1e-9)
        throw std::invalid_argument(std::string(what) + " not aligned to the grid");
    return m;
}

}  // namespace

ScalarField reflect_tile_time(const ScalarField& phi, double r) {
    const GridSpec& s = phi.spec();
    auto m = aligned_cells(r, s.h, "reflect_tile_time: radius");
    if (m < 1) throw std::invalid_argument("reflect_tile_time: radius must be positive");
    const std::ptrdiff_t mt = m * m;
    // the source must cover t in [-r^2, r^2] on the cell lattice
    auto t0 = aligned_cells(-r * r - s.origin.t, s.dt(), "reflect_tile_time: time window");
    if (t0 < 0 || t0 + 2 * mt > static_cast<std::ptrdiff_t>(s.nt))
        throw std::invalid_argument("reflect_tile_time: phi must cover t in [-r^2, r^2]");

    GridSpec out_spec(s.nm1, s.h, [&] {
        ParabolicPoint o = s.origin;
        o.t = -r * r;
        return o;
    }(), s.nx, static_cast<std::size_t>(4 * mt));
    ScalarField out(out_spec, false);
    auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    for (std::ptrdiff_t j = 0; j < 4 * mt; ++j) {
        std::ptrdiff_t src = j < 2 * mt ? t0 + j : t0 + (4 * mt - 1 - j);
        for (std::ptrdiff_t iy = 0; iy < n1; ++iy)
            for (std::ptrdiff_t ix = 0; ix < n0; ++ix) {
                double v = s.nm1 == 2 ? phi.at(ix, iy, src) : phi.at(ix, src);
                if (s.nm1 == 2) out.at(ix, iy, j) = v;
                else out.at(ix, j) = v;
            }
    }
    return out;
}

ScalarField build_cutoff(const ExtensionConfig& cfg, const GridSpec& out) {
    if (!(cfg.r < 2.0 * cfg.R)) throw std::invalid_argument("build_cutoff: need r < 2R");
    ScalarField rho(out, false);
    const double span = 2.0 * cfg.R - cfg.r;
    rho.fill([&](const ParabolicPoint& p) {
        double xmax = std::fabs(p.x[0]);
        if (out.nm1 == 2) xmax = std::max(xmax, std::fabs(p.x[1]));
        return 1.0 - smoothstep01((xmax - cfg.r) / span);
    });
    return rho;
}

ScalarField extend(const ScalarField& phi, const ExtensionConfig& cfg) {
    const GridSpec& s = phi.spec();
    auto m = aligned_cells(cfg.r, s.h, "extend: radius");
    auto mR = aligned_cells(cfg.R, s.h, "extend: outer radius");
    // phi must reach |x|_inf <= 2R around the origin
    for (int k = 0; k < s.nm1; ++k) {
        double lo = s.origin.x[static_cast<std::size_t>(k)];
        double hi = lo + s.length(k);
        if (lo > -2.0 * cfg.R - 1e-12 || hi < 2.0 * cfg.R + 1e-12)
            throw std::invalid_argument("extend: phi does not cover |x| <= 2R");
    }
    ScalarField tiled = reflect_tile_time(phi, cfg.r);

    // mean spatial gradient over Q_r of the tiled surface
    std::array<double, 2> a{0.0, 0.0};
    {
        const GridSpec& ts = tiled.spec();
        auto cx = aligned_cells(0.0 - ts.origin.x[0], ts.h, "extend: origin");
        auto cy = s.nm1 == 2 ? aligned_cells(0.0 - ts.origin.x[1], ts.h, "extend: origin") : 0;
        auto ct = aligned_cells(0.0 - ts.origin.t, ts.dt(), "extend: origin");
        double count = 0.0;
        for (std::ptrdiff_t it = ct - m * m; it < ct + m * m; ++it)
            for (std::ptrdiff_t iy = (s.nm1 == 2 ? cy - m : 0);
                 iy < (s.nm1 == 2 ? cy + m : 1); ++iy)
                for (std::ptrdiff_t ix = cx - m; ix < cx + m; ++ix) {
                    auto grad1 = [&](int axis) {
                        std::ptrdiff_t dx = axis == 0 ? 1 : 0, dy = axis == 1 ? 1 : 0;
                        double fp = s.nm1 == 2 ? tiled.at(ix + dx, iy + dy, it)
                                               : tiled.at(ix + dx, it);
                        double fm = s.nm1 == 2 ? tiled.at(ix - dx, iy - dy, it)
                                               : tiled.at(ix - dx, it);
                        return (fp - fm) / (2.0 * ts.h);
                    };
                    a[0] += grad1(0);
                    if (s.nm1 == 2) a[1] += grad1(1);
                    count += 1.0;
                }
        a[0] /= count;
        if (s.nm1 == 2) a[1] /= count;
    }

    // output box: |x|_inf <= 2R + 2r, one time period
    std::ptrdiff_t half = 2 * mR + 2 * m;
    ParabolicPoint o;
    o.dim = s.nm1;
    o.x[0] = -static_cast<double>(half) * s.h;
    if (s.nm1 == 2) o.x[1] = o.x[0];
    o.t = -cfg.r * cfg.r;
    std::array<std::size_t, 2> nx{static_cast<std::size_t>(2 * half),
                                  s.nm1 == 2 ? static_cast<std::size_t>(2 * half) : 1};
    GridSpec out_spec(s.nm1, s.h, o, nx, tiled.spec().nt);
    ScalarField out(out_spec, false);

    const GridSpec& ts = tiled.spec();
    auto sx0 = aligned_cells(out_spec.origin.x[0] - ts.origin.x[0], s.h, "extend: offset");
    auto sy0 = s.nm1 == 2
                   ? aligned_cells(out_spec.origin.x[1] - ts.origin.x[1], s.h, "extend: offset")
                   : 0;
    const double span = 2.0 * cfg.R - cfg.r;
    auto n0 = static_cast<std::ptrdiff_t>(out_spec.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? out_spec.nx[1] : 1);
    auto ntc = static_cast<std::ptrdiff_t>(out_spec.nt);
    for (std::ptrdiff_t it = 0; it < ntc; ++it)
        for (std::ptrdiff_t iy = 0; iy < n1; ++iy)
            for (std::ptrdiff_t ix = 0; ix < n0; ++ix) {
                double x0 = out_spec.coord_x(0, ix);
                double x1 = s.nm1 == 2 ? out_spec.coord_x(1, iy) : 0.0;
                double xmax = std::fabs(x0);
                if (s.nm1 == 2) xmax = std::max(xmax, std::fabs(x1));
                double rho = 1.0 - smoothstep01((xmax - cfg.r) / span);
                double affine = a[0] * x0 + (s.nm1 == 2 ? a[1] * x1 : 0.0);
                double v;
                if (rho <= 0.0) {
                    v = affine;
                } else {
                    std::ptrdiff_t tx = ix + sx0, ty = iy + sy0;
                    double tv = s.nm1 == 2 ? tiled.at(tx, ty, it) : tiled.at(tx, it);
                    v = tv * rho + (1.0 - rho) * affine;
                }
                if (s.nm1 == 2) out.at(ix, iy, it) = v;
                else out.at(ix, it) = v;
            }
    return out;
}

ExtensionReport verify_extension(const ScalarField& phi, const ScalarField& Phi,
                                 const ExtensionConfig& cfg) {
    ExtensionReport rep;
    const GridSpec& ps = phi.spec();
    const GridSpec& es = Phi.spec();
    auto m = aligned_cells(cfg.r, ps.h, "verify: radius");

    // (i) stored-value equality over Q_r
    {
        auto pcx = aligned_cells(0.0 - ps.origin.x[0], ps.h, "verify: origin");
        auto pct = aligned_cells(0.0 - ps.origin.t, ps.dt(), "verify: origin");
        auto ecx = aligned_cells(0.0 - es.origin.x[0], es.h, "verify: origin");
        auto ect = aligned_cells(0.0 - es.origin.t, es.dt(), "verify: origin");
        auto pcy = ps.nm1 == 2 ? aligned_cells(0.0 - ps.origin.x[1], ps.h, "verify") : 0;
        auto ecy = ps.nm1 == 2 ? aligned_cells(0.0 - es.origin.x[1], es.h, "verify") : 0;
        rep.restriction_exact = true;
        for (std::ptrdiff_t it = -m * m; it < m * m; ++it)
            for (std::ptrdiff_t iy = (ps.nm1 == 2 ? -m : 0); iy < (ps.nm1 == 2 ? m : 1); ++iy)
                for (std::ptrdiff_t ix = -m; ix < m; ++ix) {
                    double pv = ps.nm1 == 2 ? phi.at(pcx + ix, pcy + iy, pct + it)
                                            : phi.at(pcx + ix, pct + it);
                    double ev = ps.nm1 == 2 ? Phi.at(ecx + ix, ecy + iy, ect + it)
                                            : Phi.at(ecx + ix, ect + it);
                    double d = std::fabs(ev - pv);
                    rep.restriction_maxdiff = std::max(rep.restriction_maxdiff, d);
                    if (d != 0.0) rep.restriction_exact = false;
                }
    }

    rep.lip_phi = lip_constant_estimate(phi);
    rep.lip_Phi = lip_constant_estimate(Phi);

    // (iii) BMO of grad Phi, scanning cubes that wrap the periodic time axis
    {
        ScalarField gx(es, false);
        auto n0 = static_cast<std::ptrdiff_t>(es.nx[0]);
        auto n1 = static_cast<std::ptrdiff_t>(es.nm1 == 2 ? es.nx[1] : 1);
        auto ntc = static_cast<std::ptrdiff_t>(es.nt);
        double worst_component = 0.0;
        for (int axis = 0; axis < es.nm1; ++axis) {
            for (std::ptrdiff_t it = 0; it < ntc; ++it)
                for (std::ptrdiff_t iy = 0; iy < n1; ++iy)
                    for (std::ptrdiff_t ix = 0; ix < n0; ++ix) {
                        std::ptrdiff_t dx = axis == 0 ? 1 : 0, dy = axis == 1 ? 1 : 0;
                        std::ptrdiff_t ip = axis == 0 ? ix : iy;
                        std::ptrdiff_t nk = axis == 0 ? n0 : n1;
                        double num, den;
                        if (ip + 1 < nk && ip - 1 >= 0) {
                            num = (es.nm1 == 2 ? Phi.at(ix + dx, iy + dy, it)
                                               : Phi.at(ix + dx, it)) -
                                  (es.nm1 == 2 ? Phi.at(ix - dx, iy - dy, it)
                                               : Phi.at(ix - dx, it));
                            den = 2.0 * es.h;
                        } else if (ip + 1 >= nk) {
                            num = (es.nm1 == 2 ? Phi.at(ix, iy, it) : Phi.at(ix, it)) -
                                  (es.nm1 == 2 ? Phi.at(ix - dx, iy - dy, it)
                                               : Phi.at(ix - dx, it));
                            den = es.h;
                        } else {
                            num = (es.nm1 == 2 ? Phi.at(ix + dx, iy + dy, it)
                                               : Phi.at(ix + dx, it)) -
                                  (es.nm1 == 2 ? Phi.at(ix, iy, it) : Phi.at(ix, it));
                            den = es.h;
                        }
                        if (es.nm1 == 2) gx.at(ix, iy, it) = num / den;
                        else gx.at(ix, it) = num / den;
                    }
            BmoOptions opt;
            opt.wrap_time = true;
            opt.wrap_all = false;
            opt.r_max = 0.5 * es.length(0);
            worst_component = std::max(worst_component, bmo_norm(gx, opt).norm);
        }
        rep.grad_bmo = worst_component;
    }
    const double eps_exponent = 0.9;  // representative epsilon = 0.1
    double denom = std::pow(cfg.eta, eps_exponent) + cfg.eta * rep.lip_phi;
    rep.grad_ratio = denom > 0.0 ? rep.grad_bmo / denom : 0.0;

    // (iv) time quotient of Phi with time wrap
    rep.time_quotient = functional_time_quotient(Phi, 0.0, true);
    rep.time_ratio = cfg.eta > 0.0 ? rep.time_quotient / (cfg.eta * cfg.eta) : 0.0;

    // periodic seam: the reflection maps the last stored slice onto the first
    // source slice, so the two stored slices must agree exactly
    {
        auto n0 = static_cast<std::ptrdiff_t>(es.nx[0]);
        auto n1 = static_cast<std::ptrdiff_t>(es.nm1 == 2 ? es.nx[1] : 1);
        auto last = static_cast<std::ptrdiff_t>(es.nt) - 1;
        for (std::ptrdiff_t iy = 0; iy < n1; ++iy)
            for (std::ptrdiff_t ix = 0; ix < n0; ++ix) {
                double d = std::fabs((es.nm1 == 2 ? Phi.at(ix, iy, 0) : Phi.at(ix, 0)) -
                                     (es.nm1 == 2 ? Phi.at(ix, iy, last) : Phi.at(ix, last)));
                rep.seam_maxjump = std::max(rep.seam_maxjump, d);
            }
    }
    return rep;
}

}  // namespace parab
