#include "parab/frac_ops.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace parab {

double parabolic_symbol_norm(double xi_abs, double tau) {
    double a2 = xi_abs * xi_abs;
    double r2 = 0.5 * (a2 + std::sqrt(a2 * a2 + 4.0 * tau * tau));
    return std::sqrt(r2);
}

MultiplierSpec MultiplierSpec::d_alpha(double a) {
    if (!(a > 0.0 && a < 2.0)) throw std::invalid_argument("d_alpha: alpha must lie in (0,2)");
    return {Kind::d_alpha_time, a, 1};
}
MultiplierSpec MultiplierSpec::dn() { return {Kind::dn_half, 0.5, 1}; }
MultiplierSpec MultiplierSpec::parabolic() { return {Kind::d_parabolic, 0.5, 1}; }
MultiplierSpec MultiplierSpec::riesz_j(int j) {
    if (j < 1) throw std::invalid_argument("riesz: j must be >= 1");
    return {Kind::riesz, 0.5, j};
}
MultiplierSpec MultiplierSpec::partial_x(int j) {
    if (j < 1) throw std::invalid_argument("partial: j must be >= 1");
    return {Kind::partial, 0.5, j};
}

namespace {

struct Spectrum {
    // r2c layout: dims (slowest..fastest) = {nt [, ny], nx}, last halved.
    std::vector<std::complex<double>> data;
    std::array<int, 3> n{1, 1, 1};  // nt, ny, nx
    int rank = 2;
};

Spectrum forward(const ScalarField& f) {
    const GridSpec& s = f.spec();
    Spectrum sp;
    sp.rank = s.nm1 + 1;
    sp.n = {static_cast<int>(s.nt), s.nm1 == 2 ? static_cast<int>(s.nx[1]) : 1,
            static_cast<int>(s.nx[0])};
    int dims[3] = {sp.n[0], sp.n[1], sp.n[2]};
    int* dptr = s.nm1 == 2 ? dims : new int[2]{sp.n[0], sp.n[2]};
    std::size_t nxh = static_cast<std::size_t>(sp.n[2]) / 2 + 1;
    sp.data.assign(static_cast<std::size_t>(sp.n[0]) * static_cast<std::size_t>(sp.n[1]) * nxh,
                   {0.0, 0.0});
    std::vector<double> in(f.values().begin(), f.values().end());
    fftw_plan plan = fftw_plan_dft_r2c(s.nm1 + 1, dptr, in.data(),
                                       reinterpret_cast<fftw_complex*>(sp.data.data()),
                                       FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (s.nm1 != 2) delete[] dptr;
    return sp;
}

ScalarField inverse(const Spectrum& sp, const GridSpec& s) {
    int dims2[2] = {sp.n[0], sp.n[2]};
    int dims3[3] = {sp.n[0], sp.n[1], sp.n[2]};
    std::vector<std::complex<double>> work = sp.data;  // c2r destroys its input
    ScalarField out(s, true);
    std::vector<double> buf(s.total());
    fftw_plan plan = fftw_plan_dft_c2r(s.nm1 + 1, s.nm1 == 2 ? dims3 : dims2,
                                       reinterpret_cast<fftw_complex*>(work.data()), buf.data(),
                                       FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double scale = 1.0 / static_cast<double>(s.total());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        double v = buf[i] * scale;
        if (!std::isfinite(v)) throw std::runtime_error("apply_multiplier: NaN in transform");
        out.values()[i] = v;
    }
    return out;
}

int signed_index(int k, int n) { return k <= n / 2 ? k : k - n; }

/// Evaluate the multiplier symbol at physical frequency (xi, tau).
std::complex<double> symbol_at(const MultiplierSpec& m, int nm1, const double* xi, double tau,
                               bool nyq_x0, bool nyq_x1, bool nyq_t) {
    double xin = nm1 == 2 ? std::hypot(xi[0], xi[1]) : std::fabs(xi[0]);
    if (xin == 0.0 && tau == 0.0) return {0.0, 0.0};
    double rho = parabolic_symbol_norm(xin, tau);
    using C = std::complex<double>;
    switch (m.kind) {
        case MultiplierSpec::Kind::d_alpha_time:
            return {std::pow(std::fabs(tau), m.alpha), 0.0};
        case MultiplierSpec::Kind::dn_half:
            if (nyq_t) return {0.0, 0.0};
            return C{0.0, tau / rho};
        case MultiplierSpec::Kind::d_parabolic:
            return {rho, 0.0};
        case MultiplierSpec::Kind::riesz: {
            int n = nm1 + 1;
            if (m.j == n) {
                if (nyq_t) return {0.0, 0.0};
                return C{0.0, -tau / (rho * rho)};
            }
            if (m.j > nm1) throw std::invalid_argument("riesz: component out of range");
            bool nyq = m.j == 1 ? nyq_x0 : nyq_x1;
            if (nyq) return {0.0, 0.0};
            return C{0.0, -xi[m.j - 1] / rho};
        }
        case MultiplierSpec::Kind::partial: {
            if (m.j > nm1) throw std::invalid_argument("partial: component out of range");
            bool nyq = m.j == 1 ? nyq_x0 : nyq_x1;
            if (nyq) return {0.0, 0.0};
            return C{0.0, xi[m.j - 1]};
        }
    }
    return {0.0, 0.0};
}

void apply_symbol(Spectrum& sp, const GridSpec& s, const MultiplierSpec& m) {
    const double Lx = s.length(0);
    const double Ly = s.nm1 == 2 ? s.length(1) : 1.0;
    const double T = s.duration();
    const double two_pi = 2.0 * std::numbers::pi;
    int nt = sp.n[0], ny = sp.n[1], nx = sp.n[2];
    std::size_t nxh = static_cast<std::size_t>(nx) / 2 + 1;
    for (int kt = 0; kt < nt; ++kt) {
        double tau = two_pi * signed_index(kt, nt) / T;
        bool nyq_t = nt % 2 == 0 && kt == nt / 2;
        for (int ky = 0; ky < ny; ++ky) {
            double xi1 = s.nm1 == 2 ? two_pi * signed_index(ky, ny) / Ly : 0.0;
            bool nyq_x1 = s.nm1 == 2 && ny % 2 == 0 && ky == ny / 2;
            for (int kx = 0; kx < static_cast<int>(nxh); ++kx) {
                double xi0 = two_pi * kx / Lx;
                bool nyq_x0 = nx % 2 == 0 && kx == nx / 2;
                double xi[2] = {xi0, xi1};
                std::size_t idx =
                    (static_cast<std::size_t>(kt) * static_cast<std::size_t>(ny) +
                     static_cast<std::size_t>(ky)) *
                        nxh +
                    static_cast<std::size_t>(kx);
                sp.data[idx] *= symbol_at(m, s.nm1, xi, tau, nyq_x0, nyq_x1, nyq_t);
            }
        }
    }
}

}  // namespace

ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& m) {
    if (!f.periodic())
        throw std::invalid_argument("apply_multiplier: field must be periodic (window it first)");
    Spectrum sp = forward(f);
    apply_symbol(sp, f.spec(), m);
    return inverse(sp, f.spec());
}

double field_l2_norm(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.values()) acc += v * v;
    return std::sqrt(acc * f.spec().cell_volume());
}

double fft_roundtrip_error(const ScalarField& f) {
    Spectrum sp = forward(f);
    ScalarField back = inverse(sp, f.spec());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < back.values().size(); ++i) {
        double d = back.values()[i] - f.values()[i];
        num += d * d;
        den += f.values()[i] * f.values()[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

RieszResidual riesz_decomposition_residual(const ScalarField& f) {
    const int n = f.spec().nm1 + 1;
    ScalarField target = apply_multiplier(f, MultiplierSpec::parabolic());
    ScalarField sum(f.spec(), true);
    for (int j = 1; j < n; ++j) {
        ScalarField dj = apply_multiplier(f, MultiplierSpec::partial_x(j));
        ScalarField rj = apply_multiplier(dj, MultiplierSpec::riesz_j(j));
        for (std::size_t i = 0; i < sum.values().size(); ++i) sum.values()[i] += rj.values()[i];
    }
    ScalarField dn = apply_multiplier(f, MultiplierSpec::dn());
    ScalarField rn = apply_multiplier(dn, MultiplierSpec::riesz_j(n));
    for (std::size_t i = 0; i < sum.values().size(); ++i) sum.values()[i] += rn.values()[i];

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sum.values().size(); ++i) {
        double d = sum.values()[i] - target.values()[i];
        num += d * d;
        den += target.values()[i] * target.values()[i];
    }
    RieszResidual r;
    r.absolute = std::sqrt(num * f.spec().cell_volume());
    if (den <= 1e-300) {
        r.trivial = true;
        r.relative = r.absolute;
    } else {
        r.relative = std::sqrt(num / den);
    }
    return r;
}

ScalarField pointwise_half_time_derivative(const ScalarField& f, double c_n, int images) {
    if (images < 1 || images % 2 == 0)
        throw std::invalid_argument("pointwise_half_time_derivative: images must be odd and >= 1");
    const GridSpec& s = f.spec();
    const double dt = s.dt();
    auto nt = static_cast<std::ptrdiff_t>(s.nt);
    const std::ptrdiff_t half = (images - 1) / 2;
    ScalarField out(s, f.periodic());

    // kernel weights per offset |d| in cells: dt / (|d| dt)^{3/2}
    std::ptrdiff_t dmax = half * nt + nt;  // generous upper bound on |j' - i|
    std::vector<double> w(static_cast<std::size_t>(dmax) + 1, 0.0);
    for (std::ptrdiff_t d = 1; d <= dmax; ++d)
        w[static_cast<std::size_t>(d)] =
            dt / std::pow(static_cast<double>(d) * dt, 1.5);

    auto n0 = static_cast<std::ptrdiff_t>(s.nx[0]);
    auto n1 = static_cast<std::ptrdiff_t>(s.nm1 == 2 ? s.nx[1] : 1);
    auto fold = [](std::ptrdiff_t i, std::ptrdiff_t n) {
        i %= n;
        return i < 0 ? i + n : i;
    };
    std::vector<double> col(static_cast<std::size_t>(nt));
    for (std::ptrdiff_t j = 0; j < n1; ++j) {
        for (std::ptrdiff_t i = 0; i < n0; ++i) {
            double mean = 0.0;
            for (std::ptrdiff_t k = 0; k < nt; ++k) {
                col[static_cast<std::size_t>(k)] = s.nm1 == 2 ? f.at(i, j, k) : f.at(i, k);
                mean += col[static_cast<std::size_t>(k)];
            }
            mean /= static_cast<double>(nt);
            for (std::ptrdiff_t k = 0; k < nt; ++k) {
                const double fk = col[static_cast<std::size_t>(k)];
                double acc = 0.0;
                std::ptrdiff_t jlo = -half * nt, jhi = (half + 1) * nt - 1;
                for (std::ptrdiff_t jj = jlo; jj <= jhi; ++jj) {
                    if (jj == k) continue;
                    std::ptrdiff_t src = fold(jj, nt);
                    std::ptrdiff_t d = jj > k ? jj - k : k - jj;
                    acc += (col[static_cast<std::size_t>(src)] - fk) *
                           w[static_cast<std::size_t>(d)];
                }
                // analytic tail: beyond the summed window replace f by its
                // period mean; integral of |u|^{-3/2} over each side.
                double ulo = (static_cast<double>(jlo - k) - 0.5) * dt;
                double uhi = (static_cast<double>(jhi - k) + 0.5) * dt;
                acc += (mean - fk) * (2.0 / std::sqrt(-ulo) + 2.0 / std::sqrt(uhi));
                if (s.nm1 == 2) out.at(i, j, k) = c_n * acc;
                else out.at(i, k) = c_n * acc;
            }
        }
    }
    return out;
}

double calibrate_cn(const GridSpec& grid, int images) {
    const double T = grid.duration();
    double dot = 0.0, nrm = 0.0;
    for (int k = 1; k <= 4; ++k) {
        if (static_cast<std::size_t>(2 * k) >= grid.nt)
            throw std::runtime_error("calibrate_cn: harmonics aliased on this grid");
        ScalarField fk(grid, true);
        const double omega = 2.0 * std::numbers::pi * k / T;
        fk.fill([&](const ParabolicPoint& p) { return std::cos(omega * p.t); });
        ScalarField kern = pointwise_half_time_derivative(fk, 1.0, images);
        ScalarField mult = apply_multiplier(fk, MultiplierSpec::d_alpha(0.5));
        for (std::size_t i = 0; i < kern.values().size(); ++i) {
            dot += kern.values()[i] * mult.values()[i];
            nrm += kern.values()[i] * kern.values()[i];
        }
    }
    if (nrm <= 1e-300) throw std::runtime_error("calibrate_cn: degenerate fit");
    return dot / nrm;
}

}  // namespace parab
