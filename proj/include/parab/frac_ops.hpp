#pragma once

#include "parab/grid.hpp"

namespace parab {

/// Parabolic Fourier-side norm: the unique rho > 0 with
/// |xi|^2/rho^2 + tau^2/rho^4 = 1. Comparable to |xi| + |tau|^{1/2},
/// equal to it on both axes, and exactly 1-homogeneous under the
/// parabolic dilation (xi, tau) -> (s*xi, s^2*tau).
double parabolic_symbol_norm(double xi_abs, double tau);

/// Fourier multiplier selector. All symbols vanish at the zero frequency
/// (multipliers annihilate constants) and are Hermitian, so real fields map
/// to real fields; odd symbols are zeroed on their Nyquist planes.
struct MultiplierSpec {
    enum class Kind {
        d_alpha_time,  // |tau|^alpha
        dn_half,       // i*tau / rho            (parabolic half time-derivative)
        d_parabolic,   // rho                    (full parabolic derivative)
        riesz,         // -i*xi_j / rho  (j<n),  -i*tau / rho^2  (j==n)
        partial        // i*xi_j                 (plain spatial derivative, j<n)
    };
    Kind kind = Kind::d_parabolic;
    double alpha = 0.5;
    int j = 1;  // 1-based; j == n selects the time component for riesz

    static MultiplierSpec d_alpha(double a);
    static MultiplierSpec dn();
    static MultiplierSpec parabolic();
    static MultiplierSpec riesz_j(int j);
    static MultiplierSpec partial_x(int j);
};

/// Apply the multiplier on the box torus (discrete frequencies scaled to the
/// box, time length in physical units so the parabolic scaling is honoured).
/// Refuses non-periodic fields.
ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& m);

struct RieszResidual {
    double relative = 0.0;  // ||Df - sum R_j D_j f||_2 / ||Df||_2
    double absolute = 0.0;
    bool trivial = false;  // Df == 0 (constant input); relative not meaningful
};

/// Residual of the decomposition of the parabolic derivative into Riesz
/// transforms of the component derivatives; exact per discrete mode.
RieszResidual riesz_decomposition_residual(const ScalarField& f);

/// Principal-value quadrature of the pointwise half time-derivative:
/// c_n * sum over s != t of (f(x,s)-f(x,t)) |s-t|^{-3/2} dt, taken over
/// `images` periodic copies and completed by an analytic tail in which f is
/// replaced by its column mean.
ScalarField pointwise_half_time_derivative(const ScalarField& f, double c_n, int images = 3);

/// Least-squares constant matching the kernel quadrature against the
/// |tau|^{1/2} multiplier on time-harmonics k = 1..4. The analytic value for
/// this kernel ordering is -1/(2*sqrt(2*pi)).
double calibrate_cn(const GridSpec& grid, int images = 3);

/// L2 norm with the grid cell measure.
double field_l2_norm(const ScalarField& f);

/// Forward/inverse transform round-trip error (Parseval check).
double fft_roundtrip_error(const ScalarField& f);

}  // namespace parab
