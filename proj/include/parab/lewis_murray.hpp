#pragma once

#include <string>
#include <vector>

#include "parab/grid.hpp"

namespace parab {

/// The equivalent smallness functionals of a boundary graph, each the sup
/// over parabolic cubes of its normalised singular integral, plus the BMO
/// norm of the parabolic derivative computed on the Fourier side.
struct LmReport {
    double B_iv = 0.0;           // space-time second difference
    double B_v_grad = 0.0;       // spatial second difference
    double B_v_time = 0.0;       // time quotient
    double B_vi_grad = 0.0;      // averaged-gradient increment
    double B_vi_grad_alt = 0.0;  // four-corner average form
    double D_bmo_sq = 0.0;       // squared BMO norm of the parabolic derivative
    bool trivial = false;        // all entries vanish (affine input)
    double max_pairwise_ratio = 0.0;
    std::vector<std::string> failures;

    /// The four quantities compared by the equivalence: {D_bmo_sq, B_iv,
    /// B_v_grad + B_v_time, B_vi_grad + B_v_time}.
    std::array<double, 4> quantities() const {
        return {D_bmo_sq, B_iv, B_v_grad + B_v_time, B_vi_grad + B_v_time};
    }
};

/// sup over Q_r of the normalised |phi(x+y,t+s) - 2 phi(x,t) + phi(x-y,t-s)|^2
/// integral against ||(y,s)||^{-(n+3)} over ||(y,s)|| <= r. Cells below one
/// grid step are excluded; refinement stability certifies the truncation.
double functional_second_diff_spacetime(const ScalarField& phi, double r_cap = 0.0);

/// Spatial-only second difference against |y|^{-(n+1)}, |y| < r.
double functional_second_diff_space(const ScalarField& phi, double r_cap = 0.0);

/// sup over Q_r = J_r x I_r of the double time integral of
/// |phi(x,t)-phi(x,s)|^2 / |t-s|^2 (diagonal cell excluded). wrap_time lets
/// cubes wrap a time-periodic field whose stored box is one period.
double functional_time_quotient(const ScalarField& phi, double r_cap = 0.0,
                                bool wrap_time = false);

/// Averaged-gradient increments: corner-cube means of grad(phi) compared at
/// half-side shifts along each axis (time shift rho^2), integrated over the
/// sphere directions, lambda in [0,1] by 8-point Gauss, and dyadic rho.
double functional_avg_gradient(const ScalarField& phi, double r_cap = 0.0);

/// Four-corner average form of the same functional, acting on phi directly.
double functional_avg_gradient_alt(const ScalarField& phi, double r_cap = 0.0);

/// All functionals plus the Fourier-side BMO leg and the pairwise ratio
/// spread of the four equivalent quantities. Legs that throw are recorded in
/// `failures` and the report keeps going.
LmReport equivalence_report(const ScalarField& phi, double r_cap = 0.0);

/// Rough-but-admissible boundary surface: a lacunary cosine sum, Lipschitz in
/// x and Holder-1/2 in t at every scale, box-periodic. On the canonical box
/// [-1,1] x [-1,1] it is amp * sum_k 2^{-k} (cos(2^k pi x) + cos(4^k pi t));
/// other boxes get the affinely rescaled copy.
ScalarField weierstrass_surface(const GridSpec& spec, int K = 6, double amp = 1.0);

}  // namespace parab
