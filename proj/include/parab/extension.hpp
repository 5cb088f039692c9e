#pragma once

#include "parab/grid.hpp"

namespace parab {

/// Scales of the boundary-graph extension: inner cube radius r, outer cutoff
/// radius R = 2^k r with R*eta/2 < r <= R*eta, and the admissible scale d'.
struct ExtensionConfig {
    double r = 0.0;
    double R = 0.0;
    double eta = 0.0;
    double d_prime = 0.0;

    /// Pick k from the measured eta so that R*eta/2 < r <= R*eta, and set
    /// d' = eta*d/2 (single chart: the proof's r0, r1 both play the role of d).
    static ExtensionConfig from_eta(double r, double eta, double d);
};

/// Reflect phi across t = r^2 and tile with period 4r^2; returns one full
/// period on the time box [-r^2, 3r^2) over phi's spatial box. Cell centers
/// map exactly onto reflected cell centers, so the tiling is bit-exact and
/// seam values agree for continuous phi.
ScalarField reflect_tile_time(const ScalarField& phi, double r);

/// C^2 cutoff profile in |x|_inf: 1 inside radius r, 0 outside 2R, quintic
/// smoothstep between; sampled on `out` (constant in t).
/// max |grad rho| <= 2/(2R - r), max |grad^2 rho| <= 6/(2R - r)^2.
ScalarField build_cutoff(const ExtensionConfig& cfg, const GridSpec& out);

/// The extension Phi = tiled(phi)*rho + (1 - rho)*(x . mean grad): equals phi
/// exactly on Q_r, is affine outside 2R, and 4r^2-periodic in t. The output
/// box spans |x|_inf <= 2R + 2r and one time period.
ScalarField extend(const ScalarField& phi, const ExtensionConfig& cfg);

struct ExtensionReport {
    bool restriction_exact = false;  // (i)  Phi == phi on Q_r, stored values
    double restriction_maxdiff = 0.0;
    double lip_phi = 0.0;    // measured ell
    double lip_Phi = 0.0;    // (ii) must stay within 1.1 * ell
    double grad_bmo = 0.0;   // (iii) BMO norm of grad Phi (time-wrapped scan)
    double grad_ratio = 0.0;     // grad_bmo / (eta^{0.9} + eta*ell)
    double time_quotient = 0.0;  // (iv) time-quotient functional of Phi
    double time_ratio = 0.0;     // time_quotient / eta^2
    double seam_maxjump = 0.0;   // periodicity of Phi across the time seam
};

/// Measure properties (i)-(iv) of an extension produced by extend().
ExtensionReport verify_extension(const ScalarField& phi, const ScalarField& Phi,
                                 const ExtensionConfig& cfg);

}  // namespace parab
