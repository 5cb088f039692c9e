#pragma once

#include <functional>
#include <map>
#include <optional>

#include "parab/grid.hpp"

namespace parab {

/// Result of a mean-oscillation cube scan.
struct BmoReport {
    double norm = 0.0;
    ParabolicCube argmax_cube;
    std::map<double, double> scale_profile;  // radius -> max mean oscillation at that radius
};

struct BmoOptions {
    std::optional<IndexBox> restrict_to;  // cubes must lie inside this cell box
    double r_max = 0.0;                   // 0 -> box radius
    /// Wrap overrides; by default cubes wrap all axes iff the field is
    /// periodic. wrap_time lets a time-periodic construction (extension)
    /// scan cubes whose time side exceeds the stored window.
    std::optional<bool> wrap_all;
    bool wrap_time = false;
};

/// Parabolic BMO norm over the sliding (dyadic + half-shift) cube family.
/// Reported value is a lower bound of the continuum sup; refinement
/// stability is the accuracy certificate.
BmoReport bmo_norm(const ScalarField& f, const BmoOptions& opt = {});

/// As bmo_norm but over the anchored dyadic tiling only; never exceeds the
/// sliding norm.
BmoReport dyadic_bmo_norm(const ScalarField& f, const BmoOptions& opt = {});

/// sup |f_{Q1} - f_{Q2}| over equal-size face-adjacent dyadic cube pairs.
double adjacent_average_gap(const ScalarField& f);

/// Averaged (corner-cube) characterisation: sup over cubes of the
/// square-summed corner-average increments with d(rho)/rho realised as a sum
/// over dyadic rho levels. Comparable to bmo_norm^2 across a corpus.
double strichartz_functional(const ScalarField& f);

struct VmoDistance {
    double distance = 0.0;
    bool fallback = false;  // only the constant candidate met the modulus
    double best_scale = 0.0;
};

/// Upper bound on inf_{g in C_delta} ||f - g||_* via a mollifier family
/// rescaled to honour the modulus; not the exact infimum.
VmoDistance dist_to_equicontinuous(const ScalarField& f,
                                   const std::function<double(double)>& delta, int trials = 6);

struct JonesGap {
    double ratio = 0.0;
    bool trivial = false;  // ||f||_{*,Q1} == 0
};

/// |f_{Q0} - f_{Q1}| / (log(2 + l(Q1)/l(Q0)) ||f||_{*,Q1}) for nested cubes.
JonesGap jones_gap_check(const ScalarField& f, const ParabolicCube& q0, const ParabolicCube& q1);

/// LHS - RHS of the product mean-oscillation inequality
///   avg_Q |gh - (gh)_Q| <= 2 avg_Q |g (h - h_Q)| + |h_Q| avg_Q |g - g_Q|;
/// nonpositive up to roundoff on every cube.
double stein_product_check(const ScalarField& g, const ScalarField& h, const ParabolicCube& q);

}  // namespace parab
