#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parab/geometry.hpp"

namespace parab {

/// Uniform grid over a space-time box. Samples live at cell centers:
/// axis k, cell i: origin.x[k] + (i+1/2)h; time cell j: origin.t + (j+1/2)h^2.
/// The time step is locked to h^2 so parabolic cubes with grid-aligned
/// centers and radius m*h map to exact integer cell boxes.
struct GridSpec {
    int nm1 = 1;           // spatial dimension of the graph variable (1 or 2)
    double h = 0.0;        // spatial step; time step is h*h
    ParabolicPoint origin; // lower corner of the box (not a sample)
    std::array<std::size_t, 2> nx{0, 0};
    std::size_t nt = 0;

    GridSpec() = default;
    GridSpec(int nm1_, double h_, ParabolicPoint origin_, std::array<std::size_t, 2> nx_,
             std::size_t nt_);

    double dt() const { return h * h; }
    std::size_t spatial_count(int k) const { return nx[static_cast<std::size_t>(k)]; }
    std::size_t total() const {
        std::size_t n = nt;
        for (int k = 0; k < nm1; ++k) n *= nx[static_cast<std::size_t>(k)];
        return n;
    }
    double cell_volume() const {
        double v = dt();
        for (int k = 0; k < nm1; ++k) { (void)k; v *= h; }
        return v;
    }
    /// Physical extents.
    double length(int k) const { return static_cast<double>(nx[static_cast<std::size_t>(k)]) * h; }
    double duration() const { return static_cast<double>(nt) * dt(); }
    /// Largest radius r (multiple of h) such that a cube Q_r fits in the box.
    double box_radius() const;

    double coord_x(int k, std::ptrdiff_t i) const {
        return origin.x[static_cast<std::size_t>(k)] + (static_cast<double>(i) + 0.5) * h;
    }
    double coord_t(std::ptrdiff_t j) const {
        return origin.t + (static_cast<double>(j) + 0.5) * dt();
    }

    bool operator==(const GridSpec& o) const;
};

/// Integer cell box [lo, hi) per axis (spatial axes first, then time).
struct IndexBox {
    std::array<std::ptrdiff_t, 3> lo{0, 0, 0};
    std::array<std::ptrdiff_t, 3> hi{0, 0, 0};
    int naxes = 2;  // nm1 + 1

    std::size_t count() const {
        std::size_t c = 1;
        for (int a = 0; a < naxes; ++a) c *= static_cast<std::size_t>(hi[a] - lo[a]);
        return c;
    }
};

/// Real scalar function sampled on a GridSpec. `periodic` marks the field
/// as living on the box torus; cube scans and convolutions then wrap.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridSpec spec, bool periodic = false);
    ScalarField(GridSpec spec, std::vector<double> values, bool periodic = false);

    const GridSpec& spec() const { return spec_; }
    bool periodic() const { return periodic_; }
    void set_periodic(bool p) { periodic_ = p; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double& at(std::ptrdiff_t ix, std::ptrdiff_t it) { return values_[index2(ix, it)]; }
    double at(std::ptrdiff_t ix, std::ptrdiff_t it) const { return values_[index2(ix, it)]; }
    double& at(std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) {
        return values_[index3(ix, iy, it)];
    }
    double at(std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) const {
        return values_[index3(ix, iy, it)];
    }

    /// Wrapped accessor; out-of-range indices fold modulo the box.
    double at_wrapped(std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) const;

    /// Fill from a callable f(point).
    void fill(const std::function<double(const ParabolicPoint&)>& f);

    bool all_finite() const;
    double mean() const;

    std::size_t index2(std::ptrdiff_t ix, std::ptrdiff_t it) const {
        return static_cast<std::size_t>(it) * spec_.nx[0] + static_cast<std::size_t>(ix);
    }
    std::size_t index3(std::ptrdiff_t ix, std::ptrdiff_t iy, std::ptrdiff_t it) const {
        return (static_cast<std::size_t>(it) * spec_.nx[1] + static_cast<std::size_t>(iy)) *
                   spec_.nx[0] +
               static_cast<std::size_t>(ix);
    }

private:
    GridSpec spec_;
    std::vector<double> values_;
    bool periodic_ = false;
};

/// Inclusive prefix-sum table giving O(1) sums of a field over any cell box
/// (with optional wrap). Shared by the cube scans and corner-average machinery.
class BoxSum {
public:
    explicit BoxSum(const ScalarField& f);
    /// Sum of samples over the cell box, wrapping along axes where `wrap` allows.
    double sum(const IndexBox& b, bool wrap) const;
    double mean(const IndexBox& b, bool wrap) const;

private:
    double sum_core(std::array<std::ptrdiff_t, 3> lo, std::array<std::ptrdiff_t, 3> hi) const;
    const GridSpec spec_;
    int naxes_;
    std::array<std::ptrdiff_t, 3> dims_{1, 1, 1};
    std::vector<double> table_;
};

enum class CubeMode { dyadic, sliding };

struct CubeEnumOptions {
    double r_min = 0.0;
    double r_max = 0.0;                   // 0 -> box radius
    bool wrap = false;                    // allow cubes to wrap (periodic scan)
    std::optional<IndexBox> restrict_to;  // cubes must lie inside this cell box
};

/// Grid-aligned parabolic cubes at dyadic scales r = h*2^k. Dyadic mode tiles
/// the box anchored at the origin; sliding mode adds the half-step translates
/// (stride r in space, r^2 in time).
std::vector<ParabolicCube> enumerate_cubes(const GridSpec& spec, CubeMode mode,
                                           const CubeEnumOptions& opt = {});

/// Cell box covered by a grid-aligned cube. Throws std::domain_error when the
/// cube leaves the field box and wrap is false.
IndexBox cube_cells(const GridSpec& spec, const ParabolicCube& q, bool wrap = false);

/// Midpoint-rule average of f over Q (exact for constants, and for fields
/// affine in x on symmetric cubes).
double cube_average(const ScalarField& f, const ParabolicCube& q);

/// Largest sampled Lip(1,1/2) quotient |f(p)-f(q)| / dist_parab(p,q) over all
/// nearest-neighbour pairs plus `budget` seeded random pairs. A lower bound
/// for the true constant, exact in the grid limit for Lip functions.
double lip_constant_estimate(const ScalarField& f, std::size_t budget = 200000,
                             std::uint64_t seed = 17);

/// Subtract the mean and taper the outer `frac` of every axis with a C^2
/// smoothstep so the result is continuous across the torus seam; interior
/// values keep f - mean. Marks the output periodic.
ScalarField window_to_periodic(const ScalarField& f, double frac = 0.10);

/// C^2 smoothstep: 0 at u<=0, 1 at u>=1.
double smoothstep01(double u);

/// Boundary function phi over (x,t) together with its measured character.
struct GraphDomain {
    ScalarField phi;
    double lip_const = 0.0;  // measured Lip(1,1/2) bound
    double eta = 0.0;        // measured smallness (see lewis_murray)
    double d = 0.0;          // master cube radius

    /// Shift so phi(0,0) = 0 (sample nearest the origin).
    void normalize_at_origin();
};

}  // namespace parab
