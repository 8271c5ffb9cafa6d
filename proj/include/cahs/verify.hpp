#pragma once

#include <optional>

#include "cahs/grid.hpp"
#include "cahs/hypersurface.hpp"

namespace cahs {

/// Per-cell level-set geometry of a grid scalar field: gradient norm,
/// Laplacian, and the scalar mean curvature H = -div(grad f / |grad f|) of
/// the level hypersurfaces, oriented by grad f.
struct LevelSetGeometry {
    GridScalarField grad_norm;
    GridScalarField laplacian;
    GridScalarField mean_curvature;
    std::vector<std::uint8_t> interior;  // cells where H is defined
    int near_critical_masked = 0;
};

LevelSetGeometry level_set_mean_curvature(const GridScalarField& f, double critical_tol = 1e-8);

/// Principal curvatures of the parallel hypersurface at offset t - t0:
/// lambda / (1 - (t - t0) lambda). Hitting a focal point raises
/// FocalPointError naming the offending index.
std::vector<double> parallel_curvature_evolution(const std::vector<double>& lambda0, double t0,
                                                 double t);

struct LinearityVerdict {
    bool is_harmonic = false;
    bool is_eikonal = false;
    bool is_linear = false;
    double max_laplacian = 0.0;
    double fitted_gradient_norm = 0.0;
    double max_eikonal_deviation = 0.0;
    Vector coefficients;
    double offset = 0.0;
    double residual = 0.0;
    double tol_h = 0.0, tol_e = 0.0, tol_lin = 0.0;
};

LinearityVerdict harmonic_eikonal_linearity(const GridScalarField& f, double tol_h, double tol_e,
                                            double tol_lin);
/// Defaults: tol_h = tol_e = 10 h^2 * field scale, tol_lin = 1e-6 * domain
/// diameter.
LinearityVerdict harmonic_eikonal_linearity(const GridScalarField& f);

enum class MinimalClass { Hyperplane, CylinderOverMinimal, NotMinimal, NotConstantAngle };

struct MinimalVerdict {
    MinimalClass verdict = MinimalClass::NotMinimal;
    double theta_mean = 0.0;
    double theta_spread = 0.0;
    double max_mean_curvature = 0.0;
    double seed_mean_curvature = 0.0;  // cylinder branch
    std::optional<LinearityVerdict> linearity;  // graph branch
};

struct ClassifyOptions {
    double mean_curvature_tol = 1e-6;
    double angle_tol = 1e-6;
    int samples_per_axis = 8;   // lattice for angle and shape sampling
    int grid_resolution = 65;   // height-function grid for the linearity step
};

/// Minimal constant angle hypersurfaces in a Euclidean ambient (constant
/// warping) are cylinders over minimal seeds or hyperplanes; anything that
/// fails the angle-constancy gate is reported as NotConstantAngle. lo/hi
/// bound the parameter box that is sampled.
MinimalVerdict classify_minimal_ca(const CAHypersurface& surface, const Vector& lo,
                                   const Vector& hi, const ClassifyOptions& options = {});

const char* to_string(MinimalClass c);

}  // namespace cahs
