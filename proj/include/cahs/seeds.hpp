#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "cahs/base_manifold.hpp"
#include "cahs/grid.hpp"

namespace cahs {

/// Codimension-1 seed shapes distances are measured from. Orientation flips
/// the sign of the oriented distance.
struct HyperplaneSeed {
    Vector normal;  // unit
    double offset = 0.0;
};

struct SphereShellSeed {
    Vector center;
    double radius = 1.0;
};

/// Closed curve on a round 2-sphere given by uniformly spaced unit-speed
/// samples. The positive side is the one the rotated frame alpha x alpha'
/// points into.
struct SphericalCurveSeed {
    std::vector<Eigen::Vector3d> samples;
    double sphere_radius = 1.0;
};

struct GridLevelSetSeed {
    GridMask mask;
};

class SeedHypersurface {
public:
    enum class Kind { Hyperplane, SphereShell, SphericalCurve, GridLevelSet };

    static SeedHypersurface hyperplane(Vector normal, double offset, int orientation = +1);
    static SeedHypersurface sphere_shell(Vector center, double radius, int orientation = +1);
    static SeedHypersurface spherical_curve(std::vector<Eigen::Vector3d> samples,
                                            double sphere_radius, int orientation = +1);
    static SeedHypersurface grid_level_set(GridMask mask);

    Kind kind() const { return kind_; }
    int orientation() const { return orientation_; }

    const HyperplaneSeed& hyperplane_data() const { return std::get<HyperplaneSeed>(data_); }
    const SphereShellSeed& sphere_shell_data() const { return std::get<SphereShellSeed>(data_); }
    const SphericalCurveSeed& spherical_curve_data() const {
        return std::get<SphericalCurveSeed>(data_);
    }
    const GridLevelSetSeed& grid_level_set_data() const {
        return std::get<GridLevelSetSeed>(data_);
    }

    bool is_analytic() const { return kind_ != Kind::GridLevelSet; }

private:
    SeedHypersurface(Kind k, int orientation,
                     std::variant<HyperplaneSeed, SphereShellSeed, SphericalCurveSeed,
                                  GridLevelSetSeed> data)
        : kind_(k), orientation_(orientation), data_(std::move(data)) {}

    Kind kind_;
    int orientation_;
    std::variant<HyperplaneSeed, SphereShellSeed, SphericalCurveSeed, GridLevelSetSeed> data_;
};

struct DistanceResult {
    double d = 0.0;
    Vector grad;  // unit tangent of P
};

/// Oriented distance to an analytic seed with its unit gradient. On the seed
/// itself the gradient is the one-sided limit (the seed normal).
DistanceResult distance_analytic(const SeedHypersurface& seed, const BaseManifold& base,
                                 const Vector& p);

/// Distance value alone; defined even where the gradient is singular (shell
/// centers, cut loci).
double distance_value(const SeedHypersurface& seed, const BaseManifold& base, const Vector& p);

}  // namespace cahs
