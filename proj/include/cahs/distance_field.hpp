#pragma once

#include <memory>

#include "cahs/grid.hpp"
#include "cahs/seeds.hpp"

namespace cahs {

/// Distance to a seed hypersurface with unit gradient on its validity
/// region: analytic evaluation for the closed-form seeds, fast-marching grid
/// data otherwise. Immutable and cheap to copy.
class DistanceField {
public:
    enum class Kind { Analytic, FastMarchingGrid };

    static DistanceField analytic(BaseManifold base, SeedHypersurface seed);
    static DistanceField fast_marching(const GridMask& seed);

    Kind kind() const { return kind_; }
    const BaseManifold& base() const { return *base_; }
    const SeedHypersurface& seed() const { return *seed_; }

    double value(const Vector& p) const;
    /// Unit gradient (within gradient_tolerance of unit norm).
    Vector gradient(const Vector& p) const;

    /// Validity is operational: a grid cell is valid when its centered
    /// finite-difference gradient has norm within 4h of one; analytic seeds
    /// are valid wherever evaluation succeeds.
    bool in_validity(const Vector& p) const;

    double grid_spacing() const { return grid_ ? grid_->spec().h : 0.0; }
    double gradient_tolerance() const;

    bool is_grid() const { return kind_ == Kind::FastMarchingGrid; }
    const GridScalarField& grid() const;

private:
    DistanceField() = default;

    Kind kind_ = Kind::Analytic;
    std::shared_ptr<const BaseManifold> base_;
    std::shared_ptr<const SeedHypersurface> seed_;
    std::shared_ptr<const GridScalarField> grid_;                 // distance values + validity mask
    std::shared_ptr<const std::vector<GridScalarField>> grads_;   // per-axis central differences
};

/// Gradient of a distance field at p; errors outside the validity region.
Vector grad_field(const DistanceField& field, const Vector& p);

}  // namespace cahs
