#include "cahs/distance_field.hpp"

#include <cmath>

#include "cahs/errors.hpp"
#include "cahs/fast_marching.hpp"

namespace cahs {

DistanceField DistanceField::analytic(BaseManifold base, SeedHypersurface seed) {
    if (!seed.is_analytic())
        throw UnsupportedError("grid level set seeds need the fast marching constructor");
    DistanceField f;
    f.kind_ = Kind::Analytic;
    f.base_ = std::make_shared<BaseManifold>(std::move(base));
    f.seed_ = std::make_shared<SeedHypersurface>(std::move(seed));
    return f;
}

DistanceField DistanceField::fast_marching(const GridMask& seed) {
    GridScalarField dist = fmm_distance(seed.spec, seed.cells);
    const GridSpec& spec = dist.spec();
    const double tol = 4.0 * spec.h;

    // Operational validity: centered gradient within tol of unit norm.
    std::vector<std::uint8_t> valid(spec.cell_count(), 0);
    const int nz = spec.dim == 3 ? spec.nz : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                if (!dist.stencil_interior(i, j, k)) continue;
                const double gn = dist.gradient_at(i, j, k).norm();
                if (std::abs(gn - 1.0) <= tol) valid[spec.index(i, j, k)] = 1;
            }

    auto grads = std::make_shared<std::vector<GridScalarField>>();
    for (int axis = 0; axis < spec.dim; ++axis) {
        std::vector<double> g(spec.cell_count(), 0.0);
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < spec.ny; ++j)
                for (int i = 0; i < spec.nx; ++i)
                    if (dist.stencil_interior(i, j, k))
                        g[spec.index(i, j, k)] = dist.gradient_at(i, j, k)(axis);
        grads->push_back(GridScalarField(spec, std::move(g)));
    }

    DistanceField f;
    f.kind_ = Kind::FastMarchingGrid;
    f.base_ = std::make_shared<BaseManifold>(BaseManifold::euclidean(spec.dim));
    f.seed_ = std::make_shared<SeedHypersurface>(SeedHypersurface::grid_level_set(seed));
    dist.set_mask(std::move(valid));
    f.grid_ = std::make_shared<GridScalarField>(std::move(dist));
    f.grads_ = std::move(grads);
    return f;
}

double DistanceField::value(const Vector& p) const {
    if (kind_ == Kind::Analytic) return distance_analytic(*seed_, *base_, p).d;
    return grid_->interpolate(p);
}

Vector DistanceField::gradient(const Vector& p) const {
    if (kind_ == Kind::Analytic) return distance_analytic(*seed_, *base_, p).grad;
    if (!in_validity(p)) throw OutOfRegionError("gradient query outside validity region");
    Vector g(grid_->spec().dim);
    for (int axis = 0; axis < grid_->spec().dim; ++axis)
        g(axis) = (*grads_)[axis].interpolate(p);
    return g;
}

bool DistanceField::in_validity(const Vector& p) const {
    if (kind_ == Kind::Analytic) {
        try {
            (void)distance_analytic(*seed_, *base_, p);
            return true;
        } catch (const Error&) {
            return false;
        }
    }
    return grid_->interpolation_cell_ok(p);
}

double DistanceField::gradient_tolerance() const {
    return kind_ == Kind::Analytic ? 1e-9 : 4.0 * grid_->spec().h;
}

const GridScalarField& DistanceField::grid() const {
    if (!grid_) throw UnsupportedError("analytic distance fields carry no grid");
    return *grid_;
}

Vector grad_field(const DistanceField& field, const Vector& p) {
    if (!field.in_validity(p)) throw OutOfRegionError("point outside distance field validity");
    return field.gradient(p);
}

}  // namespace cahs
