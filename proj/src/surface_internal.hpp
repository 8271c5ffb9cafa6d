#pragma once

#include "cahs/hypersurface.hpp"

namespace cahs::detail {

/// Local parametrizations of the seed hypersurfaces used by cylinders:
/// q(lambda) with analytic tangents.
int seed_param_dim(const SeedHypersurface& seed, const BaseManifold& base);
Vector seed_point(const SeedHypersurface& seed, const BaseManifold& base, const Vector& lambda);
std::vector<Vector> seed_tangents(const SeedHypersurface& seed, const BaseManifold& base,
                                  const Vector& lambda);

/// Orthonormal completion of a unit vector inside a tangent subspace basis.
std::vector<Vector> complete_orthonormal(const std::vector<Vector>& subspace_basis,
                                         const Vector& unit_first);

/// Chart of the base manifold for graphs and slices: identity on flat bases,
/// longitude/latitude on the sphere.
Vector base_chart_point(const BaseManifold& base, const Vector& params);
std::vector<Vector> base_chart_tangents(const BaseManifold& base, const Vector& params);

}  // namespace cahs::detail
