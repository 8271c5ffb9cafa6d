#pragma once

#include "cahs/grid.hpp"

namespace cahs {

/// First-order upwind fast marching solution of |grad d| = 1 on a uniform
/// 2D/3D grid, d = 0 on the seed cells. Cells within two rings of the seed
/// are frozen at their exact distance to the rasterized seed point set, so
/// analytic seeds keep first-order accuracy away from the source.
GridScalarField fmm_distance(const GridSpec& spec, const std::vector<std::uint8_t>& seed_mask);

}  // namespace cahs
