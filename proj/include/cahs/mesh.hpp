#pragma once

#include <array>
#include <string>
#include <vector>

#include "cahs/hypersurface.hpp"

namespace cahs {

/// Triangle mesh in R^3 with per-vertex normal, angle, f-value and angle
/// residual attributes. Flat 2D bases map (t, x, y) to (x, y, t); sphere
/// bases map through (t, p) -> t p.
struct TriangleMesh {
    std::vector<Eigen::Vector3d> positions;
    std::vector<Eigen::Vector3d> normals;
    std::vector<double> theta;
    std::vector<double> f_value;
    std::vector<double> residual;
    std::vector<std::array<int, 3>> triangles;
    int degenerate_skipped = 0;

    void write_obj(const std::string& path) const;
    void write_ply(const std::string& path) const;
};

/// Sample the surface over the parameter rectangle [lo, hi] on an nu x nv
/// lattice and triangulate. Degenerate cells are skipped and counted.
TriangleMesh export_mesh(const CAHypersurface& surface, const Vector& lo, const Vector& hi,
                         int nu, int nv);

}  // namespace cahs
