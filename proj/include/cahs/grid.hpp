#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cahs {

/// Uniform grid over a rectangle or box, cell-centered on lattice points
/// origin + h * (i, j[, k]). dim is 2 or 3; 2D grids have nz = 1.
struct GridSpec {
    int nx = 0, ny = 0, nz = 1;
    double h = 0.0;
    double ox = 0.0, oy = 0.0, oz = 0.0;
    int dim = 2;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx) * ny * (dim == 3 ? nz : 1);
    }
    std::size_t index(int i, int j, int k = 0) const {
        return (static_cast<std::size_t>(k) * ny + j) * nx + i;
    }
    bool in_bounds(int i, int j, int k = 0) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && (dim == 2 ? k == 0 : (k >= 0 && k < nz));
    }
    Eigen::VectorXd point(int i, int j, int k = 0) const;
};

/// Scalar samples on a grid, with an optional validity mask. Carries the
/// centered finite-difference machinery shared by the distance fields and
/// the level-set operators.
class GridScalarField {
public:
    GridScalarField() = default;
    GridScalarField(GridSpec spec, std::vector<double> values);
    GridScalarField(GridSpec spec, std::vector<double> values, std::vector<std::uint8_t> mask);

    const GridSpec& spec() const { return spec_; }
    double at(int i, int j, int k = 0) const { return values_[spec_.index(i, j, k)]; }
    double& at(int i, int j, int k = 0) { return values_[spec_.index(i, j, k)]; }
    const std::vector<double>& values() const { return values_; }

    bool has_mask() const { return !mask_.empty(); }
    bool masked_in(int i, int j, int k = 0) const {
        return mask_.empty() || mask_[spec_.index(i, j, k)] != 0;
    }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    void set_mask(std::vector<std::uint8_t> mask);

    /// True when every cell of the centered stencil at (i,j,k) is in bounds
    /// and unmasked; FD quantities below require it.
    bool stencil_interior(int i, int j, int k = 0) const;

    Eigen::VectorXd gradient_at(int i, int j, int k = 0) const;
    double laplacian_at(int i, int j, int k = 0) const;

    /// Multilinear interpolation; p in world coordinates.
    double interpolate(const Eigen::VectorXd& p) const;
    bool interpolation_cell_ok(const Eigen::VectorXd& p) const;

    void export_csv(const std::string& path) const;

private:
    GridSpec spec_;
    std::vector<double> values_;
    std::vector<std::uint8_t> mask_;
};

/// Seed mask text format: header "nx ny [nz] h ox oy [oz]", then 0/1 rows
/// (y-major, one row per y index, slices stacked for 3D).
struct GridMask {
    GridSpec spec;
    std::vector<std::uint8_t> cells;

    static GridMask load(const std::string& path);
    void save(const std::string& path) const;
    bool any() const;
};

/// Rasterize a function of the world point into grid samples.
GridScalarField rasterize(const GridSpec& spec,
                          const std::function<double(const Eigen::VectorXd&)>& f);

}  // namespace cahs
