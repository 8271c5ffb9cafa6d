#include "cahs/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "cahs/errors.hpp"

namespace cahs {

Eigen::VectorXd GridSpec::point(int i, int j, int k) const {
    Eigen::VectorXd p(dim);
    p(0) = ox + h * i;
    p(1) = oy + h * j;
    if (dim == 3) p(2) = oz + h * k;
    return p;
}

GridScalarField::GridScalarField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.cell_count()) throw Error("grid value count mismatch");
}

GridScalarField::GridScalarField(GridSpec spec, std::vector<double> values,
                                 std::vector<std::uint8_t> mask)
    : GridScalarField(spec, std::move(values)) {
    set_mask(std::move(mask));
}

void GridScalarField::set_mask(std::vector<std::uint8_t> mask) {
    if (!mask.empty() && mask.size() != spec_.cell_count())
        throw Error("grid mask count mismatch");
    mask_ = std::move(mask);
}

bool GridScalarField::stencil_interior(int i, int j, int k) const {
    const int lo_k = spec_.dim == 3 ? k - 1 : 0;
    const int hi_k = spec_.dim == 3 ? k + 1 : 0;
    if (!spec_.in_bounds(i - 1, j, k) || !spec_.in_bounds(i + 1, j, k)) return false;
    if (!spec_.in_bounds(i, j - 1, k) || !spec_.in_bounds(i, j + 1, k)) return false;
    if (spec_.dim == 3 && (!spec_.in_bounds(i, j, lo_k) || !spec_.in_bounds(i, j, hi_k)))
        return false;
    if (mask_.empty()) return true;
    bool ok = masked_in(i, j, k) && masked_in(i - 1, j, k) && masked_in(i + 1, j, k) &&
              masked_in(i, j - 1, k) && masked_in(i, j + 1, k);
    if (spec_.dim == 3) ok = ok && masked_in(i, j, k - 1) && masked_in(i, j, k + 1);
    return ok;
}

Eigen::VectorXd GridScalarField::gradient_at(int i, int j, int k) const {
    Eigen::VectorXd g(spec_.dim);
    const double inv2h = 1.0 / (2.0 * spec_.h);
    g(0) = (at(i + 1, j, k) - at(i - 1, j, k)) * inv2h;
    g(1) = (at(i, j + 1, k) - at(i, j - 1, k)) * inv2h;
    if (spec_.dim == 3) g(2) = (at(i, j, k + 1) - at(i, j, k - 1)) * inv2h;
    return g;
}

double GridScalarField::laplacian_at(int i, int j, int k) const {
    const double inv_h2 = 1.0 / (spec_.h * spec_.h);
    double lap = (at(i + 1, j, k) - 2.0 * at(i, j, k) + at(i - 1, j, k)) * inv_h2 +
                 (at(i, j + 1, k) - 2.0 * at(i, j, k) + at(i, j - 1, k)) * inv_h2;
    if (spec_.dim == 3) lap += (at(i, j, k + 1) - 2.0 * at(i, j, k) + at(i, j, k - 1)) * inv_h2;
    return lap;
}

namespace {

struct CellLocator {
    int i0, j0, k0;
    double fx, fy, fz;
    bool ok;
};

CellLocator locate(const GridSpec& spec, const Eigen::VectorXd& p) {
    CellLocator loc{0, 0, 0, 0.0, 0.0, 0.0, true};
    const double x = (p(0) - spec.ox) / spec.h;
    const double y = (p(1) - spec.oy) / spec.h;
    const double z = spec.dim == 3 ? (p(2) - spec.oz) / spec.h : 0.0;
    loc.i0 = static_cast<int>(std::floor(x));
    loc.j0 = static_cast<int>(std::floor(y));
    loc.k0 = spec.dim == 3 ? static_cast<int>(std::floor(z)) : 0;
    // Clamp queries sitting exactly on the upper boundary into the last cell.
    if (loc.i0 == spec.nx - 1 && x == static_cast<double>(loc.i0)) --loc.i0;
    if (loc.j0 == spec.ny - 1 && y == static_cast<double>(loc.j0)) --loc.j0;
    if (spec.dim == 3 && loc.k0 == spec.nz - 1 && z == static_cast<double>(loc.k0)) --loc.k0;
    loc.fx = x - loc.i0;
    loc.fy = y - loc.j0;
    loc.fz = z - loc.k0;
    loc.ok = spec.in_bounds(loc.i0, loc.j0, loc.k0) &&
             spec.in_bounds(loc.i0 + 1, loc.j0 + 1, spec.dim == 3 ? loc.k0 + 1 : 0);
    return loc;
}

}  // namespace

double GridScalarField::interpolate(const Eigen::VectorXd& p) const {
    const auto loc = locate(spec_, p);
    if (!loc.ok) throw OutOfRegionError("interpolation point outside grid");
    if (spec_.dim == 2) {
        const double v00 = at(loc.i0, loc.j0), v10 = at(loc.i0 + 1, loc.j0);
        const double v01 = at(loc.i0, loc.j0 + 1), v11 = at(loc.i0 + 1, loc.j0 + 1);
        return (1 - loc.fx) * (1 - loc.fy) * v00 + loc.fx * (1 - loc.fy) * v10 +
               (1 - loc.fx) * loc.fy * v01 + loc.fx * loc.fy * v11;
    }
    double acc = 0.0;
    for (int dk = 0; dk <= 1; ++dk)
        for (int dj = 0; dj <= 1; ++dj)
            for (int di = 0; di <= 1; ++di) {
                const double w = (di ? loc.fx : 1 - loc.fx) * (dj ? loc.fy : 1 - loc.fy) *
                                 (dk ? loc.fz : 1 - loc.fz);
                acc += w * at(loc.i0 + di, loc.j0 + dj, loc.k0 + dk);
            }
    return acc;
}

bool GridScalarField::interpolation_cell_ok(const Eigen::VectorXd& p) const {
    const auto loc = locate(spec_, p);
    if (!loc.ok) return false;
    for (int dk = 0; dk <= (spec_.dim == 3 ? 1 : 0); ++dk)
        for (int dj = 0; dj <= 1; ++dj)
            for (int di = 0; di <= 1; ++di)
                if (!masked_in(loc.i0 + di, loc.j0 + dj, loc.k0 + dk)) return false;
    return true;
}

void GridScalarField::export_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write CSV: " + path);
    out << (spec_.dim == 3 ? "i,j,k,value\n" : "i,j,value\n");
    char buf[64];
    for (int k = 0; k < (spec_.dim == 3 ? spec_.nz : 1); ++k)
        for (int j = 0; j < spec_.ny; ++j)
            for (int i = 0; i < spec_.nx; ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", at(i, j, k));
                if (spec_.dim == 3)
                    out << i << ',' << j << ',' << k << ',' << buf << '\n';
                else
                    out << i << ',' << j << ',' << buf << '\n';
            }
}

GridMask GridMask::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mask file: " + path);
    std::string header;
    while (std::getline(in, header)) {
        if (!header.empty() && header[0] != '#') break;
    }
    std::istringstream hs(header);
    std::vector<double> fields;
    double v;
    while (hs >> v) fields.push_back(v);

    GridMask mask;
    if (fields.size() == 5) {
        mask.spec.dim = 2;
        mask.spec.nx = static_cast<int>(fields[0]);
        mask.spec.ny = static_cast<int>(fields[1]);
        mask.spec.h = fields[2];
        mask.spec.ox = fields[3];
        mask.spec.oy = fields[4];
    } else if (fields.size() == 7) {
        mask.spec.dim = 3;
        mask.spec.nx = static_cast<int>(fields[0]);
        mask.spec.ny = static_cast<int>(fields[1]);
        mask.spec.nz = static_cast<int>(fields[2]);
        mask.spec.h = fields[3];
        mask.spec.ox = fields[4];
        mask.spec.oy = fields[5];
        mask.spec.oz = fields[6];
    } else {
        throw Error("mask header must be 'nx ny [nz] h ox oy [oz]': " + path);
    }
    if (mask.spec.nx < 1 || mask.spec.ny < 1 || mask.spec.nz < 1 || !(mask.spec.h > 0.0))
        throw Error("invalid mask dimensions in " + path);

    mask.cells.assign(mask.spec.cell_count(), 0);
    std::size_t read = 0;
    char c;
    while (read < mask.cells.size() && in.get(c)) {
        if (c == '0' || c == '1') mask.cells[read++] = static_cast<std::uint8_t>(c - '0');
    }
    if (read != mask.cells.size()) throw Error("mask file ended early: " + path);
    return mask;
}

void GridMask::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write mask file: " + path);
    if (spec.dim == 3)
        out << spec.nx << ' ' << spec.ny << ' ' << spec.nz << ' ' << spec.h << ' ' << spec.ox
            << ' ' << spec.oy << ' ' << spec.oz << '\n';
    else
        out << spec.nx << ' ' << spec.ny << ' ' << spec.h << ' ' << spec.ox << ' ' << spec.oy
            << '\n';
    for (int k = 0; k < (spec.dim == 3 ? spec.nz : 1); ++k)
        for (int j = 0; j < spec.ny; ++j) {
            for (int i = 0; i < spec.nx; ++i) {
                out << (cells[spec.index(i, j, k)] ? '1' : '0');
                if (i + 1 < spec.nx) out << ' ';
            }
            out << '\n';
        }
}

bool GridMask::any() const {
    for (auto c : cells)
        if (c) return true;
    return false;
}

GridScalarField rasterize(const GridSpec& spec,
                          const std::function<double(const Eigen::VectorXd&)>& f) {
    std::vector<double> values(spec.cell_count());
    for (int k = 0; k < (spec.dim == 3 ? spec.nz : 1); ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) values[spec.index(i, j, k)] = f(spec.point(i, j, k));
    return GridScalarField(spec, std::move(values));
}

}  // namespace cahs
