#include "cahs/verify.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cahs/errors.hpp"

namespace cahs {

LevelSetGeometry level_set_mean_curvature(const GridScalarField& f, double critical_tol) {
    const GridSpec& spec = f.spec();
    const int nz = spec.dim == 3 ? spec.nz : 1;
    const std::size_t cells = spec.cell_count();

    std::vector<double> gnorm(cells, 0.0), lap(cells, 0.0), H(cells, 0.0);
    std::vector<std::vector<double>> n(spec.dim, std::vector<double>(cells, 0.0));
    std::vector<std::uint8_t> has_normal(cells, 0);
    LevelSetGeometry out{GridScalarField(spec, gnorm), GridScalarField(spec, lap),
                         GridScalarField(spec, H), std::vector<std::uint8_t>(cells, 0), 0};

    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                if (!f.stencil_interior(i, j, k)) continue;
                const std::size_t c = spec.index(i, j, k);
                const Vector g = f.gradient_at(i, j, k);
                const double gn = g.norm();
                out.grad_norm.at(i, j, k) = gn;
                out.laplacian.at(i, j, k) = f.laplacian_at(i, j, k);
                if (gn < critical_tol) {
                    ++out.near_critical_masked;
                    continue;
                }
                for (int axis = 0; axis < spec.dim; ++axis) n[axis][c] = g(axis) / gn;
                has_normal[c] = 1;
            }

    const double inv2h = 1.0 / (2.0 * spec.h);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                const std::size_t c = spec.index(i, j, k);
                if (!has_normal[c]) continue;
                bool ok = has_normal[spec.index(i - 1, j, k)] &&
                          has_normal[spec.index(i + 1, j, k)] &&
                          has_normal[spec.index(i, j - 1, k)] &&
                          has_normal[spec.index(i, j + 1, k)];
                if (spec.dim == 3)
                    ok = ok && has_normal[spec.index(i, j, k - 1)] &&
                         has_normal[spec.index(i, j, k + 1)];
                if (!ok) continue;
                double div = (n[0][spec.index(i + 1, j, k)] - n[0][spec.index(i - 1, j, k)]) +
                             (n[1][spec.index(i, j + 1, k)] - n[1][spec.index(i, j - 1, k)]);
                if (spec.dim == 3)
                    div += n[2][spec.index(i, j, k + 1)] - n[2][spec.index(i, j, k - 1)];
                out.mean_curvature.at(i, j, k) = -div * inv2h;
                out.interior[c] = 1;
            }
    return out;
}

std::vector<double> parallel_curvature_evolution(const std::vector<double>& lambda0, double t0,
                                                 double t) {
    const double offset = t - t0;
    std::vector<double> out;
    out.reserve(lambda0.size());
    for (std::size_t i = 0; i < lambda0.size(); ++i) {
        const double denom = 1.0 - offset * lambda0[i];
        if (std::abs(denom) <= 1e-12)
            throw FocalPointError("offset hits a focal point of principal curvature " +
                                      std::to_string(lambda0[i]),
                                  static_cast<int>(i));
        out.push_back(lambda0[i] / denom);
    }
    return out;
}

LinearityVerdict harmonic_eikonal_linearity(const GridScalarField& f, double tol_h, double tol_e,
                                            double tol_lin) {
    const GridSpec& spec = f.spec();
    const int nz = spec.dim == 3 ? spec.nz : 1;

    std::vector<Eigen::VectorXd> points;
    std::vector<double> values, grad_norms, laplacians;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                if (!f.stencil_interior(i, j, k)) continue;
                points.push_back(spec.point(i, j, k));
                values.push_back(f.at(i, j, k));
                grad_norms.push_back(f.gradient_at(i, j, k).norm());
                laplacians.push_back(f.laplacian_at(i, j, k));
            }
    if (points.size() < static_cast<std::size_t>(spec.dim) + 1)
        throw InvalidConstantError("linearity test is underdetermined on this grid");

    LinearityVerdict v;
    v.tol_h = tol_h;
    v.tol_e = tol_e;
    v.tol_lin = tol_lin;

    for (double l : laplacians) v.max_laplacian = std::max(v.max_laplacian, std::abs(l));
    v.is_harmonic = v.max_laplacian <= tol_h;

    double c = 0.0;
    for (double g : grad_norms) c += g;
    c /= static_cast<double>(grad_norms.size());
    v.fitted_gradient_norm = c;
    for (double g : grad_norms)
        v.max_eikonal_deviation = std::max(v.max_eikonal_deviation, std::abs(g - c));
    v.is_eikonal = v.max_eikonal_deviation <= tol_e;

    // Affine least squares f ~ a . x + b.
    const int n = spec.dim;
    Eigen::MatrixXd A(points.size(), n + 1);
    Eigen::VectorXd y(points.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        A.row(static_cast<int>(r)).head(n) = points[r].transpose();
        A(static_cast<int>(r), n) = 1.0;
        y(static_cast<int>(r)) = values[r];
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
    v.coefficients = sol.head(n);
    v.offset = sol(n);
    v.residual = (A * sol - y).cwiseAbs().maxCoeff();
    v.is_linear = v.residual <= tol_lin;
    return v;
}

LinearityVerdict harmonic_eikonal_linearity(const GridScalarField& f) {
    const GridSpec& spec = f.spec();
    double scale = 0.0;
    const int nz = spec.dim == 3 ? spec.nz : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i)
                if (f.masked_in(i, j, k)) scale = std::max(scale, std::abs(f.at(i, j, k)));
    scale = std::max(scale, 1.0);
    Eigen::VectorXd lo = spec.point(0, 0, 0);
    Eigen::VectorXd hi = spec.point(spec.nx - 1, spec.ny - 1, spec.dim == 3 ? spec.nz - 1 : 0);
    const double diameter = (hi - lo).norm();
    const double tol = 10.0 * spec.h * spec.h * scale;
    return harmonic_eikonal_linearity(f, tol, tol, 1e-6 * diameter);
}

const char* to_string(MinimalClass c) {
    switch (c) {
        case MinimalClass::Hyperplane: return "Hyperplane";
        case MinimalClass::CylinderOverMinimal: return "CylinderOverMinimal";
        case MinimalClass::NotMinimal: return "NotMinimal";
        case MinimalClass::NotConstantAngle: return "NotConstantAngle";
    }
    return "?";
}

MinimalVerdict classify_minimal_ca(const CAHypersurface& surface, const Vector& lo,
                                   const Vector& hi, const ClassifyOptions& options) {
    if (surface.ambient().profile().kind() != WarpingProfile::Kind::Constant)
        throw UnsupportedError("minimality classification needs a constant warping function");
    const int dim = surface.param_dim();
    if (lo.size() != dim || hi.size() != dim)
        throw InvalidConstantError("classification box does not match the parameter dimension");

    // Lattice over the parameter box.
    std::vector<Vector> params;
    const int per_axis = std::max(2, options.samples_per_axis);
    std::vector<int> idx(dim, 0);
    for (;;) {
        Vector p(dim);
        for (int a = 0; a < dim; ++a)
            p(a) = lo(a) + (hi(a) - lo(a)) * idx[a] / (per_axis - 1);
        params.push_back(p);
        int a = 0;
        while (a < dim && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == dim) break;
    }

    MinimalVerdict verdict;
    double theta_lo = M_PI, theta_hi = -M_PI, theta_sum = 0.0;
    for (const auto& p : params) {
        const double theta = surface.sample(p).theta;
        theta_lo = std::min(theta_lo, theta);
        theta_hi = std::max(theta_hi, theta);
        theta_sum += theta;
    }
    verdict.theta_mean = theta_sum / static_cast<double>(params.size());
    verdict.theta_spread = theta_hi - theta_lo;
    if (verdict.theta_spread > options.angle_tol) {
        verdict.verdict = MinimalClass::NotConstantAngle;
        return verdict;
    }

    const ShapeReport report = shape_report(surface, params);
    verdict.max_mean_curvature = report.max_abs_mean_curvature;
    if (verdict.max_mean_curvature > options.mean_curvature_tol) {
        verdict.verdict = MinimalClass::NotMinimal;
        return verdict;
    }

    if (std::abs(verdict.theta_mean - M_PI / 2) <= options.angle_tol) {
        // Cylinder: the seed's mean curvature in the base is the trace with
        // the T-eigenvalue removed (which is zero here anyway).
        for (const auto& e : report.entries)
            verdict.seed_mean_curvature =
                std::max(verdict.seed_mean_curvature,
                         std::abs(e.mean_curvature - (e.AT_defined ? e.AT_eigenvalue : 0.0)));
        verdict.verdict = verdict.seed_mean_curvature <= options.mean_curvature_tol
                              ? MinimalClass::CylinderOverMinimal
                              : MinimalClass::NotMinimal;
        return verdict;
    }

    if (surface.variant() != CAHypersurface::Variant::Graph)
        throw UnsupportedError("transversal minimality classification needs a graph surface");
    const BaseManifold& base = surface.ambient().base();
    if (base.kind() != BaseManifold::Kind::EuclideanFlat || (base.dimension() != 2 && base.dimension() != 3))
        throw UnsupportedError("height-function grid needs a flat 2D or 3D base");

    GridSpec spec;
    spec.dim = base.dimension();
    spec.h = (hi(0) - lo(0)) / (options.grid_resolution - 1);
    spec.nx = options.grid_resolution;
    spec.ny = std::max(5, static_cast<int>(std::round((hi(1) - lo(1)) / spec.h)) + 1);
    spec.nz = spec.dim == 3
                  ? std::max(5, static_cast<int>(std::round((hi(2) - lo(2)) / spec.h)) + 1)
                  : 1;
    spec.ox = lo(0);
    spec.oy = lo(1);
    spec.oz = spec.dim == 3 ? lo(2) : 0.0;
    const auto& field = surface.graph_field();
    GridScalarField height = rasterize(spec, [&](const Vector& p) { return field.value(p); });

    verdict.linearity = harmonic_eikonal_linearity(height);
    verdict.verdict =
        verdict.linearity->is_linear ? MinimalClass::Hyperplane : MinimalClass::NotMinimal;
    return verdict;
}

}  // namespace cahs
