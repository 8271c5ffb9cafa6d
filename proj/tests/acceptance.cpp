// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cahs/distance_field.hpp"
#include "cahs/fast_marching.hpp"
#include "cahs/hypersurface.hpp"
#include "cahs/numeric.hpp"
#include "cahs/transnormal.hpp"
#include "cahs/verify.hpp"

using namespace cahs;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool passed, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Vector vec2(double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
}

Vector vec3(double x, double y, double z) {
    Vector v(3);
    v << x, y, z;
    return v;
}

TransnormalField hyperbolic_field(double C) {
    auto builder = TransnormalBuilder::from_constant(WarpingProfile::reciprocal(), C, 1.0);
    Vector normal = Vector::Zero(3);
    normal(2) = 1.0;
    auto dist = DistanceField::analytic(BaseManifold::euclidean(3),
                                        SeedHypersurface::hyperplane(normal, 0.0));
    return TransnormalField(std::move(builder), std::move(dist));
}

std::vector<Vector> hyperbolic_points(int count, std::uint64_t seed) {
    DeterministicRng rng(seed);
    std::vector<Vector> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back(vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.01, 3.0)));
    return pts;
}

GridMask point_source_mask(int n) {
    GridMask m;
    m.spec.dim = 2;
    m.spec.nx = m.spec.ny = n;
    m.spec.h = 2.0 / (n - 1);
    m.spec.ox = m.spec.oy = -1.0;
    m.cells.assign(m.spec.cell_count(), 0);
    m.cells[m.spec.index((n - 1) / 2, (n - 1) / 2)] = 1;
    return m;
}

TransnormalField munteanu_field(double theta, const SphereCurve& alpha) {
    const double st = std::sin(theta);
    auto builder =
        TransnormalBuilder::from_theta(WarpingProfile::linear_over_sin(theta), theta, 1.0);
    auto dist = DistanceField::analytic(
        BaseManifold::sphere2(st),
        SeedHypersurface::spherical_curve(alpha.sample_scaled(st, 2048), st));
    return TransnormalField(std::move(builder), std::move(dist));
}

// --------------------------------------------------------------------------

void criterion_1_hyperbolic_golden() {
    const auto t0 = std::chrono::steady_clock::now();
    double max_f = 0.0, max_grad = 0.0;
    for (double C : {0.5, 1.0, 2.0}) {
        auto field = hyperbolic_field(C);
        for (const auto& p : hyperbolic_points(1000, 11)) {
            const double closed = std::sqrt(2.0 * C * p(2) + 1.0);
            max_f = std::max(max_f, std::abs(field.value(p) - closed));
            Vector expected = Vector::Zero(3);
            expected(2) = C / closed;
            max_grad = std::max(max_grad, (field.gradient(p) - expected).norm());
        }
    }
    const double elapsed = seconds_since(t0);
    report(1, "hyperbolic golden case f = sqrt(2Cx_n+1)",
           max_f <= 1e-10 && max_grad <= 1e-8 && elapsed < 1.0,
           fmt("max_f=%.3g max_grad=%.3g %.2fs", max_f, max_grad, elapsed));
}

void criterion_2_eikonal_residual() {
    const auto t0 = std::chrono::steady_clock::now();

    // Every analytic-path field the suite builds.
    double max_analytic = 0.0;
    {
        auto field = hyperbolic_field(1.0);
        auto pts = hyperbolic_points(1000, 13);
        std::vector<Vector> base_pts(pts.begin(), pts.end());
        max_analytic = std::max(
            max_analytic, transnormal_residual(field.as_scalar_field(), field.builder().profile(),
                                               field.builder().constant(), base_pts)
                              .max_rel);
    }
    {
        const double theta = M_PI / 4;
        auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
        auto field = munteanu_field(theta, alpha);
        std::vector<Vector> pts;
        DeterministicRng rng(17);
        for (int i = 0; i < 1000; ++i) {
            const double u = rng.uniform(0.8, 2.8), v = rng.uniform(0.0, 2 * M_PI);
            const Eigen::Vector3d phi = munteanu_parametrize(theta, alpha, u, v) / u;
            pts.push_back(vec3(phi(0), phi(1), phi(2)));
        }
        max_analytic = std::max(
            max_analytic, transnormal_residual(field.as_scalar_field(), field.builder().profile(),
                                               field.builder().constant(), pts)
                              .max_rel);
    }
    {
        auto builder =
            TransnormalBuilder::from_constant(WarpingProfile::constant(1.0), std::tan(1.1), 0.0);
        Vector nrm(2);
        nrm << 1.0, 0.0;
        auto dist = DistanceField::analytic(BaseManifold::euclidean(2),
                                            SeedHypersurface::hyperplane(nrm, 0.0));
        TransnormalField field(builder, dist);
        std::vector<Vector> pts;
        DeterministicRng rng(19);
        for (int i = 0; i < 1000; ++i)
            pts.push_back(vec2(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        max_analytic = std::max(
            max_analytic,
            transnormal_residual(field.as_scalar_field(), builder.profile(), builder.constant(),
                                 pts)
                .max_rel);
    }

    // Grid route on 257^2.
    auto grid_field = TransnormalField(
        TransnormalBuilder::from_constant(WarpingProfile::constant(1.0), 1.0, 0.0),
        DistanceField::fast_marching(point_source_mask(257)));
    const double h = grid_field.distance().grid_spacing();
    const double grid_residual = transnormal_residual_grid(grid_field).max_rel;

    const double elapsed = seconds_since(t0);
    report(2, "generalized eikonal residual",
           max_analytic <= 1e-8 && grid_residual <= 5.0 * h && elapsed < 10.0,
           fmt("analytic=%.3g grid=%.3g (5h=%.3g)", max_analytic, grid_residual, 5.0 * h));
}

void criterion_3_angle_constancy() {
    // Analytic field.
    bool ok = true;
    std::string detail;
    {
        const double C = 1.7;
        auto field = hyperbolic_field(C);
        WarpedProduct ambient(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
        const ScalarField sf = field.as_scalar_field();
        double lo = 10, hi = -10, sum = 0;
        const auto pts = hyperbolic_points(1000, 29);
        for (const auto& p : pts) {
            const double theta = graph_normal_and_angle(sf, ambient, p).theta;
            lo = std::min(lo, theta);
            hi = std::max(hi, theta);
            sum += theta;
        }
        const double mean = sum / pts.size();
        const double expected = std::acos(1.0 / std::sqrt(1.0 + C * C));
        ok = ok && (hi - lo) <= 1e-8 && std::abs(mean - expected) <= 1e-8;
        detail = fmt("analytic spread=%.3g mean_dev=%.3g", hi - lo, std::abs(mean - expected));
    }
    // Grid-backed field.
    {
        auto field = TransnormalField(
            TransnormalBuilder::from_constant(WarpingProfile::constant(1.0), 1.0, 0.0),
            DistanceField::fast_marching(point_source_mask(257)));
        const double h = field.distance().grid_spacing();
        WarpedProduct ambient(WarpingProfile::constant(1.0), BaseManifold::euclidean(2));
        const ScalarField sf = field.as_scalar_field();
        DeterministicRng rng(31);
        double lo = 10, hi = -10, sum = 0;
        int n = 0;
        while (n < 1000) {
            Vector p = vec2(rng.uniform(-0.85, 0.85), rng.uniform(-0.85, 0.85));
            if (p.norm() < 0.2 || !field.distance().in_validity(p)) continue;
            const double theta = graph_normal_and_angle(sf, ambient, p).theta;
            lo = std::min(lo, theta);
            hi = std::max(hi, theta);
            sum += theta;
            ++n;
        }
        const double mean = sum / n;
        const double expected = std::acos(1.0 / std::sqrt(2.0));
        ok = ok && (hi - lo) <= 5 * h && std::abs(mean - expected) <= 5 * h;
        detail += fmt(" grid spread=%.3g mean_dev=%.3g (5h=%.3g)", hi - lo,
                      std::abs(mean - expected), 5 * h);
    }
    report(3, "angle constancy arccos(1/sqrt(1+C^2))", ok, detail);
}

void criterion_4_principal_direction() {
    const auto t0 = std::chrono::steady_clock::now();
    const double C = 1.0;
    const double ct = std::cos(std::atan(C));
    WarpedProduct ambient(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
    auto graph = CAHypersurface::graph(ambient, hyperbolic_field(C));

    double max_angle = 0.0, max_eig_rel = 0.0;
    DeterministicRng rng(37);
    for (int i = 0; i < 100; ++i) {
        Vector p = vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.05, 3.0));
        const auto entry = shape_operator_fd(graph, p);
        const double t = std::sqrt(2.0 * C * p(2) + 1.0);
        const double expected = ct / t;
        max_angle = std::max(max_angle, entry.AT_angle);
        max_eig_rel =
            std::max(max_eig_rel, std::abs(entry.AT_eigenvalue - expected) / expected);
    }
    const double elapsed = seconds_since(t0);
    report(4, "canonical principal direction A_xi T = -cos(theta) rho'/rho T",
           max_angle <= 1e-4 && max_eig_rel <= 1e-4 && elapsed < 5.0,
           fmt("max_angle=%.3g max_eig_rel=%.3g %.2fs", max_angle, max_eig_rel, elapsed));
}

void criterion_5_geodesy() {
    // Hyperbolic graph: tangential residual.
    WarpedProduct hyp(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
    auto graph = CAHypersurface::graph(hyp, hyperbolic_field(1.0));
    const auto hyp_curve = integral_curve_T(graph, vec3(0.0, 0.0, 0.5), 1.0, 1e-3);

    // Constant warping, linear graph: full ambient residual.
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-50, 50}),
                       BaseManifold::euclidean(2));
    ScalarField linear{[](const Vector& p) { return 1.0 + p(0) + 0.5 * p(1); },
                       [](const Vector&) {
                           Vector g(2);
                           g << 1.0, 0.5;
                           return g;
                       }};
    auto plane = CAHypersurface::graph(flat, linear);
    const auto flat_curve = integral_curve_T(plane, vec2(0.2, -0.1), 1.0, 1e-3);

    // theta = pi/2 cylinder: full ambient residual.
    WarpedProduct hyp2(WarpingProfile::reciprocal(), BaseManifold::euclidean(2));
    Vector nrm(2);
    nrm << 1.0, 0.0;
    auto cyl = CAHypersurface::cylinder(hyp2, SeedHypersurface::hyperplane(nrm, 0.0));
    const auto cyl_curve = integral_curve_T(cyl, vec2(0.7, 0.4), 1.0, 1e-3);

    const bool ok = !hyp_curve.truncated && hyp_curve.max_tangential_residual <= 1e-4 &&
                    !flat_curve.truncated && flat_curve.max_full_accel <= 1e-6 &&
                    !cyl_curve.truncated && cyl_curve.max_full_accel <= 1e-6;
    report(5, "T-curves are surface geodesics",
           ok,
           fmt("hyperbolic_tan=%.3g flat_full=%.3g cylinder_full=%.3g",
               hyp_curve.max_tangential_residual, flat_curve.max_full_accel,
               cyl_curve.max_full_accel));
}

void criterion_6_cylinder() {
    WarpedProduct ambient(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
    auto seed = SeedHypersurface::sphere_shell(Vector::Zero(3), 1.0);
    auto cyl = CAHypersurface::cylinder(ambient, seed);

    DeterministicRng rng(41);
    double max_theta_dev = 0.0, max_AT = 0.0;
    for (int i = 0; i < 200; ++i) {
        Vector params =
            vec3(rng.uniform(0.5, 3.0), rng.uniform(0, 2 * M_PI), rng.uniform(-1.2, 1.2));
        max_theta_dev =
            std::max(max_theta_dev, std::abs(cyl.sample(params).theta - M_PI / 2));
    }
    for (int i = 0; i < 20; ++i) {
        Vector params =
            vec3(rng.uniform(0.5, 3.0), rng.uniform(0, 2 * M_PI), rng.uniform(-1.2, 1.2));
        const auto entry = shape_operator_fd(cyl, params);
        max_AT = std::max(max_AT, entry.matrix.col(0).norm());  // frame[0] = T = dt
    }
    report(6, "cylinders: theta = pi/2, A_xi dt = 0",
           max_theta_dev <= 1e-9 && max_AT <= 1e-6,
           fmt("theta_dev=%.3g |A_xi dt|=%.3g", max_theta_dev, max_AT));
}

void criterion_7_munteanu() {
    const double theta = M_PI / 4;
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
    auto field = munteanu_field(theta, alpha);

    double max_f = 0.0, max_angle = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double u = 1.0 + 2.0 * i / 49.0;
            const double v = 2.0 * M_PI * j / 49.0;
            const Eigen::Vector3d phi = munteanu_parametrize(theta, alpha, u, v) / u;
            max_f = std::max(max_f, std::abs(field.value(vec3(phi(0), phi(1), phi(2))) - u));

            const double du = 1e-6 * (1 + u), dv = 1e-6;
            const Eigen::Vector3d ru = (munteanu_parametrize(theta, alpha, u + du, v) -
                                        munteanu_parametrize(theta, alpha, u - du, v)) /
                                       (2 * du);
            const Eigen::Vector3d rv = (munteanu_parametrize(theta, alpha, u, v + dv) -
                                        munteanu_parametrize(theta, alpha, u, v - dv)) /
                                       (2 * dv);
            const Eigen::Vector3d n = ru.cross(rv).normalized();
            const Eigen::Vector3d radial = munteanu_parametrize(theta, alpha, u, v).normalized();
            const double ang = std::acos(std::clamp(std::abs(n.dot(radial)), 0.0, 1.0));
            max_angle = std::max(max_angle, std::abs(ang - theta));
        }
    report(7, "constant-slope reproduction f(phi(u,v)) = u",
           max_f <= 1e-8 && max_angle <= 1e-6,
           fmt("max_f=%.3g max_normal_angle_dev=%.3g", max_f, max_angle));
}

void criterion_8_dillen() {
    bool ok = true;
    std::string detail;
    const WarpingProfile profiles[2] = {WarpingProfile::reciprocal(),
                                        WarpingProfile::constant(1.0)};
    const char* names[2] = {"1/t", "1"};
    for (int k = 0; k < 2; ++k) {
        const WarpingProfile& profile = profiles[k];
        const double theta = M_PI / 3;
        const double st = std::sin(theta);
        auto g = [](double) { return 1.0; };
        Vector center(2);
        center << -1.0, 0.0;
        TransnormalField field(TransnormalBuilder::from_theta(profile, theta, 1.0),
                               DistanceField::analytic(BaseManifold::euclidean(2),
                                                       SeedHypersurface::sphere_shell(center, 1.0)));
        double max_f = 0.0;
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j) {
                const double u = (1.0 + 1.5 * i / 49.0) / st;
                const double v = 2.0 * M_PI * j / 49.0;
                const Eigen::Vector3d r = dillen_parametrize(theta, profile, g, u, v, 1.0);
                max_f = std::max(max_f, std::abs(field.value(vec2(r(1), r(2))) - u * st));
            }

        const double theta_c = M_PI / 4;
        double max_G = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double t = 1.0 + 1.5 * i / 100.0;
            max_G = std::max(max_G,
                             std::abs(dillen_cylinder_G(theta_c, profile, 1.0, t) -
                                      reciprocal_rho_integral(profile, std::tan(theta_c), 1.0, t)));
        }
        auto cyl = CAHypersurface::dillen_cylinder(theta_c, profile, 1.0);
        double lo = 10, hi = -10;
        for (int i = 0; i < 100; ++i) {
            Vector params = vec2(1.0 + 1.5 * (i % 10) / 9.0, -1.0 + 2.0 * (i / 10) / 9.0);
            const double th = cyl.sample(params).theta;
            lo = std::min(lo, th);
            hi = std::max(hi, th);
        }
        ok = ok && max_f <= 1e-8 && max_G <= 1e-10 && (hi - lo) <= 1e-8;
        detail += fmt((std::string("rho=") + names[k] + ": f=%.2g G=%.2g spread=%.2g ").c_str(),
                      max_f, max_G, hi - lo);
    }
    report(8, "dillen graph and cylinder reproduction", ok, detail);
}

void criterion_9_curvature_evolution() {
    // Analytic: offset-sphere oracle.
    const double R = 2.0;
    double max_dev = 0.0;
    for (double delta : {0.1, 0.5, 1.2}) {
        const auto evolved = parallel_curvature_evolution({1.0 / R, 1.0 / R}, 0.0, delta);
        for (double kappa : evolved)
            max_dev = std::max(max_dev, std::abs(kappa - 1.0 / (R - delta)));
    }

    // Numeric: H of the level sets of |x| under grid refinement.
    std::vector<double> errs;
    for (int n : {33, 65, 129}) {
        GridSpec spec;
        spec.dim = 3;
        spec.nx = spec.ny = spec.nz = n;
        spec.h = 2.0 / (n - 1);
        spec.ox = spec.oy = spec.oz = -1.0;
        auto f = rasterize(spec, [](const Vector& p) { return p.norm(); });
        auto geo = level_set_mean_curvature(f);
        double max_err = 0.0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    if (!geo.interior[spec.index(i, j, k)]) continue;
                    const double r = spec.point(i, j, k).norm();
                    if (std::abs(r - 0.6) > spec.h) continue;
                    max_err = std::max(max_err,
                                       std::abs(-geo.mean_curvature.at(i, j, k) - 2.0 / r));
                }
        errs.push_back(max_err);
    }
    const double slope = 0.5 * (std::log2(errs[0] / errs[1]) + std::log2(errs[1] / errs[2]));
    report(9, "parallel curvature evolution lambda/(1-delta lambda)",
           max_dev <= 1e-12 && slope >= 1.8,
           fmt("analytic_dev=%.3g refinement_slope=%.2f", max_dev, slope));
}

void criterion_10_linearity() {
    GridSpec spec;
    spec.dim = 2;
    spec.nx = spec.ny = 129;
    spec.h = 2.0 / 128;
    spec.ox = spec.oy = -1.0;

    auto affine =
        rasterize(spec, [](const Vector& p) { return 3.0 * p(0) + 4.0 * p(1) + 0.5; });
    const auto v1 = harmonic_eikonal_linearity(affine);
    const double coeff_err = std::max(std::abs(v1.coefficients(0) - 3.0),
                                      std::max(std::abs(v1.coefficients(1) - 4.0),
                                               std::abs(v1.offset - 0.5)));

    auto radial = rasterize(spec, [](const Vector& p) { return p.norm(); });
    std::vector<std::uint8_t> mask(spec.cell_count(), 0);
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) {
            const double r = spec.point(i, j).norm();
            if (r >= 0.35 && r <= 0.95) mask[spec.index(i, j)] = 1;
        }
    radial.set_mask(mask);
    const auto v2 = harmonic_eikonal_linearity(radial);

    auto saddle = rasterize(spec, [](const Vector& p) { return p(0) * p(0) - p(1) * p(1); });
    const auto v3 = harmonic_eikonal_linearity(saddle);

    const bool ok = v1.is_harmonic && v1.is_eikonal && v1.is_linear && coeff_err <= 1e-10 &&
                    v2.is_eikonal && !v2.is_harmonic && !v2.is_linear && v3.is_harmonic &&
                    !v3.is_eikonal && !v3.is_linear;
    char detail[128];
    std::snprintf(detail, sizeof detail, "coeff_err=%.3g radial[e=%d,h=%d] saddle[h=%d,e=%d]",
                  coeff_err, v2.is_eikonal ? 1 : 0, v2.is_harmonic ? 1 : 0, v3.is_harmonic ? 1 : 0,
                  v3.is_eikonal ? 1 : 0);
    report(10, "harmonic+eikonal => linear verdicts", ok, detail);
}

void criterion_11_fmm_convergence() {
    std::vector<double> errs, hs;
    bool within_2h = true;
    for (int n : {65, 129, 257}) {  // h = 1/32, 1/64, 1/128
        auto field = DistanceField::fast_marching(point_source_mask(n));
        const auto& g = field.grid();
        double max_err = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                max_err = std::max(max_err,
                                   std::abs(g.at(i, j) - g.spec().point(i, j).norm()));
        errs.push_back(max_err);
        hs.push_back(g.spec().h);
        within_2h = within_2h && max_err <= 2.0 * g.spec().h;
    }
    const double slope = 0.5 * (std::log2(errs[0] / errs[1]) + std::log2(errs[1] / errs[2]));
    report(11, "fast marching point-source convergence", within_2h && slope >= 0.8,
           fmt("err/h={%.2f,%.2f} slope=%.2f", errs[0] / hs[0], errs[2] / hs[2], slope));
}

void criterion_12_classifier() {
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-50, 50}),
                       BaseManifold::euclidean(2));

    ScalarField affine{[](const Vector& p) { return p(0) + p(1); },
                       [](const Vector&) {
                           Vector g(2);
                           g << 1.0, 1.0;
                           return g;
                       }};
    const auto v1 =
        classify_minimal_ca(CAHypersurface::graph(flat, affine), vec2(-1, -1), vec2(1, 1));

    Vector nrm(2);
    nrm << 1.0, 0.0;
    const auto v2 = classify_minimal_ca(
        CAHypersurface::cylinder(flat, SeedHypersurface::hyperplane(nrm, 0.0)), vec2(-1, -1),
        vec2(1, 1));

    ScalarField helicoid{[](const Vector& p) { return 0.5 * std::atan2(p(1), p(0)); },
                         [](const Vector& p) {
                             const double r2 = p.squaredNorm();
                             Vector g(2);
                             g << -0.5 * p(1) / r2, 0.5 * p(0) / r2;
                             return g;
                         }};
    const auto v3 = classify_minimal_ca(CAHypersurface::graph(flat, helicoid), vec2(0.6, -0.4),
                                        vec2(1.4, 0.4));

    const bool ok = v1.verdict == MinimalClass::Hyperplane &&
                    v2.verdict == MinimalClass::CylinderOverMinimal &&
                    v3.verdict == MinimalClass::NotConstantAngle;
    report(12, "minimal CA classifier", ok,
           std::string(to_string(v1.verdict)) + "/" + to_string(v2.verdict) + "/" +
               to_string(v3.verdict));
}

}  // namespace

int main() {
    criterion_1_hyperbolic_golden();
    criterion_2_eikonal_residual();
    criterion_3_angle_constancy();
    criterion_4_principal_direction();
    criterion_5_geodesy();
    criterion_6_cylinder();
    criterion_7_munteanu();
    criterion_8_dillen();
    criterion_9_curvature_evolution();
    criterion_10_linearity();
    criterion_11_fmm_convergence();
    criterion_12_classifier();

    std::printf("%d/12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
