#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cahs/errors.hpp"
#include "cahs/hypersurface.hpp"
#include "cahs/mesh.hpp"
#include "cahs/numeric.hpp"

using namespace cahs;

namespace {

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

TransnormalField hyperbolic_field(double C, int n = 3) {
    auto builder = TransnormalBuilder::from_constant(WarpingProfile::reciprocal(), C, 1.0);
    Vector normal = Vector::Zero(n);
    normal(n - 1) = 1.0;
    auto dist = DistanceField::analytic(BaseManifold::euclidean(n),
                                        SeedHypersurface::hyperplane(normal, 0.0));
    return TransnormalField(std::move(builder), std::move(dist));
}

CAHypersurface hyperbolic_graph(double C, int n = 3) {
    WarpedProduct ambient(WarpingProfile::reciprocal(), BaseManifold::euclidean(n));
    return CAHypersurface::graph(std::move(ambient), hyperbolic_field(C, n));
}

/// Reconstructs dt from the sample decomposition; the defect is the test's
/// measure of sample consistency.
double decomposition_defect(const WarpedProduct& ambient, const SurfaceSample& s) {
    AmbientVector rebuilt = std::cos(s.theta) * s.xi;
    if (s.T_defined) rebuilt = rebuilt + std::sin(s.theta) * s.T;
    const AmbientVector diff = rebuilt - ambient.dt_field(s.point);
    return ambient.norm(s.point, diff);
}

}  // namespace

TEST_CASE("graph normal and angle") {
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-10, 10}),
                       BaseManifold::euclidean(2));

    ScalarField constant{[](const Vector&) { return 1.0; },
                         [](const Vector&) { return Vector::Zero(2); }};
    auto res = graph_normal_and_angle(constant, flat, vec2(0.3, -0.4));
    CHECK(res.theta == doctest::Approx(0.0));
    CHECK(res.xi.dt == doctest::Approx(1.0));

    // Transnormal with C = 1 makes angle pi/4 (cos theta = 1/sqrt(2)).
    auto field = hyperbolic_field(1.0);
    WarpedProduct hyp(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
    auto r2 = graph_normal_and_angle(field.as_scalar_field(), hyp, vec3(0.2, 0.5, 1.3));
    CHECK(r2.theta == doctest::Approx(M_PI / 4).epsilon(1e-12));
    CHECK(hyp.norm(r2.point, r2.xi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hyperbolic graph angle is arctan(C) with negligible spread") {
    for (double C : {0.5, 2.0}) {
        auto field = hyperbolic_field(C);
        WarpedProduct hyp(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
        const ScalarField sf = field.as_scalar_field();
        DeterministicRng rng(71);
        double lo = 10, hi = -10;
        for (int i = 0; i < 1000; ++i) {
            Vector p = vec3(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.02, 4.0));
            const double theta = graph_normal_and_angle(sf, hyp, p).theta;
            lo = std::min(lo, theta);
            hi = std::max(hi, theta);
        }
        CHECK(hi - lo <= 1e-9);
        CHECK(0.5 * (hi + lo) == doctest::Approx(std::atan(C)).epsilon(1e-12));
    }
}

TEST_CASE("cylinder samples have theta = pi/2 and vanishing A_xi dt") {
    WarpedProduct ambient(WarpingProfile::reciprocal(), BaseManifold::euclidean(3));
    auto seed = SeedHypersurface::sphere_shell(Vector::Zero(3), 1.0);
    auto cyl = CAHypersurface::cylinder(ambient, seed);

    DeterministicRng rng(7);
    for (int i = 0; i < 32; ++i) {
        Vector params = vec3(rng.uniform(0.5, 3.0), rng.uniform(0, 2 * M_PI),
                             rng.uniform(-1.2, 1.2));
        auto s = cyl.sample(params);
        CHECK(std::abs(s.theta - M_PI / 2) <= 1e-9);
        CHECK(ambient.inner(s.point, s.xi, ambient.dt_field(s.point)) == doctest::Approx(0.0));
        CHECK(ambient.norm(s.point, s.xi) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(decomposition_defect(ambient, s) <= 1e-8);
    }

    // Direct sample at a point of L.
    auto s = cylinder_sample(ambient, seed, 1.5, vec3(0, 1, 0));
    CHECK(s.theta == doctest::Approx(M_PI / 2));
    CHECK(s.T_defined);
    CHECK(s.T.dt == doctest::Approx(1.0));

    // A_xi T = 0 at theta = pi/2 (rho-independent).
    auto entry = shape_operator_fd(cyl, vec3(1.2, 0.7, 0.2));
    CHECK(std::abs(entry.matrix(0, 0)) <= 1e-6);
    CHECK(entry.matrix.col(0).norm() <= 1e-6);
}

TEST_CASE("constant-slope parametrization") {
    const double theta = M_PI / 4;
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});

    for (double v : {0.0, 1.1, 4.0}) {
        const Eigen::Vector3d r1 = munteanu_parametrize(theta, alpha, 1.0, v);
        CHECK((r1 - std::sin(theta) * alpha.position(v)).norm() <= 1e-14);
    }
    CHECK_THROWS_AS(munteanu_parametrize(theta, alpha, 0.0, 1.0), DomainError);

    // |r(u,v)| = u sin(theta): the braces stay on the sphere of radius sin(theta).
    DeterministicRng rng(3);
    for (int i = 0; i < 50; ++i) {
        const double u = rng.uniform(0.5, 3.0), v = rng.uniform(0, 2 * M_PI);
        CHECK(munteanu_parametrize(theta, alpha, u, v).norm() ==
              doctest::Approx(u * std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("constant-slope surface reconstructs f(phi(u,v)) = u and its angle") {
    const double theta = M_PI / 4;
    const double st = std::sin(theta);
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
    auto surface = CAHypersurface::munteanu(theta, alpha);

    // Matching graph model: distance to the scaled curve, h from the
    // linear-over-sin profile.
    auto builder =
        TransnormalBuilder::from_theta(WarpingProfile::linear_over_sin(theta), theta, 1.0);
    auto dist = DistanceField::analytic(
        BaseManifold::sphere2(st),
        SeedHypersurface::spherical_curve(alpha.sample_scaled(st, 2048), st));
    TransnormalField field(std::move(builder), std::move(dist));

    double max_f_defect = 0.0, max_angle_dev = 0.0, max_pos_defect = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double u = 1.0 + 2.0 * i / 49.0;
            const double v = 2.0 * M_PI * j / 49.0;
            const auto s = surface.sample(vec2(u, v));
            // Pointwise agreement with the graph of h o d.
            max_f_defect = std::max(max_f_defect, std::abs(field.value(s.point.p) - u));
            max_pos_defect = std::max(
                max_pos_defect,
                (munteanu_parametrize(theta, alpha, u, v) -
                 s.point.t * Eigen::Vector3d(s.point.p(0), s.point.p(1), s.point.p(2))).norm());
            max_angle_dev = std::max(max_angle_dev, std::abs(s.theta - theta));
        }
    CHECK(max_f_defect <= 1e-8);
    CHECK(max_angle_dev <= 1e-8);
    // r(u,v) = u * phi(u,v) with phi on S^2(sin theta): the explicit form is
    // the ambient point pushed through (t,p) -> tp.
    CHECK(max_pos_defect <= 1e-10);
}

TEST_CASE("constant-slope normal makes angle theta with the radial direction") {
    const double theta = 0.6;
    auto alpha = SphereCurve::great_circle({0, 0, 1}, {1, 0, 0});

    // Finite-difference normal of the R^3 parametrization (independent of the
    // library's warped-metric machinery).
    auto fd_normal = [&](double u, double v) {
        const double du = 1e-6 * (1 + std::abs(u)), dv = 1e-6;
        const Eigen::Vector3d ru = (munteanu_parametrize(theta, alpha, u + du, v) -
                                    munteanu_parametrize(theta, alpha, u - du, v)) /
                                   (2 * du);
        const Eigen::Vector3d rv = (munteanu_parametrize(theta, alpha, u, v + dv) -
                                    munteanu_parametrize(theta, alpha, u, v - dv)) /
                                   (2 * dv);
        return Eigen::Vector3d(ru.cross(rv).normalized());
    };

    double max_dev = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double u = 0.8 + 1.5 * i / 19.0;
            const double v = 0.1 + 5.9 * j / 19.0;
            const Eigen::Vector3d n = fd_normal(u, v);
            const Eigen::Vector3d radial = munteanu_parametrize(theta, alpha, u, v).normalized();
            const double ang = std::acos(std::clamp(std::abs(n.dot(radial)), 0.0, 1.0));
            max_dev = std::max(max_dev, std::abs(ang - theta));
        }
    CHECK(max_dev <= 1e-6);
}

TEST_CASE("dillen graph parametrization against the matching distance model") {
    const double theta = M_PI / 3;
    const double st = std::sin(theta);
    auto profile = WarpingProfile::reciprocal();
    auto g = [](double) { return 1.0; };

    // At the lower integral limit the point sits on alpha(v) (d = 0).
    const double u0 = 1.0 / st;
    for (double v : {0.0, 0.9, 2.2}) {
        const Eigen::Vector3d r = dillen_parametrize(theta, profile, g, u0, v, 1.0);
        const Eigen::Vector3d alpha(u0 * st, -(1.0 - std::cos(v)), std::sin(v));
        CHECK((r - alpha).norm() <= 1e-12);
    }

    // g == 1 traces the unit circle centered at (-1, 0); the matching graph
    // is h o d with a sphere-shell seed there.
    auto surface = CAHypersurface::dillen_graph(theta, profile, g, 1.0);
    Vector center(2);
    center << -1.0, 0.0;
    auto builder = TransnormalBuilder::from_theta(profile, theta, 1.0);
    auto dist = DistanceField::analytic(BaseManifold::euclidean(2),
                                        SeedHypersurface::sphere_shell(center, 1.0));
    TransnormalField field(std::move(builder), std::move(dist));

    double max_defect = 0.0, max_angle_dev = 0.0;
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            const double u = (1.0 + 1.5 * i / 39.0) / st;
            const double v = 2.0 * M_PI * j / 39.0;
            const auto s = surface.sample(vec2(u, v));
            max_defect = std::max(max_defect, std::abs(field.value(s.point.p) - u * st));
            max_angle_dev = std::max(max_angle_dev, std::abs(s.theta - theta));
        }
    CHECK(max_defect <= 1e-8);
    CHECK(max_angle_dev <= 1e-6);
}

TEST_CASE("dillen cylinder profile G and angle") {
    auto profile = WarpingProfile::reciprocal();
    const double theta = M_PI / 4;
    CHECK(dillen_cylinder_G(theta, profile, 1.0, 1.0) == doctest::Approx(0.0));
    CHECK(dillen_cylinder_G(theta, profile, 1.0, 2.0) == doctest::Approx(1.5).epsilon(1e-12));

    for (const auto* prof : {&profile}) {
        auto cyl = CAHypersurface::dillen_cylinder(theta, *prof, 1.0);
        double lo = 10, hi = -10;
        for (int i = 0; i < 200; ++i) {
            const double t = 1.0 + 2.0 * i / 199.0;
            const double y = -1.0 + 2.0 * i / 199.0;
            const auto s = cyl.sample(vec2(t, y));
            lo = std::min(lo, s.theta);
            hi = std::max(hi, s.theta);
        }
        CHECK(hi - lo <= 1e-8);
        CHECK(0.5 * (lo + hi) == doctest::Approx(theta).epsilon(1e-9));
    }
}

TEST_CASE("shape operator: flat slice is totally geodesic") {
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-10, 10}),
                       BaseManifold::euclidean(2));
    auto slice = CAHypersurface::slice(flat, 0.5);
    auto entry = shape_operator_fd(slice, vec2(0.3, -0.7));
    CHECK(entry.matrix.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(entry.mean_curvature) <= 1e-10);
}

TEST_CASE("shape operator on the hyperbolic graph: canonical principal direction") {
    const double C = 1.0;
    const double ct = std::cos(std::atan(C));
    auto graph = hyperbolic_graph(C);

    DeterministicRng rng(19);
    for (int i = 0; i < 25; ++i) {
        Vector p = vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.05, 3.0));
        auto entry = shape_operator_fd(graph, p);
        REQUIRE(entry.AT_defined);
        const double t = std::sqrt(2.0 * C * p(2) + 1.0);  // height of the graph point
        const double expected = ct / t;                    // -cos(theta) rho'/rho with rho = 1/t
        CHECK(entry.AT_angle <= 1e-4);
        CHECK(entry.AT_eigenvalue == doctest::Approx(expected).epsilon(1e-4));
        CHECK(entry.II_TT == doctest::Approx(expected).epsilon(1e-4));
        CHECK(entry.asymmetry <= 1e-6);
    }
}

TEST_CASE("integral curves of T") {
    // Constant warping, linear graph: ambient straight lines.
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-50, 50}),
                       BaseManifold::euclidean(2));
    ScalarField linear{[](const Vector& p) { return p(0) + p(1); },
                       [](const Vector&) {
                           Vector g(2);
                           g << 1.0, 1.0;
                           return g;
                       }};
    auto plane = CAHypersurface::graph(flat, linear);
    auto line = integral_curve_T(plane, vec2(0.1, -0.2), 1.0, 1e-3);
    CHECK(!line.truncated);
    CHECK(line.max_full_accel <= 1e-6);
    CHECK(line.max_tangential_residual <= 1e-6);

    // theta = pi/2 cylinder: t-lines are ambient geodesics.
    WarpedProduct hyp(WarpingProfile::reciprocal(), BaseManifold::euclidean(2));
    Vector nrm(2);
    nrm << 1.0, 0.0;
    auto cyl = CAHypersurface::cylinder(hyp, SeedHypersurface::hyperplane(nrm, 0.0));
    auto tline = integral_curve_T(cyl, vec2(1.0, 0.3), 1.0, 1e-3);
    CHECK(!tline.truncated);
    CHECK(tline.max_full_accel <= 1e-8);
    // The curve moves only in t.
    CHECK(std::abs(tline.samples.back().point.t - 2.0) <= 1e-9);
    CHECK(std::abs(tline.samples.back().point.p(1) - 0.3) <= 1e-12);

    // Hyperbolic graph: geodesic residual vanishes, normal acceleration is
    // cos(theta)/t.
    auto graph = hyperbolic_graph(1.0);
    auto curve = integral_curve_T(graph, vec3(0.0, 0.0, 1.0), 1.0, 1e-3);
    CHECK(!curve.truncated);
    CHECK(curve.max_tangential_residual <= 1e-4);
    CHECK(curve.max_normal_mismatch <= 1e-3);

    // Slice start: T undefined.
    auto slice = CAHypersurface::slice(flat, 0.0);
    CHECK_THROWS_AS(integral_curve_T(slice, vec2(0, 0), 1.0, 1e-3), SingularPointError);
}

TEST_CASE("decomposition identity and frame orthogonality across variants") {
    auto graph = hyperbolic_graph(0.7);
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 0, 1});
    auto slope = CAHypersurface::munteanu(0.5, alpha);
    auto dillen = CAHypersurface::dillen_graph(M_PI / 3, WarpingProfile::reciprocal(),
                                               [](double) { return 1.0; }, 1.0);

    DeterministicRng rng(37);
    auto check_sample = [&](const CAHypersurface& surf, const Vector& params) {
        const auto s = surf.sample(params);
        const auto& ambient = surf.ambient();
        CHECK(decomposition_defect(ambient, s) <= 1e-8);
        CHECK(ambient.norm(s.point, s.xi) == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t a = 0; a < s.frame.size(); ++a) {
            CHECK(std::abs(ambient.inner(s.point, s.xi, s.frame[a])) <= 1e-8);
            for (std::size_t b = 0; b < s.frame.size(); ++b) {
                const double want = a == b ? 1.0 : 0.0;
                CHECK(ambient.inner(s.point, s.frame[a], s.frame[b]) ==
                      doctest::Approx(want).epsilon(1e-9).scale(1.0));
            }
        }
    };

    for (int i = 0; i < 20; ++i) {
        check_sample(graph, vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.1, 3)));
        check_sample(slope, vec2(rng.uniform(0.7, 2.5), rng.uniform(0, 6.2)));
        check_sample(dillen, vec2(rng.uniform(1.2, 2.6), rng.uniform(0, 6.2)));
    }
}

TEST_CASE("mesh export writes consistent OBJ and PLY") {
    auto graph = hyperbolic_graph(1.0, 2);
    auto mesh = export_mesh(graph, vec2(-1.0, 0.2), vec2(1.0, 2.0), 24, 24);
    CHECK(mesh.positions.size() == 24 * 24);
    CHECK(mesh.triangles.size() + mesh.degenerate_skipped == 2 * 23 * 23);
    CHECK(mesh.degenerate_skipped == 0);

    mesh.write_obj("mesh_test.obj");
    mesh.write_ply("mesh_test.ply");
    std::ifstream obj("mesh_test.obj");
    std::string line;
    int v = 0, vn = 0, fcount = 0;
    while (std::getline(obj, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("vn ", 0) == 0) ++vn;
        if (line.rfind("f ", 0) == 0) ++fcount;
    }
    CHECK(v == 24 * 24);
    CHECK(vn == 24 * 24);
    CHECK(fcount == static_cast<int>(mesh.triangles.size()));
    std::ifstream ply("mesh_test.ply");
    std::getline(ply, line);
    CHECK(line == "ply");
    std::remove("mesh_test.obj");
    std::remove("mesh_test.ply");

    // Sphere-based export goes through (t,p) -> tp.
    auto slope = CAHypersurface::munteanu(M_PI / 4, SphereCurve::great_circle({1, 0, 0}, {0, 1, 0}));
    auto smesh = export_mesh(slope, vec2(1.0, 0.0), vec2(2.0, 6.28), 16, 16);
    for (std::size_t i = 0; i < smesh.positions.size(); ++i) {
        const double u = smesh.f_value[i];
        CHECK(smesh.positions[i].norm() == doctest::Approx(u * std::sin(M_PI / 4)).epsilon(1e-9));
    }
}

TEST_CASE("dillen patch flags degenerate g and focal points") {
    auto profile = WarpingProfile::reciprocal();
    auto vanishing = CAHypersurface::dillen_graph(M_PI / 4, profile,
                                                  [](double v) { return v - 1.0; }, 1.0);
    CHECK_THROWS_AS(vanishing.sample(vec2(2.0, 1.0)), InvalidConstantError);

    // g = -D folds the Fermi patch onto its focal set: with cot(theta) = 1
    // and rho = 1/t, D = (w^2 - 1)/2 = 1.5 exactly at w = u sin(theta) = 2.
    auto folding = CAHypersurface::dillen_graph(M_PI / 4, profile,
                                                [](double) { return -1.5; }, 1.0);
    CHECK_THROWS_AS(folding.sample(vec2(2.0 * std::sqrt(2.0), 0.3)), SingularPointError);
    CHECK_NOTHROW(folding.sample(vec2(3.5, 0.3)));
}

TEST_CASE("curve export writes the residual columns") {
    WarpedProduct flat(WarpingProfile::constant(1.0, Interval{-50, 50}),
                       BaseManifold::euclidean(2));
    ScalarField linear{[](const Vector& p) { return p(0); },
                       [](const Vector&) {
                           Vector g(2);
                           g << 1.0, 0.0;
                           return g;
                       }};
    auto plane = CAHypersurface::graph(flat, linear);
    auto curve = integral_curve_T(plane, vec2(0.0, 0.0), 0.2, 1e-2);
    export_curve_csv(curve, "curve_test.csv");
    std::ifstream in("curve_test.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "s,t,p0,p1,theta,tangential_residual,normal_accel,expected_normal_accel,full_accel");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == static_cast<int>(curve.samples.size()));
    std::remove("curve_test.csv");
}

TEST_CASE("T-curves on the constant-slope surface obey the curvature law") {
    const double theta = 0.65;
    auto slope = CAHypersurface::munteanu(theta, SphereCurve::great_circle({1, 0, 0}, {0, 1, 0}));
    auto curve = integral_curve_T(slope, vec2(1.4, 0.8), 0.5, 1e-3);
    CHECK(!curve.truncated);
    CHECK(curve.max_tangential_residual <= 1e-4);
    // Normal acceleration tracks -cos(theta) rho'/rho = -cos(theta)/t.
    CHECK(curve.max_normal_mismatch <= 1e-3);
    for (const auto& s : curve.samples)
        if (s.s > 0 && s.s < 0.5)
            CHECK(s.expected_normal_accel ==
                  doctest::Approx(-std::cos(s.theta) / s.point.t).epsilon(1e-9));
}

TEST_CASE("graphs over the sphere sample through the longitude/latitude chart") {
    const double theta = M_PI / 4;
    const double st = std::sin(theta);
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
    auto builder =
        TransnormalBuilder::from_theta(WarpingProfile::linear_over_sin(theta), theta, 1.0);
    auto dist = DistanceField::analytic(
        BaseManifold::sphere2(st),
        SeedHypersurface::spherical_curve(alpha.sample_scaled(st, 2048), st));
    TransnormalField field(builder, dist);
    WarpedProduct ambient(WarpingProfile::linear_over_sin(theta), BaseManifold::sphere2(st));
    auto graph = CAHypersurface::graph(ambient, field);

    DeterministicRng rng(61);
    for (int i = 0; i < 25; ++i) {
        Vector params = vec2(rng.uniform(0.0, 2 * M_PI), rng.uniform(-1.1, 1.1));
        const auto s = graph.sample(params);
        CHECK(std::abs(s.theta - theta) <= 1e-9);
        CHECK(ambient.norm(s.point, s.xi) == doctest::Approx(1.0).epsilon(1e-12));
        // The height is the field value at the chart point.
        CHECK(s.point.t == doctest::Approx(field.value(s.point.p)).epsilon(1e-12));

        const auto entry = shape_operator_fd(graph, params);
        REQUIRE(entry.AT_defined);
        // -cos(theta) rho'/rho = -cos(theta)/t for rho = t/sin(theta).
        CHECK(entry.AT_eigenvalue ==
              doctest::Approx(-std::cos(theta) / s.point.t).epsilon(1e-4));
    }
}

TEST_CASE("mesh export counts degenerate pole cells") {
    const double theta = M_PI / 4;
    const double st = std::sin(theta);
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
    auto builder =
        TransnormalBuilder::from_theta(WarpingProfile::linear_over_sin(theta), theta, 1.0);
    auto dist = DistanceField::analytic(
        BaseManifold::sphere2(st),
        SeedHypersurface::spherical_curve(alpha.sample_scaled(st, 1024), st));
    WarpedProduct ambient(WarpingProfile::linear_over_sin(theta), BaseManifold::sphere2(st));
    auto graph = CAHypersurface::graph(ambient, TransnormalField(builder, dist));

    // The top latitude row collapses to the pole.
    const int nu = 12, nv = 8;
    auto mesh = export_mesh(graph, vec2(0.0, 0.3), vec2(2 * M_PI, M_PI / 2), nu, nv);
    CHECK(mesh.degenerate_skipped >= nu - 1);
    CHECK(mesh.triangles.size() + mesh.degenerate_skipped == 2 * (nu - 1) * (nv - 1));
}
