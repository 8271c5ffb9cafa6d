#include <cmath>

#include "cahs/errors.hpp"
#include "cahs/numeric.hpp"
#include "surface_internal.hpp"

namespace cahs {

SphereCurve SphereCurve::great_circle(Eigen::Vector3d a, Eigen::Vector3d b) {
    if (a.norm() < 1e-14 || b.norm() < 1e-14)
        throw InvalidConstantError("great circle needs two non-zero directions");
    a.normalize();
    Eigen::Vector3d e = b - a.dot(b) * a;
    if (e.norm() < 1e-12)
        throw InvalidConstantError("great circle directions are collinear");
    e.normalize();
    auto pos = [a, e](double v) { return std::cos(v) * a + std::sin(v) * e; };
    auto vel = [a, e](double v) { return -std::sin(v) * a + std::cos(v) * e; };
    auto acc = [a, e](double v) -> Eigen::Vector3d {
        return -(std::cos(v) * a + std::sin(v) * e);
    };
    return SphereCurve(pos, vel, acc, 2.0 * M_PI);
}

SphereCurve SphereCurve::from_seed(const SphericalCurveSeed& seed) {
    // Normalize to the unit sphere; parameter is unit-sphere arc length.
    auto samples = std::make_shared<std::vector<Eigen::Vector3d>>();
    samples->reserve(seed.samples.size());
    for (const auto& s : seed.samples) samples->push_back(s / seed.sphere_radius);
    const std::size_t n = samples->size();
    const double gap = std::acos(std::clamp((*samples)[0].dot((*samples)[1 % n]), -1.0, 1.0));
    const double period = gap * static_cast<double>(n);

    auto segment = [samples, gap, n](double v, int& idx, double& local) {
        double w = std::fmod(v, gap * n);
        if (w < 0) w += gap * n;
        idx = std::min(static_cast<int>(w / gap), static_cast<int>(n) - 1);
        local = w - idx * gap;
    };
    auto frame = [samples, n](int idx, Eigen::Vector3d& A, Eigen::Vector3d& B, double& seg_gap) {
        A = (*samples)[idx];
        const Eigen::Vector3d& b = (*samples)[(idx + 1) % n];
        const double cg = std::clamp(A.dot(b), -1.0, 1.0);
        seg_gap = std::acos(cg);
        B = (b - cg * A) / std::sin(seg_gap);
    };
    auto pos = [segment, frame](double v) {
        int idx;
        double s, seg_gap;
        Eigen::Vector3d A, B;
        segment(v, idx, s);
        frame(idx, A, B, seg_gap);
        return Eigen::Vector3d(std::cos(s) * A + std::sin(s) * B);
    };
    auto vel = [segment, frame](double v) {
        int idx;
        double s, seg_gap;
        Eigen::Vector3d A, B;
        segment(v, idx, s);
        frame(idx, A, B, seg_gap);
        return Eigen::Vector3d(-std::sin(s) * A + std::cos(s) * B);
    };
    auto acc = [pos](double v) -> Eigen::Vector3d { return -pos(v); };
    return SphereCurve(pos, vel, acc, period);
}

std::vector<Eigen::Vector3d> SphereCurve::sample_scaled(double radius, int count) const {
    std::vector<Eigen::Vector3d> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(radius * pos_(period_ * i / count));
    return out;
}

AngleResult graph_normal_and_angle(const ScalarField& f, const WarpedProduct& ambient,
                                   const Vector& p) {
    const double fp = f.value(p);
    const Vector grad = f.gradient(p);
    const double rho = ambient.profile().rho(fp);
    const double gnorm = grad.norm();
    const double scale = rho * std::sqrt(rho * rho + gnorm * gnorm);

    AngleResult out;
    out.point = AmbientPoint{fp, p};
    out.xi = AmbientVector{rho * rho / scale, -grad / scale};
    out.theta = std::atan2(gnorm, rho);
    return out;
}

SurfaceSample cylinder_sample(const WarpedProduct& ambient, const SeedHypersurface& seed, double t,
                              const Vector& q) {
    const BaseManifold& base = ambient.base();
    const auto dq = distance_analytic(seed, base, q);
    if (std::abs(dq.d) > 1e-9 * (1.0 + q.norm()))
        throw DomainError("cylinder sample point is not on the seed hypersurface");
    const double rho = ambient.profile().rho(t);

    SurfaceSample s;
    s.point = AmbientPoint{t, q};
    s.xi = AmbientVector{0.0, dq.grad / rho};
    s.theta = M_PI / 2;
    s.T_defined = true;
    s.T = ambient.dt_field(s.point);

    s.frame.push_back(s.T);
    auto l_tangents = detail::complete_orthonormal(base.tangent_basis(q), dq.grad);
    for (auto& v : l_tangents) s.frame.push_back(AmbientVector{0.0, v / rho});
    return s;
}

Eigen::Vector3d munteanu_parametrize(double theta, const SphereCurve& alpha, double u, double v) {
    if (!(u > 0.0)) throw DomainError("constant-slope parametrization needs u > 0");
    if (!(theta > 0.0) || !(theta < M_PI / 2))
        throw InvalidConstantError("constant-slope parametrization needs theta in (0, pi/2)");
    const double psi = std::log(u) / std::tan(theta);
    const Eigen::Vector3d a = alpha.position(v);
    const Eigen::Vector3d beta = a.cross(alpha.velocity(v));
    return u * std::sin(theta) * (std::cos(psi) * a + std::sin(psi) * beta);
}

Eigen::Vector3d dillen_parametrize(double theta, const WarpingProfile& profile,
                                   const std::function<double(double)>& g, double u, double v,
                                   double integral_base, double g_integral_base) {
    if (!(theta > 0.0) || !(theta <= M_PI / 2))
        throw InvalidConstantError("parametrization needs theta in (0, pi/2]");
    const double w = u * std::sin(theta);
    if (!profile.domain().contains(w))
        throw DomainError("u sin(theta) leaves the profile domain");
    const double D = (1.0 / std::tan(theta)) *
                     integrate([&](double s) { return 1.0 / profile.rho(s); }, integral_base, w,
                               1e-12);
    const double S = integrate([&](double s) { return g(s) * std::sin(s); }, g_integral_base, v,
                               1e-12);
    const double Cg = integrate([&](double s) { return g(s) * std::cos(s); }, g_integral_base, v,
                                1e-12);
    return {w, D * std::cos(v) - S, D * std::sin(v) + Cg};
}

double dillen_cylinder_G(double theta, const WarpingProfile& profile, double integral_base,
                         double t) {
    return reciprocal_rho_integral(profile, std::tan(theta), integral_base, t);
}

namespace detail {

int seed_param_dim(const SeedHypersurface& seed, const BaseManifold& base) {
    switch (seed.kind()) {
        case SeedHypersurface::Kind::Hyperplane:
        case SeedHypersurface::Kind::SphereShell:
            return base.dimension() - 1;
        case SeedHypersurface::Kind::SphericalCurve:
            return 1;
        case SeedHypersurface::Kind::GridLevelSet:
            break;
    }
    throw UnsupportedError("grid level set seeds have no local parametrization");
}

std::vector<Vector> complete_orthonormal(const std::vector<Vector>& subspace_basis,
                                         const Vector& unit_first) {
    std::vector<Vector> out;
    for (const auto& e : subspace_basis) {
        Vector v = e - unit_first.dot(e) * unit_first;
        for (const auto& w : out) v -= w.dot(v) * w;
        const double n = v.norm();
        if (n > 1e-9) out.push_back(v / n);
    }
    return out;
}

Vector seed_point(const SeedHypersurface& seed, const BaseManifold& base, const Vector& lambda) {
    switch (seed.kind()) {
        case SeedHypersurface::Kind::Hyperplane: {
            const auto& data = seed.hyperplane_data();
            Vector q = data.offset * data.normal;
            auto frame = complete_orthonormal(base.tangent_basis(q), data.normal);
            for (int i = 0; i < lambda.size(); ++i) q += lambda(i) * frame[i];
            return q;
        }
        case SeedHypersurface::Kind::SphereShell: {
            const auto& data = seed.sphere_shell_data();
            const int n = base.dimension();
            if (n == 2) {
                Vector q(2);
                q << data.center(0) + data.radius * std::cos(lambda(0)),
                    data.center(1) + data.radius * std::sin(lambda(0));
                return q;
            }
            if (n == 3) {
                Vector q(3);
                const double cl = std::cos(lambda(1));
                q << data.center(0) + data.radius * cl * std::cos(lambda(0)),
                    data.center(1) + data.radius * cl * std::sin(lambda(0)),
                    data.center(2) + data.radius * std::sin(lambda(1));
                return q;
            }
            throw UnsupportedError("sphere shell cylinder parametrization supports n <= 3");
        }
        case SeedHypersurface::Kind::SphericalCurve: {
            const auto& data = seed.spherical_curve_data();
            auto curve = SphereCurve::from_seed(data);
            const Eigen::Vector3d p = data.sphere_radius * curve.position(lambda(0) / data.sphere_radius);
            Vector q(3);
            q << p(0), p(1), p(2);
            return q;
        }
        case SeedHypersurface::Kind::GridLevelSet:
            break;
    }
    throw UnsupportedError("grid level set seeds have no local parametrization");
}

std::vector<Vector> seed_tangents(const SeedHypersurface& seed, const BaseManifold& base,
                                  const Vector& lambda) {
    switch (seed.kind()) {
        case SeedHypersurface::Kind::Hyperplane: {
            const auto& data = seed.hyperplane_data();
            const Vector q = data.offset * data.normal;
            return complete_orthonormal(base.tangent_basis(q), data.normal);
        }
        case SeedHypersurface::Kind::SphereShell: {
            const auto& data = seed.sphere_shell_data();
            const int n = base.dimension();
            if (n == 2) {
                Vector t(2);
                t << -data.radius * std::sin(lambda(0)), data.radius * std::cos(lambda(0));
                return {t};
            }
            if (n == 3) {
                const double cl = std::cos(lambda(1)), sl = std::sin(lambda(1));
                const double cu = std::cos(lambda(0)), su = std::sin(lambda(0));
                Vector tu(3), tv(3);
                tu << -data.radius * cl * su, data.radius * cl * cu, 0.0;
                tv << -data.radius * sl * cu, -data.radius * sl * su, data.radius * cl;
                return {tu, tv};
            }
            throw UnsupportedError("sphere shell cylinder parametrization supports n <= 3");
        }
        case SeedHypersurface::Kind::SphericalCurve: {
            const auto& data = seed.spherical_curve_data();
            auto curve = SphereCurve::from_seed(data);
            const Eigen::Vector3d t = curve.velocity(lambda(0) / data.sphere_radius);
            Vector v(3);
            v << t(0), t(1), t(2);
            return {v};
        }
        case SeedHypersurface::Kind::GridLevelSet:
            break;
    }
    throw UnsupportedError("grid level set seeds have no local parametrization");
}

Vector base_chart_point(const BaseManifold& base, const Vector& params) {
    if (base.kind() == BaseManifold::Kind::EuclideanFlat) return params;
    const double lon = params(0), lat = params(1);
    Vector p(3);
    p << base.radius() * std::cos(lat) * std::cos(lon),
        base.radius() * std::cos(lat) * std::sin(lon), base.radius() * std::sin(lat);
    return p;
}

std::vector<Vector> base_chart_tangents(const BaseManifold& base, const Vector& params) {
    if (base.kind() == BaseManifold::Kind::EuclideanFlat)
        return base.tangent_basis(params);
    const double lon = params(0), lat = params(1), r = base.radius();
    Vector du(3), dv(3);
    du << -r * std::cos(lat) * std::sin(lon), r * std::cos(lat) * std::cos(lon), 0.0;
    dv << -r * std::sin(lat) * std::cos(lon), -r * std::sin(lat) * std::sin(lon),
        r * std::cos(lat);
    return {du, dv};
}

}  // namespace detail

}  // namespace cahs
