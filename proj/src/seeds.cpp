#include "cahs/seeds.hpp"

#include <cmath>

#include "cahs/errors.hpp"

namespace cahs {

namespace {

constexpr double kOnSurfaceTol = 1e-12;

void check_unit(const Vector& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > 1e-10)
        throw InvalidConstantError(std::string(what) + " must be a unit vector");
}

}  // namespace

SeedHypersurface SeedHypersurface::hyperplane(Vector normal, double offset, int orientation) {
    check_unit(normal, "hyperplane normal");
    return SeedHypersurface(Kind::Hyperplane, orientation >= 0 ? +1 : -1,
                            HyperplaneSeed{std::move(normal), offset});
}

SeedHypersurface SeedHypersurface::sphere_shell(Vector center, double radius, int orientation) {
    if (!(radius > 0.0)) throw InvalidConstantError("sphere shell radius must be positive");
    return SeedHypersurface(Kind::SphereShell, orientation >= 0 ? +1 : -1,
                            SphereShellSeed{std::move(center), radius});
}

SeedHypersurface SeedHypersurface::spherical_curve(std::vector<Eigen::Vector3d> samples,
                                                   double sphere_radius, int orientation) {
    if (samples.size() < 8) throw InvalidConstantError("spherical curve needs >= 8 samples");
    if (!(sphere_radius > 0.0)) throw InvalidConstantError("sphere radius must be positive");
    for (const auto& s : samples)
        if (std::abs(s.norm() - sphere_radius) > kOnSurfaceTol * std::max(1.0, sphere_radius))
            throw InvalidConstantError("spherical curve sample off the sphere");
    // Uniform arc steps, wrapping around: the sample list is a closed loop.
    const std::size_t n = samples.size();
    std::vector<double> gaps(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d a = samples[i] / sphere_radius;
        const Eigen::Vector3d b = samples[(i + 1) % n] / sphere_radius;
        gaps[i] = sphere_radius * std::acos(std::clamp(a.dot(b), -1.0, 1.0));
        mean += gaps[i];
    }
    mean /= static_cast<double>(n);
    for (double g : gaps)
        if (std::abs(g - mean) > 1e-6 * mean + 1e-12)
            throw InvalidConstantError("spherical curve arc steps are not uniform");
    return SeedHypersurface(Kind::SphericalCurve, orientation >= 0 ? +1 : -1,
                            SphericalCurveSeed{std::move(samples), sphere_radius});
}

SeedHypersurface SeedHypersurface::grid_level_set(GridMask mask) {
    if (!mask.any()) throw InvalidConstantError("grid level set seed mask is empty");
    return SeedHypersurface(Kind::GridLevelSet, +1, GridLevelSetSeed{std::move(mask)});
}

namespace {

DistanceResult hyperplane_distance(const HyperplaneSeed& seed, int orientation, const Vector& p) {
    DistanceResult r;
    r.d = orientation * (seed.normal.dot(p) - seed.offset);
    r.grad = orientation * seed.normal;
    return r;
}

DistanceResult sphere_shell_distance(const SphereShellSeed& seed, int orientation,
                                     const Vector& p) {
    const Vector diff = p - seed.center;
    const double len = diff.norm();
    if (len < 1e-14 * std::max(1.0, seed.radius))
        throw SingularPointError("distance gradient undefined at the shell center");
    DistanceResult r;
    r.d = orientation * (len - seed.radius);
    r.grad = orientation * (diff / len);
    return r;
}

// Distance on the sphere to the piecewise-geodesic interpolant of the curve
// samples. Each slerp segment admits a closed-form nearest point: along the
// arc c(s) = cos(s) A + sin(s) B the inner product with q is R cos(s - phi),
// maximized at s = clamp(phi, 0, gap).
DistanceResult spherical_curve_distance(const SphericalCurveSeed& seed, int orientation,
                                        const Vector& p) {
    const double r = seed.sphere_radius;
    const Eigen::Vector3d q = Eigen::Vector3d(p(0), p(1), p(2)) / r;
    const std::size_t n = seed.samples.size();

    double best_cos = -2.0;
    Eigen::Vector3d best_point = seed.samples[0] / r;
    Eigen::Vector3d best_tangent = Eigen::Vector3d::Zero();

    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d a = seed.samples[i] / r;
        const Eigen::Vector3d b = seed.samples[(i + 1) % n] / r;
        const double cg = std::clamp(a.dot(b), -1.0, 1.0);
        const double gap = std::acos(cg);
        if (gap < 1e-15) continue;
        const Eigen::Vector3d B = (b - cg * a) / std::sin(gap);
        const double qa = q.dot(a), qb = q.dot(B);
        const double s = std::clamp(std::atan2(qb, qa), 0.0, gap);
        const Eigen::Vector3d c = std::cos(s) * a + std::sin(s) * B;
        const double cq = q.dot(c);
        if (cq > best_cos) {
            best_cos = cq;
            best_point = c;
            best_tangent = -std::sin(s) * a + std::cos(s) * B;
        }
    }

    const double cosang = std::clamp(best_cos, -1.0, 1.0);
    // atan2 keeps full precision for small angles, unlike acos.
    const double ang = std::atan2(q.cross(best_point).norm(), cosang);
    if (ang > M_PI - 1e-8)
        throw SingularPointError("query point is antipodal to the spherical curve");

    const Eigen::Vector3d eta = best_point.cross(best_tangent).normalized();
    DistanceResult out;
    out.grad = Vector(3);
    if (ang < 1e-9) {
        // On the curve: one-sided limit, gradient along the curve normal.
        out.d = 0.0;
        out.grad << eta(0), eta(1), eta(2);
        out.grad *= orientation;
        return out;
    }
    const int side = q.dot(eta) >= 0.0 ? +1 : -1;
    Eigen::Vector3d g = -(best_point - cosang * q) / std::sin(ang);
    g *= side * orientation;
    out.d = orientation * side * r * ang;
    out.grad << g(0), g(1), g(2);
    return out;
}

}  // namespace

double distance_value(const SeedHypersurface& seed, const BaseManifold& base, const Vector& p) {
    switch (seed.kind()) {
        case SeedHypersurface::Kind::SphereShell: {
            const auto& data = seed.sphere_shell_data();
            return seed.orientation() * ((p - data.center).norm() - data.radius);
        }
        case SeedHypersurface::Kind::SphericalCurve: {
            const auto& data = seed.spherical_curve_data();
            const Eigen::Vector3d q = Eigen::Vector3d(p(0), p(1), p(2)).normalized();
            double best = -2.0;
            Eigen::Vector3d best_point = data.samples[0] / data.sphere_radius;
            Eigen::Vector3d best_eta = Eigen::Vector3d::UnitZ();
            const std::size_t n = data.samples.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Eigen::Vector3d a = data.samples[i] / data.sphere_radius;
                const Eigen::Vector3d b = data.samples[(i + 1) % n] / data.sphere_radius;
                const double cg = std::clamp(a.dot(b), -1.0, 1.0);
                const double gap = std::acos(cg);
                if (gap < 1e-15) continue;
                const Eigen::Vector3d B = (b - cg * a) / std::sin(gap);
                const double s = std::clamp(std::atan2(q.dot(B), q.dot(a)), 0.0, gap);
                const Eigen::Vector3d c = std::cos(s) * a + std::sin(s) * B;
                if (q.dot(c) > best) {
                    best = q.dot(c);
                    best_point = c;
                    best_eta = c.cross(-std::sin(s) * a + std::cos(s) * B);
                }
            }
            const double ang = std::atan2(q.cross(best_point).norm(), std::clamp(best, -1.0, 1.0));
            const int side = q.dot(best_eta) >= 0.0 ? +1 : -1;
            return seed.orientation() * side * data.sphere_radius * ang;
        }
        default:
            return distance_analytic(seed, base, p).d;
    }
}

DistanceResult distance_analytic(const SeedHypersurface& seed, const BaseManifold& base,
                                 const Vector& p) {
    switch (seed.kind()) {
        case SeedHypersurface::Kind::Hyperplane:
            if (base.kind() != BaseManifold::Kind::EuclideanFlat)
                throw UnsupportedError("hyperplane seeds live in flat bases");
            return hyperplane_distance(seed.hyperplane_data(), seed.orientation(), p);
        case SeedHypersurface::Kind::SphereShell:
            if (base.kind() != BaseManifold::Kind::EuclideanFlat)
                throw UnsupportedError("sphere shell seeds live in flat bases");
            return sphere_shell_distance(seed.sphere_shell_data(), seed.orientation(), p);
        case SeedHypersurface::Kind::SphericalCurve: {
            if (base.kind() != BaseManifold::Kind::RoundSphere2)
                throw UnsupportedError("spherical curve seeds live on round spheres");
            const auto& data = seed.spherical_curve_data();
            if (std::abs(base.radius() - data.sphere_radius) > 1e-12 * std::max(1.0, base.radius()))
                throw UnsupportedError("curve sphere radius does not match the base manifold");
            if (!base.contains(p, 1e-9))
                throw DomainError("query point is not on the base sphere");
            return spherical_curve_distance(data, seed.orientation(), p);
        }
        case SeedHypersurface::Kind::GridLevelSet:
            throw UnsupportedError("grid level set seeds have no analytic distance");
    }
    throw Error("unreachable seed kind");
}

}  // namespace cahs
