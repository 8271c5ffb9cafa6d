#include <cmath>
#include <cstdio>
#include <fstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cahs/errors.hpp"
#include "cahs/numeric.hpp"
#include "surface_internal.hpp"

namespace cahs {

CAHypersurface::CAHypersurface(Variant v, WarpedProduct ambient, Data data)
    : variant_(v), ambient_(std::make_shared<WarpedProduct>(std::move(ambient))),
      data_(std::make_shared<Data>(std::move(data))) {}

CAHypersurface CAHypersurface::graph(WarpedProduct ambient, TransnormalField field) {
    return graph(std::move(ambient), field.as_scalar_field());
}

CAHypersurface CAHypersurface::graph(WarpedProduct ambient, ScalarField field) {
    return CAHypersurface(Variant::Graph, std::move(ambient), GraphData{std::move(field)});
}

CAHypersurface CAHypersurface::cylinder(WarpedProduct ambient, SeedHypersurface seed) {
    return CAHypersurface(Variant::Cylinder, std::move(ambient), CylinderData{std::move(seed)});
}

CAHypersurface CAHypersurface::slice(WarpedProduct ambient, double t0) {
    if (!ambient.profile().domain().contains(t0))
        throw DomainError("slice level t0 outside the interval");
    return CAHypersurface(Variant::Slice, std::move(ambient), SliceData{t0});
}

CAHypersurface CAHypersurface::munteanu(double theta, SphereCurve alpha) {
    if (!(theta > 0.0) || !(theta < M_PI / 2))
        throw InvalidConstantError("constant-slope surface needs theta in (0, pi/2)");
    WarpedProduct ambient(WarpingProfile::linear_over_sin(theta),
                          BaseManifold::sphere2(std::sin(theta)));
    return CAHypersurface(Variant::Munteanu, std::move(ambient),
                          MunteanuData{theta, std::move(alpha)});
}

CAHypersurface CAHypersurface::dillen_graph(double theta, WarpingProfile profile,
                                            std::function<double(double)> g, double integral_base,
                                            double g_integral_base) {
    WarpedProduct ambient(profile, BaseManifold::euclidean(2));
    return CAHypersurface(Variant::DillenGraph, std::move(ambient),
                          DillenGraphData{theta, std::move(g), integral_base, g_integral_base});
}

CAHypersurface CAHypersurface::dillen_cylinder(double theta, WarpingProfile profile,
                                               double integral_base) {
    WarpedProduct ambient(profile, BaseManifold::euclidean(2));
    return CAHypersurface(Variant::DillenCylinder, std::move(ambient),
                          DillenCylinderData{theta, integral_base});
}

int CAHypersurface::param_dim() const {
    switch (variant_) {
        case Variant::Graph:
        case Variant::Slice:
            return ambient_->base().dimension();
        case Variant::Cylinder:
            return 1 + detail::seed_param_dim(std::get<CylinderData>(*data_).seed,
                                              ambient_->base());
        case Variant::Munteanu:
        case Variant::DillenGraph:
        case Variant::DillenCylinder:
            return 2;
    }
    return 0;
}

const ScalarField& CAHypersurface::graph_field() const {
    return std::get<GraphData>(*data_).field;
}

const SeedHypersurface& CAHypersurface::cylinder_seed() const {
    return std::get<CylinderData>(*data_).seed;
}

double CAHypersurface::slice_t0() const { return std::get<SliceData>(*data_).t0; }

AmbientPoint CAHypersurface::position(const Vector& params) const {
    if (params.size() != param_dim())
        throw InvalidConstantError("parameter vector size does not match the surface");
    const BaseManifold& base = ambient_->base();
    switch (variant_) {
        case Variant::Graph: {
            const Vector p = detail::base_chart_point(base, params);
            return {std::get<GraphData>(*data_).field.value(p), p};
        }
        case Variant::Cylinder: {
            const auto& data = std::get<CylinderData>(*data_);
            const Vector lambda = params.tail(params.size() - 1);
            return {params(0), detail::seed_point(data.seed, base, lambda)};
        }
        case Variant::Slice:
            return {std::get<SliceData>(*data_).t0, detail::base_chart_point(base, params)};
        case Variant::Munteanu: {
            const auto& data = std::get<MunteanuData>(*data_);
            const double u = params(0), v = params(1);
            if (!(u > 0.0)) throw DomainError("constant-slope surface needs u > 0");
            const double psi = std::log(u) / std::tan(data.theta);
            const Eigen::Vector3d a = data.alpha.position(v);
            const Eigen::Vector3d beta = a.cross(data.alpha.velocity(v));
            const Eigen::Vector3d phi =
                std::sin(data.theta) * (std::cos(psi) * a + std::sin(psi) * beta);
            Vector p(3);
            p << phi(0), phi(1), phi(2);
            return {u, p};
        }
        case Variant::DillenGraph: {
            const auto& data = std::get<DillenGraphData>(*data_);
            const Eigen::Vector3d r =
                dillen_parametrize(data.theta, ambient_->profile(), data.g, params(0), params(1),
                                   data.integral_base, data.g_integral_base);
            Vector p(2);
            p << r(1), r(2);
            return {r(0), p};
        }
        case Variant::DillenCylinder: {
            const auto& data = std::get<DillenCylinderData>(*data_);
            Vector p(2);
            p << dillen_cylinder_G(data.theta, ambient_->profile(), data.integral_base, params(0)),
                params(1);
            return {params(0), p};
        }
    }
    throw Error("unreachable variant");
}

std::vector<AmbientVector> CAHypersurface::tangents(const Vector& params) const {
    const BaseManifold& base = ambient_->base();
    switch (variant_) {
        case Variant::Graph: {
            const auto& field = std::get<GraphData>(*data_).field;
            const Vector p = detail::base_chart_point(base, params);
            const Vector grad = field.gradient(p);
            std::vector<AmbientVector> out;
            for (const auto& w : detail::base_chart_tangents(base, params))
                out.push_back({grad.dot(w), w});
            return out;
        }
        case Variant::Cylinder: {
            const auto& data = std::get<CylinderData>(*data_);
            const Vector lambda = params.tail(params.size() - 1);
            std::vector<AmbientVector> out{AmbientVector{1.0, Vector::Zero(base.embedding_dimension())}};
            for (const auto& w : detail::seed_tangents(data.seed, base, lambda))
                out.push_back({0.0, w});
            return out;
        }
        case Variant::Slice: {
            std::vector<AmbientVector> out;
            for (const auto& w : detail::base_chart_tangents(base, params))
                out.push_back({0.0, w});
            return out;
        }
        case Variant::Munteanu: {
            const auto& data = std::get<MunteanuData>(*data_);
            const double u = params(0), v = params(1);
            if (!(u > 0.0)) throw DomainError("constant-slope surface needs u > 0");
            const double cot = 1.0 / std::tan(data.theta);
            const double st = std::sin(data.theta);
            const double psi = cot * std::log(u);
            const Eigen::Vector3d a = data.alpha.position(v);
            const Eigen::Vector3d ap = data.alpha.velocity(v);
            const Eigen::Vector3d app = data.alpha.acceleration(v);
            const Eigen::Vector3d beta = a.cross(ap);
            const Eigen::Vector3d betap = a.cross(app);  // + ap x ap = 0
            const Eigen::Vector3d du =
                st * (cot / u) * (-std::sin(psi) * a + std::cos(psi) * beta);
            const Eigen::Vector3d dv = st * (std::cos(psi) * ap + std::sin(psi) * betap);
            Vector du_v(3), dv_v(3);
            du_v << du(0), du(1), du(2);
            dv_v << dv(0), dv(1), dv(2);
            return {AmbientVector{1.0, du_v}, AmbientVector{0.0, dv_v}};
        }
        case Variant::DillenGraph: {
            const auto& data = std::get<DillenGraphData>(*data_);
            const double u = params(0), v = params(1);
            const double st = std::sin(data.theta), ct = std::cos(data.theta);
            const double cot = ct / st;
            const double w = u * st;
            const WarpingProfile& prof = ambient_->profile();
            const double D =
                cot * integrate([&](double s) { return 1.0 / prof.rho(s); }, data.integral_base,
                                w, 1e-12);
            const double Dp = cot / prof.rho(w);
            const double gv = data.g(v);
            // The base curve must stay regular and the Fermi patch must not
            // reach its focal set.
            if (std::abs(gv) < 1e-9)
                throw InvalidConstantError("dillen parametrization needs g bounded away from 0");
            if (std::abs(D + gv) < 1e-9)
                throw SingularPointError("dillen patch hits the focal set (D + g = 0)");
            Vector du(2), dv(2);
            du << Dp * st * std::cos(v), Dp * st * std::sin(v);
            dv << -(D + gv) * std::sin(v), (D + gv) * std::cos(v);
            return {AmbientVector{st, du}, AmbientVector{0.0, dv}};
        }
        case Variant::DillenCylinder: {
            const auto& data = std::get<DillenCylinderData>(*data_);
            const double Gp = (1.0 / std::tan(data.theta)) / ambient_->profile().rho(params(0));
            Vector dt(2), dy(2);
            dt << Gp, 0.0;
            dy << 0.0, 1.0;
            return {AmbientVector{1.0, dt}, AmbientVector{0.0, dy}};
        }
    }
    throw Error("unreachable variant");
}

namespace {

/// Unit normal from the tangent span: the kernel direction of the
/// euclideanized tangent matrix, oriented toward dt (or a caller hint).
AmbientVector nullspace_normal(const WarpedProduct& ambient, const AmbientPoint& at,
                               const std::vector<AmbientVector>& tangents,
                               const AmbientVector* hint) {
    const auto basis = ambient.orthonormal_basis(at);
    const int m = static_cast<int>(basis.size());
    Eigen::MatrixXd M(static_cast<int>(tangents.size()), m);
    for (std::size_t i = 0; i < tangents.size(); ++i)
        M.row(static_cast<int>(i)) = ambient.euclidean_coords(at, tangents[i]).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    Vector n = svd.matrixV().col(m - 1);
    AmbientVector xi = ambient.from_euclidean_coords(at, n);
    double align = hint ? ambient.inner(at, xi, *hint) : xi.dt;
    if (align == 0.0) align = xi.dt != 0.0 ? xi.dt : (n(0) != 0.0 ? n(0) : 1.0);
    if (align < 0.0) xi = xi * -1.0;
    return xi;
}

}  // namespace

SurfaceSample CAHypersurface::sample(const Vector& params) const {
    return sample_with_hint(params, nullptr);
}

SurfaceSample CAHypersurface::sample_with_hint(const Vector& params,
                                               const AmbientVector* hint) const {
    SurfaceSample s;
    s.point = position(params);
    const auto tang = tangents(params);

    switch (variant_) {
        case Variant::Graph: {
            const Vector p = detail::base_chart_point(ambient_->base(), params);
            const auto res = graph_normal_and_angle(std::get<GraphData>(*data_).field, *ambient_, p);
            s.xi = res.xi;
            break;
        }
        case Variant::Cylinder: {
            const auto& data = std::get<CylinderData>(*data_);
            const auto dq = distance_analytic(data.seed, ambient_->base(), s.point.p);
            s.xi = AmbientVector{0.0, dq.grad / ambient_->profile().rho(s.point.t)};
            break;
        }
        case Variant::Slice:
            s.xi = ambient_->dt_field(s.point);
            break;
        default:
            s.xi = nullspace_normal(*ambient_, s.point, tang, hint);
    }

    const double ct = std::clamp(s.xi.dt, -1.0, 1.0);
    const AmbientVector tau = ambient_->dt_field(s.point) - ct * s.xi;
    const double st = ambient_->norm(s.point, tau);
    s.theta = std::atan2(st, ct);
    s.T_defined = st > 1e-12;
    if (s.T_defined) s.T = tau * (1.0 / st);

    // Orthonormal frame under the warped metric, T first when defined.
    std::vector<Vector> coords;
    if (s.T_defined) coords.push_back(ambient_->euclidean_coords(s.point, s.T));
    for (const auto& t : tang) coords.push_back(ambient_->euclidean_coords(s.point, t));
    std::vector<Vector> ortho;
    for (auto& c : coords) {
        Vector v = c;
        for (const auto& w : ortho) v -= w.dot(v) * w;
        const double n = v.norm();
        if (n > 1e-9) ortho.push_back(v / n);
    }
    for (const auto& v : ortho) s.frame.push_back(ambient_->from_euclidean_coords(s.point, v));
    return s;
}

ShapeEntry shape_operator_fd(const CAHypersurface& surface, const Vector& params,
                             double step_scale) {
    const WarpedProduct& ambient = surface.ambient();
    const SurfaceSample s = surface.sample(params);
    const int n = static_cast<int>(s.frame.size());

    // Parameter velocities realizing the frame directions.
    const auto tang = surface.tangents(params);
    const int m = static_cast<int>(ambient.orthonormal_basis(s.point).size());
    Eigen::MatrixXd M(m, static_cast<int>(tang.size()));
    for (std::size_t i = 0; i < tang.size(); ++i)
        M.col(static_cast<int>(i)) = ambient.euclidean_coords(s.point, tang[i]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);

    const double step0 = fd_step(params.norm()) * step_scale;

    auto columns_at_step = [&](double delta) {
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i) {
            const Vector ei = ambient.euclidean_coords(s.point, s.frame[i]);
            const Vector c = qr.solve(ei);
            SurfaceSample sp, sm;
            try {
                sp = surface.sample_with_hint(params + delta * c, &s.xi);
                sm = surface.sample_with_hint(params - delta * c, &s.xi);
            } catch (const Error& e) {
                throw StepError(std::string("finite-difference step left the domain: ") +
                                e.what());
            }
            const AmbientVector dxi = (sp.xi - sm.xi) * (1.0 / (2.0 * delta));
            const AmbientVector cov =
                ambient.covariant_derivative(s.point, s.frame[i], s.xi, dxi);
            // A_xi E_i = -(tangential part of the derivative of xi).
            AmbientVector a = cov * -1.0;
            a = a - ambient.inner(s.point, a, s.xi) * s.xi;
            for (int j = 0; j < n; ++j) A(j, i) = ambient.inner(s.point, a, s.frame[j]);
        }
        return A;
    };

    const Eigen::MatrixXd A_full = columns_at_step(step0);
    const Eigen::MatrixXd A_half = columns_at_step(0.5 * step0);
    // Central differences are O(step^2): one Richardson level.
    const Eigen::MatrixXd A = (4.0 * A_half - A_full) / 3.0;

    ShapeEntry entry;
    entry.fd_error = (A_half - A_full).cwiseAbs().maxCoeff();
    entry.asymmetry = (A - A.transpose()).cwiseAbs().maxCoeff();
    entry.matrix = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entry.matrix);
    entry.principal_curvatures = eig.eigenvalues();
    entry.mean_curvature = entry.matrix.trace();

    if (s.T_defined) {
        entry.AT_defined = true;
        const Eigen::VectorXd at = entry.matrix.col(0);  // frame[0] == T
        entry.AT_eigenvalue = at(0);
        entry.II_TT = at(0);
        const double perp = at.size() > 1 ? at.tail(at.size() - 1).norm() : 0.0;
        entry.AT_angle = at.norm() > 1e-6 ? std::asin(std::min(1.0, perp / at.norm())) : 0.0;
    }
    return entry;
}

ShapeReport shape_report(const CAHypersurface& surface, const std::vector<Vector>& params) {
    ShapeReport report;
    for (const auto& p : params) {
        ShapeEntry e = shape_operator_fd(surface, p);
        report.max_asymmetry = std::max(report.max_asymmetry, e.asymmetry);
        report.max_fd_error = std::max(report.max_fd_error, e.fd_error);
        if (e.AT_defined) report.max_AT_angle = std::max(report.max_AT_angle, e.AT_angle);
        report.max_abs_mean_curvature =
            std::max(report.max_abs_mean_curvature, std::abs(e.mean_curvature));
        report.entries.push_back(std::move(e));
    }
    return report;
}

CurveResult integral_curve_T(const CAHypersurface& surface, const Vector& start_params,
                             double arc_length, double step) {
    if (!(step > 0.0)) throw StepError("curve step must be positive");
    const WarpedProduct& ambient = surface.ambient();

    struct Node {
        Vector params;
        SurfaceSample sample;
    };

    auto velocity = [&](const Vector& params) {
        const SurfaceSample s = surface.sample(params);
        if (!s.T_defined)
            throw SingularPointError("T undefined (theta = 0) along the integral curve");
        const auto tang = surface.tangents(params);
        const int m = static_cast<int>(ambient.orthonormal_basis(s.point).size());
        Eigen::MatrixXd M(m, static_cast<int>(tang.size()));
        for (std::size_t i = 0; i < tang.size(); ++i)
            M.col(static_cast<int>(i)) = ambient.euclidean_coords(s.point, tang[i]);
        return Vector(M.colPivHouseholderQr().solve(ambient.euclidean_coords(s.point, s.T)));
    };

    CurveResult result;
    std::vector<Node> nodes;
    const int steps = static_cast<int>(std::round(arc_length / step));
    Vector params = start_params;
    if (!surface.sample(params).T_defined)
        throw SingularPointError("integral curve start has theta = 0, T undefined");
    try {
        nodes.push_back({params, surface.sample(params)});
        for (int k = 0; k < steps; ++k) {
            const Vector k1 = velocity(params);
            const Vector k2 = velocity(params + 0.5 * step * k1);
            const Vector k3 = velocity(params + 0.5 * step * k2);
            const Vector k4 = velocity(params + step * k3);
            params = params + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            nodes.push_back({params, surface.sample(params)});
        }
    } catch (const Error&) {
        result.truncated = true;
    }

    // Acceleration from centered differences of the stored unit velocities,
    // corrected by the connection terms.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& node = nodes[i];
        CurveSample cs;
        cs.s = static_cast<double>(i) * step;
        cs.point = node.sample.point;
        cs.theta = node.sample.theta;
        const double rho = ambient.profile().rho(cs.point.t);
        const double rho_p = ambient.profile().rho_prime(cs.point.t);
        cs.expected_normal_accel = -std::cos(node.sample.theta) * rho_p / rho;
        if (i > 0 && i + 1 < nodes.size()) {
            const AmbientVector dV =
                (nodes[i + 1].sample.T - nodes[i - 1].sample.T) * (1.0 / (2.0 * step));
            const AmbientVector acc =
                ambient.covariant_derivative(cs.point, node.sample.T, node.sample.T, dV);
            const double normal_part = ambient.inner(cs.point, acc, node.sample.xi);
            const AmbientVector tangential = acc - normal_part * node.sample.xi;
            cs.normal_accel = normal_part;
            cs.tangential_residual = ambient.norm(cs.point, tangential);
            cs.full_accel = ambient.norm(cs.point, acc);
            result.max_tangential_residual =
                std::max(result.max_tangential_residual, cs.tangential_residual);
            result.max_normal_mismatch =
                std::max(result.max_normal_mismatch,
                         std::abs(cs.normal_accel - cs.expected_normal_accel));
            result.max_full_accel = std::max(result.max_full_accel, cs.full_accel);
        }
        result.samples.push_back(std::move(cs));
    }
    return result;
}

void export_curve_csv(const CurveResult& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write curve CSV: " + path);
    out << "s,t";
    const int pdim = curve.samples.empty() ? 0 : static_cast<int>(curve.samples[0].point.p.size());
    for (int i = 0; i < pdim; ++i) out << ",p" << i;
    out << ",theta,tangential_residual,normal_accel,expected_normal_accel,full_accel\n";
    char buf[64];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const auto& s : curve.samples) {
        emit(s.s);
        out << ',';
        emit(s.point.t);
        for (int i = 0; i < pdim; ++i) {
            out << ',';
            emit(s.point.p(i));
        }
        out << ',';
        emit(s.theta);
        out << ',';
        emit(s.tangential_residual);
        out << ',';
        emit(s.normal_accel);
        out << ',';
        emit(s.expected_normal_accel);
        out << ',';
        emit(s.full_accel);
        out << '\n';
    }
}

}  // namespace cahs
