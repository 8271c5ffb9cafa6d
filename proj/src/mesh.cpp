#include "cahs/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cahs/errors.hpp"

namespace cahs {

namespace {

Eigen::Vector3d map_position(const WarpedProduct& ambient, const AmbientPoint& pt) {
    if (ambient.base().kind() == BaseManifold::Kind::RoundSphere2)
        return pt.t * Eigen::Vector3d(pt.p(0), pt.p(1), pt.p(2));
    if (ambient.base().dimension() != 2)
        throw UnsupportedError("mesh export needs a two-dimensional surface");
    return {pt.p(0), pt.p(1), pt.t};
}

Eigen::Vector3d map_normal(const WarpedProduct& ambient, const AmbientPoint& pt,
                           const AmbientVector& xi) {
    Eigen::Vector3d n;
    if (ambient.base().kind() == BaseManifold::Kind::RoundSphere2) {
        // Pushforward of (a, X) under (t,p) -> tp is a p + t X.
        n = xi.dt * Eigen::Vector3d(pt.p(0), pt.p(1), pt.p(2)) +
            pt.t * Eigen::Vector3d(xi.pv(0), xi.pv(1), xi.pv(2));
    } else {
        n = {xi.pv(0), xi.pv(1), xi.dt};
    }
    const double len = n.norm();
    return len > 0 ? Eigen::Vector3d(n / len) : n;
}

}  // namespace

TriangleMesh export_mesh(const CAHypersurface& surface, const Vector& lo, const Vector& hi,
                         int nu, int nv) {
    if (surface.param_dim() != 2)
        throw UnsupportedError("mesh export needs a two-parameter surface");
    if (nu < 2 || nv < 2) throw InvalidConstantError("mesh resolution must be at least 2x2");

    TriangleMesh mesh;
    const int count = nu * nv;
    mesh.positions.reserve(count);
    std::vector<bool> ok(count, false);

    double theta_sum = 0.0;
    int theta_count = 0;
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            Vector params(2);
            params << lo(0) + (hi(0) - lo(0)) * i / (nu - 1),
                lo(1) + (hi(1) - lo(1)) * j / (nv - 1);
            try {
                const SurfaceSample s = surface.sample(params);
                mesh.positions.push_back(map_position(surface.ambient(), s.point));
                mesh.normals.push_back(map_normal(surface.ambient(), s.point, s.xi));
                mesh.theta.push_back(s.theta);
                mesh.f_value.push_back(s.point.t);
                ok[j * nu + i] = true;
                theta_sum += s.theta;
                ++theta_count;
            } catch (const Error&) {
                mesh.positions.emplace_back(0, 0, 0);
                mesh.normals.emplace_back(0, 0, 1);
                mesh.theta.push_back(0.0);
                mesh.f_value.push_back(0.0);
            }
        }

    const double theta_mean = theta_count ? theta_sum / theta_count : 0.0;
    mesh.residual.reserve(count);
    for (int k = 0; k < count; ++k) mesh.residual.push_back(mesh.theta[k] - theta_mean);

    double scale = 0.0;
    for (const auto& p : mesh.positions) scale = std::max(scale, p.norm());
    const double area_floor = 1e-14 * std::max(1.0, scale * scale);

    auto emit = [&](int a, int b, int c) {
        if (!ok[a] || !ok[b] || !ok[c]) {
            ++mesh.degenerate_skipped;
            return;
        }
        const Eigen::Vector3d e1 = mesh.positions[b] - mesh.positions[a];
        const Eigen::Vector3d e2 = mesh.positions[c] - mesh.positions[a];
        if (0.5 * e1.cross(e2).norm() < area_floor) {
            ++mesh.degenerate_skipped;
            return;
        }
        mesh.triangles.push_back({a, b, c});
    };
    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const int a = j * nu + i, b = j * nu + i + 1;
            const int c = (j + 1) * nu + i, d = (j + 1) * nu + i + 1;
            emit(a, b, d);
            emit(a, d, c);
        }
    return mesh;
}

void TriangleMesh::write_obj(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write OBJ: " + path);
    char buf[256];
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", positions[i](0), positions[i](1),
                      positions[i](2));
        out << buf;
        std::snprintf(buf, sizeof buf, "vn %.17g %.17g %.17g\n", normals[i](0), normals[i](1),
                      normals[i](2));
        out << buf;
    }
    for (const auto& t : triangles) {
        std::snprintf(buf, sizeof buf, "f %d//%d %d//%d %d//%d\n", t[0] + 1, t[0] + 1, t[1] + 1,
                      t[1] + 1, t[2] + 1, t[2] + 1);
        out << buf;
    }
}

void TriangleMesh::write_ply(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write PLY: " + path);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << positions.size() << "\n";
    for (const char* p : {"x", "y", "z", "nx", "ny", "nz"})
        out << "property double " << p << "\n";
    out << "property double theta\nproperty double f\nproperty double residual\n";
    out << "element face " << triangles.size() << "\n";
    out << "property list uchar int vertex_indices\nend_header\n";
    char buf[512];
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                      positions[i](0), positions[i](1), positions[i](2), normals[i](0),
                      normals[i](1), normals[i](2), theta[i], f_value[i], residual[i]);
        out << buf;
    }
    for (const auto& t : triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
}

}  // namespace cahs
