#include "cahs/base_manifold.hpp"

#include <cmath>

#include "cahs/errors.hpp"

namespace cahs {

BaseManifold BaseManifold::euclidean(int n) {
    if (n < 1) throw InvalidConstantError("flat base manifold needs dimension >= 1");
    return BaseManifold(Kind::EuclideanFlat, n, n, 0.0);
}

BaseManifold BaseManifold::sphere2(double radius) {
    if (!(radius > 0.0)) throw InvalidConstantError("sphere radius must be positive");
    return BaseManifold(Kind::RoundSphere2, 2, 3, radius);
}

Vector BaseManifold::project_tangent(const Vector& p, const Vector& x) const {
    if (kind_ == Kind::EuclideanFlat) return x;
    const Vector n = p / p.norm();
    return x - n.dot(x) * n;
}

bool BaseManifold::contains(const Vector& p, double tol) const {
    if (p.size() != embedding_dimension_) return false;
    if (kind_ == Kind::EuclideanFlat) return true;
    return std::abs(p.norm() - radius_) <= tol * std::max(1.0, radius_);
}

std::vector<Vector> BaseManifold::tangent_basis(const Vector& p) const {
    std::vector<Vector> basis;
    if (kind_ == Kind::EuclideanFlat) {
        basis.reserve(dimension_);
        for (int i = 0; i < dimension_; ++i) {
            Vector e = Vector::Zero(dimension_);
            e(i) = 1.0;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    const Vector n = p / p.norm();
    // Pick the coordinate axis least aligned with n to seed Gram-Schmidt.
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n(i)) < std::abs(n(k))) k = i;
    Vector a = Vector::Zero(3);
    a(k) = 1.0;
    Vector e1 = a - n.dot(a) * n;
    e1 /= e1.norm();
    Vector e2(3);
    e2 << n(1) * e1(2) - n(2) * e1(1), n(2) * e1(0) - n(0) * e1(2), n(0) * e1(1) - n(1) * e1(0);
    basis.push_back(std::move(e1));
    basis.push_back(std::move(e2));
    return basis;
}

}  // namespace cahs
