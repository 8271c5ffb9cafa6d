#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cahs {

using Vector = Eigen::VectorXd;

/// Base manifold P of the product: flat Euclidean space of any dimension, or
/// a round 2-sphere of given radius embedded in R^3. Tangent vectors are held
/// in embedding coordinates in both cases, so the base metric is the plain
/// dot product.
class BaseManifold {
public:
    enum class Kind { EuclideanFlat, RoundSphere2 };

    static BaseManifold euclidean(int n);
    static BaseManifold sphere2(double radius);

    Kind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    /// Size of the coordinate vectors (n for flat, 3 for the sphere).
    int embedding_dimension() const { return embedding_dimension_; }
    double radius() const { return radius_; }

    double metric(const Vector& x, const Vector& y) const { return x.dot(y); }
    double norm(const Vector& x) const { return x.norm(); }

    /// Orthogonal projection onto the tangent space at p (identity for flat).
    Vector project_tangent(const Vector& p, const Vector& x) const;

    /// True when p lies on the manifold (always, for flat).
    bool contains(const Vector& p, double tol = 1e-9) const;

    /// Orthonormal basis of the tangent space at p.
    std::vector<Vector> tangent_basis(const Vector& p) const;

private:
    BaseManifold(Kind k, int dim, int embed, double r)
        : kind_(k), dimension_(dim), embedding_dimension_(embed), radius_(r) {}

    Kind kind_;
    int dimension_;
    int embedding_dimension_;
    double radius_;
};

}  // namespace cahs
