#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cahs/base_manifold.hpp"

namespace cahs {

/// Open interval; either end may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t > lo && t < hi; }
    bool contains_closed(double t) const { return t >= lo && t <= hi; }
    double length() const { return hi - lo; }
};

/// Warping function rho: I -> R+, with derivative. Named kinds carry closed
/// forms downstream (integrals, inverses); Custom evaluates callables or a
/// Hermite spline loaded from CSV samples.
class WarpingProfile {
public:
    enum class Kind { Constant, Reciprocal, LinearOverSin, Custom };

    using Fn = std::function<double(double)>;

    static WarpingProfile constant(double value, Interval domain = Interval{});
    static WarpingProfile reciprocal(Interval domain = Interval{0.0, std::numeric_limits<double>::infinity()});
    static WarpingProfile linear_over_sin(double theta,
                                          Interval domain = Interval{0.0, std::numeric_limits<double>::infinity()});
    static WarpingProfile custom(Interval domain, Fn rho, Fn rho_prime);
    /// Columns t, rho(t), rho'(t); interpolated by a cubic Hermite spline so
    /// the derivative callable is exactly consistent with the value callable.
    static WarpingProfile from_samples(const std::vector<double>& t, const std::vector<double>& rho,
                                       const std::vector<double>& rho_prime);
    static WarpingProfile from_csv(const std::string& path);

    double rho(double t) const;
    double rho_prime(double t) const;

    Kind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    /// Parameter of the named kinds (constant value, or theta).
    double parameter() const { return param_; }

private:
    WarpingProfile(Kind kind, Interval domain, Fn rho, Fn rho_prime, double param);
    void check_domain(double t) const;
    void validate() const;

    Kind kind_;
    Interval domain_;
    Fn rho_;
    Fn rho_prime_;
    double param_ = 0.0;
};

struct AmbientPoint {
    double t = 0.0;
    Vector p;
};

/// Tangent vector of the product at some ambient point: dt-component along
/// the interval direction plus a base-manifold tangent vector. The point it
/// is attached to travels with the operations, not the vector.
struct AmbientVector {
    double dt = 0.0;
    Vector pv;

    AmbientVector() = default;
    AmbientVector(double dt_component, Vector base_component)
        : dt(dt_component), pv(std::move(base_component)) {}

    AmbientVector operator+(const AmbientVector& o) const { return {dt + o.dt, pv + o.pv}; }
    AmbientVector operator-(const AmbientVector& o) const { return {dt - o.dt, pv - o.pv}; }
    AmbientVector operator*(double s) const { return {dt * s, pv * s}; }
};

inline AmbientVector operator*(double s, const AmbientVector& v) { return v * s; }

/// The warped product I x_rho P^n.
class WarpedProduct {
public:
    WarpedProduct(WarpingProfile profile, BaseManifold base);

    const WarpingProfile& profile() const { return profile_; }
    const BaseManifold& base() const { return base_; }
    int ambient_dimension() const { return 1 + base_.dimension(); }

    AmbientVector dt_field(const AmbientPoint&) const {
        return {1.0, Vector::Zero(base_.embedding_dimension())};
    }
    AmbientVector zero_vector() const { return {0.0, Vector::Zero(base_.embedding_dimension())}; }

    /// Warped metric <(a,X),(b,Y)> = ab + rho(t)^2 <X,Y>_P.
    double inner(const AmbientPoint& at, const AmbientVector& u, const AmbientVector& v) const;
    double norm(const AmbientPoint& at, const AmbientVector& u) const;
    AmbientVector normalized(const AmbientPoint& at, const AmbientVector& u) const;

    /// Ambient derivative of dt along w: (rho'/rho) * (base part of w);
    /// the dt-component of w contributes nothing.
    AmbientVector dt_derivative(const AmbientPoint& at, const AmbientVector& w) const;

    /// Covariant derivative along a curve with velocity `vel` of a field
    /// whose components and componentwise derivative at the point are
    /// `value` and `dvalue`.
    AmbientVector covariant_derivative(const AmbientPoint& at, const AmbientVector& vel,
                                       const AmbientVector& value, const AmbientVector& dvalue) const;

    /// Orthonormal basis of the ambient tangent space at `at`, dt first.
    std::vector<AmbientVector> orthonormal_basis(const AmbientPoint& at) const;

    /// Coordinates of v in an orthonormal frame: (dt, rho * base coords).
    Vector euclidean_coords(const AmbientPoint& at, const AmbientVector& v) const;
    AmbientVector from_euclidean_coords(const AmbientPoint& at, const Vector& coords) const;

private:
    WarpingProfile profile_;
    BaseManifold base_;
};

/// h^{-1}(s) = integral from s0 to s of d sigma / (C rho(sigma)); closed form
/// for the named kinds, adaptive quadrature (abs tol 1e-12) otherwise.
double reciprocal_rho_integral(const WarpingProfile& profile, double C, double s0, double s);

/// Quadrature-only path, for cross-checking the closed forms.
double reciprocal_rho_integral_quadrature(const WarpingProfile& profile, double C, double s0,
                                          double s);

}  // namespace cahs
