#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cahs/seeds.hpp"
#include "cahs/transnormal.hpp"
#include "cahs/warp.hpp"

namespace cahs {

/// Unit-speed curve on the unit sphere with two derivatives; evaluation is
/// exact for great circles and piecewise-slerp for sampled curves.
class SphereCurve {
public:
    /// Great circle through a in the direction of b (orthonormalized).
    static SphereCurve great_circle(Eigen::Vector3d a, Eigen::Vector3d b);
    /// Piecewise-geodesic interpolation of a sampled seed curve (rescaled to
    /// the unit sphere; parameter is arc length on the unit sphere).
    static SphereCurve from_seed(const SphericalCurveSeed& seed);

    Eigen::Vector3d position(double v) const { return pos_(v); }
    Eigen::Vector3d velocity(double v) const { return vel_(v); }
    Eigen::Vector3d acceleration(double v) const { return acc_(v); }

    /// Uniform samples scaled to a sphere of the given radius, ready to seed
    /// a distance field.
    std::vector<Eigen::Vector3d> sample_scaled(double radius, int count) const;

private:
    using Fn3 = std::function<Eigen::Vector3d(double)>;
    SphereCurve(Fn3 pos, Fn3 vel, Fn3 acc, double period)
        : pos_(std::move(pos)), vel_(std::move(vel)), acc_(std::move(acc)), period_(period) {}
    Fn3 pos_, vel_, acc_;
    double period_;
};

/// One evaluated surface point with its extrinsic data. The decomposition
/// dt = sin(theta) T + cos(theta) xi holds at every sample; frame[0] is T
/// whenever T is defined (theta > 0).
struct SurfaceSample {
    AmbientPoint point;
    AmbientVector xi;
    double theta = 0.0;
    bool T_defined = false;
    AmbientVector T;
    std::vector<AmbientVector> frame;
};

struct ShapeEntry {
    Eigen::MatrixXd matrix;  // shape operator in the sample frame, symmetrized
    Eigen::VectorXd principal_curvatures;
    double mean_curvature = 0.0;
    double asymmetry = 0.0;  // max |A_ij - A_ji| before symmetrization
    double fd_error = 0.0;   // Richardson discrepancy between step and step/2
    // Canonical-direction diagnostics (theta > 0 only):
    double AT_angle = 0.0;       // angle between A_xi T and the T line
    double AT_eigenvalue = 0.0;  // <A_xi T, T>
    double II_TT = 0.0;          // normal component of II(T,T), equals AT_eigenvalue
    bool AT_defined = false;
};

struct ShapeReport {
    std::vector<ShapeEntry> entries;
    double max_asymmetry = 0.0;
    double max_fd_error = 0.0;
    double max_AT_angle = 0.0;
    double max_abs_mean_curvature = 0.0;
};

/// Constant angle hypersurface candidates: graphs of scalar fields over the
/// base, cylinders over seeds, slices, and the two published explicit
/// parametrizations. Everything is driven through a parameter vector whose
/// meaning is variant-specific (base coordinates for graphs and slices,
/// (t, seed parameters) for cylinders, (u, v) for the explicit models).
class CAHypersurface {
public:
    enum class Variant { Graph, Cylinder, Slice, Munteanu, DillenGraph, DillenCylinder };

    static CAHypersurface graph(WarpedProduct ambient, TransnormalField field);
    static CAHypersurface graph(WarpedProduct ambient, ScalarField field);
    static CAHypersurface cylinder(WarpedProduct ambient, SeedHypersurface seed);
    static CAHypersurface slice(WarpedProduct ambient, double t0);
    /// Ambient (0,inf) x_{t/sin(theta)} S^2(sin(theta)); alpha on the unit
    /// sphere, rescaled internally.
    static CAHypersurface munteanu(double theta, SphereCurve alpha);
    static CAHypersurface dillen_graph(double theta, WarpingProfile profile,
                                       std::function<double(double)> g, double integral_base,
                                       double g_integral_base = 0.0);
    static CAHypersurface dillen_cylinder(double theta, WarpingProfile profile,
                                          double integral_base);

    Variant variant() const { return variant_; }
    const WarpedProduct& ambient() const { return *ambient_; }
    int param_dim() const;

    AmbientPoint position(const Vector& params) const;
    /// Coordinate tangents d(position)/d(param_i).
    std::vector<AmbientVector> tangents(const Vector& params) const;
    SurfaceSample sample(const Vector& params) const;

    /// Variant payload accessors used by the verification drivers.
    const ScalarField& graph_field() const;
    const SeedHypersurface& cylinder_seed() const;
    double slice_t0() const;

private:
    struct GraphData {
        ScalarField field;
    };
    struct CylinderData {
        SeedHypersurface seed;
    };
    struct SliceData {
        double t0;
    };
    struct MunteanuData {
        double theta;
        SphereCurve alpha;
    };
    struct DillenGraphData {
        double theta;
        std::function<double(double)> g;
        double integral_base;
        double g_integral_base;
    };
    struct DillenCylinderData {
        double theta;
        double integral_base;
    };
    using Data = std::variant<GraphData, CylinderData, SliceData, MunteanuData, DillenGraphData,
                              DillenCylinderData>;

    CAHypersurface(Variant v, WarpedProduct ambient, Data data);
    SurfaceSample sample_with_hint(const Vector& params, const AmbientVector* hint) const;

    Variant variant_;
    std::shared_ptr<const WarpedProduct> ambient_;
    std::shared_ptr<const Data> data_;

    friend ShapeEntry shape_operator_fd(const CAHypersurface&, const Vector&, double);
};

/// Normal and angle of the graph of f at base point p: xi is the normalized
/// (rho(f)^2, -grad f) lift, theta = arccos(rho(f)/sqrt(rho(f)^2+|grad f|^2)).
struct AngleResult {
    AmbientVector xi;
    double theta;
    AmbientPoint point;
};
AngleResult graph_normal_and_angle(const ScalarField& f, const WarpedProduct& ambient,
                                   const Vector& p);

/// Sample of the cylinder I x L at (t, q), q a point on L; theta is exactly
/// pi/2 and T = dt.
SurfaceSample cylinder_sample(const WarpedProduct& ambient, const SeedHypersurface& seed, double t,
                              const Vector& q);

/// Explicit constant-slope parametrization in R^3; the braces of the formula
/// give a point on S^2(sin(theta)) so |r(u,v)| = u sin(theta).
Eigen::Vector3d munteanu_parametrize(double theta, const SphereCurve& alpha, double u, double v);

/// Explicit parametrization in I x R^2, returned as (t, x, y).
Eigen::Vector3d dillen_parametrize(double theta, const WarpingProfile& profile,
                                   const std::function<double(double)>& g, double u, double v,
                                   double integral_base, double g_integral_base = 0.0);

/// G(t) = cot(theta) * integral^t d sigma / rho(sigma), the cylinder profile
/// x - G(t) = 0; equals the reciprocal rho integral with C = tan(theta).
double dillen_cylinder_G(double theta, const WarpingProfile& profile, double integral_base,
                         double t);

/// Shape operator at a sample: columns assembled from central differences of
/// the unit normal along the frame directions, corrected by the warped
/// connection terms, Richardson-extrapolated, then symmetrized.
ShapeEntry shape_operator_fd(const CAHypersurface& surface, const Vector& params,
                             double step_scale = 1.0);

ShapeReport shape_report(const CAHypersurface& surface, const std::vector<Vector>& params);

struct CurveSample {
    double s = 0.0;
    AmbientPoint point;
    double theta = 0.0;
    double tangential_residual = 0.0;
    double normal_accel = 0.0;
    double expected_normal_accel = 0.0;
    double full_accel = 0.0;
};

struct CurveResult {
    std::vector<CurveSample> samples;
    bool truncated = false;
    double max_tangential_residual = 0.0;
    double max_normal_mismatch = 0.0;
    double max_full_accel = 0.0;
};

/// Integrate p' = T(p) by RK4 in parameter space (so the curve stays on the
/// surface by construction) and report the acceleration split into the
/// tangential part (geodesic residual, should vanish) and the normal part
/// (II(T,T), should equal -cos(theta) rho'/rho).
CurveResult integral_curve_T(const CAHypersurface& surface, const Vector& start_params,
                             double arc_length, double step);

void export_curve_csv(const CurveResult& curve, const std::string& path);

}  // namespace cahs
