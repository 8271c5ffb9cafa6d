#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cahs/distance_field.hpp"
#include "cahs/warp.hpp"

namespace cahs {

/// Scalar field over the base manifold with its gradient; the shape every
/// graph-of-f operation consumes.
struct ScalarField {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
};

/// Builds the solution f = h o d of |grad f| = C * rho(f), where h inverts
/// r = integral_{s0}^{s} d sigma / (C rho(sigma)). The attainable r-interval
/// is fixed at construction; h is tabulated and inverted by monotone cubic
/// seeding plus Newton polish against incremental quadrature.
class TransnormalBuilder {
public:
    static TransnormalBuilder from_theta(WarpingProfile profile, double theta, double s0);
    static TransnormalBuilder from_constant(WarpingProfile profile, double C, double s0);

    const WarpingProfile& profile() const { return profile_; }
    double constant() const { return C_; }
    double theta() const { return theta_; }
    double s0() const { return s0_; }

    double attainable_lo() const { return range_lo_; }
    double attainable_hi() const { return range_hi_; }
    bool in_attainable_range(double r) const { return r > range_lo_ && r < range_hi_; }

    /// s = h(r): |h^{-1}(s) - r| <= 1e-10. Outside the attainable interval a
    /// RangeError reporting that interval is thrown.
    double invert_h(double r) const;

    /// Slow cross-check: plain bisection on full-interval quadrature, no
    /// closed forms, no table.
    double invert_h_oracle(double r) const;

    /// Table export, columns r,s.
    void export_h_table_csv(const std::string& path) const;
    const std::vector<double>& table_s() const { return table_s_; }
    const std::vector<double>& table_r() const { return table_r_; }

private:
    TransnormalBuilder(WarpingProfile profile, double C, double theta, double s0);
    void probe_range();
    void build_table();
    double h_inverse_near(double s, int hint) const;

    WarpingProfile profile_;
    double C_;
    double theta_;
    double s0_;
    double range_lo_, range_hi_;
    std::vector<double> table_s_, table_r_;
};

/// f = h o d over a distance field.
class TransnormalField {
public:
    TransnormalField(TransnormalBuilder builder, DistanceField distance);

    const TransnormalBuilder& builder() const { return *builder_; }
    const DistanceField& distance() const { return *distance_; }

    double value(const Vector& p) const;
    /// (h' o d) grad d = C rho(f) grad d.
    Vector gradient(const Vector& p) const;

    ScalarField as_scalar_field() const;

private:
    std::shared_ptr<const TransnormalBuilder> builder_;
    std::shared_ptr<const DistanceField> distance_;
};

struct ResidualStats {
    double max_rel = 0.0;
    double mean_rel = 0.0;
    std::size_t count = 0;
};

/// Relative residual | |grad f| - C rho(f) | / (C rho(f)) over the samples.
/// Pure measurement; the field is never touched.
ResidualStats transnormal_residual(const ScalarField& f, const WarpingProfile& profile, double C,
                                   const std::vector<Vector>& samples);

/// Grid route: rasterizes f = h o d over the distance grid and measures the
/// residual with raw centered differences of those values, independently of
/// the chain-rule gradient.
ResidualStats transnormal_residual_grid(const TransnormalField& field);

}  // namespace cahs
