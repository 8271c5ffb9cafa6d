#include "cahs/warp.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "cahs/errors.hpp"
#include "cahs/numeric.hpp"

namespace cahs {

namespace {

// Sample positions for construction-time profile checks, biased toward the
// ends but clear of them (open interval).
std::vector<double> probe_points(const Interval& dom) {
    double lo = dom.lo, hi = dom.hi;
    if (!std::isfinite(lo)) lo = std::isfinite(hi) ? hi - 16.0 : -8.0;
    if (!std::isfinite(hi)) hi = lo + 16.0;
    const double span = hi - lo;
    std::vector<double> pts;
    for (int i = 1; i <= 31; ++i) pts.push_back(lo + span * i / 32.0);
    return pts;
}

}  // namespace

WarpingProfile::WarpingProfile(Kind kind, Interval domain, Fn rho, Fn rho_prime, double param)
    : kind_(kind), domain_(domain), rho_(std::move(rho)), rho_prime_(std::move(rho_prime)),
      param_(param) {
    if (!(domain_.lo < domain_.hi)) throw DomainError("profile interval must satisfy lo < hi");
    validate();
}

void WarpingProfile::validate() const {
    for (double t : probe_points(domain_)) {
        const double r = rho_(t);
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("warping function must be positive on its domain (rho(" +
                              std::to_string(t) + ") = " + std::to_string(r) + ")");
        const double step = fd_step(t);
        if (domain_.contains(t - step) && domain_.contains(t + step)) {
            const double fd = (rho_(t + step) - rho_(t - step)) / (2.0 * step);
            const double rp = rho_prime_(t);
            const double scale = std::max({std::abs(rp), std::abs(fd), 1e-3 * r});
            if (std::abs(fd - rp) > 1e-6 * scale)
                throw DomainError("rho_prime disagrees with finite difference of rho at t = " +
                                  std::to_string(t));
        }
    }
}

void WarpingProfile::check_domain(double t) const {
    if (!domain_.contains(t))
        throw DomainError("t = " + std::to_string(t) + " outside open profile domain");
}

double WarpingProfile::rho(double t) const {
    check_domain(t);
    return rho_(t);
}

double WarpingProfile::rho_prime(double t) const {
    check_domain(t);
    return rho_prime_(t);
}

WarpingProfile WarpingProfile::constant(double value, Interval domain) {
    if (!(value > 0.0)) throw InvalidConstantError("constant warping value must be positive");
    return WarpingProfile(Kind::Constant, domain, [value](double) { return value; },
                          [](double) { return 0.0; }, value);
}

WarpingProfile WarpingProfile::reciprocal(Interval domain) {
    if (domain.lo < 0.0) throw DomainError("reciprocal profile needs a domain inside (0, inf)");
    return WarpingProfile(Kind::Reciprocal, domain, [](double t) { return 1.0 / t; },
                          [](double t) { return -1.0 / (t * t); }, 0.0);
}

WarpingProfile WarpingProfile::linear_over_sin(double theta, Interval domain) {
    if (!(theta > 0.0) || !(theta < M_PI / 2))
        throw InvalidConstantError("linear-over-sin profile needs theta in (0, pi/2)");
    if (domain.lo < 0.0) throw DomainError("linear-over-sin profile needs a domain inside (0, inf)");
    const double inv_sin = 1.0 / std::sin(theta);
    return WarpingProfile(Kind::LinearOverSin, domain,
                          [inv_sin](double t) { return t * inv_sin; },
                          [inv_sin](double) { return inv_sin; }, theta);
}

WarpingProfile WarpingProfile::custom(Interval domain, Fn rho, Fn rho_prime) {
    return WarpingProfile(Kind::Custom, domain, std::move(rho), std::move(rho_prime), 0.0);
}

WarpingProfile WarpingProfile::from_samples(const std::vector<double>& t,
                                            const std::vector<double>& rho,
                                            const std::vector<double>& rho_prime) {
    auto spline = std::make_shared<CubicHermiteSpline>(
        CubicHermiteSpline::with_slopes(t, rho, rho_prime));
    Interval domain{spline->min_x(), spline->max_x()};
    return WarpingProfile(Kind::Custom, domain, [spline](double s) { return (*spline)(s); },
                          [spline](double s) { return spline->derivative(s); }, 0.0);
}

WarpingProfile WarpingProfile::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open profile CSV: " + path);
    std::vector<double> t, r, rp;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double a, b, c;
        if (row >> a >> b >> c) {
            t.push_back(a);
            r.push_back(b);
            rp.push_back(c);
        }
    }
    if (t.size() < 2) throw Error("profile CSV needs at least two sample rows: " + path);
    return from_samples(t, r, rp);
}

WarpedProduct::WarpedProduct(WarpingProfile profile, BaseManifold base)
    : profile_(std::move(profile)), base_(std::move(base)) {}

double WarpedProduct::inner(const AmbientPoint& at, const AmbientVector& u,
                            const AmbientVector& v) const {
    const double r = profile_.rho(at.t);
    return u.dt * v.dt + r * r * base_.metric(u.pv, v.pv);
}

double WarpedProduct::norm(const AmbientPoint& at, const AmbientVector& u) const {
    return std::sqrt(std::max(0.0, inner(at, u, u)));
}

AmbientVector WarpedProduct::normalized(const AmbientPoint& at, const AmbientVector& u) const {
    const double n = norm(at, u);
    if (n == 0.0) throw InvalidConstantError("cannot normalize a zero ambient vector");
    return u * (1.0 / n);
}

AmbientVector WarpedProduct::dt_derivative(const AmbientPoint& at, const AmbientVector& w) const {
    const double ratio = profile_.rho_prime(at.t) / profile_.rho(at.t);
    return {0.0, ratio * w.pv};
}

AmbientVector WarpedProduct::covariant_derivative(const AmbientPoint& at, const AmbientVector& vel,
                                                  const AmbientVector& value,
                                                  const AmbientVector& dvalue) const {
    const double r = profile_.rho(at.t);
    const double rp = profile_.rho_prime(at.t);
    const double dt_part = dvalue.dt - r * rp * base_.metric(value.pv, vel.pv);
    Vector base_part = base_.project_tangent(at.p, dvalue.pv) +
                       (rp / r) * (vel.dt * value.pv + value.dt * vel.pv);
    return {dt_part, std::move(base_part)};
}

std::vector<AmbientVector> WarpedProduct::orthonormal_basis(const AmbientPoint& at) const {
    std::vector<AmbientVector> basis;
    basis.push_back(dt_field(at));
    const double inv_r = 1.0 / profile_.rho(at.t);
    for (const auto& e : base_.tangent_basis(at.p)) basis.push_back({0.0, inv_r * e});
    return basis;
}

Vector WarpedProduct::euclidean_coords(const AmbientPoint& at, const AmbientVector& v) const {
    const auto basis = orthonormal_basis(at);
    Vector c(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        c(static_cast<int>(i)) = inner(at, v, basis[i]);
    return c;
}

AmbientVector WarpedProduct::from_euclidean_coords(const AmbientPoint& at,
                                                   const Vector& coords) const {
    const auto basis = orthonormal_basis(at);
    AmbientVector out = zero_vector();
    for (std::size_t i = 0; i < basis.size(); ++i)
        out = out + coords(static_cast<int>(i)) * basis[i];
    return out;
}

double reciprocal_rho_integral(const WarpingProfile& profile, double C, double s0, double s) {
    if (C == 0.0) throw InvalidConstantError("reciprocal rho integral requires C != 0");
    const Interval& dom = profile.domain();
    const double a = std::min(s0, s), b = std::max(s0, s);
    if (!dom.contains(a) || !dom.contains(b))
        throw DomainError("integration interval leaves the profile domain");

    switch (profile.kind()) {
        case WarpingProfile::Kind::Constant:
            return (s - s0) / (C * profile.parameter());
        case WarpingProfile::Kind::Reciprocal:
            return (s * s - s0 * s0) / (2.0 * C);
        case WarpingProfile::Kind::LinearOverSin:
            return std::sin(profile.parameter()) / C * std::log(s / s0);
        case WarpingProfile::Kind::Custom:
            return reciprocal_rho_integral_quadrature(profile, C, s0, s);
    }
    return 0.0;
}

double reciprocal_rho_integral_quadrature(const WarpingProfile& profile, double C, double s0,
                                          double s) {
    if (C == 0.0) throw InvalidConstantError("reciprocal rho integral requires C != 0");
    const Interval& dom = profile.domain();
    if (!dom.contains(std::min(s0, s)) || !dom.contains(std::max(s0, s)))
        throw DomainError("integration interval leaves the profile domain");
    auto integrand = [&profile, C](double sigma) { return 1.0 / (C * profile.rho(sigma)); };
    return integrate(integrand, s0, s, 1e-12);
}

}  // namespace cahs
