#include "cahs/transnormal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cahs/errors.hpp"
#include "cahs/numeric.hpp"

namespace cahs {

namespace {

constexpr double kDivergedBound = 1e12;
constexpr double kInvertTol = 1e-12;  // on |h^{-1}(s) - r|, inside the 1e-10 contract

double integral_step(const WarpingProfile& profile, double C, double a, double b) {
    auto integrand = [&profile, C](double sigma) { return 1.0 / (C * profile.rho(sigma)); };
    return integrate(integrand, a, b, 1e-13);
}

}  // namespace

TransnormalBuilder TransnormalBuilder::from_theta(WarpingProfile profile, double theta,
                                                  double s0) {
    if (!(theta > 0.0) || !(theta < M_PI / 2))
        throw InvalidConstantError("transnormal builder needs theta in (0, pi/2)");
    return TransnormalBuilder(std::move(profile), std::tan(theta), theta, s0);
}

TransnormalBuilder TransnormalBuilder::from_constant(WarpingProfile profile, double C, double s0) {
    if (!(C > 0.0)) throw InvalidConstantError("transnormal builder needs C > 0");
    return TransnormalBuilder(std::move(profile), C, std::atan(C), s0);
}

TransnormalBuilder::TransnormalBuilder(WarpingProfile profile, double C, double theta, double s0)
    : profile_(std::move(profile)), C_(C), theta_(theta), s0_(s0) {
    if (std::abs(C_ - std::tan(theta_)) > 1e-12 * std::max(1.0, std::abs(C_)))
        throw InvalidConstantError("C and theta are inconsistent");
    if (!profile_.domain().contains(s0_))
        throw DomainError("s0 must lie in the open profile domain");
    probe_range();
    build_table();
}

void TransnormalBuilder::probe_range() {
    const Interval dom = profile_.domain();
    switch (profile_.kind()) {
        case WarpingProfile::Kind::Constant: {
            const double c = profile_.parameter();
            range_lo_ = std::isfinite(dom.lo) ? (dom.lo - s0_) / (C_ * c)
                                              : -std::numeric_limits<double>::infinity();
            range_hi_ = std::isfinite(dom.hi) ? (dom.hi - s0_) / (C_ * c)
                                              : std::numeric_limits<double>::infinity();
            return;
        }
        case WarpingProfile::Kind::Reciprocal:
            range_lo_ = (dom.lo * dom.lo - s0_ * s0_) / (2.0 * C_);
            range_hi_ = std::isfinite(dom.hi) ? (dom.hi * dom.hi - s0_ * s0_) / (2.0 * C_)
                                              : std::numeric_limits<double>::infinity();
            return;
        case WarpingProfile::Kind::LinearOverSin: {
            const double k = std::sin(profile_.parameter()) / C_;
            range_lo_ = dom.lo > 0.0 ? k * std::log(dom.lo / s0_)
                                     : -std::numeric_limits<double>::infinity();
            range_hi_ = std::isfinite(dom.hi) ? k * std::log(dom.hi / s0_)
                                              : std::numeric_limits<double>::infinity();
            return;
        }
        case WarpingProfile::Kind::Custom:
            break;
    }

    // Probe geometrically toward each end; a bound past kDivergedBound is
    // reported as infinite.
    auto probe = [this](int dir) {
        const Interval dom = profile_.domain();
        const double end = dir > 0 ? dom.hi : dom.lo;
        double s_prev = s0_, r = 0.0;
        for (int k = 1; k <= 48; ++k) {
            double s_next;
            if (std::isfinite(end))
                s_next = end - (end - s0_) * std::pow(0.5, k);
            else
                s_next = s0_ + dir * (1.0 + std::abs(s0_)) * std::pow(2.0, k);
            r += integral_step(profile_, C_, s_prev, s_next);
            s_prev = s_next;
            if (std::abs(r) > kDivergedBound)
                return dir > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
        }
        return r;
    };
    range_hi_ = probe(+1);
    range_lo_ = probe(-1);
}

void TransnormalBuilder::build_table() {
    const Interval dom = profile_.domain();
    // Node ladder in s: linear toward finite ends, geometric toward infinite
    // ones, 32 nodes per side plus s0 in the middle.
    std::vector<double> nodes{s0_};
    auto extend = [&](int dir) {
        const double end = dir > 0 ? dom.hi : dom.lo;
        for (int k = 1; k <= 32; ++k) {
            double s;
            if (std::isfinite(end))
                s = end - (end - s0_) * (1.0 - static_cast<double>(k) / 33.0);
            else
                s = s0_ + dir * (1.0 + std::abs(s0_)) * (std::pow(2.0, 0.5 * k) - 1.0);
            nodes.push_back(s);
        }
    };
    extend(+1);
    extend(-1);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    table_s_.clear();
    table_r_.clear();
    // Incremental integrals outward from s0 in both directions.
    const auto it0 = std::lower_bound(nodes.begin(), nodes.end(), s0_);
    const std::size_t i0 = static_cast<std::size_t>(it0 - nodes.begin());
    std::vector<double> r(nodes.size());
    r[i0] = 0.0;
    for (std::size_t i = i0 + 1; i < nodes.size(); ++i)
        r[i] = r[i - 1] + integral_step(profile_, C_, nodes[i - 1], nodes[i]);
    for (std::size_t i = i0; i-- > 0;)
        r[i] = r[i + 1] - integral_step(profile_, C_, nodes[i], nodes[i + 1]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(r[i]) || std::abs(r[i]) > kDivergedBound) continue;
        table_s_.push_back(nodes[i]);
        table_r_.push_back(r[i]);
    }
}

double TransnormalBuilder::h_inverse_near(double s, int hint) const {
    return table_r_[hint] + integral_step(profile_, C_, table_s_[hint], s);
}

double TransnormalBuilder::invert_h(double r) const {
    if (!in_attainable_range(r))
        throw RangeError("r outside the attainable range of h", range_lo_, range_hi_);
    if (r == 0.0) return s0_;

    switch (profile_.kind()) {
        case WarpingProfile::Kind::Constant:
            return s0_ + C_ * profile_.parameter() * r;
        case WarpingProfile::Kind::Reciprocal:
            return std::sqrt(2.0 * C_ * r + s0_ * s0_);
        case WarpingProfile::Kind::LinearOverSin:
            return s0_ * std::exp(C_ * r / std::sin(profile_.parameter()));
        case WarpingProfile::Kind::Custom:
            break;
    }

    // Bracket r in the table, seed with monotone cubic inverse interpolation,
    // then polish with Newton on g(s) = h^{-1}(s) - r, g' = 1/(C rho).
    auto hi_it = std::lower_bound(table_r_.begin(), table_r_.end(), r);
    if (hi_it == table_r_.begin() || hi_it == table_r_.end())
        throw RangeError("r outside the tabulated range of h", table_r_.front(), table_r_.back());
    const int hi = static_cast<int>(hi_it - table_r_.begin());
    const int lo = hi - 1;

    double s_lo = table_s_[lo], s_hi = table_s_[hi];
    const int hint = std::abs(table_r_[lo] - r) < std::abs(table_r_[hi] - r) ? lo : hi;

    auto seed_spline = CubicHermiteSpline::monotone(
        std::vector<double>{table_r_[lo], table_r_[hi]}, std::vector<double>{s_lo, s_hi});
    double s = std::clamp(seed_spline(r), s_lo, s_hi);

    for (int iter = 0; iter < 100; ++iter) {
        const double res = h_inverse_near(s, hint) - r;
        if (std::abs(res) <= kInvertTol) return s;
        if (res > 0)
            s_hi = s;
        else
            s_lo = s;
        double s_next = s - res * C_ * profile_.rho(s);
        if (!(s_next > s_lo) || !(s_next < s_hi)) s_next = 0.5 * (s_lo + s_hi);
        if (s_next == s) break;
        s = s_next;
    }
    if (std::abs(h_inverse_near(s, hint) - r) > 1e-10)
        throw Error("h inversion failed to reach tolerance");
    return s;
}

double TransnormalBuilder::invert_h_oracle(double r) const {
    if (!in_attainable_range(r))
        throw RangeError("r outside the attainable range of h", range_lo_, range_hi_);
    if (r == 0.0) return s0_;
    const Interval dom = profile_.domain();
    auto h_inv = [this](double s) {
        return reciprocal_rho_integral_quadrature(profile_, C_, s0_, s);
    };

    double lo = s0_, hi = s0_;
    if (r > 0.0) {
        double step = 0.5 * (1.0 + std::abs(s0_));
        for (int k = 0; k < 200; ++k) {
            double cand = hi + step;
            if (std::isfinite(dom.hi)) cand = std::min(cand, hi + 0.5 * (dom.hi - hi));
            hi = cand;
            if (h_inv(hi) >= r) break;
            step *= 2.0;
        }
    } else {
        double step = 0.5 * (1.0 + std::abs(s0_));
        for (int k = 0; k < 200; ++k) {
            double cand = lo - step;
            if (std::isfinite(dom.lo)) cand = std::max(cand, lo - 0.5 * (lo - dom.lo));
            lo = cand;
            if (h_inv(lo) <= r) break;
            step *= 2.0;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (h_inv(mid) < r)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void TransnormalBuilder::export_h_table_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write h table CSV: " + path);
    out << "r,s\n";
    char buf[128];
    for (std::size_t i = 0; i < table_r_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table_r_[i], table_s_[i]);
        out << buf;
    }
}

TransnormalField::TransnormalField(TransnormalBuilder builder, DistanceField distance)
    : builder_(std::make_shared<TransnormalBuilder>(std::move(builder))),
      distance_(std::make_shared<DistanceField>(std::move(distance))) {}

double TransnormalField::value(const Vector& p) const {
    return builder_->invert_h(distance_->value(p));
}

Vector TransnormalField::gradient(const Vector& p) const {
    const double f = value(p);
    const double hp = builder_->constant() * builder_->profile().rho(f);
    return hp * distance_->gradient(p);
}

ScalarField TransnormalField::as_scalar_field() const {
    TransnormalField copy = *this;
    return ScalarField{[copy](const Vector& p) { return copy.value(p); },
                       [copy](const Vector& p) { return copy.gradient(p); }};
}

ResidualStats transnormal_residual(const ScalarField& f, const WarpingProfile& profile, double C,
                                   const std::vector<Vector>& samples) {
    if (samples.empty()) throw InvalidConstantError("residual needs a non-empty sample set");
    ResidualStats stats;
    double sum = 0.0;
    for (const auto& p : samples) {
        const double target = C * profile.rho(f.value(p));
        const double rel = std::abs(f.gradient(p).norm() - target) / target;
        stats.max_rel = std::max(stats.max_rel, rel);
        sum += rel;
    }
    stats.count = samples.size();
    stats.mean_rel = sum / static_cast<double>(samples.size());
    return stats;
}

ResidualStats transnormal_residual_grid(const TransnormalField& field) {
    const DistanceField& dist = field.distance();
    if (!dist.is_grid())
        throw UnsupportedError("grid residual route needs a fast-marching distance field");
    const GridScalarField& d = dist.grid();
    const GridSpec& spec = d.spec();
    const TransnormalBuilder& b = field.builder();

    // f on every cell whose distance value is invertible.
    std::vector<double> f(spec.cell_count(), 0.0);
    std::vector<std::uint8_t> ok(spec.cell_count(), 0);
    const int nz = spec.dim == 3 ? spec.nz : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                const std::size_t c = spec.index(i, j, k);
                const double r = d.at(i, j, k);
                if (!b.in_attainable_range(r)) continue;
                f[c] = b.invert_h(r);
                ok[c] = 1;
            }

    GridScalarField fgrid(spec, std::move(f));
    ResidualStats stats;
    double sum = 0.0;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                const std::size_t c = spec.index(i, j, k);
                // Residual cells: distance-validity plus full invertible stencil.
                if (!ok[c] || !d.masked_in(i, j, k) || !fgrid.stencil_interior(i, j, k)) continue;
                if (!ok[spec.index(i - 1, j, k)] || !ok[spec.index(i + 1, j, k)] ||
                    !ok[spec.index(i, j - 1, k)] || !ok[spec.index(i, j + 1, k)])
                    continue;
                if (spec.dim == 3 &&
                    (!ok[spec.index(i, j, k - 1)] || !ok[spec.index(i, j, k + 1)]))
                    continue;
                const double target = b.constant() * b.profile().rho(fgrid.at(i, j, k));
                const double rel = std::abs(fgrid.gradient_at(i, j, k).norm() - target) / target;
                stats.max_rel = std::max(stats.max_rel, rel);
                sum += rel;
                ++stats.count;
            }
    if (stats.count == 0) throw InvalidConstantError("no valid cells for the grid residual");
    stats.mean_rel = sum / static_cast<double>(stats.count);
    return stats;
}

}  // namespace cahs
