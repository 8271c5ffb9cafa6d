#include "cahs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cahs/errors.hpp"

namespace cahs {

namespace {

// 15-point Kronrod / 7-point Gauss abscissae and weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
    }
    result_gauss *= half;
    result_kronrod *= half;
    return {result_kronrod, std::abs(result_kronrod - result_gauss)};
}

struct Panel {
    double a, b, value, error;
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_subdivisions) {
    QuadratureResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    auto initial = gk15(f, a, b);
    out.evaluations = 15;
    std::vector<Panel> panels{{a, b, initial.kronrod, initial.error}};

    int splits = 0;
    while (splits < max_subdivisions) {
        double total_error = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_error += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (total_error <= abs_tol) break;

        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) break;  // interval below representable width
        auto left = gk15(f, p.a, mid);
        auto right = gk15(f, mid, p.b);
        out.evaluations += 30;
        panels[worst] = {p.a, mid, left.kronrod, left.error};
        panels.push_back({mid, p.b, right.kronrod, right.error});
        ++splits;
    }

    double value = 0.0, error = 0.0;
    for (const auto& p : panels) {
        value += p.value;
        error += p.error;
    }
    out.value = sign * value;
    out.error_estimate = error;
    out.converged = error <= std::max(abs_tol, 1e-300);
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    auto r = integrate_adaptive(f, a, b, abs_tol);
    if (!r.converged && !(std::abs(r.error_estimate) <= abs_tol * 16 + 1e-14 * std::abs(r.value)))
        throw Error("quadrature failed to converge to requested tolerance");
    return r.value;
}

CubicHermiteSpline CubicHermiteSpline::with_slopes(std::vector<double> x, std::vector<double> y,
                                                   std::vector<double> slope) {
    if (x.size() < 2 || x.size() != y.size() || x.size() != slope.size())
        throw Error("spline needs >= 2 nodes with matching values and slopes");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw Error("spline nodes must be strictly increasing");
    CubicHermiteSpline s;
    s.x_ = std::move(x);
    s.y_ = std::move(y);
    s.m_ = std::move(slope);
    return s;
}

CubicHermiteSpline CubicHermiteSpline::monotone(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw Error("spline needs >= 2 nodes");
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (d[i - 1] + d[i]);
    // Fritsch-Carlson limiter keeps the interpolant monotone on each segment.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double alpha = m[i] / d[i];
        const double beta = m[i + 1] / d[i];
        const double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m[i] = tau * alpha * d[i];
            m[i + 1] = tau * beta * d[i];
        }
    }
    return with_slopes(std::move(x), std::move(y), std::move(m));
}

int CubicHermiteSpline::segment(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    int i = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double CubicHermiteSpline::operator()(double t) const {
    const int i = segment(t);
    const double hseg = x_[i + 1] - x_[i];
    const double u = (t - x_[i]) / hseg;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * hseg * m_[i] +
           (-2 * u3 + 3 * u2) * y_[i + 1] + (u3 - u2) * hseg * m_[i + 1];
}

double CubicHermiteSpline::derivative(double t) const {
    const int i = segment(t);
    const double hseg = x_[i + 1] - x_[i];
    const double u = (t - x_[i]) / hseg;
    const double u2 = u * u;
    return ((6 * u2 - 6 * u) * y_[i] + (3 * u2 - 4 * u + 1) * hseg * m_[i] +
            (-6 * u2 + 6 * u) * y_[i + 1] + (3 * u2 - 2 * u) * hseg * m_[i + 1]) /
           hseg;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const int nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cahs
