#include "series_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <limits>

namespace equistab::detail {
namespace {

// Lagrange interpolant through (xs[i], ys[i]) evaluated at x.
double lagrange(std::span<const double> xs, std::span<const double> ys, double x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double basis = 1.0;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j != i) {
                basis *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        sum += basis * ys[i];
    }
    return sum;
}

// Integral over [times[k], t] of the cubic through the stencil around interval k.
double interval_integral(std::span<const double> times, std::span<const double> f, std::span<const double> omega,
                         std::size_t from, std::size_t k, double t) {
    const std::size_t last = times.size() - 1;
    const std::size_t available = last - from + 1;
    const std::size_t m = std::min<std::size_t>(4, available);
    std::size_t s = (k > from) ? k - 1 : k;
    s = std::min(s, last + 1 - m);
    s = std::max(s, from);

    double xs[4];
    double gs[4];
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = times[s + i];
        gs[i] = -f[s + i] * omega[s + i];
    }
    const std::span<const double> x_nodes(xs, m);
    const std::span<const double> g_nodes(gs, m);

    // Two-point Gauss-Legendre is exact for the cubic.
    const double a = times[k];
    const double mid = 0.5 * (a + t);
    const double half = 0.5 * (t - a);
    const double offset = half / std::sqrt(3.0);
    return half * (lagrange(x_nodes, g_nodes, mid - offset) + lagrange(x_nodes, g_nodes, mid + offset));
}

}  // namespace

double crossing_time(double t0, double t1, double v0, double v1) {
    if (v0 == v1) {
        return t0;
    }
    return t0 + (t1 - t0) * (v0 / (v0 - v1));
}

double interpolate(std::span<const double> times, std::span<const double> values, std::size_t k, double t) {
    if (k + 1 >= times.size()) {
        return values[k];
    }
    const double w = (t - times[k]) / (times[k + 1] - times[k]);
    return values[k] + w * (values[k + 1] - values[k]);
}

std::vector<double> cumulative_decel_area(std::span<const double> times, std::span<const double> f,
                                          std::span<const double> omega, std::size_t from) {
    std::vector<double> area;
    if (from >= times.size()) {
        return area;
    }
    area.reserve(times.size() - from);
    area.push_back(0.0);
    for (std::size_t k = from; k + 1 < times.size(); ++k) {
        area.push_back(area.back() + interval_integral(times, f, omega, from, k, times[k + 1]));
    }
    return area;
}

double partial_decel_area(std::span<const double> times, std::span<const double> f,
                          std::span<const double> omega, std::size_t from, std::size_t k, double t) {
    if (t <= times[k]) {
        return 0.0;
    }
    return interval_integral(times, f, omega, from, k, t);
}

double extrapolated_reserve(std::span<const double> delta, std::span<const double> f, double delta_start,
                            double delta_return, double f_return, double window) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kPi = std::numbers::pi;
    if (!(f_return < 0.0)) {
        return 0.0;
    }
    const double width = delta_return - delta_start;
    if (!(width > 0.0)) {
        return kInf;
    }
    // Slightly widened so rounding cannot drop the clearing sample at window = 1.
    const double reach = window * width * (1.0 + 1e-9);

    // g(x) = f_r + p sin x + q (cos x − 1), x = δ − δ_r. Same family as
    // a + b sin δ + c cos δ, but centred so short swings stay well conditioned.
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, r1 = 0.0, r2 = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        const double x = delta[i] - delta_return;
        if (-x > reach) {
            continue;
        }
        const double u = std::sin(x);
        const double h = std::sin(0.5 * x);
        const double v = -2.0 * h * h;  // cos x − 1
        const double y = f[i] - f_return;
        s11 += u * u;
        s12 += u * v;
        s22 += v * v;
        r1 += u * y;
        r2 += v * y;
        ++used;
    }
    double p = 0.0;
    double q = 0.0;
    const double det = s11 * s22 - s12 * s12;
    if (used >= 3 && det > 1e-13 * s11 * s22) {
        p = (r1 * s22 - r2 * s12) / det;
        q = (s11 * r2 - s12 * r1) / det;
    } else if (used >= 1 && s11 > 0.0) {
        p = r1 / s11;
    } else {
        return kInf;
    }

    // With t = tan(x/2): (f_r − 2q) t² + 2p t + f_r = 0. Positive t maps to x in
    // (0, π), negative t to x in (π, 2π).
    const double qa = f_return - 2.0 * q;
    const double qb = 2.0 * p;
    const double qc = f_return;
    std::vector<double> ts;
    if (qa == 0.0) {
        if (qb != 0.0) ts.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double m = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
            if (m != 0.0) {
                ts.push_back(m / qa);
                ts.push_back(qc / m);
            }
        }
    }
    double root = kInf;
    for (double t : ts) {
        const double x = t > 0.0 ? 2.0 * std::atan(t) : 2.0 * kPi + 2.0 * std::atan(t);
        if (x > 0.0) root = std::min(root, x);
    }
    if (!std::isfinite(root)) {
        return kInf;
    }
    const double half = std::sin(0.5 * root);
    const double one_minus_cos = 2.0 * half * half;
    // x − sin x, by series where the difference cancels.
    const double x_minus_sin = root < 1e-2 ? root * root * root / 6.0 * (1.0 - root * root / 20.0)
                                           : root - std::sin(root);
    const double area = -(f_return * root + p * one_minus_cos - q * x_minus_sin);
    return std::max(0.0, area);
}

}  // namespace equistab::detail
