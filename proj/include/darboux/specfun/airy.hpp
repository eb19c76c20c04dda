#pragma once

// Airy function Ai(x) on |x| <= 100, computed without reference to K_{1/3}
// so that the identity K_{1/3}(ζ) = π√(3/z) Ai(z) is a genuine cross-check.
//
//   -8 <= x <= 1 : Maclaurin pair Ai = c1 f − c2 g in extended precision
//    1 <  x <= 8 : Ai(x) = e^{-ζ}/π ∫_0^∞ exp(−√x t²) cos(t³/3) dt, ζ = ⅔x^{3/2}
//    x > 8       : e^{-ζ}/(2√π x^{1/4}) Σ (−1)^k u_k ζ^{-k}
//    x < -8      : oscillatory asymptotic expansion

#include <cmath>

#include "darboux/core.hpp"
#include "darboux/specfun/detail/panel_quadrature.hpp"

namespace darboux::specfun {

namespace detail {

inline double airy_maclaurin(double x) {
    using ld = long double;
    constexpr ld c1 = 0.355028053887817239260063186004183176397979174199L;  // Ai(0)
    constexpr ld c2 = 0.258819403792806798405183560189203963479091138354L;  // -Ai'(0)
    const ld xl = x;
    const ld x3 = xl * xl * xl;
    ld f = 1, g = xl, tf = 1, tg = xl;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3 * k - 1) * (3 * k));
        tg *= x3 / ((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-22L * std::abs(f) && std::abs(tg) < 1e-22L * std::abs(g)) break;
    }
    return static_cast<double>(c1 * f - c2 * g);
}

inline double airy_integral(double x) {
    const double sx = std::sqrt(x);
    const double zeta = 2.0 / 3.0 * x * sx;
    // Gaussian factor below e^{-40} past t_end.
    const double t_end = std::sqrt(40.0 / sx);
    auto f = [&](double t) { return std::exp(-sx * t * t) * std::cos(t * t * t / 3.0); };
    const auto r = integrate_panels(f, 0.0, t_end, 1e-15, 8);
    return std::exp(-zeta) / pi * r.value;
}

// u_k = (6k−5)(6k−3)(6k−1) / ((2k−1) 216 k) u_{k−1}
inline double airy_u(int k) {
    double u = 1.0;
    for (int j = 1; j <= k; ++j)
        u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
    return u;
}

inline double airy_asymptotic_positive(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * airy_u(k) / airy_u(k - 1) * (-1.0 / zeta);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(pi) * std::pow(x, 0.25)) * sum;
}

inline double airy_asymptotic_negative(double x) {
    const double ax = -x;
    const double zeta = 2.0 / 3.0 * ax * std::sqrt(ax);
    // Ai(−x) ~ [cos(ζ−π/4) P + sin(ζ−π/4) Q] / (√π x^{1/4}),
    // P = Σ (−1)^k u_{2k} ζ^{-2k}, Q = Σ (−1)^k u_{2k+1} ζ^{-2k-1}.
    double p = 0.0, q = 0.0;
    double prev = 1e300;
    for (int k = 0; k < 30; ++k) {
        const double tp = (k % 2 == 0 ? 1.0 : -1.0) * airy_u(2 * k) * std::pow(zeta, -2.0 * k);
        const double tq = (k % 2 == 0 ? 1.0 : -1.0) * airy_u(2 * k + 1) * std::pow(zeta, -2.0 * k - 1.0);
        const double mag = std::abs(tp) + std::abs(tq);
        if (mag > prev) break;
        p += tp;
        q += tq;
        prev = mag;
        if (mag < 1e-17) break;
    }
    const double phase = zeta - 0.25 * pi;
    return (std::cos(phase) * p + std::sin(phase) * q) / (std::sqrt(pi) * std::pow(ax, 0.25));
}

}  // namespace detail

inline double airy_ai(double x) {
    if (!(std::abs(x) <= 100.0)) throw DomainError("airy_ai: |x| > 100");
    if (x < -8.0) return detail::airy_asymptotic_negative(x);
    if (x <= 1.0) return detail::airy_maclaurin(x);
    if (x <= 8.0) return detail::airy_integral(x);
    return detail::airy_asymptotic_positive(x);
}

}  // namespace darboux::specfun
