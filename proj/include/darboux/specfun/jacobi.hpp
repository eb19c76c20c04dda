#pragma once

#include <cmath>
#include <vector>

#include "darboux/core.hpp"

namespace darboux::specfun {

struct JacobiTriple {
    double sn, cn, dn;
};

/// Jacobi elliptic functions of modulus k by the descending Landen (AGM)
/// scheme; k = 0 and k = 1 return the trigonometric / hyperbolic limits.
inline JacobiTriple jacobi_sn_cn_dn(double x, double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw DomainError("jacobi_sn_cn_dn: modulus outside [0, 1]");
    if (k == 0.0) return {std::sin(x), std::cos(x), 1.0};
    if (k == 1.0) {
        const double sech = 1.0 / std::cosh(x);
        return {std::tanh(x), sech, sech};
    }
    std::vector<double> a{1.0}, c{k};
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    while (std::abs(c.back()) > 1e-17 * a.back() && a.size() < 40) {
        const double an = a.back();
        a.push_back(0.5 * (an + b));
        c.push_back(0.5 * (an - b));
        b = std::sqrt(an * b);
    }
    const std::size_t n = a.size() - 1;
    double phi = std::ldexp(a[n] * x, static_cast<int>(n));
    double phi_prev = phi;
    for (std::size_t j = n; j >= 1; --j) {
        phi_prev = phi;
        phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
    }
    const double sn = std::sin(phi), cn = std::cos(phi);
    double dn = n >= 1 ? cn / std::cos(phi_prev - phi) : std::sqrt(1.0 - k * k * sn * sn);
    if (!std::isfinite(dn) || std::abs(cn) < 1e-8) dn = std::sqrt(1.0 - k * k * sn * sn);
    return {sn, cn, dn};
}

}  // namespace darboux::specfun
