#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "darboux/core.hpp"

namespace darboux::specfun {

namespace detail {

// Bernoulli coefficients B_2k / (2k (2k-1)) for the Stirling series.
inline constexpr double stirling_coeffs[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,          -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0,     1.0 / 156.0,           -3617.0 / 122400.0,
    43867.0 / 244188.0,   -174611.0 / 125400.0,
};

inline cplx log_sin_pi(cplx z) {
    // sin(pi z) overflows for |Im z| beyond ~220, so factor out the dominant exponential.
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(pi * z));
    const cplx i(0.0, 1.0);
    if (z.imag() > 0.0) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        return -i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z)) + std::log(cplx(0.0, 0.5));
    }
    // sin(pi z) = (-i/2) e^{i pi z} (1 - e^{-2 i pi z})
    return i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z)) + std::log(cplx(0.0, -0.5));
}

inline double distance_to_pole(cplx z) {
    const double n = std::min(0.0, std::round(z.real()));
    return std::abs(z - cplx(n, 0.0));
}

inline cplx lgamma_stirling(cplx z) {
    // Shift so that |z| is large enough for ten Stirling terms to reach double precision.
    cplx shift_log(0.0, 0.0);
    while (std::abs(z) < 17.0 || z.real() < 10.0) {
        shift_log += std::log(z);
        z += 1.0;
    }
    const cplx zinv = 1.0 / z;
    const cplx zinv2 = zinv * zinv;
    cplx series(0.0, 0.0);
    cplx pow = zinv;
    for (double c : stirling_coeffs) {
        series += c * pow;
        pow *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift_log;
}

}  // namespace detail

/// log Γ(z) for complex z away from the poles. The imaginary part is only
/// defined modulo 2π; exponentiate it rather than comparing phases.
inline cplx lgamma_complex(cplx z) {
    if (detail::distance_to_pole(z) < 1e-8)
        throw DomainError("gamma: argument within 1e-8 of a pole");
    if (z.real() < 0.5) {
        // Reflection: Γ(z) Γ(1-z) = π / sin(πz)
        return std::log(pi) - detail::log_sin_pi(z) - detail::lgamma_stirling(1.0 - z);
    }
    return detail::lgamma_stirling(z);
}

inline cplx gamma_complex(cplx z) {
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0)
        return {std::tgamma(z.real()), 0.0};
    return std::exp(lgamma_complex(z));
}

/// 1/Γ(z), entire: returns exactly zero at the poles instead of throwing.
inline cplx rgamma_complex(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) return {0.0, 0.0};
    if (detail::distance_to_pole(z) < 1e-8) {
        // Near a pole 1/Γ is small and smooth; use Γ(z) = Γ(z+n+1)/(z (z+1) ... (z+n)).
        const int n = static_cast<int>(-std::round(z.real()));
        cplx prod(1.0, 0.0);
        for (int k = 0; k <= n; ++k) prod *= (z + static_cast<double>(k));
        return prod / gamma_complex(z + static_cast<double>(n + 1));
    }
    return std::exp(-lgamma_complex(z));
}

/// Digamma for positive integer arguments: ψ(n) = -γ + H_{n-1}.
inline double digamma_int(int n) {
    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    double h = -euler_gamma;
    for (int k = 1; k < n; ++k) h += 1.0 / k;
    return h;
}

}  // namespace darboux::specfun
