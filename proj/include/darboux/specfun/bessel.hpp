#pragma once

// Modified Bessel functions: I_ν and K_ν of real order and argument, the
// Macdonald function K_{iρ}(x) of imaginary order, and K_ν(z) in the cut
// complex plane.
//
// Regime map (x real):
//   I_ν : power series, Hankel asymptotic once x > 30 and the series of
//         a_k(ν)/x^k reaches 1e-16.
//   K_ν : x <= 2 reflection series (non-integer ν) or the logarithmic series
//         (integer ν); x > 2 Hankel asymptotic when it converges, otherwise
//         the integral ∫ e^{-x cosh t} cosh(νt) dt, whose integrand is positive.
//   K_iρ: series in (x/2)² for x <= 2 or x² <= 4(ρ+1); otherwise the integral
//         representation along Im t = θ, with θ at the saddle arcsin(ρ/x).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "darboux/core.hpp"
#include "darboux/specfun/detail/panel_quadrature.hpp"
#include "darboux/specfun/gamma.hpp"

namespace darboux::specfun {

enum class Method { series, asymptotic, integral, continued_fraction, agm };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::asymptotic: return "asymptotic";
        case Method::integral: return "integral";
        case Method::continued_fraction: return "continued_fraction";
        case Method::agm: return "agm";
    }
    return "?";
}

struct Accuracy {
    double target_rel = 1e-12;
    double achieved_rel = 0.0;
    Method method = Method::series;
};

template <typename T>
struct Evaluated {
    T value{};
    Accuracy accuracy{};
    bool degraded = false;  // achieved_rel above target
};

/// value = mantissa · e^{exponent}; used where e^{±x} would overflow.
struct Scaled {
    double mantissa = 0.0;
    double exponent = 0.0;
    double value() const { return mantissa * std::exp(exponent); }
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

inline constexpr double bessel_overflow_x = 700.0;

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

template <typename T>
struct AsymptoticSum {
    T sum{};
    bool converged = false;
};

/// Σ_k s^k a_k(ν) z^{-k}, a_k = Π_{j<=k} (4ν² − (2j−1)²) / (k! 8^k).
/// s = -1 gives the I_ν series, s = +1 the K_ν series.
template <typename T>
AsymptoticSum<T> hankel_sum(T nu2, T zinv, double s, double tol = 1e-16) {
    AsymptoticSum<T> out;
    T term(1.0);
    T sum(1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (4.0 * nu2 - odd * odd) * zinv * (s / (8.0 * k));
        const double mag = std::abs(term);
        if (mag > prev && mag > tol * std::abs(sum)) break;  // started diverging
        sum += term;
        if (mag <= tol * std::abs(sum)) {
            out.converged = true;
            break;
        }
        prev = mag;
    }
    out.sum = sum;
    return out;
}

struct LogSeries {
    double log_abs = 0.0;
    double sign = 1.0;
};

/// log|I_ν(x)| and its sign from the power series, with running rescaling so
/// that x up to several hundred does not overflow.
inline LogSeries i_series_log(double nu, double x) {
    const double q = 0.25 * x * x;
    const double g = 1.0 + nu;
    double log_t0 = nu * std::log(0.5 * x) - std::lgamma(g);
    double sign0 = std::tgamma(g) < 0.0 ? -1.0 : 1.0;
    double r = 1.0, s = 1.0, log_shift = 0.0;
    for (int k = 1; k < 100000; ++k) {
        r *= q / (k * (k + nu));
        s += r;
        if (std::abs(s) > 1e280) {
            s *= 1e-280;
            r *= 1e-280;
            log_shift += 280.0 * std::log(10.0);
        }
        if (k * (k + nu) > q && std::abs(r) < 1e-17 * std::abs(s)) break;
    }
    return {log_t0 + log_shift + std::log(std::abs(s)), sign0 * (s < 0.0 ? -1.0 : 1.0)};
}

/// I_ν(z) by its power series, evaluated in extended precision. Requires
/// 1+ν not a non-positive integer unless the caller handles integer order.
inline std::complex<long double> i_series_complex(cplx nu, cplx z) {
    using ld = long double;
    using lc = std::complex<ld>;
    const lc zz(z.real(), z.imag());
    const lc nn(nu.real(), nu.imag());
    const lc q = zz * zz / ld(4);
    const lc lead = std::exp(nn * std::log(zz / ld(2)));
    const cplx rg = rgamma_complex(1.0 + nu);
    lc term(1), sum(1);
    for (int k = 1; k < 5000; ++k) {
        term *= q / (ld(k) * (ld(k) + nn));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum) && std::abs(ld(k) + nn) * k > std::abs(q)) break;
    }
    return lead * lc(rg.real(), rg.imag()) * sum;
}

/// K_n(z) for integer n >= 0 from the logarithmic series, extended precision.
inline std::complex<long double> k_series_integer(int n, cplx z) {
    using ld = long double;
    using lc = std::complex<ld>;
    const lc zz(z.real(), z.imag());
    const lc half = zz / ld(2);
    const lc q = half * half;
    const lc log_half = std::log(half);
    lc finite(0);
    if (n > 0) {
        // ½ (z/2)^{-n} Σ_{k<n} (n−k−1)!/k! (−q)^k
        ld fact_nk1 = 1;  // (n-1)!
        for (int j = 2; j <= n - 1; ++j) fact_nk1 *= j;
        lc mq_pow(1);
        ld kfact = 1;
        for (int k = 0; k < n; ++k) {
            if (k > 0) {
                kfact *= k;
                fact_nk1 /= (n - k);
                mq_pow *= -q;
            }
            finite += (fact_nk1 / kfact) * mq_pow;
        }
        finite *= ld(0.5) * std::pow(half, -n);
    }
    // Σ_k (ψ(k+1) + ψ(n+k+1)) q^k / (k! (n+k)!) and I_n(z) together.
    ld nfact = 1;
    for (int j = 2; j <= n; ++j) nfact *= j;
    ld psi_k = -euler_gamma;             // ψ(1)
    ld psi_nk = static_cast<ld>(digamma_int(n + 1));  // ψ(n+1)
    lc coeff = ld(1) / nfact;            // q^k / (k! (n+k)!)
    lc sum_i = coeff, sum_psi = (psi_k + psi_nk) * coeff;
    for (int k = 1; k < 5000; ++k) {
        coeff *= q / (ld(k) * ld(n + k));
        psi_k += ld(1) / k;
        psi_nk += ld(1) / (n + k);
        sum_i += coeff;
        const lc t = (psi_k + psi_nk) * coeff;
        sum_psi += t;
        if (std::abs(coeff) < 1e-22L * std::abs(sum_i) && std::abs(t) < 1e-21L * std::abs(sum_psi) &&
            ld(k) * (n + k) > std::abs(q))
            break;
    }
    const lc pow_half_n = std::pow(half, n);
    const lc i_n = pow_half_n * sum_i;
    const ld sgn = (n % 2 == 0) ? ld(1) : ld(-1);
    return finite - sgn * log_half * i_n + sgn * ld(0.5) * pow_half_n * sum_psi;
}

/// e^{x} K_ν(x) from ∫_0^∞ e^{-x(cosh t − 1)} cosh(νt) dt, ν >= 0.
inline Evaluated<double> k_integral_scaled(double nu, double x) {
    auto ell = [&](double t) { return -x * (std::cosh(t) - 1.0) + nu * t; };
    const double t_peak = std::asinh(nu / x);
    const double ell_peak = ell(t_peak);
    double t_end = std::max(1.0, 2.0 * t_peak);
    while (ell(t_end) > ell_peak - 42.0) t_end *= 1.5;
    auto integrand = [&](double t) {
        return std::exp(ell(t) - ell_peak) * 0.5 * (1.0 + std::exp(-2.0 * nu * t));
    };
    const auto r = integrate_panels(integrand, 0.0, t_end, 1e-15);
    Evaluated<double> out;
    out.value = r.value * std::exp(ell_peak);
    out.accuracy = {1e-12, r.error / std::max(r.value, 1e-300), Method::integral};
    out.degraded = !r.converged;
    return out;
}

inline bool near_integer(double nu, double band) {
    return std::abs(nu - std::round(nu)) < band;
}

}  // namespace detail

/// e^{-x} I_ν(x), x > 0.
inline double bessel_i_scaled(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_i: x must be positive");
    if (std::abs(nu) > 50.0) throw DomainError("bessel_i: |order| > 50");
    if (nu < 0.0 && nu == std::round(nu)) nu = -nu;  // I_{-n} = I_n
    if (x > 30.0) {
        const auto a = detail::hankel_sum<double>(nu * nu, 1.0 / x, -1.0);
        if (a.converged) return a.sum / std::sqrt(2.0 * pi * x);
    }
    const auto s = detail::i_series_log(nu, x);
    return s.sign * std::exp(s.log_abs - x);
}

/// I_ν(x) for 0 < x <= 700; beyond that use bessel_i_exp.
inline double bessel_i(double nu, double x) {
    if (x > bessel_overflow_x)
        throw OverflowError("bessel_i: x > 700 overflows, use bessel_i_exp");
    return bessel_i_scaled(nu, x) * std::exp(x);
}

inline Scaled bessel_i_exp(double nu, double x) { return {bessel_i_scaled(nu, x), x}; }

/// e^{x} K_ν(x), x > 0.
inline Evaluated<double> bessel_k_scaled_eval(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
    if (std::abs(nu) > 50.0) throw DomainError("bessel_k: |order| > 50");
    nu = std::abs(nu);
    Evaluated<double> out;
    if (x > 2.0) {
        const auto a = detail::hankel_sum<double>(nu * nu, 1.0 / x, 1.0);
        if (a.converged) {
            out.value = std::sqrt(pi / (2.0 * x)) * a.sum;
            out.accuracy = {1e-12, 1e-15, Method::asymptotic};
            return out;
        }
        return detail::k_integral_scaled(nu, x);
    }
    if (nu == std::round(nu)) {
        const auto k = detail::k_series_integer(static_cast<int>(nu), cplx(x, 0.0));
        out.value = static_cast<double>(k.real()) * std::exp(x);
        out.accuracy = {1e-12, 1e-15, Method::series};
        return out;
    }
    if (detail::near_integer(nu, 1e-4)) return detail::k_integral_scaled(nu, x);
    const double ip = bessel_i_scaled(nu, x);
    const double im = bessel_i_scaled(-nu, x);
    // (π/2)(I_{-ν} − I_ν)/sin(νπ), both I carry e^{-x}; restore e^{+x} twice.
    out.value = pi / (2.0 * std::sin(nu * pi)) * (im - ip) * std::exp(2.0 * x);
    out.accuracy = {1e-12, 1e-15 * std::exp(2.0 * x) / std::abs(std::sin(nu * pi)), Method::series};
    return out;
}

inline double bessel_k_scaled(double nu, double x) { return bessel_k_scaled_eval(nu, x).value; }

inline double bessel_k(double nu, double x) { return bessel_k_scaled(nu, x) * std::exp(-x); }

inline Scaled bessel_k_exp(double nu, double x) { return {bessel_k_scaled(nu, x), -x}; }

// ---------------------------------------------------------------------------
// Imaginary order

namespace detail {

/// e^{πρ/2} K_{iρ}(x) from the power series, ρ > 0.
inline Evaluated<double> kir_scaled_series(double rho, double x) {
    const double q = 0.25 * x * x;
    const cplx nu1(1.0, rho);
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    double abs_sum = 1.0;
    for (int k = 1; k < 10000; ++k) {
        term *= q / (static_cast<double>(k) * (static_cast<double>(k) + cplx(0.0, rho)));
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) < 1e-18 * std::abs(sum) && k * std::abs(nu1 + double(k - 1)) > q) break;
    }
    const double phase = rho * std::log(0.5 * x) - lgamma_complex(nu1).imag();
    const double im = std::sin(phase) * sum.real() + std::cos(phase) * sum.imag();
    const double amp = std::sqrt(2.0 * pi / rho) / std::sqrt(-std::expm1(-2.0 * pi * rho));
    Evaluated<double> out;
    out.value = -amp * im;
    const double abs_err = amp * 4e-16 * (abs_sum * (1.0 + std::abs(phase)) + 10.0);
    out.accuracy = {1e-10, abs_err / std::max(std::abs(out.value), 1e-300), Method::series};
    return out;
}

/// e^{πρ/2} K_{iρ}(x) along the shifted contour t -> t + iθ:
/// K_{iρ}(x) = e^{-ρθ} ∫_0^∞ e^{-x cosθ cosh t} cos(ρt − x sinθ sinh t) dt.
inline Evaluated<double> kir_scaled_contour(double rho, double x) {
    const double delta_min = std::min(0.5, 5.0 / std::max(rho, 1e-300));
    double theta = rho < x ? std::asin(rho / x) : 0.5 * pi;
    theta = std::min(theta, 0.5 * pi - delta_min);
    const double c = x * std::cos(theta);
    const double s = x * std::sin(theta);
    const double t_end = std::acosh(1.0 + 46.0 / c);
    auto integrand = [&](double t) {
        return std::exp(-c * (std::cosh(t) - 1.0)) * std::cos(rho * t - s * std::sinh(t));
    };
    // Panel count from the number of oscillations over the range.
    const double phase_span = std::abs(rho * t_end - s * std::sinh(t_end)) + rho * t_end;
    const auto start = static_cast<std::size_t>(std::clamp(phase_span / 4.0, 4.0, 4096.0));
    const auto r = integrate_panels(integrand, 0.0, t_end, 1e-15, start, 1u << 16);
    const double scale = std::exp(rho * (0.5 * pi - theta) - c);
    Evaluated<double> out;
    out.value = scale * r.value;
    const double abs_err = scale * (r.error + 1e-16 * r.envelope * (1.0 + phase_span));
    out.accuracy = {1e-10, abs_err / std::max(std::abs(out.value), 1e-300), Method::integral};
    out.degraded = !r.converged;
    return out;
}

}  // namespace detail

/// e^{πρ/2} K_{iρ}(x). The scaling keeps the function O(ρ^{-1/2}) in the
/// oscillatory region x < ρ, so large ρ (spectral quadratures) stay finite.
inline Evaluated<double> bessel_k_imag_order_scaled_eval(double rho, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k_imag_order: x must be positive");
    rho = std::abs(rho);
    Evaluated<double> out;
    if (rho < 1e-8) {
        // K_{iρ} is even in ρ; the O(ρ²) change is below double precision.
        const auto k0 = bessel_k_scaled_eval(0.0, x);
        out = k0;
        out.value = k0.value * std::exp(-x + 0.5 * pi * rho);
        return out;
    }
    if (x <= 2.0 || x * x <= 4.0 * (rho + 1.0))
        out = detail::kir_scaled_series(rho, x);
    else
        out = detail::kir_scaled_contour(rho, x);
    out.degraded = out.degraded || out.accuracy.achieved_rel > out.accuracy.target_rel;
    return out;
}

/// K_{iρ}(x), real for real x > 0, with the accuracy record. The
/// `degraded` flag is raised where the requested 1e-10 relative accuracy
/// is not met (near zeros of the oscillatory region, or tiny x).
inline Evaluated<double> bessel_k_imag_order_eval(double rho, double x) {
    if (std::abs(rho) > 50.0) throw DomainError("bessel_k_imag_order: rho > 50");
    auto out = bessel_k_imag_order_scaled_eval(rho, x);
    out.value *= std::exp(-0.5 * pi * std::abs(rho));
    return out;
}

inline double bessel_k_imag_order(double rho, double x) { return bessel_k_imag_order_eval(rho, x).value; }

// ---------------------------------------------------------------------------
// Complex order and argument

namespace detail {

inline cplx k_complex_nonint_series(cplx nu, cplx z) {
    const auto ip = i_series_complex(nu, z);
    const auto im = i_series_complex(-nu, z);
    const auto diff = im - ip;
    return pi / (2.0 * std::sin(nu * pi)) * cplx(static_cast<double>(diff.real()),
                                                 static_cast<double>(diff.imag()));
}

inline cplx k_complex_integral(cplx nu, cplx z) {
    const double re_z = z.real();
    const double re_nu = std::abs(nu.real());
    auto ell = [&](double t) { return -re_z * (std::cosh(t) - 1.0) + re_nu * t; };
    const double t_peak = std::asinh(re_nu / re_z);
    const double ell_peak = ell(t_peak);
    double t_end = std::max(1.0, 2.0 * t_peak);
    while (ell(t_end) > ell_peak - 42.0) t_end *= 1.5;
    auto integrand = [&](double t) {
        return std::exp(-z * (std::cosh(t) - 1.0) - ell_peak) * std::cosh(nu * t);
    };
    const double osc = std::abs(z.imag()) * std::sinh(t_end) + std::abs(nu.imag()) * t_end;
    const auto start = static_cast<std::size_t>(std::clamp(osc / 4.0, 4.0, 4096.0));
    const auto r = integrate_panels(integrand, 0.0, t_end, 1e-15, start, 1u << 16);
    return r.value * std::exp(ell_peak - z);
}

inline cplx k_complex_series(cplx nu, cplx z) {
    const double n = std::round(nu.real());
    const cplx delta = nu - n;
    const int order = static_cast<int>(std::abs(n));
    auto integer_k = [&] {
        const auto k = k_series_integer(order, z);
        return cplx(static_cast<double>(k.real()), static_cast<double>(k.imag()));
    };
    if (delta == 0.0) return integer_k();
    if (std::abs(delta) >= 1e-5) return k_complex_nonint_series(nu, z);
    // Quadratic interpolation through K_n and K_{n±h} along the direction of δ;
    // the reflection formula loses 1/|sin νπ| digits this close to an integer.
    const double h = 1e-3;
    const cplx dir = delta / std::abs(delta);
    const cplx k0 = integer_k();
    const cplx kp = k_complex_nonint_series(n + h * dir, z);
    const cplx km = k_complex_nonint_series(n - h * dir, z);
    const double t = std::abs(delta) / h;
    return k0 + 0.5 * t * (kp - km) + 0.5 * t * t * (kp - 2.0 * k0 + km);
}

}  // namespace detail

/// K_ν(z) for complex order and argument, |arg z| < π − 0.01.
inline Evaluated<cplx> bessel_k_complex_eval(cplx nu, cplx z) {
    if (z == 0.0) throw DomainError("bessel_k_complex: z = 0");
    if (std::abs(std::arg(z)) > pi - 0.01)
        throw DomainError("bessel_k_complex: argument too close to the branch cut");
    Evaluated<cplx> out;
    if (nu.real() < 0.0) nu = -nu;  // K_{-ν} = K_ν
    if (std::abs(z) >= 12.0) {
        const auto a = detail::hankel_sum<cplx>(nu * nu, 1.0 / z, 1.0);
        if (a.converged) {
            out.value = std::sqrt(pi / (2.0 * z)) * std::exp(-z) * a.sum;
            out.accuracy = {1e-8, 1e-15, Method::asymptotic};
            return out;
        }
    }
    if (z.real() >= 2.0) {
        out.value = detail::k_complex_integral(nu, z);
        out.accuracy = {1e-8, 1e-13, Method::integral};
        return out;
    }
    out.value = detail::k_complex_series(nu, z);
    // Alternating terms grow like e^{|z|} before cancelling; long double absorbs most of it.
    out.accuracy = {1e-8, 1e-19 * std::exp(std::abs(z)) + 1e-15, Method::series};
    out.degraded = out.accuracy.achieved_rel > out.accuracy.target_rel;
    return out;
}

inline cplx bessel_k_complex(cplx nu, cplx z) { return bessel_k_complex_eval(nu, z).value; }

}  // namespace darboux::specfun
