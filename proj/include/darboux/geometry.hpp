#pragma once

// Metrics of the two conformally flat Darboux spaces, ds² = F(u)(du²+dv²+dw²):
//   D3dI : F = 2u,             u > a > 0
//   D3dII: F = (bu² − a)/u²,   b > 0, u > 0, bu² − a > 0
// f = √F throughout, φ = ln f.

#include <cmath>
#include <functional>

#include "darboux/core.hpp"

namespace darboux {

struct QuantumPotential {
    double dv_total = 0.0;
    double dv1 = 0.0;
    double dv2 = 0.0;
};

struct CurvatureReport {
    double r_closed = 0.0;
    double r_numeric = 0.0;
    double counterterm = 0.0;  // (ħ²/2m)(R/8) from r_closed
};

struct HamiltonianCoefficients {
    double inv_f2 = 0.0;
    double first_order_u = 0.0;
    double kept_potential = 0.0;
};

namespace detail {

inline void check_point(const SpaceParams& params, double u, double margin = 0.0) {
    params.validate();
    require_domain(params, u, margin);
}

/// φ = ln f and its first two u-derivatives in closed form.
struct LogFactor {
    double phi, d1, d2;
};

inline LogFactor log_factor(const SpaceParams& params, double u) {
    if (params.space == Space::D3dI)
        return {0.5 * std::log(2.0 * u), 0.5 / u, -0.5 / (u * u)};
    const double h2 = params.b * u * u - params.a;
    const double d1 = params.b * u / h2 - 1.0 / u;
    const double d2 = params.b / h2 - 2.0 * params.b * params.b * u * u / (h2 * h2) + 1.0 / (u * u);
    return {0.5 * std::log(h2) - std::log(u), d1, d2};
}

/// R = −(4/f²)(φ'' + ½φ'²) for a conformal factor depending on u only.
inline double conformal_curvature(double f2, double d1, double d2) {
    return -4.0 / f2 * (d2 + 0.5 * d1 * d1);
}

struct Derivs {
    double d1, d2;
};

/// Central 4th-order first and second derivatives.
inline Derivs central_derivs(const std::function<double(double)>& g, double x, double h) {
    const double fm2 = g(x - 2.0 * h), fm1 = g(x - h), f0 = g(x), fp1 = g(x + h), fp2 = g(x + 2.0 * h);
    return {(fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h),
            (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)};
}

}  // namespace detail

/// F = f², the conformal factor of the metric.
inline double conformal_factor_sq(const SpaceParams& params, const Point3& p) {
    detail::check_point(params, p.u);
    if (params.space == Space::D3dI) return 2.0 * p.u;
    return (params.b * p.u * p.u - params.a) / (p.u * p.u);
}

/// Γ_u = ∂_u ln √g = 3 ∂_u ln f (Γ_v = Γ_w = 0).
inline double gamma_u(const SpaceParams& params, const Point3& p) {
    detail::check_point(params, p.u);
    return 3.0 * detail::log_factor(params, p.u).d1;
}

/// ΔV_I = −3ħ²/(64mu³); for D3dII the pair ΔV₁ = ħ²/(8mh⁶)(2ab(u²−1) − 3b²u⁴),
/// ΔV₂ = 3ħ²/(8mh²), h² = bu² − a, exactly as printed. Their sum differs from
/// the general formula (delta_v_general) by abħ²(u²−1)/(4mh⁶).
inline QuantumPotential quantum_potential(const SpaceParams& params, const Point3& p) {
    detail::check_point(params, p.u);
    const double hb2m = params.constants.hbar * params.constants.hbar / params.constants.mass;
    const double u = p.u;
    QuantumPotential q;
    if (params.space == Space::D3dI) {
        q.dv1 = -3.0 * hb2m / (64.0 * u * u * u);
        q.dv_total = q.dv1;
        return q;
    }
    const double a = params.a, b = params.b;
    const double h2 = b * u * u - a;
    const double h6 = h2 * h2 * h2;
    q.dv1 = hb2m / (8.0 * h6) * (2.0 * a * b * (u * u - 1.0) - 3.0 * b * b * u * u * u * u);
    // f²u² = h²
    q.dv2 = 3.0 * hb2m / (8.0 * h2);
    q.dv_total = q.dv1 + q.dv2;
    return q;
}

/// ħ²(D−2)/(8m f⁴)·[(D−4)f'² + 2 f f''] from supplied derivatives.
inline double delta_v_general(double f, double df, double d2f, int dim, const PhysicalConstants& c = {}) {
    if (dim < 2) throw DomainError("delta_v_general: dimension must be at least 2");
    if (f == 0.0) throw DomainError("delta_v_general: singular metric, f(u) = 0");
    c.validate();
    const double f4 = f * f * f * f;
    return c.hbar * c.hbar * (dim - 2) / (8.0 * c.mass * f4) * ((dim - 4) * df * df + 2.0 * f * d2f);
}

/// Same, with f' and f'' from 4th-order central differences of step h.
inline double delta_v_general(const std::function<double(double)>& f, double u, int dim,
                              const PhysicalConstants& c = {}, double h = 1e-3) {
    const auto d = detail::central_derivs(f, u, h);
    return delta_v_general(f(u), d.d1, d.d2, dim, c);
}

/// f(u) = √F(u), for passing to delta_v_general.
inline std::function<double(double)> conformal_factor_fn(const SpaceParams& params) {
    return [params](double u) { return std::sqrt(conformal_factor_sq(params, {u, 0.0, 0.0})); };
}

/// Scalar curvature twice: r_closed from closed-form φ', φ''; r_numeric from
/// finite differences of f (steps h and h/2, Richardson-combined).
inline CurvatureReport scalar_curvature(const SpaceParams& params, const Point3& p, double h_step = 1e-3) {
    if (!(h_step > 0.0)) throw DomainError("scalar_curvature: step must be positive");
    detail::check_point(params, p.u, 2.0 * h_step);
    const double u = p.u;
    const double f2 = conformal_factor_sq(params, p);
    const auto lf = detail::log_factor(params, u);

    CurvatureReport rep;
    rep.r_closed = detail::conformal_curvature(f2, lf.d1, lf.d2);

    const auto f = conformal_factor_fn(params);
    auto numeric = [&](double h) {
        const auto d = detail::central_derivs(f, u, h);
        const double fu = f(u);
        // φ' = f'/f, φ'' = f''/f − (f'/f)²
        const double p1 = d.d1 / fu;
        const double p2 = d.d2 / fu - p1 * p1;
        return detail::conformal_curvature(fu * fu, p1, p2);
    };
    const double coarse = numeric(h_step);
    const double fine = numeric(0.5 * h_step);
    rep.r_numeric = (16.0 * fine - coarse) / 15.0;
    rep.counterterm = params.constants.kinetic() * rep.r_closed / 8.0;
    return rep;
}

/// Coefficients of H ψ = −(ħ²/2m)(1/F)(∂²_u + c ∂_u + ∂²_v + ∂²_w)ψ + V ψ,
/// with c = ∂_u ln f and V the potential left over after symmetric ordering:
/// (ħ²/2m)(R/8) for D3dI, (ħ²/2m)(R/8) + ΔV₂ for D3dII.
inline HamiltonianCoefficients hamiltonian_coefficients(const SpaceParams& params, const Point3& p) {
    detail::check_point(params, p.u);
    const double f2 = conformal_factor_sq(params, p);
    const auto lf = detail::log_factor(params, p.u);
    HamiltonianCoefficients hc;
    hc.inv_f2 = 1.0 / f2;
    hc.first_order_u = lf.d1;
    hc.kept_potential = params.constants.kinetic() * detail::conformal_curvature(f2, lf.d1, lf.d2) / 8.0;
    if (params.space == Space::D3dII) hc.kept_potential += quantum_potential(params, p).dv2;
    return hc;
}

}  // namespace darboux
