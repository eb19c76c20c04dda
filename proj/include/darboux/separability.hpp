#pragma once

// Orthogonal charts of Euclidean 3-space and a numerical audit of
// Hamilton–Jacobi separability for the Darboux metrics F(u)(dx²+dy²+dz²).
//
// Which Cartesian axis plays u: D3dI uses u = z + a for every chart (chart
// origin on the wall plane). D3dII uses u = z, except for the parabolic and
// paraboloidal charts where only 1/x² separates, so u = x there.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <algorithm>
#include <vector>

#include "darboux/core.hpp"
#include "darboux/geometry.hpp"
#include "darboux/rng.hpp"
#include "darboux/specfun/jacobi.hpp"

namespace darboux {

enum class ChartId {
    cartesian,
    circular_polar,
    circular_elliptic,
    circular_parabolic,
    sphero_conical,
    spherical,
    parabolic,
    prolate_spheroidal,
    oblate_spheroidal,
    ellipsoidal,
    paraboloidal,
    rotated_rq,      // D3dI only; reported as not implemented
    sheared_control  // x = ξ + 0.3ηζ, y = η, z = ζ; not orthogonal
};

inline const char* to_string(ChartId id) {
    switch (id) {
        case ChartId::cartesian: return "cartesian";
        case ChartId::circular_polar: return "circular_polar";
        case ChartId::circular_elliptic: return "circular_elliptic";
        case ChartId::circular_parabolic: return "circular_parabolic";
        case ChartId::sphero_conical: return "sphero_conical";
        case ChartId::spherical: return "spherical";
        case ChartId::parabolic: return "parabolic";
        case ChartId::prolate_spheroidal: return "prolate_spheroidal";
        case ChartId::oblate_spheroidal: return "oblate_spheroidal";
        case ChartId::ellipsoidal: return "ellipsoidal";
        case ChartId::paraboloidal: return "paraboloidal";
        case ChartId::rotated_rq: return "rotated_rq";
        case ChartId::sheared_control: return "sheared_control";
    }
    return "?";
}

enum class UAxis { x, z };

struct Chart {
    ChartId id = ChartId::cartesian;
    double d = 1.0;                        // focal distance (elliptic, spheroidal, paraboloidal)
    double k = 0.6;                        // modulus (sphero-conical)
    double sa = 2.0, sb = std::sqrt(2.0), sc = 1.0;  // semi-axes a > b > c (ellipsoidal)
    std::array<double, 3> lo{}, hi{};      // sampling box in chart coordinates
    std::string coordinates;               // names, in order
};

using ChartPoint = std::array<double, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

namespace detail {

/// Forward-mode dual number for exact chart Jacobians.
struct Dual {
    double v = 0.0, d = 0.0;
    Dual() = default;
    Dual(double value, double der = 0.0) : v(value), d(der) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Dual cosh(Dual a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }
inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, 0.5 * a.d / s};
}

struct SnCnDn {
    Dual sn, cn, dn;
};

inline SnCnDn jacobi(Dual x, double k) {
    const auto t = specfun::jacobi_sn_cn_dn(x.v, k);
    return {{t.sn, t.cn * t.dn * x.d}, {t.cn, -t.sn * t.dn * x.d}, {t.dn, -k * k * t.sn * t.cn * x.d}};
}

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;
using std::sqrt;

template <typename T>
std::array<T, 3> chart_map(const Chart& c, const std::array<T, 3>& q) {
    const T& q0 = q[0];
    const T& q1 = q[1];
    const T& q2 = q[2];
    const double d = c.d;
    switch (c.id) {
        case ChartId::cartesian: return {q0, q1, q2};
        case ChartId::circular_polar: return {q0 * cos(q1), q0 * sin(q1), q2};  // (ρ, φ, z)
        case ChartId::circular_elliptic:  // (μ, ν, z)
            return {d * cosh(q0) * cos(q1), d * sinh(q0) * sin(q1), q2};
        case ChartId::circular_parabolic:  // (ξ, η, z)
            return {0.5 * (q1 * q1 - q0 * q0), q0 * q1, q2};
        case ChartId::sphero_conical: {  // (r, α, β)
            const double kp = std::sqrt((1.0 - c.k) * (1.0 + c.k));
            T sa, ca, da, sb, cb, db;
            if constexpr (std::is_same_v<T, Dual>) {
                const auto ja = jacobi(q1, c.k);
                const auto jb = jacobi(q2, kp);
                sa = ja.sn, ca = ja.cn, da = ja.dn, sb = jb.sn, cb = jb.cn, db = jb.dn;
            } else {
                const auto ja = specfun::jacobi_sn_cn_dn(q1, c.k);
                const auto jb = specfun::jacobi_sn_cn_dn(q2, kp);
                sa = ja.sn, ca = ja.cn, da = ja.dn, sb = jb.sn, cb = jb.cn, db = jb.dn;
            }
            return {q0 * sa * db, q0 * ca * cb, q0 * da * sb};
        }
        case ChartId::spherical:  // (r, ϑ, φ)
            return {q0 * sin(q1) * cos(q2), q0 * sin(q1) * sin(q2), q0 * cos(q1)};
        case ChartId::parabolic:  // (ξ, η, φ)
            return {q0 * q1 * cos(q2), q0 * q1 * sin(q2), 0.5 * (q1 * q1 - q0 * q0)};
        case ChartId::prolate_spheroidal:  // (μ, ν, φ)
            return {d * sinh(q0) * sin(q1) * cos(q2), d * sinh(q0) * sin(q1) * sin(q2), d * cosh(q0) * cos(q1)};
        case ChartId::oblate_spheroidal:  // (μ, ν, φ)
            return {d * cosh(q0) * sin(q1) * cos(q2), d * cosh(q0) * sin(q1) * sin(q2), d * sinh(q0) * cos(q1)};
        case ChartId::ellipsoidal: {  // confocal parameters (ρ1, ρ2, ρ3), ρ1 < c² < ρ2 < b² < ρ3 < a²
            const double A = c.sa * c.sa, B = c.sb * c.sb, C = c.sc * c.sc;
            const T x2 = (A - q0) * (A - q1) * (A - q2) / ((A - B) * (A - C));
            const T y2 = (B - q0) * (B - q1) * (B - q2) / ((B - A) * (B - C));
            const T z2 = (C - q0) * (C - q1) * (C - q2) / ((C - A) * (C - B));
            return {sqrt(x2), sqrt(y2), sqrt(z2)};
        }
        case ChartId::paraboloidal:  // (α, β, γ)
            return {2.0 * d * cosh(q0) * cos(q1) * sinh(q2), 2.0 * d * sinh(q0) * sin(q1) * cosh(q2),
                    d * (cosh(q0) * cosh(q0) + cos(q1) * cos(q1) - cosh(q2) * cosh(q2))};
        case ChartId::sheared_control: return {q0 + 0.3 * q1 * q2, q1, q2};
        case ChartId::rotated_rq: break;
    }
    throw DomainError(std::string("chart not implemented: ") + to_string(c.id));
}

}  // namespace detail

inline UAxis u_axis(Space space, ChartId id) {
    if (space == Space::D3dII && (id == ChartId::parabolic || id == ChartId::paraboloidal)) return UAxis::x;
    return UAxis::z;
}

/// Charts with their documented sampling boxes.
inline Chart make_chart(ChartId id) {
    Chart c;
    c.id = id;
    const double twopi = 2.0 * pi;
    switch (id) {
        case ChartId::cartesian: c.lo = {-2, -2, 0.2}, c.hi = {2, 2, 3}, c.coordinates = "x,y,z"; break;
        case ChartId::circular_polar: c.lo = {0.3, 0, 0.2}, c.hi = {2, twopi, 3}, c.coordinates = "rho,phi,z"; break;
        case ChartId::circular_elliptic: c.lo = {0.2, 0.1, 0.2}, c.hi = {1.5, pi - 0.1, 3}, c.coordinates = "mu,nu,z"; break;
        case ChartId::circular_parabolic: c.lo = {0.2, 0.2, 0.2}, c.hi = {2, 2, 3}, c.coordinates = "xi,eta,z"; break;
        case ChartId::sphero_conical: {
            const double kp = std::sqrt(1.0 - c.k * c.k);
            c.lo = {0.5, 0.1, 0.1};
            c.hi = {3, std::comp_ellint_1(c.k) - 0.1, std::comp_ellint_1(kp) - 0.1};
            c.coordinates = "r,alpha,beta";
            break;
        }
        case ChartId::spherical: c.lo = {0.5, 0.2, 0}, c.hi = {3, pi - 0.2, twopi}, c.coordinates = "r,theta,phi"; break;
        case ChartId::parabolic: c.lo = {0.3, 0.3, -1.2}, c.hi = {2, 2, 1.2}, c.coordinates = "xi,eta,phi"; break;
        case ChartId::prolate_spheroidal:
            c.lo = {0.2, 0.2, 0}, c.hi = {1.5, pi - 0.2, twopi}, c.coordinates = "mu,nu,phi";
            break;
        case ChartId::oblate_spheroidal:
            c.lo = {0.2, 0.2, 0}, c.hi = {1.5, pi - 0.2, twopi}, c.coordinates = "mu,nu,phi";
            break;
        case ChartId::ellipsoidal: {
            const double A = c.sa * c.sa, B = c.sb * c.sb, C = c.sc * c.sc;
            c.lo = {-6.0, C + 0.1, B + 0.1};
            c.hi = {C - 0.1, B - 0.1, A - 0.1};
            c.coordinates = "rho1,rho2,rho3";
            break;
        }
        case ChartId::paraboloidal:
            c.lo = {0.1, 0.1, 0.1}, c.hi = {1.2, 0.5 * pi - 0.1, 1.2}, c.coordinates = "alpha,beta,gamma";
            break;
        case ChartId::sheared_control: c.lo = {-1.5, -1.5, 0.2}, c.hi = {1.5, 1.5, 3}, c.coordinates = "xi,eta,zeta"; break;
        case ChartId::rotated_rq: c.coordinates = "r,q,w"; break;
    }
    return c;
}

inline std::vector<ChartId> table_charts() {
    return {ChartId::cartesian,      ChartId::circular_polar,     ChartId::circular_elliptic,
            ChartId::circular_parabolic, ChartId::sphero_conical, ChartId::spherical,
            ChartId::parabolic,      ChartId::prolate_spheroidal, ChartId::oblate_spheroidal,
            ChartId::ellipsoidal,    ChartId::paraboloidal};
}

inline std::array<double, 3> chart_to_cartesian(const Chart& chart, const ChartPoint& q) {
    if (chart.id == ChartId::sphero_conical && !(chart.k >= 0.0 && chart.k <= 1.0))
        throw DomainError("sphero-conical modulus outside [0, 1]");
    if (chart.id == ChartId::ellipsoidal) {
        const double A = chart.sa * chart.sa, B = chart.sb * chart.sb, C = chart.sc * chart.sc;
        if (!(q[0] < C && C < q[1] && q[1] < B && B < q[2] && q[2] < A))
            throw DomainError("ellipsoidal: need rho1 < c² < rho2 < b² < rho3 < a²");
    }
    return detail::chart_map<double>(chart, q);
}

/// u as a function of Cartesian position for the given space.
inline double u_of(const SpaceParams& params, ChartId id, const std::array<double, 3>& x) {
    const double axis = u_axis(params.space, id) == UAxis::x ? x[0] : x[2];
    return params.space == Space::D3dI ? axis + params.a : axis;
}

inline Matrix3 chart_jacobian(const Chart& chart, const ChartPoint& q) {
    Matrix3 j{};  // j[k][i] = ∂x_k/∂q_i
    for (int i = 0; i < 3; ++i) {
        std::array<detail::Dual, 3> qd{detail::Dual(q[0]), detail::Dual(q[1]), detail::Dual(q[2])};
        qd[i].d = 1.0;
        const auto x = detail::chart_map<detail::Dual>(chart, qd);
        for (int k = 0; k < 3; ++k) j[k][i] = x[k].d;
    }
    return j;
}

struct InducedMetric {
    Matrix3 g{};
    double offdiag_rel = 0.0;  // max |g_ij| (i≠j) / trace
};

/// F(u) JᵀJ, J the exact chart Jacobian.
inline InducedMetric induced_metric(const SpaceParams& params, const Chart& chart, const ChartPoint& q) {
    const auto x = chart_to_cartesian(chart, q);
    const double u = u_of(params, chart.id, x);
    require_domain(params, u);
    const double f2 = conformal_factor_sq(params, {u, 0.0, 0.0});
    const auto j = chart_jacobian(chart, q);
    InducedMetric m;
    double det = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += j[k][a] * j[k][b];
            m.g[a][b] = f2 * s;
        }
    det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
          j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    const double trace = m.g[0][0] + m.g[1][1] + m.g[2][2];
    if (!(std::abs(det) > 1e-12)) throw DomainError("induced_metric: singular chart Jacobian");
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) m.offdiag_rel = std::max(m.offdiag_rel, std::abs(m.g[a][b]) / trace);
    return m;
}

namespace detail {

inline std::array<double, 3> inverse_diag(const SpaceParams& params, const Chart& chart, ChartPoint q) {
    const auto m = induced_metric(params, chart, q);
    return {1.0 / m.g[0][0], 1.0 / m.g[1][1], 1.0 / m.g[2][2]};
}

inline double lc_violation_at_step(const SpaceParams& params, const Chart& chart, const ChartPoint& q,
                                   const std::array<double, 3>& p, double h) {
    // G_k = 1/g_kk; H = ½ Σ p_k² G_k.
    auto G = [&](int i, double di, int j, double dj) {
        ChartPoint s = q;
        s[i] += di;
        s[j] += dj;
        return inverse_diag(params, chart, s);
    };
    std::array<std::array<double, 3>, 3> dG{};                      // dG[i][k] = ∂_i G_k
    std::array<std::array<std::array<double, 3>, 3>, 3> ddG{};      // ddG[i][j][k]
    const auto g0 = inverse_diag(params, chart, q);
    for (int i = 0; i < 3; ++i) {
        const auto m2 = G(i, -2 * h, i, 0), m1 = G(i, -h, i, 0), p1 = G(i, h, i, 0), p2 = G(i, 2 * h, i, 0);
        for (int k = 0; k < 3; ++k) {
            dG[i][k] = (m2[k] - 8 * m1[k] + 8 * p1[k] - p2[k]) / (12 * h);
            ddG[i][i][k] = (-m2[k] + 16 * m1[k] - 30 * g0[k] + 16 * p1[k] - p2[k]) / (12 * h * h);
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            // Richardson pair of the 4-point cross stencil at h and 2h.
            std::array<double, 3> acc{};
            const double w1 = 16.0, w2 = -1.0;
            for (int s = -1; s <= 1; s += 2)
                for (int t = -1; t <= 1; t += 2) {
                    const auto a = G(i, s * h, j, t * h);
                    const auto b = G(i, 2 * s * h, j, 2 * t * h);
                    for (int k = 0; k < 3; ++k) acc[k] += s * t * (w1 * a[k] + w2 * b[k]);
                }
            for (int k = 0; k < 3; ++k) {
                ddG[i][j][k] = acc[k] / (48.0 * h * h);
                ddG[j][i][k] = ddG[i][j][k];
            }
        }
    std::array<double, 3> Hp{}, Hq{};
    Matrix3 Hqq{}, Hqp{};  // Hqp[i][j] = ∂²H/∂q_i∂p_j
    for (int i = 0; i < 3; ++i) {
        Hp[i] = p[i] * g0[i];
        for (int k = 0; k < 3; ++k) Hq[i] += 0.5 * p[k] * p[k] * dG[i][k];
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) Hqq[i][j] += 0.5 * p[k] * p[k] * ddG[i][j][k];
            Hqp[i][j] = p[j] * dG[i][j];
        }
    }
    auto maxabs3 = [](const std::array<double, 3>& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); };
    auto maxabs33 = [&](const Matrix3& m) { return std::max({maxabs3(m[0]), maxabs3(m[1]), maxabs3(m[2])}); };
    const double np = maxabs3(Hp), nq = maxabs3(Hq);
    const double scale = maxabs33(Hqq) * np * np + 2.0 * maxabs33(Hqp) * np * nq + maxabs3(g0) * nq * nq + 1e-300;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            // H_{p_i p_j} = 0 for i ≠ j with a diagonal metric.
            const double l = Hqq[i][j] * Hp[i] * Hp[j] - Hqp[i][j] * Hp[i] * Hq[j] - Hqp[j][i] * Hq[i] * Hp[j];
            worst = std::max(worst, std::abs(l) / scale);
        }
    return worst;
}

}  // namespace detail

/// Scaled Levi-Civita expression max_{i≠j} |L_ij| for H = ½ Σ p_i²/g_ii, with
/// derivatives of 1/g_ii by 4th-order differences at steps h and 2h; the
/// larger of the two results is returned.
inline double levi_civita_violation(const SpaceParams& params, const Chart& chart, const ChartPoint& q,
                                    const std::array<double, 3>& momenta, double h = 3e-4) {
    if (momenta[0] == 0.0 && momenta[1] == 0.0 && momenta[2] == 0.0)
        throw DomainError("levi_civita_violation: momenta must be nonzero");
    if (induced_metric(params, chart, q).offdiag_rel > 1e-8)
        throw DomainError("levi_civita_violation: induced metric is not diagonal");
    return std::max(detail::lc_violation_at_step(params, chart, q, momenta, h),
                    detail::lc_violation_at_step(params, chart, q, momenta, 2.0 * h));
}

enum class Verdict { separates, fails, not_implemented };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::separates: return "separates";
        case Verdict::fails: return "fails";
        case Verdict::not_implemented: return "not_implemented";
    }
    return "?";
}

inline constexpr double separability_lc_threshold = 1e-6;
inline constexpr double separability_diag_threshold = 1e-8;

struct SeparabilityReport {
    ChartId chart = ChartId::cartesian;
    double diag_violation = 0.0;
    double levi_civita_violation = 0.0;  // NaN when diagonality already failed or not implemented
    Verdict verdict = Verdict::fails;
    int points_tested = 0;
    std::uint64_t seed = 0;
};

/// Audits one chart at n_points random interior points (rejection-sampled from
/// the chart's box, keeping those with u at least 0.2 inside the domain) with
/// random unit momenta.
inline SeparabilityReport audit_chart(const SpaceParams& params, const Chart& chart, int n_points, std::uint64_t seed) {
    params.validate();
    SeparabilityReport rep;
    rep.chart = chart.id;
    rep.seed = seed;
    if (chart.id == ChartId::rotated_rq) {
        rep.verdict = Verdict::not_implemented;
        rep.diag_violation = rep.levi_civita_violation = std::nan("");
        return rep;
    }
    CounterRng rng(seed ^ (static_cast<std::uint64_t>(chart.id) << 56));
    std::vector<std::pair<ChartPoint, std::array<double, 3>>> samples;
    for (int tries = 0; static_cast<int>(samples.size()) < n_points && tries < 1000 * n_points; ++tries) {
        ChartPoint q;
        for (int i = 0; i < 3; ++i) q[i] = rng.uniform(chart.lo[i], chart.hi[i]);
        const double zc = rng.uniform(-1.0, 1.0), ph = rng.uniform(0.0, 2.0 * pi);
        const double rr = std::sqrt(1.0 - zc * zc);
        const std::array<double, 3> mom{rr * std::cos(ph), rr * std::sin(ph), zc};
        const double u = u_of(params, chart.id, chart_to_cartesian(chart, q));
        if (!(u > params.u_min() + 0.2) || (params.space == Space::D3dII && !(u > 0.2))) continue;
        samples.emplace_back(q, mom);
    }
    if (samples.empty()) throw DomainError(std::string("audit_chart: no admissible sample points for ") + to_string(chart.id));
    rep.points_tested = static_cast<int>(samples.size());
    for (const auto& [q, mom] : samples) rep.diag_violation = std::max(rep.diag_violation, induced_metric(params, chart, q).offdiag_rel);
    if (rep.diag_violation > separability_diag_threshold) {
        rep.levi_civita_violation = std::nan("");
        rep.verdict = Verdict::fails;
        return rep;
    }
    for (const auto& [q, mom] : samples)
        rep.levi_civita_violation = std::max(rep.levi_civita_violation, levi_civita_violation(params, chart, q, mom));
    rep.verdict = rep.levi_civita_violation <= separability_lc_threshold ? Verdict::separates : Verdict::fails;
    return rep;
}

/// The eleven standard charts for the space, in fixed order; D3dI additionally lists
/// the rotated (r,q,w) system as not implemented.
inline std::vector<SeparabilityReport> separability_report(const SpaceParams& params, int n_points, std::uint64_t seed) {
    std::vector<SeparabilityReport> out;
    for (ChartId id : table_charts()) out.push_back(audit_chart(params, make_chart(id), n_points, seed));
    if (params.space == Space::D3dI) out.push_back(audit_chart(params, make_chart(ChartId::rotated_rq), n_points, seed));
    return out;
}

}  // namespace darboux
