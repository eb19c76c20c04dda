#pragma once

// Slow, independent numerics used to check the closed forms: a two-solution
// grid resolvent, finite-difference residuals, the full curved Hamiltonian,
// and Gauss–Kronrod adaptive quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "darboux/core.hpp"
#include "darboux/geometry.hpp"

namespace darboux {

struct Grid1D {
    double x0 = 0.0;
    double x1 = 1.0;
    int n = 1000;

    double spacing() const { return (x1 - x0) / n; }
    double node(int j) const { return x0 + j * spacing(); }

    void validate() const {
        if (!(x0 < x1)) throw DomainError("grid: x0 must be below x1");
        if (n < 16) throw DomainError("grid: at least 16 intervals required");
    }
};

enum class BoundaryKind {
    dirichlet,             // y(location) = 0
    decaying_at_infinity,  // right end only: WKB-recessive seed at the grid edge
    power_law,             // left end only: y ~ x^exponent (1 + correction x²), regular singular point at 0
};

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::dirichlet;
    double location = 0.0;  // +∞ for decaying_at_infinity
    double exponent = 0.0;
    double correction = 0.0;

    static BoundaryCondition dirichlet(double x) { return {BoundaryKind::dirichlet, x, 0.0, 0.0}; }
    static BoundaryCondition decaying() {
        return {BoundaryKind::decaying_at_infinity, std::numeric_limits<double>::infinity(), 0.0, 0.0};
    }
    static BoundaryCondition power_law(double s, double c = 0.0) { return {BoundaryKind::power_law, 0.0, s, c}; }
};

struct ResolventValue {
    double value = 0.0;
    double err = 0.0;
};

class NearEigenvalueError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

namespace detail {

/// y'' = q(x) y integrated by classical RK4 on (y, y'), with the running
/// magnitude kept in a separate log so that exponential growth never overflows.
class ShootingSolution {
public:
    struct Node {
        double y, dy, log_scale;
    };

    ShootingSolution(std::function<double(double)> q, const Grid1D& grid, bool forward, double y0, double dy0)
        : q_(std::move(q)), grid_(grid), forward_(forward), nodes_(grid.n + 1) {
        const double h = grid.spacing();
        int j = forward ? 0 : grid.n;
        Node cur{y0, dy0, 0.0};
        nodes_[j] = cur;
        for (int step = 0; step < grid.n; ++step) {
            const double x = grid.node(j);
            const double hs = forward ? h : -h;
            rk4(x, hs, cur.y, cur.dy);
            const double mag = std::abs(cur.y) + std::abs(cur.dy) * h;
            if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
                cur.y /= mag;
                cur.dy /= mag;
                cur.log_scale += std::log(mag);
            }
            j += forward ? 1 : -1;
            nodes_[j] = cur;
        }
    }

    /// (y, y', log scale) at arbitrary x inside the grid, by a partial step
    /// from the nearest node on the integration side.
    Node at(double x) const {
        const double h = grid_.spacing();
        double t = (x - grid_.x0) / h;
        int j = forward_ ? static_cast<int>(std::floor(t)) : static_cast<int>(std::ceil(t));
        j = std::clamp(j, 0, grid_.n);
        Node n = nodes_[j];
        const double dx = x - grid_.node(j);
        if (dx != 0.0) rk4(grid_.node(j), dx, n.y, n.dy);
        return n;
    }

    const Node& node(int j) const { return nodes_[j]; }

private:
    void rk4(double x, double h, double& y, double& dy) const {
        const double k1y = dy, k1d = q_(x) * y;
        const double k2y = dy + 0.5 * h * k1d, k2d = q_(x + 0.5 * h) * (y + 0.5 * h * k1y);
        const double k3y = dy + 0.5 * h * k2d, k3d = q_(x + 0.5 * h) * (y + 0.5 * h * k2y);
        const double k4y = dy + h * k3d, k4d = q_(x + h) * (y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }

    std::function<double(double)> q_;
    Grid1D grid_;
    bool forward_;
    std::vector<Node> nodes_;
};

class SingleGridResolvent {
public:
    SingleGridResolvent(const std::function<double(double)>& q, const Grid1D& grid, const BoundaryCondition& left,
                        const BoundaryCondition& right, double prefactor)
        : prefactor_(prefactor),
          left_(q, grid, true, left_seed(left, grid).first, left_seed(left, grid).second),
          right_(q, grid, false, right_seed(q, right, grid).first, right_seed(q, right, grid).second) {
        // Wronskian at the grid midpoint; it is constant up to the RK4 error.
        const int mid = grid.n / 2;
        const auto& l = left_.node(mid);
        const auto& r = right_.node(mid);
        const double w = l.dy * r.y - l.y * r.dy;
        const double scale = std::abs(l.dy * r.y) + std::abs(l.y * r.dy);
        if (!(std::abs(w) > 1e-12 * scale))
            throw NearEigenvalueError("grid_resolvent_1d: Wronskian vanishes, eigenparameter is near an eigenvalue",
                                      w, scale);
        w_ = w;
        w_log_ = l.log_scale + r.log_scale;
    }

    double operator()(double xa, double xb) const {
        const double lo = std::min(xa, xb), hi = std::max(xa, xb);
        const auto l = left_.at(lo);
        const auto r = right_.at(hi);
        return prefactor_ * l.y * r.y / w_ * std::exp(l.log_scale + r.log_scale - w_log_);
    }

private:
    static std::pair<double, double> left_seed(const BoundaryCondition& bc, const Grid1D& grid) {
        switch (bc.kind) {
            case BoundaryKind::dirichlet:
                if (std::abs(bc.location - grid.x0) > 1e-12 * std::max(1.0, std::abs(grid.x0)))
                    throw DomainError("grid_resolvent_1d: Dirichlet point must be the left grid edge");
                return {0.0, 1.0};
            case BoundaryKind::power_law: {
                const double x = grid.x0;
                if (!(x > 0.0)) throw DomainError("grid_resolvent_1d: power-law seed needs x0 > 0");
                const double s = bc.exponent, c = bc.correction;
                const double y = std::pow(x, s) * (1.0 + c * x * x);
                const double dy = std::pow(x, s - 1.0) * (s + c * (s + 2.0) * x * x);
                const double mag = std::abs(y) + std::abs(dy) * grid.spacing();
                return {y / mag, dy / mag};
            }
            case BoundaryKind::decaying_at_infinity:
                break;
        }
        throw DomainError("grid_resolvent_1d: decaying condition is only valid at the right end");
    }

    static std::pair<double, double> right_seed(const std::function<double(double)>& q,
                                                const BoundaryCondition& bc, const Grid1D& grid) {
        if (bc.kind == BoundaryKind::dirichlet) {
            if (std::abs(bc.location - grid.x1) > 1e-12 * std::max(1.0, std::abs(grid.x1)))
                throw DomainError("grid_resolvent_1d: Dirichlet point must be the right grid edge");
            return {0.0, -1.0};
        }
        if (bc.kind != BoundaryKind::decaying_at_infinity)
            throw DomainError("grid_resolvent_1d: power-law condition is only valid at the left end");
        const double x = grid.x1;
        const double qx = q(x);
        if (!(qx > 0.0))
            throw ConvergenceError("grid_resolvent_1d: right edge is not in a classically forbidden region");
        // y'/y = −κ − κ'/(2κ), κ = √q
        const double dx = 1e-4 * std::max(1.0, std::abs(x));
        const double dq = (q(x + dx) - q(x - dx)) / (2.0 * dx);
        return {1.0, -std::sqrt(qx) - dq / (4.0 * qx)};
    }

    double prefactor_;
    ShootingSolution left_;
    ShootingSolution right_;
    double w_ = 1.0;
    double w_log_ = 0.0;
};

}  // namespace detail

/// Green function of −(ħ²/2m) y'' + V y − ε y on a grid: two shooting
/// solutions (left-regular, right-recessive) joined by their Wronskian.
/// Computed at n and 2n intervals; values are Richardson-combined and the
/// difference is the error estimate.
class GridResolvent {
public:
    GridResolvent(std::function<double(double)> potential, double eigenparam, const Grid1D& grid,
                  const BoundaryCondition& left, const BoundaryCondition& right, const PhysicalConstants& consts) {
        grid.validate();
        consts.validate();
        const double c = 1.0 / consts.kinetic();
        auto q = [potential = std::move(potential), eigenparam, c](double x) { return c * (potential(x) - eigenparam); };
        check_resolution(q, grid);
        Grid1D fine = grid;
        fine.n = 2 * grid.n;
        coarse_ = std::make_unique<detail::SingleGridResolvent>(q, grid, left, right, c);
        fine_ = std::make_unique<detail::SingleGridResolvent>(q, fine, left, right, c);
        x0_ = grid.x0;
        x1_ = grid.x1;
    }

    ResolventValue evaluate(double xa, double xb) const {
        if (xa < x0_ || xa > x1_ || xb < x0_ || xb > x1_) throw DomainError("grid_resolvent_1d: point outside grid");
        const double gc = (*coarse_)(xa, xb);
        const double gf = (*fine_)(xa, xb);
        return {(16.0 * gf - gc) / 15.0, std::abs(gf - gc) / 15.0 + 1e-15 * std::abs(gf)};
    }

    double operator()(double xa, double xb) const { return evaluate(xa, xb).value; }

private:
    static void check_resolution(const std::function<double(double)>& q, const Grid1D& grid) {
        const double h = grid.spacing();
        double worst = 0.0;
        for (int j = 0; j <= grid.n; ++j) worst = std::max(worst, h * std::sqrt(std::abs(q(grid.node(j)))));
        // Classical RK4 needs several steps per local e-folding or wavelength;
        // this also covers the ≥ 20 points per turning-point layer requirement.
        if (worst > 0.25)
            throw ConvergenceError("grid_resolvent_1d: grid does not resolve the local scale (h·sqrt|q| = " +
                                       std::to_string(worst) + ")",
                                   std::nan(""), worst);
    }

    std::unique_ptr<detail::SingleGridResolvent> coarse_;
    std::unique_ptr<detail::SingleGridResolvent> fine_;
    double x0_ = 0.0, x1_ = 0.0;
};

inline GridResolvent grid_resolvent_1d(std::function<double(double)> potential, double eigenparam,
                                       const Grid1D& grid, const BoundaryCondition& left,
                                       const BoundaryCondition& right, const PhysicalConstants& consts = {}) {
    return GridResolvent(std::move(potential), eigenparam, grid, left, right, consts);
}

/// sup over interior nodes of |−(ħ²/2m)ψ'' + Vψ − Eψ| / (|Eψ| + |Vψ| + ε).
/// ψ may be real or complex valued.
template <typename Psi>
double ode_residual(const Psi& psi, const std::function<double(double)>& potential, double eigenvalue,
                    const Grid1D& grid, const PhysicalConstants& consts = {}, double eps = 1e-300) {
    grid.validate();
    const double h = grid.spacing();
    const double kin = consts.kinetic();
    double worst = 0.0;
    for (int j = 2; j <= grid.n - 2; ++j) {
        const double x = grid.node(j);
        const auto fm2 = psi(x - 2.0 * h), fm1 = psi(x - h), f0 = psi(x), fp1 = psi(x + h), fp2 = psi(x + 2.0 * h);
        const auto d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        const double v = potential(x);
        const double num = std::abs(-kin * d2 + (v - eigenvalue) * f0);
        const double den = std::abs(eigenvalue * f0) + std::abs(v * f0) + eps;
        worst = std::max(worst, num / den);
    }
    return worst;
}

using Field3 = std::function<cplx(const Point3&)>;

/// (Hψ)(p) with the coefficients of hamiltonian_coefficients and 4th-order
/// central differences of step h in u, v and w.
inline cplx hamiltonian_apply(const SpaceParams& params, const Field3& psi, const Point3& p, double h = 1e-3) {
    if (!(h > 0.0)) throw DomainError("hamiltonian_apply: step must be positive");
    params.validate();
    require_domain(params, p.u, 2.0 * h);
    const auto hc = hamiltonian_coefficients(params, p);
    const cplx f0 = psi(p);
    auto along = [&](int axis, double d) {
        Point3 q = p;
        (axis == 0 ? q.u : axis == 1 ? q.v : q.w) += d;
        return psi(q);
    };
    auto second = [&](int axis) {
        return (-along(axis, -2 * h) + 16.0 * along(axis, -h) - 30.0 * f0 + 16.0 * along(axis, h) - along(axis, 2 * h)) /
               (12.0 * h * h);
    };
    const cplx du = (along(0, -2 * h) - 8.0 * along(0, -h) + 8.0 * along(0, h) - along(0, 2 * h)) / (12.0 * h);
    const cplx lap = second(0) + hc.first_order_u * du + second(1) + second(2);
    return -params.constants.kinetic() * hc.inv_f2 * lap + hc.kept_potential * f0;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Kronrod (7/15) quadrature

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

namespace detail {

struct GkSegment {
    double a, b, value, error;
    bool operator<(const GkSegment& o) const { return error < o.error; }
};

inline GkSegment gk15(const std::function<double(double)>& f, double a, double b) {
    static constexpr std::array<double, 8> xgk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wgk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082,
                                                 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    const double fc = f(c);
    double k = wgk[7] * fc, g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fs = f(c - hl * xgk[j]) + f(c + hl * xgk[j]);
        k += wgk[j] * fs;
        if (j % 2 == 1) g += wg[j / 2] * fs;
    }
    return {a, b, k * hl, std::abs((k - g) * hl)};
}

struct FiniteQuad {
    double value, error;
    int evaluations, intervals;
    bool converged;
};

inline FiniteQuad adaptive_finite(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                  double abs_tol, int max_intervals) {
    std::priority_queue<GkSegment> heap;
    heap.push(gk15(f, a, b));
    double value = heap.top().value, error = heap.top().error;
    int evals = 15;
    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (static_cast<int>(heap.size()) >= max_intervals) return {value, error, evals, static_cast<int>(heap.size()), false};
        const GkSegment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        const GkSegment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
        evals += 30;
        heap.push(l);
        heap.push(r);
        value += l.value + r.value - s.value;
        error += l.error + r.error - s.error;
        // exact re-sum now and then so the running totals do not drift
        if (heap.size() % 128 == 0) {
            value = 0.0;
            error = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error, evals, static_cast<int>(heap.size()), true};
}

}  // namespace detail

/// ∫_a^b f with bisection driven by the Kronrod–Gauss difference. For b = +∞
/// the range is split into [a, a+L], [a+L, a+3L], ... (doubling widths) and
/// the tail is truncated once two consecutive panels contribute less than
/// rel_tol·|total|/10 in total; the last panel's size enters the error.
inline QuadratureResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                                            double rel_tol = 1e-10, double abs_tol = 0.0,
                                            int max_intervals = 4000, double first_panel = 1.0) {
    if (!(b > a)) throw DomainError("adaptive_quadrature: empty interval");
    if (!std::isinf(b)) {
        const auto r = detail::adaptive_finite(f, a, b, rel_tol, abs_tol, max_intervals);
        if (!r.converged)
            throw ConvergenceError("adaptive_quadrature: subdivision limit reached", r.value, r.error);
        return {r.value, r.error, r.evaluations, r.intervals};
    }
    QuadratureResult out;
    double lo = a, width = first_panel;
    int small_panels = 0;
    for (int panel = 0; panel < 200; ++panel) {
        const auto r = detail::adaptive_finite(f, lo, lo + width, rel_tol, abs_tol, max_intervals);
        if (!r.converged)
            throw ConvergenceError("adaptive_quadrature: subdivision limit reached", out.value + r.value,
                                   out.error + r.error);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
        out.intervals += r.intervals;
        const bool small = std::abs(r.value) <= std::max(abs_tol, 0.1 * rel_tol * std::abs(out.value));
        small_panels = small ? small_panels + 1 : 0;
        if (small_panels >= 2) {
            out.error += std::abs(r.value);
            return out;
        }
        lo += width;
        width *= 2.0;
    }
    throw ConvergenceError("adaptive_quadrature: tail did not decay", out.value, out.error);
}

}  // namespace darboux
