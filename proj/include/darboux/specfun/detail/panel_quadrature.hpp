#pragma once

// Composite Gauss-Legendre quadrature with panel doubling. Used inside the
// special-function kernel for integral representations; deliberately separate
// from oracle::adaptive_quadrature so that the two never share a code path.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

namespace darboux::specfun::detail {

inline constexpr std::size_t gl_order = 20;

struct GaussLegendreRule {
    std::array<double, gl_order> nodes{};
    std::array<double, gl_order> weights{};
};

inline const GaussLegendreRule& gauss_legendre_rule() {
    static const GaussLegendreRule rule = [] {
        GaussLegendreRule r;
        constexpr std::size_t n = gl_order;
        for (std::size_t i = 0; i < n; ++i) {
            double x = std::cos(3.14159265358979323846 * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-17) break;
            }
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

template <typename T>
struct PanelResult {
    T value{};
    double error = 0.0;
    double envelope = 0.0;  // integral of |f|, the scale against which cancellation is judged
    std::size_t nodes = 0;
    bool converged = false;
};

template <typename T, typename F>
void panel_sum(F&& f, double a, double b, std::size_t panels, T& sum, double& env) {
    const auto& rule = gauss_legendre_rule();
    const double width = (b - a) / static_cast<double>(panels);
    sum = T{};
    env = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double half = 0.5 * width;
        const double mid = lo + half;
        T local{};
        double local_env = 0.0;
        for (std::size_t i = 0; i < gl_order; ++i) {
            const T fx = f(mid + half * rule.nodes[i]);
            local += rule.weights[i] * fx;
            local_env += rule.weights[i] * std::abs(fx);
        }
        sum += half * local;
        env += half * local_env;
    }
}

/// Integrates f over [a, b], doubling the number of panels until two
/// successive results agree to `rel_tol` of the envelope.
template <typename F>
auto integrate_panels(F&& f, double a, double b, double rel_tol, std::size_t start_panels = 4,
                      std::size_t max_panels = 1u << 14) {
    using T = std::decay_t<decltype(f(a))>;
    PanelResult<T> out;
    std::size_t panels = start_panels;
    T prev{};
    double prev_env = 0.0;
    panel_sum(f, a, b, panels, prev, prev_env);
    out.nodes = panels * gl_order;
    while (panels < max_panels) {
        panels *= 2;
        T cur{};
        double env = 0.0;
        panel_sum(f, a, b, panels, cur, env);
        out.nodes += panels * gl_order;
        const double diff = std::abs(cur - prev);
        out.value = cur;
        out.envelope = env;
        out.error = diff;
        if (diff <= rel_tol * env || diff == 0.0) {
            out.converged = true;
            return out;
        }
        prev = cur;
    }
    return out;
}

}  // namespace darboux::specfun::detail
