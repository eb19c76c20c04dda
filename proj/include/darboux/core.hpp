#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace darboux {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Input outside the domain of a formula (coordinate, parameter or branch).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative or quadrature scheme failed to reach its target accuracy.
/// `partial` carries the best value obtained and `achieved` its error estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial = std::nan(""),
                     double achieved = std::nan(""))
        : std::runtime_error(what), partial(partial), achieved(achieved) {}

    double partial;
    double achieved;
};

struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;

    /// ħ²/2m, the kinetic prefactor that appears everywhere.
    double kinetic() const { return hbar * hbar / (2.0 * mass); }

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw DomainError("physical constants must be strictly positive");
    }
};

enum class Space { D3dI, D3dII };

inline const char* to_string(Space s) { return s == Space::D3dI ? "d3d1" : "d3d2"; }

/// Which Darboux space, its real parameters and the physical constants.
/// For D3dI only `a` is used and must be positive (domain u > a). For D3dII
/// `b` must be positive and points need b u² − a > 0; spectral operations
/// additionally need a < 0.
struct SpaceParams {
    Space space = Space::D3dI;
    double a = 1.0;
    double b = 0.0;
    PhysicalConstants constants{};

    static SpaceParams d3d1(double a, PhysicalConstants c = {}) { return {Space::D3dI, a, 0.0, c}; }
    static SpaceParams d3d2(double a, double b, PhysicalConstants c = {}) {
        return {Space::D3dII, a, b, c};
    }

    void validate() const {
        constants.validate();
        if (space == Space::D3dI && !(a > 0.0))
            throw DomainError("D3dI requires a > 0");
        if (space == Space::D3dII && !(b > 0.0))
            throw DomainError("D3dII requires b > 0");
    }

    /// Lower edge of the u range (exclusive).
    double u_min() const {
        if (space == Space::D3dI) return a;
        // b u² − a > 0 holds for every u > 0 when a ≤ 0.
        return a <= 0.0 ? 0.0 : std::sqrt(a / b);
    }

    bool contains(double u) const { return u > u_min() && (space == Space::D3dI || u > 0.0); }
};

struct Point3 {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};

inline void require_domain(const SpaceParams& params, double u, double margin = 0.0) {
    if (!std::isfinite(u) || !(u - margin > params.u_min()))
        throw DomainError("u = " + std::to_string(u) + " outside the domain (u > " +
                          std::to_string(params.u_min()) +
                          (margin > 0.0 ? " with stencil margin " + std::to_string(margin) : "") +
                          ")");
}

}  // namespace darboux
