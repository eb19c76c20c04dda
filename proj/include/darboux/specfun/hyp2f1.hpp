#pragma once

// Gauss hypergeometric function 2F1(a, b; c; z) for complex parameters and
// real z < 1.
//
//   |z| <= 0.5       : direct series
//   -1 <= z < -0.5   : Pfaff  (1−z)^{-a} F(a, c−b; c; z/(z−1))
//   z < -1           : Pfaff, then the 1−w connection formula, which needs
//                      b − a off the integers (b − a = ip for the mPT states)
//   0.5 < z < 1      : 1−z connection formula
// When the connection formula is degenerate the Pfaff series is summed
// directly, which converges slowly as z -> −∞ and may raise ConvergenceError.

#include <cmath>
#include <complex>

#include "darboux/core.hpp"
#include "darboux/specfun/gamma.hpp"

namespace darboux::specfun {

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

inline bool near_integer_c(cplx z, double band) {
    return std::abs(z.imag()) < band && std::abs(z.real() - std::round(z.real())) < band;
}

inline cplx hyp2f1_series(cplx a, cplx b, cplx c, double z, long max_terms = 20000) {
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    for (long n = 0; n < max_terms; ++n) {
        const double nd = static_cast<double>(n);
        term *= (a + nd) * (b + nd) / ((c + nd) * (nd + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;  // terminating
        // Only trust the stopping test once the ratio has settled below one.
        const double ratio = std::abs((a + nd + 1.0) * (b + nd + 1.0) / ((c + nd + 1.0) * (nd + 2.0)) * z);
        if (ratio < 1.0 && std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hyp2f1: series did not converge", std::abs(sum), std::abs(term) / std::abs(sum));
}

// F(A,B;C;w) through F(...;1−w); requires C−A−B off the integers.
inline cplx hyp2f1_one_minus(cplx A, cplx B, cplx C, double w) {
    const double y = 1.0 - w;
    const cplx s = C - A - B;
    const cplx g1 = gamma_complex(C) * gamma_complex(s) * rgamma_complex(C - A) * rgamma_complex(C - B);
    const cplx g2 = gamma_complex(C) * gamma_complex(-s) * rgamma_complex(A) * rgamma_complex(B);
    cplx out = g1 * hyp2f1_series(A, B, 1.0 - s, y);
    if (g2 != 0.0) out += g2 * std::pow(cplx(y, 0.0), s) * hyp2f1_series(C - A, C - B, s + 1.0, y);
    return out;
}

}  // namespace detail

inline cplx hyp2f1(cplx a, cplx b, cplx c, double z) {
    if (detail::is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
    if (!(z < 1.0)) throw DomainError("hyp2f1: z must be < 1");
    if (z == 0.0) return {1.0, 0.0};
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
        return detail::hyp2f1_series(a, b, c, z);  // polynomial
    if (std::abs(z) <= 0.5) return detail::hyp2f1_series(a, b, c, z);
    if (z > 0.5) {
        if (detail::near_integer_c(c - a - b, 1e-6)) return detail::hyp2f1_series(a, b, c, z, 2000000);
        return detail::hyp2f1_one_minus(a, b, c, z);
    }
    const double w = z / (z - 1.0);
    const cplx pre = std::pow(cplx(1.0 - z, 0.0), -a);
    const cplx b2 = c - b;
    if (w <= 0.5 || detail::near_integer_c(b - a, 1e-6))
        return pre * detail::hyp2f1_series(a, b2, c, w, 2000000);
    return pre * detail::hyp2f1_one_minus(a, b2, c, w);
}

}  // namespace darboux::specfun
