#include <gtest/gtest.h>

#include <cmath>

#include "darboux/rng.hpp"
#include "darboux/spectral.hpp"
#include "darboux/verify.hpp"

using namespace darboux;
using darboux::verify::detail::d3di_mode_oracle;
using darboux::verify::detail::d3dii_mode_oracle;
using darboux::verify::detail::scaled_residual;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const SpaceParams d2 = SpaceParams::d3d2(-1.0, 1.0);

// Kontorovich–Lebedev: ∫ 2p sinh πp K_ip(x1)K_ip(x2)/(p² + λ²) dp = π² I_λ(x<) K_λ(x>)
double d3dii_mode_closed(const SpaceParams& p, double ksq, double e, double u1, double u2) {
    const double c = continuum_threshold(p);
    const double lam = std::sqrt(1.0 - e / c);
    const double kappa = std::sqrt(darboux::detail::d3dii_kappa_sq(ksq, e, p));
    const double lo = std::min(u1, u2), hi = std::max(u1, u2);
    const double f1 = conformal_factor_sq(p, {u1, 0, 0}), f2 = conformal_factor_sq(p, {u2, 0, 0});
    return std::pow(f1 * f2, -0.25) * std::sqrt(u1 * u2) / c * specfun::bessel_i(lam, kappa * lo) *
           specfun::bessel_k(lam, kappa * hi);
}

}  // namespace

TEST(Dispersion, Values) {
    EXPECT_DOUBLE_EQ(dispersion(0.0, d2).energy, 0.5);
    EXPECT_DOUBLE_EQ(dispersion(1.0, d2).energy, 1.0);
    EXPECT_DOUBLE_EQ(dispersion(2.0, d2).energy, 2.5);
    EXPECT_DOUBLE_EQ(continuum_threshold(SpaceParams::d3d2(-2.0, 3.0, {2.0, 0.5})), 4.0 / 2.0);
}

TEST(Dispersion, Monotone) {
    double prev = -1.0;
    for (double p = 0.0; p < 20.0; p += 0.25) {
        const double e = dispersion(p, d2).energy;
        EXPECT_GT(e, prev);
        prev = e;
    }
}

TEST(Dispersion, Errors) {
    EXPECT_THROW(dispersion(1.0, SpaceParams::d3d1(1.0)), DomainError);
    EXPECT_THROW(dispersion(1.0, SpaceParams::d3d2(0.0, 1.0)), DomainError);
    EXPECT_THROW(dispersion(1.0, SpaceParams::d3d2(0.5, 1.0)), DomainError);
    EXPECT_THROW(dispersion(-0.1, d2), DomainError);
}

TEST(GreenLinear, SymmetricAndPositive) {
    for (auto [x1, x2] : {std::pair{0.5, 1.0}, {2.0, 0.1}, {3.0, 3.0}}) {
        const double g = green_linear(x2, x1, -1.0, 1.5);
        EXPECT_GT(g, 0.0);
        EXPECT_DOUBLE_EQ(g, green_linear(x1, x2, -1.0, 1.5));
    }
}

TEST(GreenLinear, VanishesAtTurningPointAndSolvesEquation) {
    const double k = 1.5, e = -1.0, c = e / k, src = 1.0;
    EXPECT_LT(green_linear(src, c + 1e-9, e, k), 1e-8);
    const auto psi = [&](double x) { return green_linear(src, x, e, k); };
    EXPECT_LT(scaled_residual(psi, [k](double x) { return k * x; }, e, 1.2, 5.0, 100, 0.5, 1e-3), 1e-8);
    EXPECT_LT(scaled_residual(psi, [k](double x) { return k * x; }, e, c + 0.1, 0.8, 100, 0.5, 1e-3), 1e-8);
}

TEST(GreenLinear, Errors) {
    EXPECT_THROW(green_linear(1.0, 1.0, -1.0, 0.0), DomainError);
    EXPECT_THROW(green_linear(1.0, -1.0, -1.0, 1.0), DomainError);
    EXPECT_THROW(green_linear(1.0, 1.0, -1.0, 1.0, {0.0, 1.0}), DomainError);
}

TEST(GreenD3dIMode, MatchesGridOracle) {
    struct T { double a, e, lsq, u1, u2; };
    for (const T t : {T{1, -1, 1, 2, 3}, T{0.5, -2, 4, 0.7, 1.2}, T{1, -0.3, 0, 1.2, 6}, T{3, -2, 1, 3.2, 3.5}}) {
        const auto mode = ModeIndex::discrete(static_cast<int>(std::lround(std::sqrt(t.lsq))), 0);
        const double g = green_d3di_mode(t.u2, t.u1, mode, t.e, SpaceParams::d3d1(t.a)).value.real();
        EXPECT_LT(rel(g, d3di_mode_oracle(t.a, t.e, t.lsq, t.u1, t.u2).value), 1e-6) << t.a << " " << t.u1;
    }
}

TEST(GreenD3dIMode, ContinuousModeDependsOnlyOnLsq) {
    const auto p = SpaceParams::d3d1(1.0);
    const double a = green_d3di_mode(2.0, 1.5, ModeIndex::continuous(0.6, 0.8), -1.0, p).value.real();
    const double b = green_d3di_mode(2.0, 1.5, ModeIndex::discrete(1, 0), -1.0, p).value.real();
    EXPECT_LT(rel(a, b), 1e-14);
}

TEST(GreenD3dIMode, DirichletWallAndSymmetry) {
    const auto p = SpaceParams::d3d1(1.0);
    const auto m = ModeIndex::discrete(1, 1);
    EXPECT_EQ(green_d3di_mode(1.0, 2.0, m, -1.0, p).value, cplx(0.0, 0.0));
    EXPECT_EQ(green_d3di_mode(2.0, 1.0, m, -1.0, p).value, cplx(0.0, 0.0));
    EXPECT_LT(std::abs(green_d3di_mode(2.0, 1.0 + 1e-6, m, -1.0, p).value), 1e-5);
    EXPECT_DOUBLE_EQ(green_d3di_mode(2.0, 1.4, m, -1.0, p).value.real(),
                     green_d3di_mode(1.4, 2.0, m, -1.0, p).value.real());
}

TEST(GreenD3dIMode, RejectionAndErrors) {
    const auto p = SpaceParams::d3d1(1.0);
    const auto r = green_d3di_mode(2.0, 1.5, ModeIndex::discrete(0, 0), 0.5, p);
    EXPECT_EQ(r.regime, GreenRegime::above_threshold_rejected);
    EXPECT_TRUE(std::isnan(r.value.real()));
    EXPECT_THROW(green_d3di_mode(2.0, 0.9, ModeIndex::discrete(0, 0), -1.0, p), DomainError);
    EXPECT_THROW(green_d3di_mode(2.0, 1.5, ModeIndex::discrete(0, 0), -1.0, d2), DomainError);
}

TEST(GreenD3dIMode, KernelPerturbationIsVisible) {
    const auto p = SpaceParams::d3d1(1.0);
    const auto m = ModeIndex::discrete(1, 0);
    const double g0 = green_d3di_mode(3.0, 2.0, m, -1.0, p).value.real();
    const double g1 = green_d3di_mode(3.0, 2.0, m, -1.0, p, {1.001}).value.real();
    EXPECT_GT(rel(g1, g0), 1e-4);
}

TEST(GreenD3dISum, ZeroCutoffIsTheZeroMode) {
    const auto p = SpaceParams::d3d1(1.0);
    const auto s = green_d3di_sum({2.0, 0.3, 0.1}, {1.5, -0.2, 0.4}, -1.0, 0, p);
    const double m0 = green_d3di_mode(2.0, 1.5, ModeIndex::discrete(0, 0), -1.0, p).value.real();
    EXPECT_LT(rel(s.value.real(), m0 / (4.0 * pi * pi)), 1e-14);
    EXPECT_EQ(s.terms_or_nodes, 1);
}

TEST(GreenD3dISum, ConvergesAndIsReal) {
    const auto p = SpaceParams::d3d1(1.0);
    const Point3 x2{3.0, 0.7, -0.4}, x1{1.6, -0.3, 0.9};
    const auto s20 = green_d3di_sum(x2, x1, -1.0, 20, p), s40 = green_d3di_sum(x2, x1, -1.0, 40, p);
    const double change = std::abs(s40.value - s20.value);
    EXPECT_LT(change, 1e-6 * std::abs(s40.value));
    EXPECT_LE(change, 10.0 * s20.abs_err_estimate);
    EXPECT_LT(std::abs(s40.value.imag()), 1e-14 * std::abs(s40.value));
    // swapping the points conjugates the phases, the sum stays the same
    EXPECT_LT(std::abs(green_d3di_sum(x1, x2, -1.0, 40, p).value - s40.value), 1e-14 * std::abs(s40.value));
}

TEST(GreenD3dISum, RejectionAndErrors) {
    const auto p = SpaceParams::d3d1(1.0);
    EXPECT_EQ(green_d3di_sum({2, 0, 0}, {1.5, 0, 0}, 0.0, 3, p).regime, GreenRegime::above_threshold_rejected);
    EXPECT_THROW(green_d3di_sum({2, 0, 0}, {1.5, 0, 0}, -1.0, -1, p), DomainError);
}

TEST(NoBoundStates, DenominatorPositive) {
    std::vector<double> energies;
    for (int i = 0; i < 200; ++i) energies.push_back(-0.01 * std::pow(1000.0, i / 199.0));
    for (double a : {0.5, 1.0, 2.0})
        for (int l : {0, 1, 2}) {
            const auto r = no_bound_state_scan(SpaceParams::d3d1(a), energies, ModeIndex::discrete(l, 0));
            EXPECT_TRUE(r.pass);
            EXPECT_EQ(r.points, 200);
            EXPECT_GT(r.min_denominator, 0.0);
        }
    EXPECT_THROW(no_bound_state_scan(SpaceParams::d3d1(1.0), {-1.0, 0.0}, ModeIndex::discrete(0, 0)), DomainError);
}

TEST(WavefnUvw, EigenfunctionOfCurvedHamiltonian) {
    const auto mode = ModeIndex::continuous(1.5, -1.3);
    for (double p : {0.5, 1.5}) {
        const auto sp = dispersion(p, d2);
        const Field3 psi = [&](const Point3& x) { return wavefn_d3dii_uvw(x, sp, mode, d2); };
        for (const Point3 pt : {Point3{1.3, 0.2, 0.5}, Point3{0.6, -1.0, 1.7}, Point3{2.8, 0.0, -0.9}}) {
            const cplx e = hamiltonian_apply(d2, psi, pt) / psi(pt);
            EXPECT_NEAR(e.real(), sp.energy, 1e-5 * sp.energy);
            EXPECT_NEAR(e.imag(), 0.0, 1e-5 * sp.energy);
        }
    }
}

TEST(WavefnUvw, PlaneWavePhases) {
    const auto sp = dispersion(1.0, d2);
    const auto mode = ModeIndex::discrete(2, -1);
    const cplx a = wavefn_d3dii_uvw({1.0, 0.0, 0.0}, sp, mode, d2);
    const cplx b = wavefn_d3dii_uvw({1.0, 0.3, 0.5}, sp, mode, d2);
    EXPECT_LT(std::abs(b - a * std::exp(cplx(0.0, 2 * 0.3 - 0.5))), 1e-15);
}

TEST(WavefnUvw, Errors) {
    const auto sp = dispersion(1.0, d2);
    // κ² = K² − 2bE ≤ 0 with K = 0
    EXPECT_THROW(wavefn_d3dii_uvw({1.0, 0, 0}, sp, ModeIndex::discrete(0, 0), d2), DomainError);
    EXPECT_THROW(wavefn_d3dii_uvw({1.0, 0, 0}, sp, ModeIndex::discrete(2, 0), SpaceParams::d3d2(0.5, 1.0)), DomainError);
    EXPECT_THROW(wavefn_d3dii_uvw({-1.0, 0, 0}, sp, ModeIndex::discrete(2, 0), d2), DomainError);
}

TEST(GreenD3dIIMode, MatchesClosedFormAndGrid) {
    struct T { double a, b, ksq, e, u1, u2; };
    for (const T t : {T{-1, 1, 1, 0.25, 1, 2}, T{-1, 1, 2, -0.5, 0.5, 1.5}, T{-0.5, 2, 4, 0.5, 0.8, 2.5},
                      T{-1, 1, 0.5, 0, 1.5, 3}}) {
        const auto p = SpaceParams::d3d2(t.a, t.b);
        const auto g = green_d3dii_mode(t.u2, t.u1, t.ksq, t.e, p, 1e-6);
        const double closed = d3dii_mode_closed(p, t.ksq, t.e, t.u1, t.u2);
        EXPECT_LT(rel(g.value.real(), closed), 1e-6) << t.e << " " << t.u1 << " " << t.u2;
        EXPECT_LT(rel(d3dii_mode_oracle(p, t.ksq, t.e, t.u1, t.u2).value, closed), 1e-6);
        EXPECT_EQ(g.value.imag(), 0.0);
        EXPECT_GT(g.terms_or_nodes, 0);
    }
}

TEST(GreenD3dIIMode, ErrorEstimateBoundsTheError) {
    const auto g = green_d3dii_mode(2.0, 1.0, 1.0, 0.25, d2, 1e-6);
    EXPECT_LE(std::abs(g.value.real() - d3dii_mode_closed(d2, 1.0, 0.25, 1.0, 2.0)), 10.0 * g.abs_err_estimate + 1e-12);
}

TEST(GreenD3dIIMode, SymmetricAndDecaying) {
    const double a = green_d3dii_mode(2.0, 1.0, 1.0, 0.0, d2).value.real();
    const double b = green_d3dii_mode(1.0, 2.0, 1.0, 0.0, d2).value.real();
    EXPECT_LT(rel(a, b), 1e-9);
    double prev = green_d3dii_mode(1.0, 1.0, 1.0, 0.0, d2).value.real();
    for (double u : {1.5, 2.5, 4.0}) {
        const double g = green_d3dii_mode(u, 1.0, 1.0, 0.0, d2).value.real();
        EXPECT_GT(g, 0.0);
        EXPECT_LT(g, prev);
        prev = g;
    }
}

TEST(GreenD3dIIMode, ThresholdAndErrors) {
    const double thr = continuum_threshold(d2);
    EXPECT_EQ(green_d3dii_mode(2.0, 1.0, 4.0, thr, d2).regime, GreenRegime::above_threshold_rejected);
    EXPECT_EQ(green_d3dii_mode(2.0, 1.0, 4.0, 10.0 * thr, d2).regime, GreenRegime::above_threshold_rejected);
    EXPECT_EQ(green_d3dii_mode(2.0, 1.0, 4.0, 0.9 * thr, d2).regime, GreenRegime::below_spectrum);
    EXPECT_THROW(green_d3dii_mode(2.0, 1.0, 1.0, 0.0, d2, 0.0), DomainError);
    EXPECT_THROW(green_d3dii_mode(2.0, 1.0, 0.0, 0.25, d2), DomainError);  // κ² ≤ 0
    EXPECT_THROW(green_d3dii_mode(2.0, 1.0, 1.0, 0.0, SpaceParams::d3d2(1.0, 1.0)), DomainError);
    EXPECT_THROW(green_d3dii_mode(2.0, 1.0, 1.0, 0.0, SpaceParams::d3d1(1.0)), DomainError);
}

TEST(Mpt, SolvesPoschlTellerEquation) {
    struct T { cplx eta, nu; double p; };
    for (const T t : {T{1.0, {0.0, 0.7}, 1.0}, T{2.0, {0.0, 1.5}, 0.5}, T{0.5, 0.5, 2.0}}) {
        const auto m = MptParams::scattering(t.eta, t.nu, t.p);
        const double e2 = (t.eta * t.eta).real() - 0.25, n2 = (t.nu * t.nu).real() - 0.25;
        const auto v = [&](double r) { return e2 / std::pow(std::sinh(r), 2) - n2 / std::pow(std::cosh(r), 2); };
        const auto psi = [&](double r) { return mpt_wavefn(r, m); };
        EXPECT_LT(scaled_residual(psi, v, t.p * t.p, 0.2, 5.0, 240, 1.0, 2e-3), 1e-6);
        // r → 0: Ψ ~ (sinh r)^{2k2 − ½}
        const double slope = std::log(std::abs(psi(2e-3)) / std::abs(psi(1e-3))) / std::log(std::sinh(2e-3) / std::sinh(1e-3));
        EXPECT_NEAR(slope, 2.0 * m.k2.real() - 0.5, 1e-4);
    }
}

TEST(Mpt, ReferenceValues) {
    // mpmath, 30 digits
    const auto m = MptParams::scattering(1.0, 0.5, 1.0);
    EXPECT_LT(rel(mpt_norm(m).real(), 0.55797403507599201), 1e-12);
    EXPECT_LT(std::abs(mpt_norm(m).imag()), 1e-14);
    EXPECT_LT(rel(mpt_wavefn(0.7, m).real(), 0.30254472637560464), 1e-12);
}

TEST(Mpt, Errors) {
    EXPECT_THROW(mpt_wavefn(0.5, MptParams::scattering(-3.0, 0.5, 1.0)), DomainError);
    EXPECT_THROW(mpt_wavefn(0.0, MptParams::scattering(1.0, 0.5, 1.0)), DomainError);
}

TEST(Spherical, LiouvilleFactorSolvesItsEquation) {
    const double p = 1.2, k = 0.8;
    const double c2 = d2.b / std::abs(d2.a) * (p * p + 1.0);
    const auto psi = [&](double t) { return liouville_factor(t, p, k, d2); };
    EXPECT_LT(scaled_residual(psi, [&](double t) { return -c2 * std::exp(2 * t); }, k * k, -1.5, 1.0, 100, 1.0, 2e-3),
              1e-6);
}

TEST(Spherical, PeriodicInPhi) {
    for (int kp : {0, 1, 3}) {
        const cplx a = wavefn_d3dii_spherical(0.6, 0.2, 0.4, 1.0, 0.8, kp, d2);
        const cplx b = wavefn_d3dii_spherical(0.6, 0.2, 0.4 + 2 * pi, 1.0, 0.8, kp, d2);
        EXPECT_LT(std::abs(a - b), 1e-13 * std::abs(a));
    }
}

TEST(Spherical, ChartRoundTrip) {
    const auto s = spherical_from_polar(2.0, 0.7, 1.1);
    EXPECT_NEAR(std::exp(s.tau2), 2.0, 1e-15);
    EXPECT_NEAR(std::acos(1.0 / std::cosh(s.tau1)), 0.7, 1e-14);
    EXPECT_EQ(s.phi, 1.1);
    // f = b z² − a, i.e. F(u) u² at u = z
    const double z = 2.0 * std::cos(0.7);
    EXPECT_NEAR(spherical_metric_factor(s.tau1, s.tau2, d2), conformal_factor_sq(d2, {z, 0, 0}) * z * z, 1e-13);
    EXPECT_THROW(spherical_from_polar(1.0, 0.5 * pi, 0.0), DomainError);
    EXPECT_THROW(spherical_from_polar(0.0, 0.5, 0.0), DomainError);
}

// (τ1, τ2, φ) reads u = z and (v, w) = (x, y); the spherical product must be
// an eigenfunction of the same curved Hamiltonian as the (u, v, w) modes.
TEST(Spherical, EigenfunctionInUvw) {
    const double kt = 0.8;
    const int kp = 1;
    for (double p : {0.5, 1.2}) {
        const auto sp = dispersion(p, d2);
        const Field3 psi = [&](const Point3& x) {
            const double r = std::sqrt(x.u * x.u + x.v * x.v + x.w * x.w);
            const auto s = spherical_from_polar(r, std::acos(x.u / r), std::atan2(x.w, x.v));
            return wavefn_d3dii_spherical(s.tau1, s.tau2, s.phi, p, kt, kp, d2);
        };
        for (const Point3 pt : {Point3{1.0, 0.3, 0.4}, Point3{0.7, -0.5, 0.9}, Point3{2.0, 1.0, 0.2}}) {
            const cplx e = hamiltonian_apply(d2, psi, pt) / psi(pt);
            EXPECT_NEAR(e.real(), sp.energy, 1e-6 * sp.energy);
            EXPECT_NEAR(e.imag(), 0.0, 1e-6 * sp.energy);
        }
    }
}

TEST(Spherical, Errors) {
    EXPECT_THROW(wavefn_d3dii_spherical(0.0, 0.2, 0.0, 1.0, 0.8, 1, d2), DomainError);
    EXPECT_THROW(wavefn_d3dii_spherical(0.5, 0.2, 0.0, 1.0, 0.8, 1, SpaceParams::d3d1(1.0)), DomainError);
}
