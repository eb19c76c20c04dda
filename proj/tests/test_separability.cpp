#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "darboux/rng.hpp"
#include "darboux/separability.hpp"

using namespace darboux;

namespace {

const SpaceParams d1 = SpaceParams::d3d1(1.0);
const SpaceParams d2 = SpaceParams::d3d2(-1.0, 1.0);
const SpaceParams flat = SpaceParams::d3d2(0.0, 1.0);

void expect_point(const std::array<double, 3>& got, const std::array<double, 3>& want) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], want[i], 1e-14) << i;
}

}  // namespace

TEST(Rng, SplitMixVector) {
    // first splitmix64 output for seed 0
    EXPECT_EQ(CounterRng(0).at(0), 0xe220a8397b1dcdafULL);
    CounterRng r(0);
    EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(r.counter(), 1u);
}

TEST(Rng, CounterBasedAndUniform) {
    CounterRng a(42), b(42);
    for (int i = 0; i < 5; ++i) a.next();
    EXPECT_EQ(a.next(), b.at(5));
    CounterRng c(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform(-2.0, 3.0);
        ASSERT_GE(u, -2.0);
        ASSERT_LT(u, 3.0);
    }
}

TEST(ChartMap, Examples) {
    expect_point(chart_to_cartesian(make_chart(ChartId::circular_polar), {2.0, 0.5 * pi, 1.0}), {0.0, 2.0, 1.0});
    expect_point(chart_to_cartesian(make_chart(ChartId::spherical), {2.0, 0.5 * pi, 0.0}), {2.0, 0.0, 0.0});
    expect_point(chart_to_cartesian(make_chart(ChartId::circular_parabolic), {1.0, 2.0, 0.5}), {1.5, 2.0, 0.5});
    expect_point(chart_to_cartesian(make_chart(ChartId::parabolic), {1.0, 2.0, 0.0}), {2.0, 0.0, 1.5});
    expect_point(chart_to_cartesian(make_chart(ChartId::circular_elliptic), {0.0, 0.0, 0.3}), {1.0, 0.0, 0.3});
    expect_point(chart_to_cartesian(make_chart(ChartId::sheared_control), {1.0, 2.0, 3.0}), {2.8, 2.0, 3.0});
}

TEST(ChartMap, SpheroidalRadii) {
    const double mu = 0.7, nu = 1.1, ph = 0.4;
    const auto pr = chart_to_cartesian(make_chart(ChartId::prolate_spheroidal), {mu, nu, ph});
    // x²+y² over sinh²μ plus z² over cosh²μ is 1 on the prolate spheroid
    EXPECT_NEAR((pr[0] * pr[0] + pr[1] * pr[1]) / std::pow(std::sinh(mu), 2) + pr[2] * pr[2] / std::pow(std::cosh(mu), 2), 1.0,
                1e-14);
    const auto ob = chart_to_cartesian(make_chart(ChartId::oblate_spheroidal), {mu, nu, ph});
    EXPECT_NEAR((ob[0] * ob[0] + ob[1] * ob[1]) / std::pow(std::cosh(mu), 2) + ob[2] * ob[2] / std::pow(std::sinh(mu), 2), 1.0,
                1e-14);
}

TEST(ChartMap, SpheroConicalOnSphere) {
    const auto c = make_chart(ChartId::sphero_conical);
    const auto x = chart_to_cartesian(c, {2.5, 0.6, 0.9});
    EXPECT_NEAR(std::hypot(x[0], x[1], x[2]), 2.5, 1e-13);
    auto bad = c;
    bad.k = 1.2;
    EXPECT_THROW(chart_to_cartesian(bad, {1.0, 0.5, 0.5}), DomainError);
}

TEST(ChartMap, EllipsoidalConfocalQuadric) {
    const auto c = make_chart(ChartId::ellipsoidal);
    const double A = 4.0, B = 2.0, C = 1.0;
    const ChartPoint q{-1.5, 1.4, 3.1};
    const auto x = chart_to_cartesian(c, q);
    for (double r : q) EXPECT_NEAR(x[0] * x[0] / (A - r) + x[1] * x[1] / (B - r) + x[2] * x[2] / (C - r), 1.0, 1e-13) << r;
    EXPECT_THROW(chart_to_cartesian(c, {1.5, 1.4, 3.1}), DomainError);
    EXPECT_THROW(chart_to_cartesian(c, {-1.0, 2.5, 3.1}), DomainError);
}

TEST(ChartMap, RotatedSystemNotImplemented) {
    EXPECT_THROW(chart_to_cartesian(make_chart(ChartId::rotated_rq), {1.0, 1.0, 1.0}), DomainError);
}

TEST(ChartJacobian, MatchesFiniteDifferences) {
    for (ChartId id : table_charts()) {
        const auto c = make_chart(id);
        ChartPoint q;
        for (int i = 0; i < 3; ++i) q[i] = 0.5 * (c.lo[i] + c.hi[i]);
        const auto j = chart_jacobian(c, q);
        for (int i = 0; i < 3; ++i) {
            const double h = 1e-5;
            auto qp = q, qm = q;
            qp[i] += h;
            qm[i] -= h;
            const auto xp = chart_to_cartesian(c, qp), xm = chart_to_cartesian(c, qm);
            for (int k = 0; k < 3; ++k) EXPECT_NEAR(j[k][i], (xp[k] - xm[k]) / (2 * h), 1e-8) << to_string(id);
        }
    }
}

TEST(UAxis, Assignment) {
    for (ChartId id : table_charts()) EXPECT_EQ(u_axis(Space::D3dI, id), UAxis::z);
    EXPECT_EQ(u_axis(Space::D3dII, ChartId::parabolic), UAxis::x);
    EXPECT_EQ(u_axis(Space::D3dII, ChartId::paraboloidal), UAxis::x);
    EXPECT_EQ(u_axis(Space::D3dII, ChartId::spherical), UAxis::z);
    // D3dI charts sit with their origin on the wall
    EXPECT_DOUBLE_EQ(u_of(d1, ChartId::cartesian, {0.3, 0.4, 0.5}), 1.5);
    EXPECT_DOUBLE_EQ(u_of(d2, ChartId::parabolic, {0.3, 0.4, 0.5}), 0.3);
}

TEST(InducedMetric, CartesianIsConformal) {
    const auto m = induced_metric(d1, make_chart(ChartId::cartesian), {0.1, 0.2, 0.5});
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(m.g[i][i], 3.0, 1e-14);  // F = 2u, u = 1.5
    EXPECT_EQ(m.offdiag_rel, 0.0);
}

TEST(InducedMetric, SphericalScaleFactors) {
    const double r = 2.0, th = 0.6;
    const auto m = induced_metric(flat, make_chart(ChartId::spherical), {r, th, 1.0});
    EXPECT_NEAR(m.g[0][0], 1.0, 1e-14);
    EXPECT_NEAR(m.g[1][1], r * r, 1e-13);
    EXPECT_NEAR(m.g[2][2], std::pow(r * std::sin(th), 2), 1e-13);
    EXPECT_LT(m.offdiag_rel, 1e-15);
}

TEST(InducedMetric, ShearIsNotDiagonal) {
    const auto m = induced_metric(flat, make_chart(ChartId::sheared_control), {0.3, 1.0, 1.0});
    EXPECT_GT(m.offdiag_rel, 1e-2);
}

TEST(InducedMetric, Errors) {
    // below the D3dI wall
    EXPECT_THROW(induced_metric(d1, make_chart(ChartId::cartesian), {0.0, 0.0, -1.5}), DomainError);
    // polar axis: ρ = 0 makes the chart singular
    EXPECT_THROW(induced_metric(flat, make_chart(ChartId::circular_polar), {0.0, 1.0, 1.0}), DomainError);
}

TEST(LeviCivita, SeparableExamples) {
    const std::array<double, 3> mom{0.48, -0.6, 0.64};
    EXPECT_LT(levi_civita_violation(d1, make_chart(ChartId::cartesian), {0.2, 0.4, 0.8}, mom), 1e-8);
    EXPECT_LT(levi_civita_violation(d1, make_chart(ChartId::parabolic), {1.0, 1.5, 0.3}, mom), 1e-8);
    EXPECT_LT(levi_civita_violation(d2, make_chart(ChartId::spherical), {1.5, 0.8, 0.3}, mom), 1e-8);
}

TEST(LeviCivita, NonSeparableExample) {
    const std::array<double, 3> mom{0.48, -0.6, 0.64};
    EXPECT_GT(levi_civita_violation(d1, make_chart(ChartId::spherical), {1.5, 0.8, 0.3}, mom), 1e-3);
}

TEST(LeviCivita, Errors) {
    EXPECT_THROW(levi_civita_violation(d1, make_chart(ChartId::cartesian), {0.2, 0.4, 0.8}, {0, 0, 0}), DomainError);
    EXPECT_THROW(levi_civita_violation(flat, make_chart(ChartId::sheared_control), {0.3, 1.0, 1.0}, {1, 0, 0}), DomainError);
}

TEST(Report, D3dIIAllChartsSeparate) {
    const auto rep = separability_report(d2, 20, 7);
    ASSERT_EQ(rep.size(), 11u);
    for (const auto& r : rep) {
        EXPECT_EQ(r.verdict, Verdict::separates) << to_string(r.chart) << " " << r.levi_civita_violation;
        EXPECT_EQ(r.points_tested, 20);
        EXPECT_EQ(r.seed, 7u);
    }
}

TEST(Report, D3dIVerdicts) {
    const auto rep = separability_report(d1, 20, 7);
    ASSERT_EQ(rep.size(), 12u);
    for (const auto& r : rep) {
        Verdict want = Verdict::fails;
        switch (r.chart) {
            case ChartId::cartesian:
            case ChartId::circular_polar:
            case ChartId::circular_elliptic:
            case ChartId::circular_parabolic:
            case ChartId::parabolic:
            case ChartId::paraboloidal: want = Verdict::separates; break;
            case ChartId::rotated_rq: want = Verdict::not_implemented; break;
            default: break;
        }
        EXPECT_EQ(r.verdict, want) << to_string(r.chart);
        if (want == Verdict::fails) {
            EXPECT_GT(r.levi_civita_violation, 1e-2) << to_string(r.chart);
        }
    }
    EXPECT_TRUE(std::isnan(rep.back().levi_civita_violation));
}

TEST(Report, ControlsAcrossSeeds) {
    for (std::uint64_t seed : {1, 2, 3, 7, 42}) {
        const auto shear = audit_chart(flat, make_chart(ChartId::sheared_control), 20, seed);
        EXPECT_EQ(shear.verdict, Verdict::fails);
        EXPECT_GE(shear.diag_violation, 1e-2);
        EXPECT_TRUE(std::isnan(shear.levi_civita_violation));
        const auto cart = audit_chart(flat, make_chart(ChartId::cartesian), 20, seed);
        EXPECT_EQ(cart.verdict, Verdict::separates);
        EXPECT_LT(cart.levi_civita_violation, 1e-8);
    }
}

TEST(Report, FlatSpaceSeparatesEverywhere) {
    for (const auto& r : separability_report(flat, 10, 3)) EXPECT_EQ(r.verdict, Verdict::separates) << to_string(r.chart);
}

TEST(Report, Deterministic) {
    const auto a = separability_report(d1, 10, 42), b = separability_report(d1, 10, 42);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(std::memcmp(&a[i].diag_violation, &b[i].diag_violation, sizeof(double)), 0);
        EXPECT_EQ(std::memcmp(&a[i].levi_civita_violation, &b[i].levi_civita_violation, sizeof(double)), 0);
    }
    const auto c = separability_report(d1, 10, 43);
    EXPECT_NE(a[0].levi_civita_violation, c[0].levi_civita_violation);
}
