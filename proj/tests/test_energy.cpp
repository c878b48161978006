// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "wetfbl/energy.hpp"
#include "wetfbl/error.hpp"
#include "wetfbl/mc.hpp"

using namespace wetfbl;

namespace {

SysParams table2()
{
    SysParams p;
    p.pc = dbm_to_watt(-30.0);
    return p;
}

SchemeConfig relay_scheme(int n1 = 250, int n2 = 250)
{
    SchemeConfig s;
    s.kind = SchemeKind::relay_sc;
    s.n1 = n1;
    s.n2 = n2;
    return s;
}

double rel_gap(double a, double b, double scale)
{
    return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("units")
{
    CHECK(dbm_to_watt(50.0) == doctest::Approx(100.0));
    CHECK(dbm_to_watt(-110.0) == doctest::Approx(1e-14));
    CHECK(watt_to_dbm(1e-3) == doctest::Approx(0.0));
}

TEST_CASE("harvested energy")
{
    SysParams const p;
    CHECK(p.path_loss(Link::ds) == doctest::Approx(1e5));
    CHECK(harvested_energy(p, 1000, 0.0, Link::ds) == 0.0);
    CHECK(harvested_energy(p, 1000, 1.0, Link::ds) == doctest::Approx(1e-6).epsilon(1e-14));
    CHECK(harvested_energy(p, 2000, 0.7, Link::ds) == 2.0 * harvested_energy(p, 1000, 0.7, Link::ds));
}

TEST_CASE("battery clipping and saturation threshold")
{
    CHECK(battery_charge(1e-6, INFINITY) == 1e-6);
    CHECK(battery_charge(1e-6, 1e-7) == 1e-7);

    SysParams p;
    p.bmax = 1e-7;
    CHECK(saturation_threshold(p, 1000, Link::ds) == doctest::Approx(0.1));
    CHECK(saturation_threshold(p, 2000, Link::ds) == doctest::Approx(0.05));
    CHECK(std::isinf(saturation_threshold(SysParams{}, 1000, Link::ds)));

    std::mt19937_64 rng(11);
    std::exponential_distribution<double> g(1.0);
    double const lambda = saturation_threshold(p, 1000, Link::ds);
    for (int i = 0; i < 1000; ++i)
    {
        double const x = g(rng);
        double const via_energy = battery_charge(harvested_energy(p, 1000, x, Link::ds), p.bmax);
        double const via_gain = harvested_energy(p, 1000, std::fmin(x, lambda), Link::ds);
        CHECK(via_gain == doctest::Approx(via_energy).epsilon(1e-13));
    }
}

TEST_CASE("transmit powers")
{
    SysParams const p = table2();
    CHECK(transmit_power_s(p, 1000, 1, 500, 0.0) < 0.0);
    CHECK(transmit_power_r(p, 1000, 1, 250, 250, 0.0) < 0.0);
    SysParams const ideal;
    CHECK(transmit_power_s(ideal, 1000, 1, 500, 1.0) == doctest::Approx(1e-6 / (500 * 2e-6)));
    CHECK(transmit_power_r(ideal, 1000, 1, 250, 250, 1.0) == doctest::Approx(1e-6 / (250 * 2e-6)));
}

TEST_CASE("ledger form equals the (phi, varphi) form on random parameters")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::exponential_distribution<double> g(1.0);
    for (int i = 0; i < 1000; ++i)
    {
        SysParams p;
        p.eta = 0.1 + 0.8 * u01(rng);
        p.pd = std::pow(10.0, 1.0 + 2.0 * u01(rng));
        p.pc = std::pow(10.0, -8.0 + 4.0 * u01(rng));
        p.pcsi = std::pow(10.0, -8.0 + 5.0 * u01(rng));
        p.sigma2_d = std::pow(10.0, -15.0 + 2.0 * u01(rng));
        p.sigma2_r = std::pow(10.0, -15.0 + 2.0 * u01(rng));
        p.d_sd = 5.0 + 40.0 * u01(rng);
        p.d_sr = 5.0 + 40.0 * u01(rng);
        p.d_rd = 5.0 + 40.0 * u01(rng);
        p.bmax = u01(rng) < 0.5 ? INFINITY : std::pow(10.0, -8.0 + 2.0 * u01(rng));
        SchemeConfig dc;
        dc.v = 100 + static_cast<int>(4900 * u01(rng));
        dc.u = 1 + static_cast<int>(5 * u01(rng));
        dc.n = 100 + static_cast<int>(1900 * u01(rng));
        SchemeConfig rs = relay_scheme(100 + static_cast<int>(900 * u01(rng)),
                                       100 + static_cast<int>(900 * u01(rng)));
        rs.v = dc.v;
        rs.u = dc.u;
        double const x = g(rng);
        double const y = g(rng);

        DerivedCoeffs const c = derive_coeffs(p, dc);
        double const ps = transmit_power_s(p, dc.v, dc.u, dc.n, x);
        double const lhs = ps / (p.path_loss(Link::sd) * p.sigma2_d) * y;
        double const rhs = c.sd.slope(x) * y;
        double const scale = (c.sd.phi * std::fmin(x, c.sd.lambda) + c.sd.varphi) * y;
        CHECK(rel_gap(lhs, rhs, scale) < 1e-12);

        DerivedCoeffs const r = derive_coeffs(p, rs);
        double const ps1 = transmit_power_s(p, rs.v, rs.u, rs.n1, x);
        double const lhs_r = ps1 / (p.path_loss(Link::sr) * p.sigma2_r);
        double const scale_r = r.sr.phi * std::fmin(x, r.sr.lambda) + r.sr.varphi;
        CHECK(rel_gap(lhs_r, r.sr.slope(x), scale_r) < 1e-12);

        double const pr = transmit_power_r(p, rs.v, rs.u, rs.n1, rs.n2, x);
        double const lhs_d2 = pr / (p.path_loss(Link::rd) * p.sigma2_d);
        double const scale_d2 = r.rd.phi * std::fmin(x, r.rd.lambda) + r.rd.varphi;
        CHECK(rel_gap(lhs_d2, r.rd.slope(x), scale_d2) < 1e-12);
    }
}

TEST_CASE("energy-insufficiency probability")
{
    SchemeConfig const s;
    CHECK(p_energy_insufficient(SysParams{}, s, Node::source) == 0.0);

    SysParams p;
    p.pc = 0.01 * s.v * p.eta * p.pd / ((s.u + s.n) * p.path_loss(Link::ds));
    CHECK(p_energy_insufficient(p, s, Node::source) == doctest::Approx(1.0 - std::exp(-0.01)).epsilon(1e-12));
    CHECK(p_energy_insufficient(p, s, Node::source) == doctest::Approx(0.00995).epsilon(1e-3));

    SysParams starving = p;
    starving.bmax = 1e-12;
    CHECK_THROWS_AS(p_energy_insufficient(starving, s, Node::source), ConfigError);
    CHECK_THROWS_AS(p_energy_insufficient(p, s, Node::relay), ConfigError);

    SchemeConfig const rs = relay_scheme();
    DerivedCoeffs const c = derive_coeffs(p, rs);
    CHECK(p_energy_insufficient(p, rs, Node::relay) == doctest::Approx(-std::expm1(-c.rd.varphi / c.rd.phi)));
}

TEST_CASE("energy-insufficiency probability matches a Monte Carlo frequency")
{
    SysParams p = table2();
    p.d_sd = p.d_sr = p.d_rd = 40.0;
    p.pcsi = 1e-4;
    SchemeConfig const s;
    DerivedCoeffs const c = derive_coeffs(p, s);
    mc::McPolicy pol;
    auto const est = mc::estimate(
        [&](ChannelDraw const& d) {
            double const charge = battery_charge(harvested_energy(p, s.v, d.g_ds, Link::ds), p.bmax);
            return charge < p.pcsi * s.u * p.tc + p.pc * (s.u + s.n) * p.tc ? 1.0 : 0.0;
        },
        pol);
    double const exact = p_energy_insufficient(p, s, Node::source);
    CHECK(exact > 0.01);
    CHECK(std::abs(est.mean - exact) < 4.0 * est.std_error);
    CHECK(c.sd.energy_threshold() > 0.0);
}

TEST_CASE("energy-insufficiency trends")
{
    SysParams base = table2();
    base.pcsi = 1e-5;
    SchemeConfig const s;
    double const p0 = p_energy_insufficient(base, s, Node::source);
    auto with = [&](auto mutate) {
        SysParams p = base;
        SchemeConfig sc = s;
        mutate(p, sc);
        return p_energy_insufficient(p, sc, Node::source);
    };
    CHECK(with([](SysParams&, SchemeConfig& sc) { sc.n *= 2; }) >= p0);
    CHECK(with([](SysParams&, SchemeConfig& sc) { sc.u += 3; }) >= p0);
    CHECK(with([](SysParams& p, SchemeConfig&) { p.pcsi *= 3; }) >= p0);
    CHECK(with([](SysParams& p, SchemeConfig&) { p.pc *= 3; }) >= p0);
    CHECK(with([](SysParams&, SchemeConfig& sc) { sc.v *= 2; }) <= p0);
    CHECK(with([](SysParams& p, SchemeConfig&) { p.pd *= 2; }) <= p0);
}

TEST_CASE("parameter validation")
{
    SysParams p;
    p.eta = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = SysParams{};
    p.sigma2_d = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = SysParams{};
    p.pc = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    SchemeConfig s;
    s.kind = SchemeKind::relay_mrc;
    s.n1 = 200;
    s.n2 = 300;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.n2 = 200;
    CHECK_NOTHROW(s.validate());
    CHECK(s.nu() == 2 + 400);
    CHECK(s.delay() == s.v + s.nu());
}
