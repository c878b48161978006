// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wetfbl/energy.hpp"
#include "wetfbl/error.hpp"
#include "wetfbl/mc.hpp"

using namespace wetfbl;
using namespace wetfbl::mc;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    auto const zero = Philox::generate({0, 0, 0, 0}, {0, 0});
    CHECK(zero == Philox::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    auto const pi = Philox::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     {0xa4093822u, 0x299f31d0u});
    CHECK(pi == Philox::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("unit conversion stays inside [0,1)")
{
    CHECK(to_unit(0, 0) == 0.0);
    CHECK(to_unit(0xffffffffu, 0xffffffffu) < 1.0);
    CHECK(to_unit(0xffffffffu, 0xffffffffu) == 1.0 - 0x1p-53);
}

TEST_CASE("channel draws have Exp(1) marginals")
{
    McPolicy pol;
    auto const est = estimate_many<5>(
        [](ChannelDraw const& d) { return std::array<double, 5>{d.g_ds, d.g_sd, d.g_dr, d.g_rd, d.g_sr}; },
        pol, 0);
    for (auto const& e : est)
        CHECK(std::abs(e.mean - 1.0) < 4e-3);
    for (double x : {0.1, 1.0, 3.0})
    {
        auto const cdf = estimate([x](ChannelDraw const& d) { return d.g_sr < x ? 1.0 : 0.0; }, pol, 0);
        INFO("x=" << x);
        CHECK(std::abs(cdf.mean - (1.0 - std::exp(-x))) < 4.0 * cdf.std_error);
    }
}

TEST_CASE("draws depend only on seed and index")
{
    ChannelDraw const a = sample_channels(99, 123456789);
    ChannelDraw const b = sample_channels(99, 123456789);
    CHECK(a.g_ds == b.g_ds);
    CHECK(a.g_sr == b.g_sr);
    ChannelDraw const c = sample_channels(100, 123456789);
    CHECK(a.g_ds != c.g_ds);
    ChannelDraw const hi = sample_channels(99, (1ull << 32) + 5);
    ChannelDraw const lo = sample_channels(99, 5);
    CHECK(hi.g_ds != lo.g_ds);
}

TEST_CASE("estimates are bit-identical across worker counts")
{
    McPolicy pol;
    pol.samples = 200'000;
    pol.batch = 1'000;
    auto target = [](ChannelDraw const& d) { return std::exp(-d.g_ds * d.g_sd) * d.g_rd; };
    McEstimate const one = estimate(target, pol, 1);
    for (int w : {2, 3, 8})
    {
        McEstimate const many = estimate(target, pol, w);
        CHECK(many.mean == one.mean);
        CHECK(many.std_error == one.std_error);
    }
}

TEST_CASE("constant targets are flagged as degenerate")
{
    McPolicy pol;
    pol.samples = 10'000;
    pol.batch = 100;
    McEstimate const e = estimate([](ChannelDraw const&) { return 0.3; }, pol);
    CHECK(e.mean == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(e.std_error == 0.0);
    CHECK(e.ci_halfwidth == 0.0);
    CHECK(e.degenerate);
    CHECK(e.samples_used == 10'000);
}

TEST_CASE("confidence intervals are calibrated")
{
    McPolicy pol;
    pol.samples = 20'000;
    pol.batch = 200;
    double const truth = 1.0 - std::exp(-1.0);
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep)
    {
        pol.seed = 1000 + rep;
        McEstimate const e = estimate([](ChannelDraw const& d) { return d.g_ds < 1.0 ? 1.0 : 0.0; }, pol);
        CHECK(e.ci_halfwidth == doctest::Approx(two_sided_z(0.999) * e.std_error));
        covered += std::abs(e.mean - truth) <= e.ci_halfwidth ? 1 : 0;
    }
    CHECK(covered >= 198);
}

TEST_CASE("policy validation")
{
    McPolicy pol;
    pol.samples = 9'999;
    CHECK_THROWS_AS(pol.validate(), ConfigError);
    pol.samples = 100'000;
    pol.batch = 3'000;
    CHECK_THROWS_AS(pol.validate(), ConfigError);
    pol.batch = 1'000;
    pol.ci_level = 1.0;
    CHECK_THROWS_AS(pol.validate(), ConfigError);
    CHECK(two_sided_z(0.999) == doctest::Approx(3.2905267).epsilon(1e-6));
}

TEST_CASE("energy outage indicator matches its closed form")
{
    SysParams p;
    p.pc = 1e-5;
    SchemeConfig const s;
    LinkCoeffs const lc = derive_coeffs(p, s).sd;
    McEstimate const e = estimate([&](ChannelDraw const& d) { return lc.has_energy(d.g_ds) ? 0.0 : 1.0; },
                                  McPolicy{}, 0);
    CHECK(std::abs(e.mean - p_energy_insufficient(p, s, Node::source)) < 4.0 * e.std_error);
}
