// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "wetfbl/error.hpp"
#include "wetfbl/mc.hpp"
#include "wetfbl/quad.hpp"
#include "wetfbl/specfun.hpp"

using namespace wetfbl;
using namespace wetfbl::quad;

namespace {

NestedAxis half_line()
{
    return {[](std::span<double const>) { return 0.0; },
            [](std::span<double const>) { return INFINITY; }, true, {}};
}

}  // namespace

TEST_CASE("policy validation")
{
    IntegrationPolicy p;
    CHECK_NOTHROW(p.validate());
    p.truncation_point = 19.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.rel_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("exponentially weighted half-line integrals")
{
    IntegrationPolicy const pol;
    QuadResult const r0 = integrate_exp_weighted([](double) { return 1.0; }, 0.0, INFINITY, pol);
    CHECK(std::abs(r0.value - 1.0) < 1e-10);
    CHECK(r0.error >= std::exp(-30.0));  // discarded tail is part of the bound
    QuadResult const r1 = integrate_exp_weighted([](double x) { return x; }, 0.0, INFINITY, pol,
                                                 {}, 31.0);
    CHECK(std::abs(r1.value - 1.0) < 1e-10);

    double const bps[] = {0.05, 0.5, 5.0};
    QuadResult const rb
        = integrate_exp_weighted([](double x) { return x > 0 ? std::exp(-0.5 / x) : 0.0; }, 0.0, INFINITY,
                                 pol, bps);
    double const z = 2.0 * std::sqrt(0.5);
    CHECK(std::abs(rb.value - z * specfun::bessel_k1(z)) < 1e-8);
}

TEST_CASE("reported error respects the tolerance")
{
    IntegrationPolicy pol;
    pol.rel_tol = 1e-10;
    QuadResult const r = integrate([](double x) { return std::sin(x) * std::exp(-x * x); }, -1.0, 3.0, pol);
    CHECK(r.error <= std::max(pol.rel_tol * std::abs(r.value), pol.abs_tol));
    CHECK(r.evaluations > 0);
    QuadResult const flipped = integrate([](double x) { return std::sin(x) * std::exp(-x * x); }, 3.0, -1.0, pol);
    CHECK(flipped.value == -r.value);
}

TEST_CASE("additivity over domain splits")
{
    IntegrationPolicy pol;
    pol.rel_tol = 1e-12;
    pol.abs_tol = 1e-300;
    auto f = [](double x) { return std::log1p(x) / (1.0 + x * x); };
    double const whole = integrate_exp_weighted(f, 0.0, INFINITY, pol).value;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.01, 25.0);
    for (int i = 0; i < 50; ++i)
    {
        double const c = u(rng);
        pol.truncation_point = 30.0 - c;
        if (pol.truncation_point < 20.0)
            pol.truncation_point = 30.0;
        double const left = integrate_exp_weighted(f, 0.0, c, pol).value;
        double const right = integrate(
                                 [&](double x) { return f(x) * std::exp(-x); }, c, 30.0, pol)
                                 .value;
        CHECK(std::abs(left + right - whole) < 1e-10 * whole);
    }
}

TEST_CASE("clipped-domain split reproduces the unsplit integral")
{
    IntegrationPolicy pol;
    pol.rel_tol = 1e-12;
    pol.abs_tol = 1e-300;
    auto f = [](double x) { return 1.0 / (1.0 + x); };
    for (double lambda : {0.1, 1.6, 7.0})
    {
        double const whole = integrate_exp_weighted(f, 0.0, INFINITY, pol).value;
        double const lower = integrate_exp_weighted(f, 0.0, lambda, pol).value;
        pol.truncation_point = 30.0 - lambda > 20.0 ? 30.0 - lambda : 30.0;
        double const upper = integrate_exp_weighted(f, lambda, INFINITY, pol).value;
        pol.truncation_point = 30.0;
        CHECK(std::abs(lower + upper - whole) < 1e-9 * whole);
    }
}

TEST_CASE("estimates are stable when the subdivision budget doubles")
{
    auto f = [](double x) { return 1.0 / (1e-3 + (x - 0.37) * (x - 0.37)); };
    IntegrationPolicy pol;
    pol.max_subdivisions = 500;
    double const a = integrate(f, 0.0, 1.0, pol).value;
    pol.max_subdivisions = 1000;
    double const b = integrate(f, 0.0, 1.0, pol).value;
    CHECK(std::abs(a - b) <= pol.rel_tol * std::abs(a));
}

TEST_CASE("non-convergence carries the best estimate")
{
    IntegrationPolicy pol;
    pol.max_subdivisions = 3;
    auto f = [](double x) { return 1.0 / (1e-8 + (x - 0.3) * (x - 0.3)); };
    try
    {
        (void)integrate(f, 0.0, 1.0, pol);
        FAIL("expected QuadratureError");
    }
    catch (QuadratureError const& e)
    {
        CHECK(e.best().error > 0.0);
        CHECK(std::isfinite(e.best().value));
    }
}

TEST_CASE("nested integrals")
{
    IntegrationPolicy const pol;
    NestedAxis const axes[] = {half_line(), half_line()};
    QuadResult const r = integrate_nested([](std::span<double const>) { return 1.0; }, axes, pol);
    CHECK(std::abs(r.value - 1.0) < 1e-9);

    // Inner upper limit 1/x depends on the outer variable.
    NestedAxis inner{[](std::span<double const>) { return 0.0; },
                     [](std::span<double const> x) { return 1.0 / x[0]; }, true, {}};
    NestedAxis outer = half_line();
    outer.breakpoints = [](std::span<double const>) { return std::vector<double>{0.1, 1.0, 5.0}; };
    NestedAxis const dep[] = {outer, inner};
    QuadResult const q = integrate_nested([](std::span<double const>) { return 1.0; }, dep, pol);

    mc::McPolicy mp;
    mp.samples = 10'000'000;
    mp.batch = 100'000;
    mc::McEstimate const m
        = mc::estimate([](ChannelDraw const& d) { return d.g_sd < 1.0 / d.g_ds ? 1.0 : 0.0; }, mp, 0);
    CHECK(std::abs(q.value - m.mean) < 4.0 * m.std_error);
    // Closed form 1 - 2 K1(2) as a sharper reference.
    CHECK(std::abs(q.value - (1.0 - 2.0 * specfun::bessel_k1(2.0))) < 1e-8);
}

TEST_CASE("three-level nesting")
{
    IntegrationPolicy const pol;
    NestedAxis const axes[] = {half_line(), half_line(), half_line()};
    QuadResult const r
        = integrate_nested([](std::span<double const> x) { return x[0] * x[1] * x[2]; }, axes, pol);
    CHECK(std::abs(r.value - 1.0) < 1e-8);
}
