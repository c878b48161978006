// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "wetfbl/dc.hpp"
#include "wetfbl/error.hpp"
#include "wetfbl/specfun.hpp"

using namespace wetfbl;

namespace {

SysParams far_link(double bmax = INFINITY)
{
    SysParams p;
    p.d_sd = p.d_sr = p.d_rd = 40.0;
    p.bmax = bmax;
    return p;
}

SchemeConfig direct(int v = 1000, int n = 500, int k = 256)
{
    SchemeConfig s;
    s.v = v;
    s.n = n;
    s.k = k;
    return s;
}

// \int Omega(phi z) 2 K0(2 sqrt z) dz with z = t^2, integrated directly.
double omega_oracle(fbl::LinCoeffs const& lc, double phi)
{
    quad::IntegrationPolicy const pol{1e-12, 1e-300, 30, 4000};
    auto f = [&](double t) {
        return t > 0 ? fbl::omega(phi * t * t, lc) * 4.0 * t * specfun::bessel_k0(2.0 * t) : 0.0;
    };
    double const t_rho = std::sqrt(lc.rho / phi);
    double const t_theta = std::sqrt(lc.theta / phi);
    double const t_vartheta = std::sqrt(lc.vartheta / phi);
    double const bps[] = {1e-3 * t_rho, 1e-2 * t_rho, 0.1 * t_rho, t_rho, t_theta};
    return quad::integrate(f, 0.0, t_vartheta, pol, bps).value;
}

}  // namespace

TEST_CASE("direct-link SNR")
{
    SysParams const p;
    SchemeConfig const s;
    DerivedCoeffs const c = derive_coeffs(p, s);
    CHECK(dc::snr_dc(c, 1.0, 1.0) == doctest::Approx(c.sd.phi));
    CHECK(dc::snr_dc(c, 1.0, 0.0) == 0.0);
    SysParams clipped = p;
    clipped.bmax = 1e-7;
    DerivedCoeffs const cc = derive_coeffs(clipped, s);
    CHECK(dc::snr_dc(cc, 2.0 * cc.lambda_s, 0.7) == dc::snr_dc(cc, cc.lambda_s, 0.7));
}

TEST_CASE("conditional error averages the error probability over Exp(1)")
{
    fbl::CodingSpec const spec(256, 500);
    quad::IntegrationPolicy const pol;
    CHECK(dc::conditional_error(0.0, spec, pol).value == 1.0);
    CHECK(dc::conditional_error(-2.0, spec, pol).value == 1.0);
    quad::IntegrationPolicy const tight{1e-12, 1e-300, 40, 4000};
    for (double b : {0.05, 1.0, 40.0, 4000.0})
    {
        double const lo = spec.snr_threshold() / b;
        double const bps[] = {0.5 * lo, lo, 2 * lo, 10 * lo};
        double const ref = quad::integrate_exp_weighted(
                               [&](double y) { return fbl::error_prob(b * y, spec); }, 0.0, INFINITY, tight, bps)
                               .value;
        CHECK(dc::conditional_error(b, spec, pol).value == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("unbounded harvest removes decoding errors")
{
    SysParams p = far_link();
    p.pd = 1e12;
    dc::DcOutage const r = dc::avg_error_quadrature(p, direct());
    CHECK(r.p_error < 1e-6);
    CHECK(r.p_total == r.p_energy + r.p_error);
}

TEST_CASE("quadrature agrees with the closed forms")
{
    double const xi_inf = dc::xi_metric(dc::avg_error_quadrature(far_link(), direct()).p_total,
                                        dc::closed_form_infinite(far_link(), direct()).p_total);
    CHECK(xi_inf < 0.035);
    for (int n : {500, 1000})
        for (double b : {1e-8, 1e-7})
        {
            double const q = dc::avg_error_quadrature(far_link(b), direct(1000, n)).p_total;
            double const c = dc::closed_form_finite(far_link(b), direct(1000, n), 10).p_total;
            INFO("n=" << n << " Bmax=" << b);
            CHECK(dc::xi_metric(q, c) < 0.01);
        }
}

TEST_CASE("quadrature agrees with 1e7-draw Monte Carlo")
{
    mc::McPolicy pol;
    pol.samples = 10'000'000;
    pol.batch = 100'000;
    for (double b : {double(INFINITY), 1e-7})
    {
        SchemeConfig s = direct(1000, 500);
        dc::DcOutage const q = dc::avg_error_quadrature(far_link(b), s);
        dc::DcOutage const m = dc::avg_error_mc(far_link(b), s, pol, 0);
        double const se = m.err_bound / mc::two_sided_z(pol.ci_level);
        INFO("Bmax=" << b << " quad=" << q.p_total << " mc=" << m.p_total);
        CHECK(std::abs(q.p_total - m.p_total) < 4.0 * se);
    }
}

TEST_CASE("non-ideal and imperfect-CSI quadrature agree with Monte Carlo")
{
    SysParams p;
    p.pc = 1e-6;
    p.pcsi = dbm_to_watt(-15.0);
    p.bmax = 2e-6;
    SchemeConfig s = direct(1000, 300);
    s.csi = CsiMode::imperfect;
    mc::McPolicy pol;
    pol.samples = 2'000'000;
    pol.batch = 20'000;
    dc::DcOutage const q = dc::avg_error_quadrature(p, s);
    dc::DcOutage const m = dc::avg_error_mc(p, s, pol, 0);
    double const se = m.err_bound / mc::two_sided_z(pol.ci_level);
    INFO("quad=" << q.p_total << " mc=" << m.p_total);
    CHECK(q.p_energy > 0.0);
    CHECK(q.p_energy == doctest::Approx(m.p_energy).epsilon(0.05));
    CHECK(std::abs(q.p_total - m.p_total) < 4.0 * se);
}

TEST_CASE("closed form with infinite battery matches the surrogate integral")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> kd(64, 512);
    std::uniform_int_distribution<int> nd(100, 3000);
    std::uniform_real_distribution<double> lphi(0.0, 5.0);
    int done = 0;
    while (done < 20)
    {
        int const k = kd(rng);
        int const n = nd(rng);
        fbl::CodingSpec const spec(k, n);
        if (!(fbl::LinCoeffs::make(spec).rho > 0.0))
            continue;
        double const phi = std::pow(10.0, lphi(rng));
        // Choose PD so that the direct-link phi equals the target.
        SysParams p = far_link();
        SchemeConfig s = direct(1000, n, k);
        p.pd *= phi / derive_coeffs(p, s).sd.phi;
        fbl::LinCoeffs const lc = fbl::LinCoeffs::make(spec);
        double const closed = dc::closed_form_infinite(p, s).p_total;
        double const oracle = omega_oracle(lc, derive_coeffs(p, s).sd.phi);
        INFO("k=" << k << " n=" << n << " phi=" << phi);
        CHECK(std::abs(closed - oracle) < 1e-6 * oracle);
        ++done;
    }
}

TEST_CASE("closed form limits and preconditions")
{
    SysParams weak = far_link();
    weak.pd = 1e-6;
    CHECK(dc::closed_form_infinite(weak, direct()).p_total == doctest::Approx(1.0).epsilon(1e-6));

    // Large battery: finite series (via the Bessel tail) meets the infinite form.
    double const fin = dc::closed_form_finite(far_link(1e-3), direct()).p_total;
    double const inf = dc::closed_form_infinite(far_link(), direct()).p_total;
    CHECK(std::abs(fin - inf) < 1e-3 * inf);

    SysParams nonideal = far_link(1e-7);
    nonideal.pc = 1e-6;
    CHECK_THROWS_AS(dc::closed_form_finite(nonideal, direct()), ConfigError);
    nonideal.bmax = INFINITY;
    CHECK_THROWS_AS(dc::closed_form_infinite(nonideal, direct()), ConfigError);
    CHECK_THROWS_AS(dc::closed_form_finite(far_link(), direct()), ConfigError);
    CHECK_THROWS_AS(dc::closed_form_infinite(far_link(1e-7), direct()), ConfigError);
    CHECK_THROWS_AS(dc::closed_form_infinite(far_link(), direct(1000, 5, 256)), ConfigError);
}

TEST_CASE("series and tail evaluations agree where both are accurate")
{
    // Around the switch-over; 30 series terms are converged at lambda ~ 2.
    SysParams const p = far_link(1.2e-7);
    SchemeConfig const s = direct();
    double const lambda = derive_coeffs(p, s).lambda_s;
    CHECK(lambda < 2.0);
    SysParams q = p;
    q.bmax = 1.3e-7;  // lambda just above the switch
    double const a = dc::closed_form_finite(p, s, 40).p_total;
    double const b = dc::closed_form_finite(q, s, 40).p_total;
    double const qa = dc::avg_error_quadrature(p, s).p_total;
    double const qb = dc::avg_error_quadrature(q, s).p_total;
    // Both branches track the exact curve with the same approximation error.
    CHECK(std::abs(dc::xi_metric(qa, a) - dc::xi_metric(qb, b)) < 2e-4);
}

TEST_CASE("series cutoff convergence")
{
    // At lambda = 0.16 the series has converged by i_M = 10.
    SysParams const small = far_link(1e-8);
    for (int n : {500, 1000})
    {
        double const a = dc::closed_form_finite(small, direct(1000, n), 10).p_total;
        double const b = dc::closed_form_finite(small, direct(1000, n), 30).p_total;
        CHECK(std::abs(a - b) < 1e-6 * b);
    }
    // At lambda = 1.6 the alternating remainder still oscillates at i_M = 10
    // but stays within the 1% accuracy budget, and settles by i_M = 20.
    SysParams const mid = far_link(1e-7);
    double const q = dc::avg_error_quadrature(mid, direct()).p_total;
    double const ref = dc::closed_form_finite(mid, direct(), 30).p_total;
    for (int i = 10; i <= 30; ++i)
        CHECK(dc::xi_metric(q, dc::closed_form_finite(mid, direct(), i).p_total) < 0.01);
    for (int i = 20; i <= 30; ++i)
        CHECK(std::abs(dc::closed_form_finite(mid, direct(), i).p_total - ref) < 1e-9 * ref);
}

TEST_CASE("xi metric")
{
    CHECK(dc::xi_metric(0.1, 0.1) == 0.0);
    CHECK(dc::xi_metric(0.1, 0.101) == doctest::Approx(0.01));
    CHECK_THROWS_AS(dc::xi_metric(0.0, 0.1), DomainError);
}

TEST_CASE("outage trends in v and n")
{
    SysParams p;
    p.pc = dbm_to_watt(-30.0);
    p.d_sd = p.d_sr = p.d_rd = 20.0;
    double prev = 1.0;
    for (int v = 200; v <= 4000; v += 200)
    {
        dc::DcOutage const r = dc::avg_error_quadrature(p, direct(v, 300));
        CHECK_FALSE(r.clamped);
        CHECK(r.p_total <= prev * (1.0 + 1e-9));
        prev = r.p_total;
    }
    std::vector<double> curve;
    for (int n = 100; n <= 3000; n += 100)
        curve.push_back(dc::avg_error_quadrature(p, direct(2000, n)).p_total);
    int sign_changes = 0;
    int prev_sign = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
    {
        int const s = curve[i] > curve[i - 1] ? 1 : (curve[i] < curve[i - 1] ? -1 : 0);
        if (s != 0 && prev_sign != 0 && s != prev_sign)
            ++sign_changes;
        if (s != 0)
            prev_sign = s;
    }
    CHECK(sign_changes <= 1);
}

TEST_CASE("certain energy outage is a configuration error")
{
    SysParams p;
    p.pc = 1e-3;
    p.bmax = 1e-9;
    CHECK_THROWS_AS(dc::avg_error_quadrature(p, direct()), ConfigError);
}
