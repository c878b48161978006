// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/relay.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wetfbl/dc.hpp"
#include "wetfbl/error.hpp"

namespace wetfbl::relay {
namespace {

struct Quadrature
{
    double direct = 0;  // E[S_ok eps_D1]
    double joint = 0;   // E[S_ok eps_R eps_D1]
    double error = 0;
};

Quadrature integrate_terms(SysParams const& params, SchemeConfig const& scheme,
                           DerivedCoeffs const& c, quad::IntegrationPolicy const& policy)
{
    fbl::CodingSpec const spec(scheme.k, scheme.n1);
    auto const model = icsi::EstimationModel::from(params, scheme);
    quad::IntegrationPolicy inner = policy;
    inner.rel_tol /= 10.0;
    inner.abs_tol /= 10.0;
    double inner_error = 0.0;

    auto cond = [&](LinkCoeffs const& link, double x) {
        double const b = icsi::effective_slope(link, x, scheme.csi, model);
        quad::QuadResult const r = dc::conditional_error(b, spec, inner);
        inner_error = std::max(inner_error, r.error);
        return r.value;
    };
    auto direct = [&](double x) { return cond(c.sd, x); };
    auto joint = [&](double x) { return cond(c.sd, x) * cond(c.sr, x); };

    // Both links share the source's harvest, so they share the threshold.
    double const x0 = c.sd.energy_threshold();
    double const lambda = c.lambda_s;
    double const scale = spec.snr_threshold() / std::max(c.sd.phi, c.sr.phi);
    std::vector<double> bps;
    for (double s = 1e-2; s <= 1e4; s *= 10.0)
        bps.push_back(x0 + s * scale);

    auto outer = [&](auto const& f) {
        quad::QuadResult r = quad::integrate_exp_weighted(f, x0, lambda, policy, bps);
        if (std::isfinite(lambda))
            r.value += std::exp(-lambda) * f(lambda);
        return r;
    };
    quad::QuadResult const rd = outer(direct);
    quad::QuadResult const rj = outer(joint);
    return {rd.value, rj.value, rd.error + rj.error + 2.0 * inner_error};
}

}  // namespace

RelaySnrs snrs_relay(DerivedCoeffs const& coeffs, ChannelDraw const& draw)
{
    return {coeffs.sd.slope(draw.g_ds) * draw.g_sd, coeffs.sr.slope(draw.g_ds) * draw.g_sr,
            coeffs.rd.slope(draw.g_dr) * draw.g_rd};
}

RelaySnrs snrs_relay(DerivedCoeffs const& coeffs, ChannelDraw const& draw, CsiMode mode,
                     icsi::EstimationModel const& model)
{
    return {icsi::effective_slope(coeffs.sd, draw.g_ds, mode, model) * draw.g_sd,
            icsi::effective_slope(coeffs.sr, draw.g_ds, mode, model) * draw.g_sr,
            icsi::effective_slope(coeffs.rd, draw.g_dr, mode, model) * draw.g_rd};
}

ScChoice sc_select(double gamma_d1, double gamma_d2, fbl::CodingSpec const& phase1,
                   fbl::CodingSpec const& phase2)
{
    double const m1 = fbl::normalized_margin(gamma_d1, phase1);
    double const m2 = fbl::normalized_margin(gamma_d2, phase2);
    double const e1 = fbl::error_prob(gamma_d1, phase1);
    double const e2 = fbl::error_prob(gamma_d2, phase2);
    if (m2 > m1)
        return {2, std::min(e1, e2)};
    return {1, std::min(e1, e2)};
}

double mrc_combine(double gamma_d1, double gamma_d2, fbl::CodingSpec const& phase1,
                   fbl::CodingSpec const& phase2)
{
    if (phase1.n() != phase2.n())
        throw ConfigError("MRC combining requires n1 == n2");
    double const sum = std::max(gamma_d1, 0.0) + std::max(gamma_d2, 0.0);
    return fbl::error_prob(sum, phase1);
}

RelayOutage outage_relay(SysParams const& params, SchemeConfig const& scheme, Method method,
                         mc::McPolicy const& mc_policy, quad::IntegrationPolicy const& quad_policy,
                         int workers)
{
    params.validate();
    if (!scheme.is_relay())
        throw ConfigError("outage_relay needs a relay scheme");
    DerivedCoeffs const c = derive_coeffs(params, scheme);
    double const p_s = p_energy_insufficient(params, scheme, Node::source);
    double const p_r = p_energy_insufficient(params, scheme, Node::relay);
    fbl::CodingSpec const spec1(scheme.k, scheme.n1);
    fbl::CodingSpec const spec2(scheme.k, scheme.n2);
    auto const model = icsi::EstimationModel::from(params, scheme);
    bool const mrc = scheme.kind == SchemeKind::relay_mrc;

    // Per-draw conditional terms: pr_errd1, comb, joint, and their sum.
    auto target = [&](ChannelDraw const& d) -> std::array<double, 4> {
        if (!c.sd.has_energy(d.g_ds))
            return {0.0, 0.0, 0.0, 0.0};
        RelaySnrs const g = snrs_relay(c, d, scheme.csi, model);
        double const e_d1 = fbl::error_prob(g.d1, spec1);
        double const e_r = fbl::error_prob(g.r, spec1);
        double comb = 0.0;
        if (c.rd.has_energy(d.g_dr) && e_r < 1.0)
        {
            double const e_comb
                = mrc ? mrc_combine(g.d1, g.d2, spec1, spec2) : sc_select(g.d1, g.d2, spec1, spec2).eps;
            comb = (1.0 - e_r) * e_comb;
        }
        double const pr = p_r * e_d1;
        double const joint = (1.0 - p_r) * e_r * e_d1;
        return {pr, comb, joint, pr + comb + joint};
    };

    RelayOutage out;
    out.method = method;
    out.p_energy_s = p_s;
    if (method == Method::monte_carlo)
    {
        auto const est = mc::estimate_many<4>(target, mc_policy, workers);
        out.term_pr_errd1 = est[0].mean;
        out.term_comb = est[1].mean;
        out.term_joint = est[2].mean;
        out.ci_halfwidth = est[3].ci_halfwidth;
    }
    else
    {
        quad_policy.validate();
        Quadrature const q = integrate_terms(params, scheme, c, quad_policy);
        out.term_pr_errd1 = p_r * q.direct;
        out.term_joint = (1.0 - p_r) * q.joint;
        out.err_bound = q.error;
        auto comb_only = [&](ChannelDraw const& d) { return std::array<double, 1>{target(d)[1]}; };
        mc::McEstimate const est = mc::estimate_many<1>(comb_only, mc_policy, workers)[0];
        out.term_comb = est.mean;
        out.ci_halfwidth = est.ci_halfwidth;
    }
    out.p_total = out.p_energy_s + out.term_pr_errd1 + out.term_comb + out.term_joint;
    return out;
}

}  // namespace wetfbl::relay
