// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/energy.hpp"

#include <cmath>
#include <string>

#include "wetfbl/error.hpp"

namespace wetfbl {

double SysParams::distance(Link link) const
{
    switch (link)
    {
        case Link::ds:
        case Link::sd: return d_sd;
        case Link::dr:
        case Link::rd: return d_rd;
        case Link::sr: return d_sr;
    }
    return d_sd;
}

double SysParams::path_loss(Link link) const
{
    return kappa * std::pow(distance(link), alpha);
}

void SysParams::validate() const
{
    auto positive = [](double value, char const* name) {
        if (!(value > 0.0) || std::isnan(value))
            throw ConfigError(std::string(name) + " must be > 0, got " + std::to_string(value));
    };
    auto nonnegative = [](double value, char const* name) {
        if (!(value >= 0.0) || std::isinf(value))
            throw ConfigError(std::string(name) + " must be finite and >= 0, got "
                              + std::to_string(value));
    };
    positive(tc, "Tc");
    if (!(eta > 0.0 && eta < 1.0))
        throw ConfigError("eta must lie in (0,1), got " + std::to_string(eta));
    positive(pd, "PD");
    nonnegative(pc, "Pc");
    nonnegative(pcsi, "Pcsi");
    positive(sigma2_d, "sigma2_D");
    positive(sigma2_r, "sigma2_R");
    positive(bmax, "Bmax");
    positive(kappa, "kappa");
    if (!(alpha >= 1.0))
        throw ConfigError("alpha must be >= 1, got " + std::to_string(alpha));
    positive(d_sd, "d_SD");
    positive(d_sr, "d_SR");
    positive(d_rd, "d_RD");
}

DerivedCoeffs derive_coeffs(SysParams const& params, SchemeConfig const& scheme)
{
    scheme.validate();
    double const harvest = params.eta * scheme.v * params.pd;
    double const k_ds = params.path_loss(Link::ds);
    double const k_sd = params.path_loss(Link::sd);
    double const u = scheme.u;

    DerivedCoeffs out;
    out.lambda_s = saturation_threshold(params, scheme.v, Link::ds);
    out.lambda_r = saturation_threshold(params, scheme.v, Link::dr);

    int const n = scheme.source_blocklength();
    double const source_cost = u / n * (params.pcsi + params.pc) + params.pc;
    out.sd.phi = harvest / (n * k_ds * k_sd * params.sigma2_d);
    out.sd.varphi = source_cost / (k_sd * params.sigma2_d);
    out.sd.lambda = out.lambda_s;
    out.sd.kappa = k_sd;
    out.sd.noise = params.sigma2_d;
    out.sd.blocklength = n;

    if (scheme.is_relay())
    {
        double const k_sr = params.path_loss(Link::sr);
        double const k_dr = params.path_loss(Link::dr);
        double const k_rd = params.path_loss(Link::rd);
        out.sr.phi = harvest / (n * k_ds * k_sr * params.sigma2_r);
        out.sr.varphi = source_cost / (k_sr * params.sigma2_r);
        out.sr.lambda = out.lambda_s;
        out.sr.kappa = k_sr;
        out.sr.noise = params.sigma2_r;
        out.sr.blocklength = n;

        int const n2 = scheme.n2;
        out.rd.phi = harvest / (n2 * k_dr * k_rd * params.sigma2_d);
        out.rd.varphi = (u * params.pcsi + scheme.nu() * params.pc) / (k_rd * n2 * params.sigma2_d);
        out.rd.lambda = out.lambda_r;
        out.rd.kappa = k_rd;
        out.rd.noise = params.sigma2_d;
        out.rd.blocklength = n2;
    }
    return out;
}

double harvested_energy(SysParams const& params, int v, double g, Link link)
{
    return params.eta * params.pd * g / params.path_loss(link) * v * params.tc;
}

double battery_charge(double energy, double bmax)
{
    return std::fmin(energy, bmax);
}

double saturation_threshold(SysParams const& params, int v, Link link)
{
    if (params.infinite_battery())
        return params.bmax;
    return params.bmax * params.path_loss(link) / (v * params.tc * params.eta * params.pd);
}

double transmit_power_s(SysParams const& params, int v, int u, int n, double g_ds)
{
    double const charge
        = battery_charge(harvested_energy(params, v, g_ds, Link::ds), params.bmax);
    double const available = charge - params.pcsi * u * params.tc - params.pc * (u + n) * params.tc;
    return available / (n * params.tc);
}

double transmit_power_r(SysParams const& params, int v, int u, int n1, int n2, double g_dr)
{
    double const charge
        = battery_charge(harvested_energy(params, v, g_dr, Link::dr), params.bmax);
    int const nu = 2 * u + n1 + n2;
    double const available = charge - params.pcsi * u * params.tc - params.pc * nu * params.tc;
    return available / (n2 * params.tc);
}

double p_energy_insufficient(SysParams const& params, SchemeConfig const& scheme, Node node)
{
    if (node == Node::relay && !scheme.is_relay())
        throw ConfigError("relay energy outage requested for a direct scheme");
    DerivedCoeffs const c = derive_coeffs(params, scheme);
    LinkCoeffs const& link = node == Node::source ? c.sd : c.rd;
    double const ratio = link.energy_threshold();
    if (link.lambda < ratio)
    {
        throw ConfigError(std::string(node == Node::source ? "source" : "relay")
                          + " battery saturates below its pilot+circuit requirement "
                            "(outage is certain); increase Bmax or reduce consumption");
    }
    return -std::expm1(-ratio);
}

}  // namespace wetfbl
