// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/icsi.hpp"

#include <cmath>

#include "wetfbl/error.hpp"

namespace wetfbl::icsi {

double EstimationModel::estimate_variance(double kappa, double noise) const
{
    double const received = pilot_energy() / kappa;
    return received / (received + noise);
}

double EstimationModel::error_variance(double kappa, double noise) const
{
    double const received = pilot_energy() / kappa;
    return noise / (received + noise);
}

double slope(LinkCoeffs const& link, double g_h, EstimationModel const& model)
{
    double const a = link.slope(g_h);
    if (!(a > 0.0))
        return a;
    double const pu = model.pilot_energy();
    if (!(pu > 0.0))
        return 0.0;
    if (std::isinf(pu))
        return a;
    return a * pu / (pu + link.kappa * link.noise * (a + 1.0));
}

double equiv_snr(Link link, DerivedCoeffs const& coeffs, ChannelDraw const& draw,
                 EstimationModel const& model)
{
    switch (link)
    {
        case Link::sd: return slope(coeffs.sd, draw.g_ds, model) * draw.g_sd;
        case Link::sr: return slope(coeffs.sr, draw.g_ds, model) * draw.g_sr;
        case Link::rd: return slope(coeffs.rd, draw.g_dr, model) * draw.g_rd;
        default: break;
    }
    throw DomainError("equiv_snr is defined for the sd, sr and rd links only");
}

double d2_gamma_dpcsi2(SysParams const& params, int v, int u, int n, double g_ds, double g_sd)
{
    double const k_ds = params.path_loss(Link::ds);
    double const s = params.path_loss(Link::sd) * params.sigma2_d;
    double const g_h = std::fmin(g_ds, saturation_threshold(params, v, Link::ds));
    double const harvest = params.eta * params.pd * v * g_h / k_ds;
    if (!(harvest > params.pc * (n + u)))
        throw DomainError("harvested energy does not cover the circuit consumption");

    // SNR(P) = g * N(P) / D(P) with N quadratic and D affine in the pilot power.
    double const a0 = (harvest - params.pc * (n + u)) / (n * s);
    double const c = double(u) / (n * s);
    double const p = params.pcsi;
    double const a = a0 - c * p;
    if (!(a > 0.0))
        throw DomainError("pilot power leaves no energy for data transmission");

    double const num = u * a * p;
    double const dnum = u * (a0 - 2.0 * c * p);
    double const d2num = -2.0 * u * c;
    double const den = u * p + s * (a + 1.0);
    double const dden = u - s * c;
    double const d2
        = (d2num * den * den - 2.0 * dnum * dden * den + 2.0 * num * dden * dden) / (den * den * den);
    return g_sd * d2;
}

}  // namespace wetfbl::icsi
