// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wetfbl/energy.hpp"
#include "wetfbl/scheme.hpp"

namespace wetfbl::icsi {

//! MMSE pilot-based channel estimation with u pilot symbols at power pcsi.
struct EstimationModel
{
    int u = 1;
    double pcsi = 0.0;  //!< [W]

    static EstimationModel from(SysParams const& params, SchemeConfig const& scheme)
    {
        return {scheme.u, params.pcsi};
    }

    double pilot_energy() const { return pcsi * u; }
    //! Variance of the channel estimate for a link with path loss kappa.
    double estimate_variance(double kappa, double noise) const;
    //! Variance of the estimation error; estimate + error variance is 1.
    double error_variance(double kappa, double noise) const;
};

/*!
 * SNR slope b such that the imperfect-CSI SNR is b * g_rx, given the
 * transmitter's harvesting gain g_h. Non-positive perfect-CSI slopes are
 * returned unchanged, so callers see the same energy-outage sign.
 */
double slope(LinkCoeffs const& link, double g_h, EstimationModel const& model);

//! slope() under imperfect CSI, the perfect-CSI slope otherwise.
inline double effective_slope(LinkCoeffs const& link, double g_h, CsiMode mode,
                              EstimationModel const& model)
{
    return mode == CsiMode::imperfect ? slope(link, g_h, model) : link.slope(g_h);
}

//! Equivalent SNR of link (sd, sr or rd) on one channel draw.
double equiv_snr(Link link, DerivedCoeffs const& coeffs, ChannelDraw const& draw,
                 EstimationModel const& model);

/*!
 * Second derivative of the direct-link imperfect-CSI SNR with respect to
 * the pilot power, evaluated at params.pcsi [1/W^2].
 *
 * Throws DomainError unless the harvested energy covers the circuit
 * consumption even with zero pilot power, and the data power is positive
 * at params.pcsi.
 */
double d2_gamma_dpcsi2(SysParams const& params, int v, int u, int n, double g_ds, double g_sd);

}  // namespace wetfbl::icsi
