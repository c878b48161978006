// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wetfbl/energy.hpp"
#include "wetfbl/fbl.hpp"
#include "wetfbl/icsi.hpp"
#include "wetfbl/mc.hpp"
#include "wetfbl/quad.hpp"
#include "wetfbl/scheme.hpp"

namespace wetfbl::relay {

struct RelaySnrs
{
    double d1 = 0;  //!< S -> D, first phase
    double r = 0;   //!< S -> R
    double d2 = 0;  //!< R -> D, second phase
};

//! Perfect-CSI SNRs of the three links.
RelaySnrs snrs_relay(DerivedCoeffs const& coeffs, ChannelDraw const& draw);

RelaySnrs snrs_relay(DerivedCoeffs const& coeffs, ChannelDraw const& draw, CsiMode mode,
                     icsi::EstimationModel const& model);

struct ScChoice
{
    int branch = 1;  //!< 1: direct phase, 2: relayed phase
    double eps = 1;
};

/*!
 * Selection combining: decode the branch with the larger normalized
 * margin. The resulting error probability is the smaller of the two.
 */
ScChoice sc_select(double gamma_d1, double gamma_d2, fbl::CodingSpec const& phase1,
                   fbl::CodingSpec const& phase2);

//! Maximal-ratio combining; ConfigError unless both phases share n.
double mrc_combine(double gamma_d1, double gamma_d2, fbl::CodingSpec const& phase1,
                   fbl::CodingSpec const& phase2);

enum class Method
{
    quadrature,
    monte_carlo,
};

struct RelayOutage
{
    double p_total = 0;
    double p_energy_s = 0;
    double term_pr_errd1 = 0;  //!< relay lacks energy, direct phase fails
    double term_comb = 0;      //!< relay decodes and forwards, combining fails
    double term_joint = 0;     //!< relay fails to decode, direct phase fails
    //! Half-width of the MC confidence interval on p_total (MC terms only).
    double ci_halfwidth = 0;
    //! Quadrature error estimate of the integrated terms.
    double err_bound = 0;
    Method method = Method::monte_carlo;
};

/*!
 * Outage probability of the decode-and-forward scheme. The combining term
 * always uses Monte Carlo; with Method::quadrature the other expectations
 * are integrated numerically.
 */
RelayOutage outage_relay(SysParams const& params, SchemeConfig const& scheme, Method method,
                         mc::McPolicy const& mc_policy, quad::IntegrationPolicy const& quad_policy = {},
                         int workers = 1);

}  // namespace wetfbl::relay
