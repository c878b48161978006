// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "wetfbl/energy.hpp"
#include "wetfbl/fbl.hpp"
#include "wetfbl/mc.hpp"
#include "wetfbl/quad.hpp"
#include "wetfbl/scheme.hpp"

namespace wetfbl::dc {

enum class Method
{
    quadrature,
    closed_form,
    monte_carlo,
};

std::string_view to_string(Method method);

struct DcOutage
{
    double p_total = 0;
    double p_energy = 0;
    double p_error = 0;
    Method method = Method::quadrature;
    //! Quadrature error estimate, MC confidence half-width, or the last
    //! series term for the finite-battery closed form.
    double err_bound = 0;
    //! Set when p_total fell outside [0,1] before clamping.
    bool clamped = false;
};

//! Perfect-CSI SNR at the destination; negative when S lacks energy.
double snr_dc(DerivedCoeffs const& coeffs, double g_ds, double g_sd);

/*!
 * E_y[eps(b y)] for y ~ Exp(1): the error probability averaged over the
 * data-link gain for an SNR slope b. Non-positive slopes give 1.
 */
quad::QuadResult conditional_error(double b, fbl::CodingSpec const& spec,
                                   quad::IntegrationPolicy const& policy);

/*!
 * Outage probability by numerical integration over both gains. The battery
 * is finite or infinite according to params.bmax; the CSI mode comes from
 * the scheme.
 */
DcOutage avg_error_quadrature(SysParams const& params, SchemeConfig const& scheme,
                              quad::IntegrationPolicy const& policy = {});

//! Rao-Blackwellized Monte Carlo estimate of the same outage probability.
DcOutage avg_error_mc(SysParams const& params, SchemeConfig const& scheme,
                      mc::McPolicy const& policy, int workers = 1);

/*!
 * Closed-form approximation for a finite battery and an ideal system, with
 * i_max + 1 terms of the exponential-integral series. Throws ConfigError
 * for non-ideal systems, an infinite battery or a non-positive lower
 * breakpoint of the linearized error model.
 */
DcOutage closed_form_finite(SysParams const& params, SchemeConfig const& scheme, int i_max = 10);

//! Bessel-function closed form for an infinite battery and an ideal system.
DcOutage closed_form_infinite(SysParams const& params, SchemeConfig const& scheme);

//! Closed form matching the battery in params.
DcOutage closed_form(SysParams const& params, SchemeConfig const& scheme, int i_max = 10);

//! |exact - approx| / exact; DomainError unless exact > 0.
double xi_metric(double exact, double approx);

}  // namespace wetfbl::dc
