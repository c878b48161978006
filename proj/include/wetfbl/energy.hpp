// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "wetfbl/scheme.hpp"

namespace wetfbl {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

enum class Link
{
    ds,  //!< destination -> source (energy transfer)
    dr,  //!< destination -> relay (energy transfer)
    sd,
    sr,
    rd,
};

enum class Node
{
    source,
    relay,
};

/*!
 * Physical parameters of the network, strictly SI.
 *
 * Path loss is reciprocal: d_DS = d_SD and d_DR = d_RD.
 */
struct SysParams
{
    double tc = 2e-6;        //!< channel-use duration [s]
    double eta = 0.5;        //!< RF-DC conversion efficiency
    double pd = 100.0;       //!< destination WET power [W]
    double pc = 0.0;         //!< circuit/baseband power [W]
    double pcsi = 0.0;       //!< pilot power [W]
    double sigma2_d = 1e-14; //!< noise power at destination [W]
    double sigma2_r = 1e-14; //!< noise power at relay [W]
    double bmax = std::numeric_limits<double>::infinity();  //!< battery [J]
    double kappa = 1e3;      //!< reference loss
    double alpha = 2.0;      //!< path-loss exponent
    double d_sd = 10.0;      //!< [m]
    double d_sr = 10.0;      //!< [m]
    double d_rd = 10.0;      //!< [m]

    double distance(Link link) const;
    //! kappa * d^alpha for the link.
    double path_loss(Link link) const;
    bool ideal() const { return pc == 0.0 && pcsi == 0.0; }
    bool infinite_battery() const { return std::isinf(bmax); }

    //! Throws ConfigError naming the first violated constraint.
    void validate() const;

    friend bool operator==(SysParams const&, SysParams const&) = default;
};

/*!
 * Affine SNR model of one data link: SNR = (phi * min(g_h, lambda) - varphi)
 * * g_rx, where g_h is the harvesting gain of the transmitter and g_rx the
 * data-link gain.
 */
struct LinkCoeffs
{
    double phi = 0;
    double varphi = 0;
    double lambda = std::numeric_limits<double>::infinity();
    double kappa = 1;   //!< path loss of the data link
    double noise = 1;   //!< receiver noise power
    int blocklength = 1;

    //! Harvesting gain below which the transmitter cannot cover its costs.
    double energy_threshold() const { return varphi / phi; }
    bool has_energy(double g_h) const { return std::fmin(g_h, lambda) >= energy_threshold(); }
    //! SNR per unit data-link gain (perfect CSI).
    double slope(double g_h) const { return phi * std::fmin(g_h, lambda) - varphi; }
};

//! Coefficients of every link for one (params, scheme) pair.
struct DerivedCoeffs
{
    LinkCoeffs sd;  //!< S->D (direct scheme, or first phase with n = n1)
    LinkCoeffs sr;  //!< S->R (relay only)
    LinkCoeffs rd;  //!< R->D (relay only)
    double lambda_s = std::numeric_limits<double>::infinity();
    double lambda_r = std::numeric_limits<double>::infinity();
};

DerivedCoeffs derive_coeffs(SysParams const& params, SchemeConfig const& scheme);

//! Energy harvested during v channel uses over link ds or dr [J].
double harvested_energy(SysParams const& params, int v, double g, Link link);

double battery_charge(double energy, double bmax);

//! Harvesting gain at which the battery saturates.
double saturation_threshold(SysParams const& params, int v, Link link);

//! Source data power [W]; negative when the harvest cannot cover costs.
double transmit_power_s(SysParams const& params, int v, int u, int n, double g_ds);

//! Relay data power [W] with the relay's nu = 2u + n1 + n2 circuit ledger.
double transmit_power_r(SysParams const& params, int v, int u, int n1, int n2, double g_dr);

/*!
 * Probability that the harvested energy at a node cannot cover pilot and
 * circuit consumption. Throws ConfigError when the battery saturates below
 * the requirement (outage would be certain).
 */
double p_energy_insufficient(SysParams const& params, SchemeConfig const& scheme, Node node);

}  // namespace wetfbl
