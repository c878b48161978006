// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wetfbl/energy.hpp"
#include "wetfbl/mc.hpp"
#include "wetfbl/quad.hpp"
#include "wetfbl/scheme.hpp"

namespace wetfbl::opt {

enum class Evaluator
{
    closed,
    quadrature,
    monte_carlo,
};

std::string to_string(Evaluator e);
Evaluator parse_evaluator(std::string const& text);

struct EvalOptions
{
    Evaluator method = Evaluator::quadrature;
    int i_max = 10;
    mc::McPolicy mc{};
    quad::IntegrationPolicy quad{};
    int workers = 1;

    friend bool operator==(EvalOptions const&, EvalOptions const&) = default;
};

//! One outage evaluation, whatever the scheme and method.
struct Evaluation
{
    double p_total = 0;
    double p_energy = 0;  //!< source energy outage
    double p_error = 0;   //!< everything else
    //! Quadrature error, series remainder or MC confidence half-width.
    double bound = 0;
    std::string method;
};

/*!
 * Dispatch to the direct or relay analyzer. Closed forms exist for the
 * ideal direct scheme only; other combinations raise ConfigError.
 */
Evaluation evaluate_outage(SysParams const& params, SchemeConfig const& scheme,
                           EvalOptions const& options);

struct Constraint
{
    double eps0 = 1e-4;
    int delta0 = 4000;
    void validate() const;
};

//! Candidate phase lengths. For relay schemes n_values holds n1, and n2
//! equals n1 unless n2_values is given.
struct SearchGrid
{
    std::vector<int> v_values;
    std::vector<int> n_values;
    std::vector<int> n2_values;

    //! Arithmetic ladder first, first+step, ..., <= last.
    static std::vector<int> ladder(int first, int last, int step);
};

struct OperatingPoint
{
    SchemeConfig scheme;
    int delta = 0;
    double beta = 0;
    double p_out = 1;
    double bound = 0;
    bool feasible = false;
    int evaluated = 0;  //!< candidates evaluated during the search
};

/*!
 * Smallest-delay grid point with p_out <= eps0 and delay <= delta0. Ties go
 * to smaller n, then smaller v. The returned point is infeasible when no
 * candidate meets the constraint; its scheme is then the best one seen.
 * `family` fixes kind, u, k and CSI mode.
 */
OperatingPoint min_delay(SysParams const& params, SchemeConfig const& family,
                         Constraint const& constraint, SearchGrid const& grid,
                         EvalOptions const& options);

/*!
 * Allocation of exactly `delta` channel uses minimizing p_out; v takes the
 * remainder after pilots and data phases from the grid.
 */
OperatingPoint min_outage_at_delay(SysParams const& params, SchemeConfig const& family, int delta,
                                   SearchGrid const& grid, EvalOptions const& options);

struct PilotOptimum
{
    double dbm = 0;
    double watt = 0;
    double p_out = 1;
    //! False when the interior probe did not bracket a minimum and the
    //! dense-grid fallback was used.
    bool bracketed = false;
    //! (dBm, p_out) pairs evaluated, in evaluation order.
    std::vector<std::pair<double, double>> profile;
};

/*!
 * Pilot power minimizing p_out over [lo_dbm, hi_dbm]: golden-section search
 * to 0.25 dB when an interior probe brackets the minimum, a 0.5 dB grid
 * otherwise. Configurations whose energy outage is certain score 1.
 */
PilotOptimum optimal_pilot_power(SysParams const& params, SchemeConfig const& scheme, double lo_dbm,
                                 double hi_dbm, EvalOptions const& options);

}  // namespace wetfbl::opt
