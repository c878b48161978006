// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wetfbl::quad {

struct IntegrationPolicy
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    //! Upper cut for e^-x weighted semi-infinite axes, measured from the lower limit.
    double truncation_point = 30.0;
    int max_subdivisions = 2000;

    //! Throws ConfigError on non-positive tolerances or truncation_point < 20.
    void validate() const;
    friend bool operator==(IntegrationPolicy const&, IntegrationPolicy const&) = default;
};

struct QuadResult
{
    double value = 0;
    double error = 0;
    long evaluations = 0;
};

//! Raised when the tolerance is not met within max_subdivisions.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(std::string const& what, QuadResult best)
        : std::runtime_error(what), best_(best)
    {
    }
    QuadResult const& best() const { return best_; }

  private:
    QuadResult best_;
};

using Integrand = std::function<double(double)>;

/*!
 * Adaptive Gauss-Kronrod (7/15) integration of f over the finite interval
 * [a, b]. Points in breakpoints that fall strictly inside (a, b) seed the
 * initial partition.
 */
QuadResult integrate(Integrand const& f, double a, double b, IntegrationPolicy const& policy,
                     std::span<double const> breakpoints = {});

/*!
 * Integral of f(x) e^-x over [a, b]; b may be +inf. An infinite upper limit
 * is cut at a + truncation_point and f_bound * e^-(a+T) is added to the
 * reported error.
 */
QuadResult integrate_exp_weighted(Integrand const& f, double a, double b,
                                  IntegrationPolicy const& policy,
                                  std::span<double const> breakpoints = {},
                                  double f_bound = 1.0);

//! One axis of an iterated integral; bounds may depend on the outer variables.
struct NestedAxis
{
    std::function<double(std::span<double const>)> lower;
    std::function<double(std::span<double const>)> upper;
    bool exp_weight = true;
    std::function<std::vector<double>(std::span<double const>)> breakpoints;
};

/*!
 * Iterated integral of f over the axes, outermost first. Each inner level
 * runs with a tenth of the tolerance of its parent.
 */
QuadResult integrate_nested(std::function<double(std::span<double const>)> const& f,
                            std::span<NestedAxis const> axes, IntegrationPolicy const& policy);

}  // namespace wetfbl::quad
