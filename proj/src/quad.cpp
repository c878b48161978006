// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "wetfbl/error.hpp"

namespace wetfbl::quad {
namespace {

// Kronrod abscissae on [0,1) of the symmetric 15-point rule; odd
// indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel
{
    double a;
    double b;
    double value;
    double error;
};

Panel gk15(Integrand const& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double const fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j)
    {
        double const dx = half * kXgk[j];
        double const pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct ByError
{
    bool operator()(Panel const& x, Panel const& y) const
    {
        // Larger error first; ties go to the leftmost panel for a fixed order.
        if (x.error != y.error)
            return x.error < y.error;
        return x.a > y.a;
    }
};

double tolerance(IntegrationPolicy const& policy, double value)
{
    return std::max(policy.rel_tol * std::abs(value), policy.abs_tol);
}

QuadResult collect(std::vector<Panel>& done, long evaluations)
{
    std::sort(done.begin(), done.end(), [](Panel const& x, Panel const& y) { return x.a < y.a; });
    QuadResult out;
    for (Panel const& p : done)
    {
        out.value += p.value;
        out.error += p.error;
    }
    out.evaluations = evaluations;
    return out;
}

}  // namespace

void IntegrationPolicy::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ConfigError("integration tolerances must be positive");
    if (!(truncation_point >= 20.0))
        throw ConfigError("truncation_point must be >= 20, got " + std::to_string(truncation_point));
    if (max_subdivisions < 1)
        throw ConfigError("max_subdivisions must be >= 1");
}

QuadResult integrate(Integrand const& f, double a, double b, IntegrationPolicy const& policy,
                     std::span<double const> breakpoints)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate needs finite limits");
    if (a == b)
        return {};
    if (b < a)
    {
        QuadResult r = integrate(f, b, a, policy, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> edges{a};
    for (double p : breakpoints)
        if (p > a && p < b)
            edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel, std::vector<Panel>, ByError> open;
    std::vector<Panel> done;
    double value = 0;
    double error = 0;
    long evaluations = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        Panel p = gk15(f, edges[i], edges[i + 1]);
        evaluations += 15;
        value += p.value;
        error += p.error;
        open.push(p);
    }

    int panels = static_cast<int>(open.size());
    while (error > tolerance(policy, value) && !open.empty())
    {
        Panel worst = open.top();
        open.pop();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            // Cannot be split further in floating point.
            done.push_back(worst);
            continue;
        }
        if (panels >= policy.max_subdivisions)
        {
            open.push(worst);
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        evaluations += 30;
        ++panels;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
    }
    while (!open.empty())
    {
        done.push_back(open.top());
        open.pop();
    }
    QuadResult out = collect(done, evaluations);
    if (out.error > tolerance(policy, out.value))
    {
        throw QuadratureError("quadrature did not converge: estimate " + std::to_string(out.value)
                                  + ", error " + std::to_string(out.error),
                              out);
    }
    return out;
}

QuadResult integrate_exp_weighted(Integrand const& f, double a, double b,
                                  IntegrationPolicy const& policy,
                                  std::span<double const> breakpoints, double f_bound)
{
    if (a < 0.0 || std::isnan(a))
        throw DomainError("integrate_exp_weighted needs a >= 0");
    double tail = 0.0;
    if (std::isinf(b))
    {
        b = a + policy.truncation_point;
        tail = std::abs(f_bound) * std::exp(-b);
    }
    if (b <= a)
        return {};
    auto weighted = [&f](double x) { return f(x) * std::exp(-x); };
    QuadResult r = integrate(weighted, a, b, policy, breakpoints);
    r.error += tail;
    return r;
}

namespace {

QuadResult nested_level(std::function<double(std::span<double const>)> const& f,
                        std::span<NestedAxis const> axes, std::size_t level,
                        std::vector<double>& point, IntegrationPolicy const& policy,
                        double& inner_error)
{
    NestedAxis const& axis = axes[level];
    std::span<double const> outer(point.data(), level);
    double const lo = axis.lower(outer);
    double const hi = axis.upper(outer);
    std::vector<double> bps;
    if (axis.breakpoints)
        bps = axis.breakpoints(outer);

    IntegrationPolicy inner_policy = policy;
    inner_policy.rel_tol = policy.rel_tol / 10.0;
    inner_policy.abs_tol = policy.abs_tol / 10.0;

    auto integrand = [&](double t) {
        point[level] = t;
        if (level + 1 == axes.size())
            return f(std::span<double const>(point.data(), axes.size()));
        QuadResult r = nested_level(f, axes, level + 1, point, inner_policy, inner_error);
        inner_error = std::max(inner_error, r.error);
        return r.value;
    };
    if (axis.exp_weight)
        return integrate_exp_weighted(integrand, lo, hi, policy, bps);
    return integrate(integrand, lo, hi, policy, bps);
}

}  // namespace

QuadResult integrate_nested(std::function<double(std::span<double const>)> const& f,
                            std::span<NestedAxis const> axes, IntegrationPolicy const& policy)
{
    if (axes.empty())
        throw DomainError("integrate_nested needs at least one axis");
    std::vector<double> point(axes.size(), 0.0);
    double inner_error = 0.0;
    QuadResult r = nested_level(f, axes, 0, point, policy, inner_error);
    // Inner errors are bounded by the largest one seen times the outer measure,
    // which is at most one for exp-weighted axes.
    r.error += inner_error;
    return r;
}

}  // namespace wetfbl::quad
