// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/opt.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "wetfbl/dc.hpp"
#include "wetfbl/error.hpp"
#include "wetfbl/relay.hpp"

namespace wetfbl::opt {
namespace {

constexpr double kGoldenResolutionDb = 0.25;
constexpr double kFallbackStepDb = 0.5;

std::vector<SchemeConfig> enumerate(SchemeConfig const& family, SearchGrid const& grid)
{
    if (grid.v_values.empty() || grid.n_values.empty())
        throw ConfigError("search grid must have at least one v and one n value");
    std::vector<SchemeConfig> out;
    for (int v : grid.v_values)
    {
        for (int n : grid.n_values)
        {
            SchemeConfig s = family;
            s.v = v;
            if (!family.is_relay())
            {
                s.n = n;
                out.push_back(s);
                continue;
            }
            s.n1 = n;
            if (grid.n2_values.empty())
            {
                s.n2 = n;
                out.push_back(s);
                continue;
            }
            for (int n2 : grid.n2_values)
            {
                s.n2 = n2;
                out.push_back(s);
            }
        }
    }
    return out;
}

auto order_key(SchemeConfig const& s)
{
    int const data = s.is_relay() ? s.n1 : s.n;
    int const data2 = s.is_relay() ? s.n2 : 0;
    return std::make_tuple(s.delay(), data, data2, s.v);
}

void sort_candidates(std::vector<SchemeConfig>& c)
{
    std::stable_sort(c.begin(), c.end(), [](SchemeConfig const& a, SchemeConfig const& b) {
        return order_key(a) < order_key(b);
    });
}

// Outage of one candidate; configurations in certain outage score 1.
Evaluation score(SysParams const& params, SchemeConfig const& s, EvalOptions const& options)
{
    try
    {
        s.validate();
        return evaluate_outage(params, s, options);
    }
    catch (ConfigError const&)
    {
        Evaluation e;
        e.p_total = 1.0;
        e.p_energy = 1.0;
        e.method = "certain_outage";
        return e;
    }
}

OperatingPoint make_point(SchemeConfig const& s, Evaluation const& e, bool feasible)
{
    OperatingPoint p;
    p.scheme = s;
    p.delta = s.delay();
    p.beta = s.beta();
    p.p_out = e.p_total;
    p.bound = e.bound;
    p.feasible = feasible;
    return p;
}

}  // namespace

std::string to_string(Evaluator e)
{
    switch (e)
    {
        case Evaluator::closed: return "closed";
        case Evaluator::quadrature: return "quad";
        case Evaluator::monte_carlo: return "mc";
    }
    return "?";
}

Evaluator parse_evaluator(std::string const& text)
{
    if (text == "closed")
        return Evaluator::closed;
    if (text == "quad")
        return Evaluator::quadrature;
    if (text == "mc")
        return Evaluator::monte_carlo;
    throw ConfigError("unknown method '" + text + "' (expected closed, quad or mc)");
}

Evaluation evaluate_outage(SysParams const& params, SchemeConfig const& scheme,
                           EvalOptions const& options)
{
    Evaluation e;
    if (!scheme.is_relay())
    {
        dc::DcOutage r;
        switch (options.method)
        {
            case Evaluator::closed: r = dc::closed_form(params, scheme, options.i_max); break;
            case Evaluator::quadrature: r = dc::avg_error_quadrature(params, scheme, options.quad); break;
            case Evaluator::monte_carlo:
                r = dc::avg_error_mc(params, scheme, options.mc, options.workers);
                break;
        }
        e.p_total = r.p_total;
        e.p_energy = r.p_energy;
        e.p_error = r.p_error;
        e.bound = r.err_bound;
        e.method = std::string(dc::to_string(r.method));
        return e;
    }
    if (options.method == Evaluator::closed)
        throw ConfigError("no closed form exists for relay schemes; use quad or mc");
    relay::Method const m = options.method == Evaluator::quadrature ? relay::Method::quadrature
                                                                     : relay::Method::monte_carlo;
    relay::RelayOutage const r
        = relay::outage_relay(params, scheme, m, options.mc, options.quad, options.workers);
    e.p_total = r.p_total;
    e.p_energy = r.p_energy_s;
    e.p_error = r.term_pr_errd1 + r.term_comb + r.term_joint;
    e.bound = r.ci_halfwidth + r.err_bound;
    e.method = m == relay::Method::quadrature ? "quadrature+mc" : "monte_carlo";
    return e;
}

void Constraint::validate() const
{
    if (!(eps0 > 0.0 && eps0 < 1.0))
        throw ConfigError("eps0 must lie in (0,1)");
    if (delta0 < 3)
        throw ConfigError("delta0 must be >= 3");
}

std::vector<int> SearchGrid::ladder(int first, int last, int step)
{
    if (step < 1)
        throw ConfigError("grid step must be >= 1");
    std::vector<int> out;
    for (int x = first; x <= last; x += step)
        out.push_back(x);
    return out;
}

OperatingPoint min_delay(SysParams const& params, SchemeConfig const& family,
                         Constraint const& constraint, SearchGrid const& grid,
                         EvalOptions const& options)
{
    constraint.validate();
    std::vector<SchemeConfig> candidates = enumerate(family, grid);
    std::erase_if(candidates, [&](SchemeConfig const& s) { return s.delay() > constraint.delta0; });
    sort_candidates(candidates);

    OperatingPoint best;
    bool have_best = false;
    int evaluated = 0;
    for (SchemeConfig const& s : candidates)
    {
        Evaluation const e = score(params, s, options);
        ++evaluated;
        if (e.p_total <= constraint.eps0)
        {
            OperatingPoint p = make_point(s, e, true);
            p.evaluated = evaluated;
            return p;
        }
        if (!have_best || e.p_total < best.p_out)
        {
            best = make_point(s, e, false);
            have_best = true;
        }
    }
    best.feasible = false;
    best.evaluated = evaluated;
    return best;
}

OperatingPoint min_outage_at_delay(SysParams const& params, SchemeConfig const& family, int delta,
                                   SearchGrid const& grid, EvalOptions const& options)
{
    SearchGrid g = grid;
    if (g.v_values.empty())
        g.v_values = {1};
    std::vector<SchemeConfig> candidates;
    for (SchemeConfig s : enumerate(family, g))
    {
        int const overhead = s.delay() - s.v;
        s.v = delta - overhead;
        if (s.v >= 1)
            candidates.push_back(s);
    }
    sort_candidates(candidates);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    OperatingPoint best;
    best.delta = delta;
    int evaluated = 0;
    bool have_best = false;
    for (SchemeConfig const& s : candidates)
    {
        Evaluation const e = score(params, s, options);
        ++evaluated;
        if (!have_best || e.p_total < best.p_out)
        {
            best = make_point(s, e, e.p_total < 1.0);
            have_best = true;
        }
    }
    best.evaluated = evaluated;
    return best;
}

PilotOptimum optimal_pilot_power(SysParams const& params, SchemeConfig const& scheme, double lo_dbm,
                                 double hi_dbm, EvalOptions const& options)
{
    if (!(lo_dbm < hi_dbm))
        throw ConfigError("pilot search interval must satisfy lo < hi");
    PilotOptimum out;
    auto f = [&](double dbm) {
        SysParams p = params;
        p.pcsi = dbm_to_watt(dbm);
        double const value = score(p, scheme, options).p_total;
        out.profile.emplace_back(dbm, value);
        return value;
    };
    auto keep_best = [&] {
        auto const it = std::min_element(out.profile.begin(), out.profile.end(),
                                         [](auto const& a, auto const& b) {
                                             return a.second < b.second
                                                    || (a.second == b.second && a.first < b.first);
                                         });
        out.dbm = it->first;
        out.p_out = it->second;
        out.watt = dbm_to_watt(out.dbm);
    };

    double const f_lo = f(lo_dbm);
    double const f_hi = f(hi_dbm);
    double const mid = 0.5 * (lo_dbm + hi_dbm);
    double const f_mid = f(mid);
    if (f_mid < f_lo && f_mid < f_hi)
    {
        out.bracketed = true;
        double const inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo_dbm;
        double b = hi_dbm;
        double c = b - (b - a) * inv_phi;
        double d = a + (b - a) * inv_phi;
        double fc = f(c);
        double fd = f(d);
        while (b - a > kGoldenResolutionDb)
        {
            if (fc <= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - (b - a) * inv_phi;
                fc = f(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + (b - a) * inv_phi;
                fd = f(d);
            }
        }
        keep_best();
        return out;
    }

    int const steps = static_cast<int>(std::floor((hi_dbm - lo_dbm) / kFallbackStepDb + 1e-9));
    for (int i = 1; i < steps; ++i)
    {
        double const x = lo_dbm + i * kFallbackStepDb;
        if (x != mid)
            f(x);
    }
    keep_best();
    return out;
}

}  // namespace wetfbl::opt
