// SPDX-License-Identifier: Apache-2.0
#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wetfbl/dc.hpp"
#include "wetfbl/mc.hpp"
#include "wetfbl/quad.hpp"
#include "wetfbl/specfun.hpp"

namespace wetfbl::tool {
namespace {

struct Check
{
    std::string name;
    std::function<bool(std::string&)> run;
};

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::abs(b);
}

}  // namespace

int run_selftest(std::ostream& out)
{
    quad::IntegrationPolicy const tight{1e-12, 1e-300, 40.0, 4000};
    std::vector<Check> checks = {
        {"E_n against its defining integral",
         [&](std::string& detail) {
             bool ok = true;
             for (int n : {1, 2, 5, 12})
                 for (double x : {0.05, 0.7, 3.0, 20.0})
                 {
                     // E_n(x) = e^-x x^{n-1} \int_0^inf e^-s (x+s)^-n ds
                     double const ref
                         = std::exp(-x) * std::pow(x, n - 1)
                           * quad::integrate_exp_weighted(
                                 [&](double s) { return std::pow(x + s, -n); }, 0.0, INFINITY, tight,
                                 std::vector<double>{x, 10 * x})
                                 .value;
                     double const got = specfun::exp_integral_en(n, x);
                     if (!close(got, ref, 1e-9))
                     {
                         ok = false;
                         detail = "n=" + std::to_string(n) + " x=" + std::to_string(x);
                     }
                 }
             return ok;
         }},
        {"K0/K1 against the Bessel identity for e^{-x-c/x}",
         [&](std::string& detail) {
             bool ok = true;
             for (double c : {1e-4, 0.5, 4.0})
             {
                 double const ref = quad::integrate_exp_weighted(
                                        [&](double x) { return x > 0 ? std::exp(-c / x) : 0.0; }, 0.0,
                                        INFINITY, tight, std::vector<double>{c, 10 * c})
                                        .value;
                 double const z = 2.0 * std::sqrt(c);
                 if (!close(z * specfun::bessel_k1(z), ref, 1e-8))
                 {
                     ok = false;
                     detail = "c=" + std::to_string(c);
                 }
             }
             return ok;
         }},
        {"direct-link quadrature against Monte Carlo",
         [&](std::string& detail) {
             SysParams p;
             p.d_sd = p.d_sr = p.d_rd = 40.0;
             SchemeConfig s;
             dc::DcOutage const q = dc::avg_error_quadrature(p, s);
             mc::McPolicy pol;
             pol.samples = 200'000;
             pol.batch = 2'000;
             dc::DcOutage const m = dc::avg_error_mc(p, s, pol);
             double const se = m.err_bound / mc::two_sided_z(pol.ci_level);
             detail = "quad=" + std::to_string(q.p_total) + " mc=" + std::to_string(m.p_total);
             return std::abs(q.p_total - m.p_total) <= 4.0 * se;
         }},
        {"closed form against quadrature",
         [&](std::string& detail) {
             SysParams p;
             p.d_sd = p.d_sr = p.d_rd = 40.0;
             SchemeConfig s;
             double const xi = dc::xi_metric(dc::avg_error_quadrature(p, s).p_total,
                                             dc::closed_form_infinite(p, s).p_total);
             detail = "xi=" + std::to_string(xi);
             return xi < 0.035;
         }},
    };

    int failures = 0;
    for (Check const& c : checks)
    {
        std::string detail;
        bool ok = false;
        try
        {
            ok = c.run(detail);
        }
        catch (std::exception const& e)
        {
            detail = e.what();
        }
        out << (ok ? "PASS " : "FAIL ") << c.name;
        if (!detail.empty())
            out << " (" << detail << ")";
        out << "\n";
        failures += ok ? 0 : 1;
    }
    return failures;
}

}  // namespace wetfbl::tool
