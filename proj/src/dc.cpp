// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/dc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wetfbl/error.hpp"
#include "wetfbl/icsi.hpp"
#include "wetfbl/specfun.hpp"

namespace wetfbl::dc {
namespace {

// Above this saturation gain the exponential-integral series cancels
// catastrophically; the Bessel form minus its tail is used instead.
constexpr double kSeriesMaxLambda = 2.0;

struct Neumaier
{
    double sum = 0;
    double comp = 0;
    void add(double x)
    {
        double const t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

DcOutage finish(double p_energy, double p_error, Method method, double err_bound)
{
    DcOutage out;
    out.p_energy = p_energy;
    out.p_error = p_error;
    out.method = method;
    out.err_bound = err_bound;
    double const total = p_energy + p_error;
    out.clamped = total < 0.0 || total > 1.0;
    out.p_total = std::clamp(total, 0.0, 1.0);
    return out;
}

struct IdealSetup
{
    fbl::LinCoeffs lc;
    double phi;
    double lambda;
};

IdealSetup ideal_setup(SysParams const& params, SchemeConfig const& scheme)
{
    params.validate();
    if (scheme.is_relay())
        throw ConfigError("closed forms cover the direct scheme only");
    if (!params.ideal())
        throw ConfigError("closed forms require an ideal system (Pc = Pcsi = 0)");
    if (scheme.csi != CsiMode::perfect)
        throw ConfigError("closed forms require perfect CSI");
    DerivedCoeffs const c = derive_coeffs(params, scheme);
    fbl::CodingSpec const spec(scheme.k, scheme.n);
    return {fbl::LinCoeffs::make(spec), c.sd.phi, c.sd.lambda};
}

// Surrogate error probability averaged over the data gain at slope a.
double omega_average(fbl::LinCoeffs const& lc, double a)
{
    double const c1 = lc.psi / std::sqrt(2.0 * std::numbers::pi);
    return 1.0 - (0.5 - c1 * (lc.theta - lc.rho - a)) * std::exp(-lc.rho / a)
           - (0.5 + c1 * (lc.theta - lc.vartheta - a)) * std::exp(-lc.vartheta / a);
}

// Integrals over [lambda, inf) of x^m e^{-x - c/x}, m = 0 and 1. The
// c-independent part (lambda + 1) e^{-lambda} of the m = 1 tail is left out.
void exp_tails(double c, double lambda, double& tail0, double& tail1)
{
    double const el = std::exp(-lambda);
    Neumaier t0, t1;
    t0.add(el);
    t0.add(-c * specfun::exp_integral_en(1, lambda));
    t1.add(-c * el);
    double coef = -c;  // (-c)^j / j!
    for (int j = 2; j < 400; ++j)
    {
        coef *= -c / j;
        double const a0 = coef * std::pow(lambda, 1 - j) * specfun::exp_integral_en(j, lambda);
        double const a1 = coef * std::pow(lambda, 2 - j) * specfun::exp_integral_en(j - 1, lambda);
        t0.add(a0);
        t1.add(a1);
        if (std::abs(a0) <= 1e-18 * std::abs(t0.value()) && std::abs(a1) <= 1e-18 * std::abs(t1.value()))
            break;
        if (a0 == 0.0 && a1 == 0.0)
            break;
    }
    tail0 = t0.value();
    tail1 = t1.value();
}

// Integrals over [0, inf) of x^m e^{-x - c/x}, m = 0 and 1, with 1 taken
// off the m = 1 value.
void exp_full(double c, double& full0, double& full1)
{
    double const z = 2.0 * std::sqrt(c);
    double const g = specfun::bessel_xk1_minus_one(z);
    full0 = 1.0 + g;
    full1 = 2.0 * c * specfun::bessel_k0(z) + g;
}

}  // namespace

std::string_view to_string(Method method)
{
    switch (method)
    {
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "?";
}

double snr_dc(DerivedCoeffs const& coeffs, double g_ds, double g_sd)
{
    return coeffs.sd.slope(g_ds) * g_sd;
}

quad::QuadResult conditional_error(double b, fbl::CodingSpec const& spec,
                                   quad::IntegrationPolicy const& policy)
{
    if (!(b > 0.0))
        return {1.0, 0.0, 0};
    double const y_lo = spec.snr_low() / b;
    if (y_lo > 745.0)
        return {1.0, 0.0, 0};
    double const y_hi = spec.snr_high() / b;
    double const y_mid = spec.snr_threshold() / b;
    double const head = -std::expm1(-y_lo);
    auto eps = [&](double y) { return fbl::error_prob(b * y, spec); };
    double const bps[] = {y_mid};
    quad::QuadResult band = quad::integrate_exp_weighted(eps, y_lo, y_hi, policy, bps);
    band.value += head;
    return band;
}

DcOutage avg_error_quadrature(SysParams const& params, SchemeConfig const& scheme,
                              quad::IntegrationPolicy const& policy)
{
    params.validate();
    policy.validate();
    if (scheme.is_relay())
        throw ConfigError("avg_error_quadrature covers the direct scheme only");
    DerivedCoeffs const c = derive_coeffs(params, scheme);
    double const p_energy = p_energy_insufficient(params, scheme, Node::source);
    fbl::CodingSpec const spec(scheme.k, scheme.n);
    LinkCoeffs const& link = c.sd;
    auto const model = icsi::EstimationModel::from(params, scheme);

    quad::IntegrationPolicy inner = policy;
    inner.rel_tol /= 10.0;
    inner.abs_tol /= 10.0;
    double inner_error = 0.0;
    auto averaged = [&](double x) {
        double const b = icsi::effective_slope(link, x, scheme.csi, model);
        quad::QuadResult const r = conditional_error(b, spec, inner);
        inner_error = std::max(inner_error, r.error);
        return r.value;
    };

    double const x0 = link.energy_threshold();
    double const scale = spec.snr_threshold() / link.phi;
    std::vector<double> bps;
    for (double s = 1e-2; s <= 1e4; s *= 10.0)
        bps.push_back(x0 + s * scale);

    quad::QuadResult r;
    if (std::isinf(link.lambda))
    {
        r = quad::integrate_exp_weighted(averaged, x0, link.lambda, policy, bps);
    }
    else
    {
        r = quad::integrate_exp_weighted(averaged, x0, link.lambda, policy, bps);
        r.value += std::exp(-link.lambda) * averaged(link.lambda);
    }
    return finish(p_energy, r.value, Method::quadrature, r.error + inner_error);
}

DcOutage avg_error_mc(SysParams const& params, SchemeConfig const& scheme,
                      mc::McPolicy const& policy, int workers)
{
    params.validate();
    if (scheme.is_relay())
        throw ConfigError("avg_error_mc covers the direct scheme only");
    DerivedCoeffs const c = derive_coeffs(params, scheme);
    // Surfaces the certain-outage configuration error.
    (void)p_energy_insufficient(params, scheme, Node::source);
    fbl::CodingSpec const spec(scheme.k, scheme.n);
    LinkCoeffs const& link = c.sd;
    auto const model = icsi::EstimationModel::from(params, scheme);

    auto target = [&](ChannelDraw const& d) -> std::array<double, 3> {
        if (!link.has_energy(d.g_ds))
            return {1.0, 0.0, 1.0};
        double const b = icsi::effective_slope(link, d.g_ds, scheme.csi, model);
        double const eps = fbl::error_prob(b * d.g_sd, spec);
        return {0.0, eps, eps};
    };
    auto const est = mc::estimate_many<3>(target, policy, workers);
    DcOutage out = finish(est[0].mean, est[1].mean, Method::monte_carlo, est[2].ci_halfwidth);
    return out;
}

DcOutage closed_form_infinite(SysParams const& params, SchemeConfig const& scheme)
{
    IdealSetup const s = ideal_setup(params, scheme);
    if (std::isfinite(s.lambda))
        throw ConfigError("closed_form_infinite needs an infinite battery");
    fbl::LinCoeffs const& lc = s.lc;
    double const c = 2.0 * lc.psi / std::sqrt(2.0 * std::numbers::pi);
    double const a = lc.rho / s.phi;
    double const b = lc.vartheta / s.phi;
    double const za = 2.0 * std::sqrt(a);
    double const zb = 2.0 * std::sqrt(b);
    // sqrt(a) K1(2 sqrt(a)) = (1 + g(za)) / 2; the constant halves cancel
    // analytically, which keeps large phi accurate.
    Neumaier sum;
    sum.add(0.5 * c * (lc.vartheta - lc.rho));
    sum.add(-0.5 * (1.0 + c * (lc.rho - lc.theta)) * specfun::bessel_xk1_minus_one(za));
    sum.add(-0.5 * c * s.phi * specfun::bessel_xk1_minus_one(za));
    sum.add(-0.5 * (1.0 - c * (lc.vartheta - lc.theta)) * specfun::bessel_xk1_minus_one(zb));
    sum.add(0.5 * c * s.phi * specfun::bessel_xk1_minus_one(zb));
    sum.add(-c * lc.rho * specfun::bessel_k0(za));
    sum.add(c * lc.vartheta * specfun::bessel_k0(zb));
    double const p = sum.value();
    return finish(0.0, p, Method::closed_form, 0.0);
}

DcOutage closed_form_finite(SysParams const& params, SchemeConfig const& scheme, int i_max)
{
    IdealSetup const s = ideal_setup(params, scheme);
    if (!std::isfinite(s.lambda))
        throw ConfigError("closed_form_finite needs a finite battery");
    if (i_max < 0)
        throw ConfigError("series cutoff i_M must be >= 0");
    fbl::LinCoeffs const& lc = s.lc;
    double const lambda = s.lambda;
    double const phi = s.phi;
    double const c1 = lc.psi / std::sqrt(2.0 * std::numbers::pi);
    double const w_rho = 0.5 - c1 * (lc.theta - lc.rho);
    double const w_vartheta = 0.5 + c1 * (lc.theta - lc.vartheta);

    // Saturated part: battery full with probability e^-lambda.
    Neumaier total;
    total.add(1.0);
    total.add(-std::exp(-lambda) * (1.0 - omega_average(lc, lambda * phi)));

    double last_term = 0.0;
    if (lambda <= kSeriesMaxLambda)
    {
        double const ap = lc.rho / (lambda * phi);
        double const bp = lc.vartheta / (lambda * phi);
        double coef = lambda;  // lambda^{i+1} / i!
        for (int i = 0; i <= i_max; ++i)
        {
            if (i > 0)
                coef *= lambda / i;
            double const bracket
                = c1 * lambda * phi
                      * (specfun::exp_integral_en(i + 3, bp) - specfun::exp_integral_en(i + 3, ap))
                  - w_rho * specfun::exp_integral_en(i + 2, ap)
                  - w_vartheta * specfun::exp_integral_en(i + 2, bp);
            last_term = (i % 2 == 0 ? 1.0 : -1.0) * coef * bracket;
            total.add(last_term);
        }
    }
    else
    {
        auto truncated = [&](double d, double& j0, double& j1) {
            double const cc = d / phi;
            double f0, f1, t0, t1;
            exp_full(cc, f0, f1);
            exp_tails(cc, lambda, t0, t1);
            j0 = f0 - t0;
            // Shifted by the constant 1 - (lambda + 1) e^{-lambda}; only j1
            // differences enter, and the shift removes a large cancellation.
            j1 = f1 - t1;
        };
        double j0r, j1r, j0v, j1v;
        truncated(lc.rho, j0r, j1r);
        truncated(lc.vartheta, j0v, j1v);
        total.add(-w_rho * j0r);
        total.add(-w_vartheta * j0v);
        total.add(c1 * phi * (j1v - j1r));
    }
    return finish(0.0, total.value(), Method::closed_form, std::abs(last_term));
}

DcOutage closed_form(SysParams const& params, SchemeConfig const& scheme, int i_max)
{
    if (params.infinite_battery())
        return closed_form_infinite(params, scheme);
    return closed_form_finite(params, scheme, i_max);
}

double xi_metric(double exact, double approx)
{
    if (!(exact > 0.0))
        throw DomainError("xi_metric needs exact > 0");
    return std::abs(exact - approx) / exact;
}

}  // namespace wetfbl::dc
