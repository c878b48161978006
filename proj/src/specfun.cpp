// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wetfbl/error.hpp"

namespace wetfbl::specfun {
namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kEps = 4 * std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 2000;
constexpr double kUnderflowArg = 700.0;

// Power series about zero, accurate for 0 < x <= 2.
double bessel_k_series(int order, double x)
{
    double const t = 0.25 * x * x;
    double const log_half = std::log(0.5 * x);
    if (order == 0)
    {
        double term = 1.0;  // t^k / (k!)^2
        double i0 = 1.0;
        double harmonic = 0.0;
        double tail = 0.0;
        for (int k = 1; k < 200; ++k)
        {
            term *= t / (double(k) * k);
            harmonic += 1.0 / k;
            i0 += term;
            tail += harmonic * term;
            if (term < kEps * i0 * 1e-2)
                break;
        }
        return -(log_half + kEuler) * i0 + tail;
    }
    double term = 1.0;  // t^k / (k! (k+1)!)
    double i1_sum = 1.0;
    double h_k = 0.0;
    double h_k1 = 1.0;
    double tail = -2.0 * kEuler + h_k + h_k1;
    for (int k = 1; k < 200; ++k)
    {
        term *= t / (double(k) * (k + 1));
        h_k += 1.0 / k;
        h_k1 += 1.0 / (k + 1);
        i1_sum += term;
        tail += (-2.0 * kEuler + h_k + h_k1) * term;
        if (term < kEps * i1_sum * 1e-2)
            break;
    }
    double const i1 = 0.5 * x * i1_sum;
    return 1.0 / x + log_half * i1 - 0.25 * x * tail;
}

// x K_1(x) - 1 from the same series with the 1/x term dropped.
double xk1_minus_one_series(double x)
{
    double const t = 0.25 * x * x;
    double term = 1.0;
    double i1_sum = 1.0;
    double h_k = 0.0;
    double h_k1 = 1.0;
    double tail = -2.0 * kEuler + h_k + h_k1;
    for (int k = 1; k < 200; ++k)
    {
        term *= t / (double(k) * (k + 1));
        h_k += 1.0 / k;
        h_k1 += 1.0 / (k + 1);
        i1_sum += term;
        tail += (-2.0 * kEuler + h_k + h_k1) * term;
        if (term < kEps * i1_sum * 1e-2)
            break;
    }
    return t * (2.0 * std::log(0.5 * x) * i1_sum - tail);
}

// Steed's continued fraction for K_0 and K_1, valid for x >= 2.
void bessel_k_steed(double x, double& k0, double& k1)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double const a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIter; ++i)
    {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double const qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double const dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps)
            break;
    }
    h *= a1;
    k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double gaussian_q_inverse(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("gaussian_q_inverse: probability must lie in (0,1)");
    // Q is monotone; bisection on a bracket covering all double-resolvable p.
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i)
    {
        double const mid = 0.5 * (lo + hi);
        if (gaussian_q(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double exp_integral_en(int order, double x)
{
    if (order < 1)
        throw DomainError("exp_integral_en: order must be >= 1");
    if (x < 0.0 || (x == 0.0 && order == 1))
        throw DomainError("exp_integral_en: E_" + std::to_string(order)
                          + " diverges at x = " + std::to_string(x));
    if (x == 0.0)
        return 1.0 / (order - 1);
    if (x > kUnderflowArg)
        return 0.0;

    int const nm1 = order - 1;
    if (x > 1.0)
    {
        double b = x + order;
        double c = 1.0 / kTiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i <= kMaxIter; ++i)
        {
            double const a = -double(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            double const del = c * d;
            h *= del;
            if (std::fabs(del - 1.0) < kEps)
                return h * std::exp(-x);
        }
        throw DomainError("exp_integral_en: continued fraction did not converge");
    }

    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - kEuler;
    double fact = 1.0;
    for (int i = 1; i <= kMaxIter; ++i)
    {
        fact *= -x / i;
        double del;
        if (i != nm1)
        {
            del = -fact / (i - nm1);
        }
        else
        {
            double psi = -kEuler;
            for (int ii = 1; ii <= nm1; ++ii)
                psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::fabs(del) < std::fabs(ans) * kEps)
            return ans;
    }
    throw DomainError("exp_integral_en: series did not converge");
}

double bessel_k(int order, double x)
{
    if (order != 0 && order != 1)
        throw DomainError("bessel_k: only orders 0 and 1 are supported");
    if (!(x > 0.0))
        throw DomainError("bessel_k: argument must be positive");
    if (x > kUnderflowArg)
        return 0.0;
    if (x <= 2.0)
        return bessel_k_series(order, x);
    double k0 = 0;
    double k1 = 0;
    bessel_k_steed(x, k0, k1);
    return order == 0 ? k0 : k1;
}

double bessel_xk1_minus_one(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_xk1_minus_one: argument must be positive");
    if (x <= 2.0)
        return xk1_minus_one_series(x);
    return x * bessel_k(1, x) - 1.0;
}

}  // namespace wetfbl::specfun
