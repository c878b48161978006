// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/fbl.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wetfbl/error.hpp"
#include "wetfbl/specfun.hpp"

namespace wetfbl::fbl {
namespace {

constexpr double kLog2e = std::numbers::log2e;
// |margin| beyond which Q(margin) is below 1e-19.
constexpr double kMarginCut = 9.0;

double solve_margin(CodingSpec const& spec, double target)
{
    // normalized_margin is increasing in gamma; bracket then bisect in log.
    double lo = kMinSnr;
    double hi = std::max(1.0, spec.snr_threshold());
    while (normalized_margin(hi, spec) < target)
        hi *= 2.0;
    for (int i = 0; i < 200; ++i)
    {
        double const mid = std::sqrt(lo * hi);
        if (normalized_margin(mid, spec) < target)
            lo = mid;
        else
            hi = mid;
        if (hi / lo - 1.0 < 1e-12)
            break;
    }
    return lo;
}

}  // namespace

CodingSpec::CodingSpec(int k, int n) : k_(k), n_(n)
{
    if (k < 1)
        throw ConfigError("message size k must be >= 1, got " + std::to_string(k));
    if (n < 1)
        throw ConfigError("blocklength n must be >= 1, got " + std::to_string(n));
    threshold_ = std::exp2(rate()) - 1.0;
    snr_low_ = solve_margin(*this, -kMarginCut);
    snr_high_ = solve_margin(*this, kMarginCut);
}

LinCoeffs LinCoeffs::make(CodingSpec const& spec)
{
    double const r = spec.rate();
    LinCoeffs lc;
    lc.theta = std::exp2(r) - 1.0;
    lc.psi = std::sqrt(spec.n() / (2.0 * std::numbers::pi))
             / std::sqrt(std::exp2(2.0 * r) - 1.0);
    double const half_width = std::sqrt(std::numbers::pi / 2.0) / lc.psi;
    lc.rho = lc.theta - half_width;
    lc.vartheta = lc.theta + half_width;
    if (!(lc.rho > 0.0))
    {
        throw ConfigError("linearized error model needs n > "
                          + std::to_string(min_blocklength(r)) + " for k="
                          + std::to_string(spec.k()) + ", got n="
                          + std::to_string(spec.n()));
    }
    return lc;
}

double LinCoeffs::min_blocklength(double rate)
{
    double const p = std::exp2(rate);
    return std::numbers::pi * std::numbers::pi * (p + 1.0) / (p - 1.0);
}

double capacity(double gamma)
{
    if (gamma < 0.0)
        throw DomainError("capacity: negative SNR");
    return std::log1p(gamma) * kLog2e;
}

double dispersion(double gamma)
{
    if (gamma < 0.0)
        throw DomainError("dispersion: negative SNR");
    if (std::isinf(gamma))
        return kLog2e * kLog2e;
    // 1 - (1+g)^-2 written without cancellation
    double const onep = 1.0 + gamma;
    return (gamma / onep) * ((2.0 + gamma) / onep) * kLog2e * kLog2e;
}

double normalized_margin(double gamma, CodingSpec const& spec)
{
    if (gamma <= kMinSnr)
        return -std::numeric_limits<double>::infinity();
    return (capacity(gamma) - spec.rate()) * std::sqrt(spec.n() / dispersion(gamma));
}

double error_prob(double gamma, CodingSpec const& spec)
{
    if (gamma <= kMinSnr)
        return 1.0;
    return specfun::gaussian_q(normalized_margin(gamma, spec));
}

double omega(double gamma, LinCoeffs const& lc)
{
    if (gamma <= lc.rho)
        return 1.0;
    if (gamma >= lc.vartheta)
        return 0.0;
    return 0.5 - lc.psi / std::sqrt(2.0 * std::numbers::pi) * (gamma - lc.theta);
}

}  // namespace wetfbl::fbl
