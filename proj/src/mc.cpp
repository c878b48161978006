// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/mc.hpp"

#include <string>

#include "wetfbl/error.hpp"
#include "wetfbl/specfun.hpp"

namespace wetfbl::mc {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t const p = std::uint64_t(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double exp1(double u)
{
    return -std::log1p(-u);
}

}  // namespace

Philox::Counter Philox::generate(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kW0;
            key[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

ChannelDraw sample_channels(std::uint64_t seed, std::uint64_t index)
{
    Philox::Key const key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::uint32_t const lo = static_cast<std::uint32_t>(index);
    std::uint32_t const hi = static_cast<std::uint32_t>(index >> 32);
    auto const b0 = Philox::generate({lo, hi, 0, 0}, key);
    auto const b1 = Philox::generate({lo, hi, 1, 0}, key);
    auto const b2 = Philox::generate({lo, hi, 2, 0}, key);
    ChannelDraw d;
    d.g_ds = exp1(to_unit(b0[0], b0[1]));
    d.g_sd = exp1(to_unit(b0[2], b0[3]));
    d.g_dr = exp1(to_unit(b1[0], b1[1]));
    d.g_rd = exp1(to_unit(b1[2], b1[3]));
    d.g_sr = exp1(to_unit(b2[0], b2[1]));
    return d;
}

double two_sided_z(double level)
{
    return specfun::gaussian_q_inverse(0.5 * (1.0 - level));
}

void McPolicy::validate() const
{
    if (samples < 10'000)
        throw ConfigError("MC samples must be >= 10000, got " + std::to_string(samples));
    if (batch < 1 || samples % batch != 0)
        throw ConfigError("MC batch must divide samples (samples=" + std::to_string(samples)
                          + ", batch=" + std::to_string(batch) + ")");
    if (!(ci_level > 0.0 && ci_level < 1.0))
        throw ConfigError("ci_level must lie in (0,1)");
}

namespace detail {

int resolve_workers(int workers, long batches)
{
    long w = workers;
    if (w <= 0)
        w = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(std::clamp(w, 1L, std::max(1L, batches)));
}

}  // namespace detail

McEstimate estimate(std::function<double(ChannelDraw const&)> const& target,
                    McPolicy const& policy, int workers)
{
    auto wrapped = [&target](ChannelDraw const& d) { return std::array<double, 1>{target(d)}; };
    return estimate_many<1>(wrapped, policy, workers)[0];
}

}  // namespace wetfbl::mc
