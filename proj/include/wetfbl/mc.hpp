// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "wetfbl/scheme.hpp"

namespace wetfbl::mc {

//! Philox4x32-10 counter-based generator.
struct Philox
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

struct McPolicy
{
    long samples = 1'000'000;
    std::uint64_t seed = 20240601;
    long batch = 10'000;
    double ci_level = 0.999;

    //! Throws ConfigError unless samples >= 1e4, batch divides samples and
    //! ci_level lies in (0,1).
    void validate() const;
    long batches() const { return samples / batch; }
    friend bool operator==(McPolicy const&, McPolicy const&) = default;
};

struct McEstimate
{
    double mean = 0;
    double std_error = 0;
    double ci_halfwidth = 0;
    long samples_used = 0;
    //! True when every batch produced the same mean (zero variance estimate).
    bool degenerate = false;
};

//! Uniform in [0,1) with 53 random bits, from two 32-bit words.
inline double to_unit(std::uint32_t hi, std::uint32_t lo)
{
    return ((hi >> 5) * 67108864.0 + (lo >> 6)) * 0x1p-53;
}

//! Five independent Exp(1) gains for draw `index` under `seed`.
ChannelDraw sample_channels(std::uint64_t seed, std::uint64_t index);

//! Quantile z with P(|Z| <= z) = level for standard normal Z.
double two_sided_z(double level);

namespace detail {

struct Kahan
{
    double sum = 0;
    double carry = 0;
    void add(double x)
    {
        double const y = x - carry;
        double const t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Fixed-shape pairwise reduction so the result depends only on the inputs.
inline double pairwise_sum(double const* x, std::size_t n)
{
    if (n == 0)
        return 0.0;
    if (n == 1)
        return x[0];
    std::size_t const half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

int resolve_workers(int workers, long batches);

}  // namespace detail

/*!
 * Batch-means estimates of E[target(draw)] for each of the N components of
 * a vector-valued target. Batches are distributed over `workers` threads;
 * the reduction order is fixed, so results do not depend on the worker
 * count. workers <= 0 selects the hardware concurrency.
 */
template <std::size_t N, class F>
std::array<McEstimate, N> estimate_many(F const& target, McPolicy const& policy, int workers = 1)
{
    policy.validate();
    long const n_batches = policy.batches();
    std::vector<std::array<double, N>> batch_means(static_cast<std::size_t>(n_batches));

    auto run_batch = [&](long b) {
        std::array<detail::Kahan, N> acc{};
        std::uint64_t const first = static_cast<std::uint64_t>(b) * policy.batch;
        for (long i = 0; i < policy.batch; ++i)
        {
            std::array<double, N> const y = target(sample_channels(policy.seed, first + i));
            for (std::size_t c = 0; c < N; ++c)
                acc[c].add(y[c]);
        }
        for (std::size_t c = 0; c < N; ++c)
            batch_means[b][c] = acc[c].sum / policy.batch;
    };

    int const w = detail::resolve_workers(workers, n_batches);
    if (w == 1)
    {
        for (long b = 0; b < n_batches; ++b)
            run_batch(b);
    }
    else
    {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(w);
        for (int t = 0; t < w; ++t)
        {
            pool.emplace_back([&, t] {
                try
                {
                    for (long b = t; b < n_batches; b += w)
                        run_batch(b);
                }
                catch (...)
                {
                    failures[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (auto const& f : failures)
            if (f)
                std::rethrow_exception(f);
    }

    double const z = two_sided_z(policy.ci_level);
    std::array<McEstimate, N> out{};
    std::vector<double> column(static_cast<std::size_t>(n_batches));
    for (std::size_t c = 0; c < N; ++c)
    {
        for (long b = 0; b < n_batches; ++b)
            column[b] = batch_means[b][c];
        double const mean = detail::pairwise_sum(column.data(), column.size()) / n_batches;
        for (long b = 0; b < n_batches; ++b)
        {
            double const d = batch_means[b][c] - mean;
            column[b] = d * d;
        }
        double const var = n_batches > 1
                               ? detail::pairwise_sum(column.data(), column.size()) / (n_batches - 1)
                               : 0.0;
        McEstimate& e = out[c];
        e.mean = mean;
        e.std_error = std::sqrt(var / n_batches);
        e.ci_halfwidth = z * e.std_error;
        e.samples_used = policy.samples;
        e.degenerate = e.std_error == 0.0;
    }
    return out;
}

McEstimate estimate(std::function<double(ChannelDraw const&)> const& target,
                    McPolicy const& policy, int workers = 1);

}  // namespace wetfbl::mc
