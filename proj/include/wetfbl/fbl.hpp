// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace wetfbl::fbl {

//! SNR at or below which decoding is declared certainly erroneous.
inline constexpr double kMinSnr = 1e-12;

//! Blocklength below which the normal approximation loses accuracy.
inline constexpr int kMinAccurateBlocklength = 100;

//! Message of k bits coded over n channel uses.
class CodingSpec
{
  public:
    CodingSpec(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }
    //! Rate in bits per channel use.
    double rate() const { return double(k_) / n_; }
    //! False when n is below the regime where the normal approximation holds.
    bool accurate_regime() const { return n_ >= kMinAccurateBlocklength; }

    //! SNR window outside of which the error probability is 1 or 0 to
    //! within ~1e-19; used to place quadrature breakpoints.
    double snr_low() const { return snr_low_; }
    double snr_high() const { return snr_high_; }
    //! SNR at which capacity equals the rate.
    double snr_threshold() const { return threshold_; }

    friend bool operator==(CodingSpec const& a, CodingSpec const& b)
    {
        return a.k_ == b.k_ && a.n_ == b.n_;
    }

  private:
    int k_;
    int n_;
    double threshold_;
    double snr_low_;
    double snr_high_;
};

/*!
 * Constants of the piecewise-linear surrogate of the error probability.
 *
 * Construction throws ConfigError unless the lower breakpoint is positive,
 * which is equivalent to n > pi^2 (2^r + 1) / (2^r - 1).
 */
struct LinCoeffs
{
    double theta;
    double psi;
    double rho;
    double vartheta;

    static LinCoeffs make(CodingSpec const& spec);
    //! Smallest real blocklength for which rho > 0 at the given rate.
    static double min_blocklength(double rate);
};

double capacity(double gamma);
double dispersion(double gamma);

//! Normalized Q-function argument (C(gamma) - r) / sqrt(V(gamma)/n).
double normalized_margin(double gamma, CodingSpec const& spec);

//! Normal-approximation block error probability; 1 for gamma <= kMinSnr.
double error_prob(double gamma, CodingSpec const& spec);

//! Piecewise-linear surrogate of error_prob.
double omega(double gamma, LinCoeffs const& lc);

}  // namespace wetfbl::fbl
