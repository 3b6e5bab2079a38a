// SPDX-License-Identifier: Apache-2.0
//
// plccap - capacity bounds for broadband power line channels
// Copyright (C) 2026 The plccap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef PLCCAP_CAPACITY_HPP
#define PLCCAP_CAPACITY_HPP

// Water-filling, capacity bounds and SNR sweeps. Bounds are reported in bits per original
// channel sample; bps_factor converts them to bps/Hz.

#include "entropy.hpp"

#include <optional>

namespace plccap
{

struct WaterfillResult
{
    double delta = 0.0;      ///< water level
    double capacity = 0.0;   ///< bits per lifted channel use
    double allocated = 0.0;  ///< (1/2pi) sum_k integral (delta - 1/lambda)^+
    double residual = 0.0;   ///< |allocated - p| / p
    std::size_t active = 0;  ///< (mode, node) pairs receiving power
    bool zero_gain = false;  ///< every eigenvalue vanished; capacity is 0
    int iterations = 0;
};

namespace detail
{
inline double allocated_power(const std::vector<double> &inv, double delta, double scale)
{
    double acc = 0.0;
    for (double v : inv)
    {
        if (delta <= v)
            break;
        acc += delta - v;
    }
    return acc * scale;
}
} // namespace detail

/// Water-filling over eigenvalues lambda(k, j) of a uniform grid with `nodes` nodes.
inline WaterfillResult waterfill(const Matrix &lambda, double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw ModelError("water-filling power must be positive and finite");
    const auto nodes = static_cast<double>(lambda.cols());
    const double scale = 1.0 / nodes; // (1/2pi) * (2pi / n)
    WaterfillResult r;

    // 1/lambda of the positive eigenvalues, ascending.
    std::vector<double> inv;
    inv.reserve(static_cast<std::size_t>(lambda.size()));
    for (Eigen::Index j = 0; j < lambda.cols(); ++j)
        for (Eigen::Index k = 0; k < lambda.rows(); ++k)
            if (lambda(k, j) > 0.0)
                inv.push_back(1.0 / lambda(k, j));
    if (inv.empty())
    {
        r.zero_gain = true;
        r.residual = 1.0;
        return r;
    }
    std::sort(inv.begin(), inv.end());

    double lo = 0.0, hi = p + inv.front();
    while (detail::allocated_power(inv, hi, scale) < p)
        hi *= 2.0;
    for (r.iterations = 0; r.iterations < 200; ++r.iterations)
    {
        const double mid = 0.5 * (lo + hi);
        if (detail::allocated_power(inv, mid, scale) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi)
            break;
    }
    double delta = 0.5 * (lo + hi);

    // Closed form on the active set found by bisection.
    const auto active = static_cast<std::size_t>(std::lower_bound(inv.begin(), inv.end(), delta) - inv.begin());
    if (active > 0)
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < active; ++i)
            sum += inv[i];
        const double exact = (p / scale + sum) / static_cast<double>(active);
        const bool same_set = exact > inv[active - 1] && (active == inv.size() || exact <= inv[active]);
        if (same_set)
            delta = exact;
    }

    r.delta = delta;
    r.allocated = detail::allocated_power(inv, delta, scale);
    r.residual = std::abs(r.allocated - p) / p;
    double cap = 0.0;
    for (double v : inv)
    {
        if (delta <= v)
            break;
        r.active++;
        cap += std::log2(delta / v);
    }
    r.capacity = cap * 0.5 * scale;
    return r;
}

inline WaterfillResult waterfill(const SpectralGrid &grid, double p) { return waterfill(grid.lambda_snr, p); }

/// One point of a bound curve; all rates in bits per original sample.
struct BoundsReport
{
    double snr_db = std::numeric_limits<double>::quiet_NaN();
    double p_tilde = 0.0;
    double upper = std::numeric_limits<double>::quiet_NaN();
    double lower1 = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> lower2;
    double c_gauss = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();
    double h_gauss = std::numeric_limits<double>::quiet_NaN(); ///< Gaussian entropy rate per sample
    EntropyInterval entropy_used;                               ///< noise entropy rate per sample
    int per = 1;
    int n_omega = 0;
    double power_residual = 0.0;
    double bps_factor = 1.0; ///< bps/Hz per bit/sample
    bool ok = true;
    std::vector<std::string> flags;

    double upper_bps() const { return upper * bps_factor; }
    double lower1_bps() const { return lower1 * bps_factor; }
    std::optional<double> lower2_bps() const
    {
        return lower2 ? std::optional<double>(*lower2 * bps_factor) : std::nullopt;
    }
    double c_gauss_bps() const { return c_gauss * bps_factor; }
};

namespace detail
{
inline double log2_sum_exp2(double a, double b)
{
    const double m = std::max(a, b);
    return m + std::log2(1.0 + std::exp2(-std::abs(a - b)));
}

/// (1/2pi) sum_k integral log2 lambdaN_k, or nullopt with a reason when it diverges or the
/// channel does not meet the square / nonsingular hypotheses.
inline std::optional<double> signal_log_integral(const LiftedChannel &lifted, const SpectralGrid &grid,
                                                 std::string &why)
{
    if (lifted.n_out != lifted.n_in)
    {
        why = "lower2_omitted:non_square";
        return std::nullopt;
    }
    for (int i = 0; i < lifted.per; ++i)
    {
        const Matrix blk = lifted.h0().block(i * lifted.n_out, i * lifted.n_in, lifted.n_out, lifted.n_in);
        if (!(rcond(blk) > 1e-10))
        {
            why = "lower2_omitted:singular_h0_block_" + std::to_string(i);
            return std::nullopt;
        }
    }
    std::vector<double> v(grid.log2_abs_det_h.size());
    for (std::size_t j = 0; j < v.size(); ++j)
    {
        if (!std::isfinite(grid.log2_abs_det_h[j]))
        {
            why = "lower2_omitted:divergent_log_integral_at_omega_" + std::to_string(grid.omega[j]);
            return std::nullopt;
        }
        v[j] = 2.0 * grid.log2_abs_det_h[j];
    }
    return integrate_band(v) / (2.0 * pi);
}
} // namespace detail

/// Upper bound and both lower bounds at per-sample power p_tilde. `entropy` is the noise
/// entropy rate per lifted sample.
inline BoundsReport bounds(const LiftedChannel &lifted, const SpectralGrid &grid, const EntropyInterval &entropy,
                           double p_tilde)
{
    if (!(p_tilde > 0.0))
        throw ModelError("power must be positive");
    BoundsReport r;
    const double per = lifted.per;
    r.per = lifted.per;
    r.p_tilde = p_tilde;
    r.n_omega = grid.n_omega;
    r.entropy_used = entropy.scaled(1.0 / per);

    const auto wf = waterfill(grid, per * p_tilde);
    if (wf.zero_gain)
        r.flags.push_back("zero_channel_gain");
    r.delta = wf.delta;
    r.power_residual = wf.zero_gain ? 0.0 : wf.residual;
    const double h_g = gaussian_entropy_rate(grid);
    r.h_gauss = h_g / per;
    r.c_gauss = wf.capacity / per;
    r.lower1 = r.c_gauss;
    r.upper = (wf.capacity + h_g - entropy.lower) / per;

    std::string why;
    if (const auto sig = detail::signal_log_integral(lifted, grid, why))
    {
        const double nt = lifted.n_in;
        const double s = *sig / (per * nt);
        const double a = std::log2(2.0 * pi * std::numbers::e * p_tilde / nt) + s;
        const double b = 2.0 * entropy.upper / (per * lifted.n_out);
        r.lower2 = 0.5 * nt * detail::log2_sum_exp2(a, b) - entropy.upper / per;
    }
    else
        r.flags.push_back(why);
    return r;
}

struct SweepOptions
{
    int n_omega = 512;
    std::optional<int> per;
    int threads = 0;
    double bps_factor = 1.0;
};

/// Bounds along an SNR grid. SNR is relative to the average noise power per original
/// sample; points that fail numerically are marked and the sweep continues.
inline std::vector<BoundsReport> snr_sweep(const LptvChannel &channel, const NoiseModel &noise,
                                           const std::vector<double> &snr_db, const SweepOptions &opt = {})
{
    if (snr_db.empty())
        throw ModelError("SNR grid is empty");
    std::vector<BoundsReport> out(snr_db.size());
    for (std::size_t i = 0; i < snr_db.size(); ++i)
    {
        out[i].snr_db = snr_db[i];
        out[i].bps_factor = opt.bps_factor;
        out[i].n_omega = opt.n_omega;
    }
    auto fail_all = [&](const std::string &msg) {
        for (auto &r : out)
        {
            r.ok = false;
            r.flags.push_back(msg);
        }
        return out;
    };

    const LiftedChannel lifted = lift(channel, noise, opt.per);
    SpectralGrid grid;
    NoiseEntropyRate ent;
    try
    {
        grid = build_grid(lifted, opt.n_omega, opt.threads);
        ent = noise_entropy_rate(noise, lifted, opt.n_omega, opt.threads);
    }
    catch (const NumericalError &e)
    {
        return fail_all(std::string("error:") + e.what());
    }
    const double noise_power = noise_power_per_sample(lifted);

    for (std::size_t i = 0; i < snr_db.size(); ++i)
    {
        const double p = std::pow(10.0, snr_db[i] / 10.0) * noise_power;
        try
        {
            auto r = bounds(lifted, grid, ent.per_lifted, p);
            r.snr_db = snr_db[i];
            r.bps_factor = opt.bps_factor;
            out[i] = std::move(r);
        }
        catch (const std::exception &e)
        {
            out[i].p_tilde = p;
            out[i].ok = false;
            out[i].flags.push_back(std::string("error:") + e.what());
        }
    }
    return out;
}

} // namespace plccap

#endif
