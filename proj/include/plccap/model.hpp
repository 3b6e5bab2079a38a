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

#ifndef PLCCAP_MODEL_HPP
#define PLCCAP_MODEL_HPP

// Domain types for periodically time-varying (LPTV) MIMO channels with
// cyclostationary noise, and the decimated-components lifting that maps such
// a channel onto a time-invariant block channel.
//
// Conventions:
//   - A periodic tap bank holds matrices T[i, tau], i in [0, period), tau in [0, memory].
//     The phase index is always reduced modulo the period.
//   - The LPTV convolution is y[i] = sum_tau T[i, tau] x[i - tau] with x[i < 0] = 0.
//   - Lifted vectors stack one period: X[k] = [x[k*per]; ...; x[k*per + per - 1]].

#include "core.hpp"

#include <numeric>
#include <optional>
#include <utility>
#include <variant>

namespace plccap
{

// ---------------------------------------------------------------------------
// Periodic tap banks
// ---------------------------------------------------------------------------

class PeriodicTaps
{
  public:
    PeriodicTaps() = default;

    /// `taps` is phase-major: taps[i * (memory + 1) + tau].
    PeriodicTaps(int period, int memory, std::vector<Matrix> taps) : period_(period), memory_(memory), taps_(std::move(taps))
    {
        if (period_ < 1)
            throw ModelError("period must be positive, got " + std::to_string(period_));
        if (memory_ < 0)
            throw ModelError("memory must be non-negative, got " + std::to_string(memory_));
        const auto expected = static_cast<std::size_t>(period_) * static_cast<std::size_t>(memory_ + 1);
        if (taps_.size() != expected)
            throw ModelError("expected " + std::to_string(expected) + " tap matrices (period x (memory+1)), got " +
                             std::to_string(taps_.size()));
        rows_ = static_cast<int>(taps_.front().rows());
        cols_ = static_cast<int>(taps_.front().cols());
        if (rows_ < 1 || cols_ < 1)
            throw ModelError("tap matrices must be non-empty");
        for (const auto &t : taps_)
        {
            if (t.rows() != rows_ || t.cols() != cols_)
                throw ModelError("all tap matrices must share one shape");
            if (!t.allFinite())
                throw ModelError("tap matrices must be finite");
        }
    }

    /// Build from a callable tap(i, tau) -> Matrix.
    template <class F> static PeriodicTaps generate(int period, int memory, F &&tap)
    {
        std::vector<Matrix> taps;
        taps.reserve(static_cast<std::size_t>(period) * static_cast<std::size_t>(memory + 1));
        for (int i = 0; i < period; ++i)
            for (int tau = 0; tau <= memory; ++tau)
                taps.push_back(tap(i, tau));
        return PeriodicTaps(period, memory, std::move(taps));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int period() const { return period_; }
    int memory() const { return memory_; }

    const Matrix &tap(int i, int tau) const
    {
        return taps_[static_cast<std::size_t>(positive_mod(i, period_)) * static_cast<std::size_t>(memory_ + 1) +
                     static_cast<std::size_t>(tau)];
    }

    const std::vector<Matrix> &data() const { return taps_; }

    /// Zero-pads to a longer memory.
    PeriodicTaps padded(int memory) const
    {
        if (memory < memory_)
            throw ModelError("cannot pad to a shorter memory");
        if (memory == memory_)
            return *this;
        return generate(period_, memory, [&](int i, int tau) -> Matrix {
            return tau <= memory_ ? tap(i, tau) : Matrix::Zero(rows_, cols_);
        });
    }

    PeriodicTaps scaled(double s) const
    {
        auto t = taps_;
        for (auto &m : t)
            m *= s;
        return PeriodicTaps(period_, memory_, std::move(t));
    }

  private:
    int period_ = 1;
    int memory_ = 0;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Matrix> taps_;
};

/// Real LPTV channel with n_out x n_in taps H[i, tau].
class LptvChannel
{
  public:
    LptvChannel() = default;
    explicit LptvChannel(PeriodicTaps taps) : taps_(std::move(taps)) {}
    LptvChannel(int period, int memory, std::vector<Matrix> taps) : taps_(period, memory, std::move(taps)) {}

    static LptvChannel identity(int n) { return LptvChannel(1, 0, {Matrix::Identity(n, n)}); }

    int n_out() const { return taps_.rows(); }
    int n_in() const { return taps_.cols(); }
    int period() const { return taps_.period(); }
    int memory() const { return taps_.memory(); }
    const Matrix &tap(int i, int tau) const { return taps_.tap(i, tau); }
    const PeriodicTaps &taps() const { return taps_; }

    LptvChannel scaled(double s) const { return LptvChannel(taps_.scaled(s)); }

  private:
    PeriodicTaps taps_;
};

/// A leading shaping tap F[i, 0] failed the nonsingularity test.
class SingularShaping : public ModelError
{
  public:
    SingularShaping(int phase, double rc)
        : ModelError("shaping_nonsingular: F[" + std::to_string(phase) + ",0] is singular (rcond = " +
                     std::to_string(rc) + ")"),
          phase_(phase)
    {
    }
    int phase() const noexcept { return phase_; }

  private:
    int phase_;
};

/// Square LPTV shaping filter F[i, tau] whose leading taps F[i, 0] are nonsingular.
class LptvShapingFilter
{
  public:
    /// Reciprocal condition number below which F[i, 0] counts as singular.
    static constexpr double min_rcond = 1e-10;

    LptvShapingFilter() : LptvShapingFilter(identity(1)) {}

    explicit LptvShapingFilter(PeriodicTaps taps) : taps_(std::move(taps))
    {
        if (taps_.rows() != taps_.cols())
            throw ModelError("shaping filter taps must be square");
        for (int i = 0; i < taps_.period(); ++i)
        {
            const double rc = rcond(taps_.tap(i, 0));
            if (!(rc > min_rcond))
                throw SingularShaping(i, rc);
        }
    }
    LptvShapingFilter(int period, int memory, std::vector<Matrix> taps)
        : LptvShapingFilter(PeriodicTaps(period, memory, std::move(taps)))
    {
    }

    static LptvShapingFilter identity(int n) { return LptvShapingFilter(PeriodicTaps(1, 0, {Matrix::Identity(n, n)})); }

    int n() const { return taps_.rows(); }
    int period() const { return taps_.period(); }
    int memory() const { return taps_.memory(); }
    const Matrix &tap(int i, int tau) const { return taps_.tap(i, tau); }
    const PeriodicTaps &taps() const { return taps_; }

    LptvShapingFilter scaled(double s) const { return LptvShapingFilter(taps_.scaled(s)); }

  private:
    PeriodicTaps taps_;
};

// ---------------------------------------------------------------------------
// Innovation distributions
// ---------------------------------------------------------------------------

/// Gaussian mixture sum_n prior_n N(mean_n, cov_n).
struct GmParams
{
    std::vector<double> priors;
    std::vector<Vector> means;
    std::vector<Matrix> covariances;

    int n_components() const { return static_cast<int>(priors.size()); }
    int dimension() const { return means.empty() ? 0 : static_cast<int>(means.front().size()); }

    void validate() const
    {
        const auto ng = priors.size();
        if (ng == 0)
            throw ModelError("gaussian mixture needs at least one component");
        if (means.size() != ng || covariances.size() != ng)
            throw ModelError("gaussian mixture: priors, means and covariances must have equal counts");
        double sum = 0.0;
        for (double a : priors)
        {
            if (!(a > 0.0))
                throw ModelError("gaussian mixture priors must be positive");
            sum += a;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw ModelError("gaussian mixture priors must sum to 1 (sum = " + std::to_string(sum) + ")");
        const auto d = means.front().size();
        if (d == 0)
            throw ModelError("gaussian mixture dimension must be positive");
        for (std::size_t n = 0; n < ng; ++n)
        {
            if (means[n].size() != d)
                throw ModelError("gaussian mixture means must share one dimension");
            const Matrix &c = covariances[n];
            if (c.rows() != static_cast<Eigen::Index>(d) || c.cols() != static_cast<Eigen::Index>(d))
                throw ModelError("gaussian mixture covariance " + std::to_string(n) + " has the wrong shape");
            const double norm = c.norm();
            if ((c - c.transpose()).norm() > 1e-12 * std::max(norm, 1.0))
                throw ModelError("gaussian mixture covariance " + std::to_string(n) + " is not symmetric");
            Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-12 * norm)
                throw ModelError("gaussian mixture covariance " + std::to_string(n) + " is not positive semidefinite");
        }
    }

    Vector mean() const
    {
        Vector mu = Vector::Zero(dimension());
        for (std::size_t n = 0; n < priors.size(); ++n)
            mu += priors[n] * means[n];
        return mu;
    }

    Matrix covariance() const
    {
        const Vector mu = mean();
        Matrix c = Matrix::Zero(dimension(), dimension());
        for (std::size_t n = 0; n < priors.size(); ++n)
        {
            const Vector dm = means[n] - mu;
            c += priors[n] * (covariances[n] + dm * dm.transpose());
        }
        return c;
    }
};

/// Complex Nakagami-m: amplitude Nakagami(m, omega), independent uniform phase.
/// Represented in real form as consecutive (Re, Im) pairs; `dimension` = 2 x (number of
/// independent complex components).
struct NakagamiParams
{
    double m = 1.0;
    double omega = 1.0;
    int dimension = 2;

    void validate() const
    {
        if (!(m >= 0.5))
            throw ModelError("nakagami shape m must be >= 0.5");
        if (!(omega > 0.0))
            throw ModelError("nakagami second moment omega must be positive");
        if (dimension < 2 || dimension % 2 != 0)
            throw ModelError("complex nakagami innovations need an even real dimension");
    }

    Matrix covariance() const { return Matrix::Identity(dimension, dimension) * (omega / 2.0); }
};

struct GaussianParams
{
    Matrix covariance;

    int dimension() const { return static_cast<int>(covariance.rows()); }

    void validate() const
    {
        if (covariance.rows() < 1 || covariance.rows() != covariance.cols())
            throw ModelError("gaussian covariance must be square and non-empty");
        if ((covariance - covariance.transpose()).norm() > 1e-12 * std::max(covariance.norm(), 1.0))
            throw ModelError("gaussian covariance must be symmetric");
        Eigen::LLT<Matrix> llt(covariance);
        if (llt.info() != Eigen::Success)
            throw ModelError("gaussian covariance must be positive definite");
    }
};

/// Tagged union of the supported i.i.d. innovation laws.
class InnovationPdf
{
  public:
    using Variant = std::variant<GmParams, NakagamiParams, GaussianParams>;

    InnovationPdf() : InnovationPdf(GaussianParams{Matrix::Identity(1, 1)}) {}
    template <class P>
        requires std::is_constructible_v<Variant, P>
    InnovationPdf(P params) : params_(std::move(params))
    {
        std::visit([](const auto &p) { p.validate(); }, params_);
    }

    const Variant &params() const { return params_; }
    bool is_gm() const { return std::holds_alternative<GmParams>(params_); }
    bool is_nakagami() const { return std::holds_alternative<NakagamiParams>(params_); }
    bool is_gaussian() const { return std::holds_alternative<GaussianParams>(params_); }
    const GmParams &gm() const { return std::get<GmParams>(params_); }
    const NakagamiParams &nakagami() const { return std::get<NakagamiParams>(params_); }
    const GaussianParams &gaussian() const { return std::get<GaussianParams>(params_); }

    int dimension() const
    {
        return std::visit(
            [](const auto &p) -> int {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, NakagamiParams>)
                    return p.dimension;
                else
                    return p.dimension();
            },
            params_);
    }

    Matrix covariance() const
    {
        return std::visit(
            [](const auto &p) -> Matrix {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>)
                    return p.covariance;
                else
                    return p.covariance();
            },
            params_);
    }

    Vector mean() const
    {
        if (is_gm())
            return gm().mean();
        return Vector::Zero(dimension());
    }

    /// E ||U||^2 - ||E U||^2, i.e. the trace of the covariance.
    double total_variance() const { return covariance().trace(); }

    /// Law of s * U.
    InnovationPdf scaled(double s) const
    {
        return std::visit(
            [s](auto p) -> InnovationPdf {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GmParams>)
                {
                    for (auto &m : p.means)
                        m *= s;
                    for (auto &c : p.covariances)
                        c *= s * s;
                }
                else if constexpr (std::is_same_v<T, NakagamiParams>)
                    p.omega *= s * s;
                else
                    p.covariance *= s * s;
                return InnovationPdf(std::move(p));
            },
            params_);
    }

  private:
    Variant params_;
};

/// Cyclostationary noise: an i.i.d. innovation pushed through an LPTV shaping filter.
class NoiseModel
{
  public:
    NoiseModel() = default;

    /// With `normalize`, the innovation is rescaled to unit total variance per sample and
    /// the applied factor is kept in scale_factor().
    NoiseModel(InnovationPdf innovation, LptvShapingFilter shaping, bool normalize = true)
        : innovation_(std::move(innovation)), shaping_(std::move(shaping))
    {
        if (innovation_.dimension() != shaping_.n())
            throw ModelError("innovation dimension (" + std::to_string(innovation_.dimension()) +
                             ") differs from shaping filter size (" + std::to_string(shaping_.n()) + ")");
        const Vector mu = innovation_.mean();
        const double var = innovation_.total_variance();
        if (!(var > 0.0))
            throw ModelError("innovation must have positive variance");
        if (mu.norm() > 1e-9 * std::sqrt(var + mu.squaredNorm()))
            throw ModelError("innovation must be zero mean");
        if (normalize)
        {
            scale_ = 1.0 / std::sqrt(var);
            innovation_ = innovation_.scaled(scale_);
            normalized_ = true;
        }
    }

    static NoiseModel iid(InnovationPdf innovation, bool normalize = true)
    {
        const int d = innovation.dimension();
        return NoiseModel(std::move(innovation), LptvShapingFilter::identity(d), normalize);
    }

    const InnovationPdf &innovation() const { return innovation_; }
    const LptvShapingFilter &shaping() const { return shaping_; }
    int n() const { return shaping_.n(); }
    double scale_factor() const { return scale_; }
    bool variance_normalized() const { return normalized_; }

    NoiseModel with_shaping(LptvShapingFilter shaping) const
    {
        NoiseModel m = *this;
        if (shaping.n() != innovation_.dimension())
            throw ModelError("shaping filter size differs from innovation dimension");
        m.shaping_ = std::move(shaping);
        return m;
    }

  private:
    InnovationPdf innovation_;
    LptvShapingFilter shaping_;
    double scale_ = 1.0;
    bool normalized_ = false;
};

// ---------------------------------------------------------------------------
// Complex baseband channels
// ---------------------------------------------------------------------------

struct ComplexLptvChannel
{
    int period = 1;
    int memory = 0;
    std::vector<CMatrix> taps; ///< phase-major, taps[i * (memory + 1) + tau]
};

/// Real representation of a complex channel: each tap becomes [[Re, -Im], [Im, Re]] and the
/// real vectors stack [Re; Im].
inline LptvChannel complex_to_real(const ComplexLptvChannel &c)
{
    std::vector<Matrix> taps;
    taps.reserve(c.taps.size());
    for (const auto &t : c.taps)
    {
        const auto r = t.rows(), k = t.cols();
        Matrix m(2 * r, 2 * k);
        m.topLeftCorner(r, k) = t.real();
        m.topRightCorner(r, k) = -t.imag();
        m.bottomLeftCorner(r, k) = t.imag();
        m.bottomRightCorner(r, k) = t.real();
        taps.push_back(std::move(m));
    }
    return LptvChannel(c.period, c.memory, std::move(taps));
}

inline Vector complex_to_real(const CVector &v)
{
    Vector r(2 * v.size());
    r << v.real(), v.imag();
    return r;
}

// ---------------------------------------------------------------------------
// Decimated-components lifting
// ---------------------------------------------------------------------------

/// Smallest common multiple of both periods that exceeds the memory.
inline int choose_lift_period(int channel_period, int noise_period, int memory)
{
    const int l = std::lcm(channel_period, noise_period);
    if (l > memory)
        return l;
    return l * ((memory + 1 + l - 1) / l);
}

/// Block taps of the lifted time-invariant filter. Tap k, block (r, c) holds T[r, k*per + r - c]
/// when that lag lies in [0, memory]. At least two taps are always returned.
inline std::vector<Matrix> lift_taps(const PeriodicTaps &t, int per)
{
    const int m = t.memory();
    const int n_taps = std::max(2, (m + per - 1) / per + 1);
    const int r = t.rows(), c = t.cols();
    std::vector<Matrix> out(static_cast<std::size_t>(n_taps), Matrix::Zero(per * r, per * c));
    for (int k = 0; k < n_taps; ++k)
        for (int row = 0; row < per; ++row)
            for (int col = 0; col < per; ++col)
            {
                const int lag = k * per + row - col;
                if (lag >= 0 && lag <= m)
                    out[static_cast<std::size_t>(k)].block(row * r, col * c, r, c) = t.tap(row, lag);
            }
    return out;
}

/// Time-invariant block channel equivalent to an LPTV channel with cyclostationary noise.
struct LiftedChannel
{
    int per = 1;
    int n_out = 1; ///< original per-sample output size
    int n_in = 1;  ///< original per-sample input size
    int memory = 0;
    std::vector<Matrix> h; ///< lifted channel taps, h[0] block lower triangular
    std::vector<Matrix> f; ///< lifted shaping taps
    Matrix innovation_cov; ///< covariance of one original-rate innovation vector

    const Matrix &h0() const { return h[0]; }
    const Matrix &h1() const { return h[1]; }
    const Matrix &f0() const { return f[0]; }
    const Matrix &f1() const { return f[1]; }
    int lifted_out() const { return per * n_out; }
    int lifted_in() const { return per * n_in; }

    /// Covariance of one lifted innovation block (block diagonal).
    Matrix lifted_innovation_cov() const
    {
        Matrix c = Matrix::Zero(lifted_out(), lifted_out());
        for (int i = 0; i < per; ++i)
            c.block(i * n_out, i * n_out, n_out, n_out) = innovation_cov;
        return c;
    }
};

/// Lifts channel and noise onto a common period. `per_override`, when given, must be a
/// multiple of both periods; a value not exceeding the memory yields more than two taps.
inline LiftedChannel lift(const LptvChannel &channel, const NoiseModel &noise, std::optional<int> per_override = {})
{
    if (channel.n_out() != noise.n())
        throw ModelError("channel output size (" + std::to_string(channel.n_out()) +
                         ") differs from noise dimension (" + std::to_string(noise.n()) + ")");
    const int memory = std::max(channel.memory(), noise.shaping().memory());
    const int l = std::lcm(channel.period(), noise.shaping().period());
    int per = choose_lift_period(channel.period(), noise.shaping().period(), memory);
    if (per_override)
    {
        if (*per_override < 1 || *per_override % l != 0)
            throw ModelError("forced lift period " + std::to_string(*per_override) +
                             " is not a positive multiple of " + std::to_string(l));
        per = *per_override;
    }
    LiftedChannel out;
    out.per = per;
    out.n_out = channel.n_out();
    out.n_in = channel.n_in();
    out.memory = memory;
    out.h = lift_taps(channel.taps().padded(memory), per);
    out.f = lift_taps(noise.shaping().taps().padded(memory), per);
    out.innovation_cov = noise.innovation().covariance();
    // Both tap lists have the same length since they share memory and period.
    return out;
}

/// Autocorrelation lags C[d] = E{W[k + d] W[k]^T}, d >= 0, of the lifted noise; C[-d] = C[d]^T.
struct NoiseAutocorrelation
{
    std::vector<Matrix> lags;

    const Matrix &c0() const { return lags[0]; }
    const Matrix &c1() const { return lags[1]; }
};

inline NoiseAutocorrelation lifted_noise_autocorrelation(const std::vector<Matrix> &f, const Matrix &block_cov)
{
    NoiseAutocorrelation out;
    const auto k = f.size();
    for (std::size_t d = 0; d < k; ++d)
    {
        Matrix c = Matrix::Zero(f[0].rows(), f[0].rows());
        for (std::size_t j = 0; j + d < k; ++j)
            c += f[j + d] * block_cov * f[j].transpose();
        out.lags.push_back(std::move(c));
    }
    return out;
}

/// Uses the innovation covariance carried by the lifted channel.
inline NoiseAutocorrelation lifted_noise_autocorrelation(const LiftedChannel &lifted)
{
    return lifted_noise_autocorrelation(lifted.f, lifted.lifted_innovation_cov());
}

/// Average noise power per original sample, trace(C0) / per.
inline double noise_power_per_sample(const LiftedChannel &lifted)
{
    return lifted_noise_autocorrelation(lifted).c0().trace() / lifted.per;
}

// ---------------------------------------------------------------------------
// Time-domain reference filters
// ---------------------------------------------------------------------------

/// y[i] = sum_tau T[i, tau] x[i - tau], zero initial state.
inline std::vector<Vector> apply_lptv(const PeriodicTaps &t, const std::vector<Vector> &x)
{
    std::vector<Vector> y(x.size(), Vector::Zero(t.rows()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int tau = 0; tau <= t.memory() && static_cast<std::size_t>(tau) <= i; ++tau)
            y[i] += t.tap(static_cast<int>(i), tau) * x[i - static_cast<std::size_t>(tau)];
    return y;
}

/// Y[k] = sum_j taps[j] X[k - j], zero initial state.
inline std::vector<Vector> apply_lti(const std::vector<Matrix> &taps, const std::vector<Vector> &x)
{
    std::vector<Vector> y(x.size(), Vector::Zero(taps.front().rows()));
    for (std::size_t k = 0; k < x.size(); ++k)
        for (std::size_t j = 0; j < taps.size() && j <= k; ++j)
            y[k] += taps[j] * x[k - j];
    return y;
}

/// Groups consecutive samples into blocks of `per` (the length must be a multiple of per).
inline std::vector<Vector> stack_blocks(const std::vector<Vector> &x, int per)
{
    if (x.size() % static_cast<std::size_t>(per) != 0)
        throw ModelError("sequence length is not a multiple of the lift period");
    const auto d = x.empty() ? 0 : x.front().size();
    std::vector<Vector> out(x.size() / static_cast<std::size_t>(per), Vector(per * d));
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i / static_cast<std::size_t>(per)].segment(static_cast<Eigen::Index>(i % static_cast<std::size_t>(per)) * d,
                                                        d) = x[i];
    return out;
}

inline std::vector<Vector> unstack_blocks(const std::vector<Vector> &blocks, int per)
{
    std::vector<Vector> out;
    if (blocks.empty())
        return out;
    const auto d = blocks.front().size() / per;
    out.reserve(blocks.size() * static_cast<std::size_t>(per));
    for (const auto &b : blocks)
        for (int i = 0; i < per; ++i)
            out.emplace_back(b.segment(i * d, d));
    return out;
}

} // namespace plccap

#endif
