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


#ifndef PLCCAP_NOISEGEN_HPP
#define PLCCAP_NOISEGEN_HPP

// Preset noise models, innovation samplers, shaping-filter synthesis from spectral
// profiles, and lifted noise sampling.

#include "model.hpp"
#include "random.hpp"

#include <unsupported/Eigen/FFT>

#include <functional>
#include <optional>
#include <string_view>

namespace plccap
{

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

enum class PresetId
{
    GM1,
    GM2,
    MCA,
    MIMO_GM,
    MIMO_MCA,
    NAKAGAMI_08,
    GAUSSIAN_REF
};

inline constexpr PresetId all_presets[] = {PresetId::GM1,      PresetId::GM2,         PresetId::MCA,
                                           PresetId::MIMO_GM,  PresetId::MIMO_MCA,    PresetId::NAKAGAMI_08,
                                           PresetId::GAUSSIAN_REF};

inline std::string preset_name(PresetId id)
{
    switch (id)
    {
    case PresetId::GM1: return "gm1";
    case PresetId::GM2: return "gm2";
    case PresetId::MCA: return "mca";
    case PresetId::MIMO_GM: return "mimo-gm";
    case PresetId::MIMO_MCA: return "mimo-mca";
    case PresetId::NAKAGAMI_08: return "nakagami";
    case PresetId::GAUSSIAN_REF: return "gaussian";
    }
    return "?";
}

inline std::optional<PresetId> parse_preset(std::string_view name)
{
    for (auto id : all_presets)
        if (preset_name(id) == name)
            return id;
    return std::nullopt;
}

/// Three-component mixture with priors {0.7, 0.2, 0.1}; dim 1 uses means {5, -8, -19}, dim 2
/// uses {[5,4], [-8,-16], [-19,4]}. Component variances {5, 2, 1} per dimension.
inline GmParams gm1_params(int dim = 1)
{
    GmParams p;
    p.priors = {0.7, 0.2, 0.1};
    const double var[] = {5.0, 2.0, 1.0};
    if (dim == 1)
    {
        const double mu[] = {5.0, -8.0, -19.0};
        for (int n = 0; n < 3; ++n)
        {
            p.means.push_back(Vector::Constant(1, mu[n]));
            p.covariances.push_back(Matrix::Constant(1, 1, var[n]));
        }
    }
    else if (dim == 2)
    {
        const double mu[3][2] = {{5.0, 4.0}, {-8.0, -16.0}, {-19.0, 4.0}};
        for (int n = 0; n < 3; ++n)
        {
            p.means.push_back((Vector(2) << mu[n][0], mu[n][1]).finished());
            p.covariances.push_back(Matrix::Identity(2, 2) * var[n]);
        }
    }
    else
        throw ModelError("gm1 is defined for 1 or 2 dimensions");
    return p;
}

/// Zero-mean mixture with priors {0.9, 0.07, 0.03} and variances {1, 100, 1000}.
inline GmParams gm2_params(int dim = 1)
{
    if (dim < 1)
        throw ModelError("dimension must be positive");
    GmParams p;
    p.priors = {0.9, 0.07, 0.03};
    for (double v : {1.0, 100.0, 1000.0})
    {
        p.means.push_back(Vector::Zero(dim));
        p.covariances.push_back(Matrix::Identity(dim, dim) * v);
    }
    return p;
}

/// Poisson weights exp(-A) A^n / n! for n < ng, before renormalization.
inline std::vector<double> mca_raw_weights(double a, int ng)
{
    std::vector<double> w(static_cast<std::size_t>(ng));
    for (int n = 0; n < ng; ++n)
        w[static_cast<std::size_t>(n)] = std::exp(-a + n * std::log(a) - std::lgamma(n + 1.0));
    return w;
}

/// Middleton class A approximation truncated to ng terms, priors renormalized to sum 1.
inline GmParams mca_params(int dim = 1, double a = 0.1, double omega = 0.01, int ng = 10)
{
    if (dim < 1 || !(a > 0.0) || !(omega > 0.0) || ng < 1)
        throw ModelError("invalid class A parameters");
    auto w = mca_raw_weights(a, ng);
    double sum = 0.0;
    for (double v : w)
        sum += v;
    GmParams p;
    for (int n = 0; n < ng; ++n)
    {
        p.priors.push_back(w[static_cast<std::size_t>(n)] / sum);
        p.means.push_back(Vector::Zero(dim));
        p.covariances.push_back(Matrix::Identity(dim, dim) * ((n / a + omega) / (1.0 + omega)));
    }
    return p;
}

/// Innovation law of a preset before variance normalization.
inline InnovationPdf preset_innovation(PresetId id)
{
    switch (id)
    {
    case PresetId::GM1: return gm1_params(1);
    case PresetId::GM2: return gm2_params(1);
    case PresetId::MCA: return mca_params(1);
    case PresetId::MIMO_GM: return gm1_params(2);
    case PresetId::MIMO_MCA: return mca_params(2);
    case PresetId::NAKAGAMI_08: return NakagamiParams{0.8, 1.0, 2};
    case PresetId::GAUSSIAN_REF: return GaussianParams{Matrix::Identity(2, 2) * 0.5};
    }
    throw ModelError("unknown preset");
}

/// i.i.d. noise model of a preset, normalized to unit total variance.
inline NoiseModel build_preset(PresetId id) { return NoiseModel::iid(preset_innovation(id)); }

// ---------------------------------------------------------------------------
// Innovation sampling
// ---------------------------------------------------------------------------

namespace detail
{
/// Symmetric square root of a PSD matrix, used as a sampling factor.
inline Matrix psd_sqrt(const Matrix &c)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    const Vector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}
} // namespace detail

/// n i.i.d. draws as the columns of a d x n matrix. Deterministic given the seed.
inline Matrix sample_innovation(const InnovationPdf &pdf, std::size_t n, std::uint64_t seed, int threads = 0)
{
    const int d = pdf.dimension();
    Matrix out(d, static_cast<Eigen::Index>(n));
    if (pdf.is_gm())
    {
        const auto &p = pdf.gm();
        std::vector<Matrix> roots;
        for (const auto &c : p.covariances)
            roots.push_back(detail::psd_sqrt(c));
        for_each_chunk(
            n, seed, 0x676dULL,
            [&](Engine &eng, std::size_t b, std::size_t e) {
                std::discrete_distribution<int> pick(p.priors.begin(), p.priors.end());
                std::normal_distribution<double> g;
                Vector z(d);
                for (std::size_t i = b; i < e; ++i)
                {
                    const auto c = static_cast<std::size_t>(pick(eng));
                    for (int k = 0; k < d; ++k)
                        z(k) = g(eng);
                    out.col(static_cast<Eigen::Index>(i)) = p.means[c] + roots[c] * z;
                }
            },
            threads);
    }
    else if (pdf.is_nakagami())
    {
        const auto &p = pdf.nakagami();
        for_each_chunk(
            n, seed, 0x6e616bULL,
            [&](Engine &eng, std::size_t b, std::size_t e) {
                std::gamma_distribution<double> power(p.m, p.omega / p.m);
                std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
                for (std::size_t i = b; i < e; ++i)
                    for (int k = 0; k < d; k += 2)
                    {
                        const double r = std::sqrt(power(eng));
                        const double t = phase(eng);
                        out(k, static_cast<Eigen::Index>(i)) = r * std::cos(t);
                        out(k + 1, static_cast<Eigen::Index>(i)) = r * std::sin(t);
                    }
            },
            threads);
    }
    else
    {
        const Matrix root = detail::psd_sqrt(pdf.gaussian().covariance);
        for_each_chunk(
            n, seed, 0x6761ULL,
            [&](Engine &eng, std::size_t b, std::size_t e) {
                std::normal_distribution<double> g;
                Vector z(d);
                for (std::size_t i = b; i < e; ++i)
                {
                    for (int k = 0; k < d; ++k)
                        z(k) = g(eng);
                    out.col(static_cast<Eigen::Index>(i)) = root * z;
                }
            },
            threads);
    }
    return out;
}

/// W[k] = sum_j F[j] U[k - j] on lifted blocks, as the columns of a (per*n) x blocks matrix.
/// The first taps-1 blocks of the filter state are discarded as warm-up.
inline Matrix sample_lifted_noise(const NoiseModel &model, const LiftedChannel &lifted, std::size_t blocks,
                                  std::uint64_t seed, int threads = 0)
{
    const int n = model.n();
    const int per = lifted.per;
    const std::size_t warm = lifted.f.size() - 1;
    const std::size_t total = blocks + warm;
    const Matrix u = sample_innovation(model.innovation(), total * static_cast<std::size_t>(per), seed, threads);
    const Eigen::Map<const Matrix> ub(u.data(), per * n, static_cast<Eigen::Index>(total));
    Matrix w(per * n, static_cast<Eigen::Index>(blocks));
    parallel_for(
        blocks,
        [&](std::size_t b) {
            Vector acc = Vector::Zero(per * n);
            for (std::size_t j = 0; j < lifted.f.size(); ++j)
                acc += lifted.f[j] * ub.col(static_cast<Eigen::Index>(b + warm - j));
            w.col(static_cast<Eigen::Index>(b)) = acc;
        },
        threads);
    return w;
}

// ---------------------------------------------------------------------------
// Spectral profiles and shaping synthesis
// ---------------------------------------------------------------------------

/// Spectral spatial correlation offset - slope * |omega| / (2 pi).
struct RhoProfile
{
    double offset = 0.7;
    double slope = 1.0;

    double operator()(double omega) const { return offset - slope * std::abs(omega) / (2.0 * pi); }
};

/// Per-phase instantaneous PSD s[i, omega] (i reduced modulo the noise period).
struct PsdProfile
{
    enum class Kind
    {
        flat,
        two_level,
        table
    };
    Kind kind = Kind::flat;

    // two_level: phases i < duty * period are disturbed and raised by contrast_db; every phase
    // rolls off by tilt_db from omega = 0 to |omega| = pi along a raised cosine.
    double duty = 0.25;
    double contrast_db = 10.0;
    double tilt_db = 6.0;

    // table: rows are phases, columns sample omega uniformly on [0, pi] (linear interpolation).
    std::vector<std::vector<double>> table;

    double operator()(int phase, int period, double omega) const
    {
        const double w = std::min(std::abs(omega), pi);
        switch (kind)
        {
        case Kind::flat: return 1.0;
        case Kind::two_level: {
            const bool disturbed = phase < duty * period;
            const double db = (disturbed ? contrast_db : 0.0) - tilt_db * 0.5 * (1.0 - std::cos(w));
            return std::pow(10.0, db / 10.0);
        }
        case Kind::table: {
            const auto &row = table[static_cast<std::size_t>(positive_mod(phase, static_cast<int>(table.size())))];
            if (row.size() == 1)
                return row.front();
            const double x = w / pi * static_cast<double>(row.size() - 1);
            const auto k = std::min(static_cast<std::size_t>(x), row.size() - 2);
            const double t = x - static_cast<double>(k);
            return (1.0 - t) * row[k] + t * row[k + 1];
        }
        }
        return 1.0;
    }
};

struct SpatialProfile
{
    double rho = 0.9; ///< channel coupling, used by scenario generators
    RhoProfile rho_w;
    PsdProfile psd;

    void validate(int n) const
    {
        if (!(std::abs(rho) < 1.0))
            throw ModelError("spatial coupling rho must satisfy |rho| < 1");
        if (n == 2)
            for (double w : {0.0, pi})
                if (!(std::abs(rho_w(w)) < 1.0))
                    throw ModelError("spectral spatial correlation must stay inside (-1, 1)");
        if (psd.kind == PsdProfile::Kind::table)
        {
            if (psd.table.empty())
                throw ModelError("PSD table needs at least one phase");
            for (const auto &row : psd.table)
            {
                if (row.empty())
                    throw ModelError("PSD table rows must be non-empty");
                for (double v : row)
                    if (!(v >= 0.0) || !std::isfinite(v))
                        throw ModelError("PSD table values must be finite and non-negative");
            }
        }
        if (psd.kind == PsdProfile::Kind::two_level && !(psd.duty >= 0.0 && psd.duty <= 1.0))
            throw ModelError("two-level PSD duty must lie in [0, 1]");
    }
};

/// Symmetric square root of [[1, r], [r, 1]].
inline Matrix spatial_sqrt(double r)
{
    const double a = std::sqrt(1.0 + r), b = std::sqrt(1.0 - r);
    Matrix s(2, 2);
    s << 0.5 * (a + b), 0.5 * (a - b), 0.5 * (a - b), 0.5 * (a + b);
    return s;
}

enum class FilterPhase
{
    minimum, ///< causal minimum-phase spectral factor of each eigen-channel
    zero     ///< inverse transform of the real, even target response
};

struct ShapingSynthesis
{
    LptvShapingFilter filter;
    double truncated_energy_fraction = 0.0; ///< worst phase, worst eigen-channel
};

namespace detail
{
inline constexpr int synthesis_fft = 1024;

/// Taps 0..memory of a causal response whose squared magnitude is g(omega).
inline std::vector<double> factor_taps(const std::function<double(double)> &g, int memory, FilterPhase phase,
                                       double &lost)
{
    const int nfft = synthesis_fft;
    Eigen::FFT<double> fft;
    std::vector<cplx> spec(static_cast<std::size_t>(nfft)), time;
    for (int k = 0; k < nfft; ++k)
    {
        const double w = 2.0 * pi * k / nfft;
        const double v = g(w > pi ? w - 2.0 * pi : w);
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ModelError("target spectrum must be finite and non-negative");
        if (phase == FilterPhase::minimum)
        {
            if (!(v > 0.0))
                throw ModelError("minimum-phase synthesis needs a strictly positive spectrum");
            spec[static_cast<std::size_t>(k)] = 0.5 * std::log(v);
        }
        else
            spec[static_cast<std::size_t>(k)] = std::sqrt(v);
    }
    if (phase == FilterPhase::minimum)
    {
        std::vector<cplx> cep;
        fft.inv(cep, spec);
        for (int n = 1; n < nfft / 2; ++n)
            cep[static_cast<std::size_t>(n)] *= 2.0;
        for (int n = nfft / 2 + 1; n < nfft; ++n)
            cep[static_cast<std::size_t>(n)] = 0.0;
        fft.fwd(spec, cep);
        for (auto &s : spec)
            s = std::exp(s);
    }
    fft.inv(time, spec);
    double total = 0.0, kept = 0.0;
    for (int n = 0; n < nfft; ++n)
    {
        const double e = std::norm(time[static_cast<std::size_t>(n)]);
        total += e;
        if (n <= memory)
            kept += e;
    }
    lost = total > 0.0 ? 1.0 - kept / total : 0.0;
    std::vector<double> taps(static_cast<std::size_t>(memory + 1));
    for (int n = 0; n <= memory; ++n)
        taps[static_cast<std::size_t>(n)] = time[static_cast<std::size_t>(n)].real();
    return taps;
}
} // namespace detail

/// Shaping filter whose phase-i response has squared magnitude s[i, omega] * [[1, rho_w], [rho_w, 1]]
/// (n = 2) or s[i, omega] (n = 1), truncated to memory + 1 taps.
inline ShapingSynthesis profile_to_filter(const SpatialProfile &profile, int period, int memory, int n,
                                          FilterPhase phase = FilterPhase::minimum)
{
    if (n != 1 && n != 2)
        throw ModelError("profile_to_filter supports 1 or 2 dimensions");
    if (period < 1 || memory < 0)
        throw ModelError("invalid period or memory");
    profile.validate(n);
    ShapingSynthesis out;
    std::vector<Matrix> taps;
    taps.reserve(static_cast<std::size_t>(period) * static_cast<std::size_t>(memory + 1));
    const double h = 1.0 / std::sqrt(2.0);
    Matrix q(2, 2);
    q << h, h, h, -h;
    for (int i = 0; i < period; ++i)
    {
        auto s = [&](double w) { return profile.psd(i, period, w); };
        double lost = 0.0;
        if (n == 1)
        {
            const auto t = detail::factor_taps(s, memory, phase, lost);
            out.truncated_energy_fraction = std::max(out.truncated_energy_fraction, lost);
            for (int tau = 0; tau <= memory; ++tau)
                taps.push_back(Matrix::Constant(1, 1, t[static_cast<std::size_t>(tau)]));
            continue;
        }
        const auto tp = detail::factor_taps([&](double w) { return (1.0 + profile.rho_w(w)) * s(w); }, memory, phase,
                                            lost);
        out.truncated_energy_fraction = std::max(out.truncated_energy_fraction, lost);
        const auto tm = detail::factor_taps([&](double w) { return (1.0 - profile.rho_w(w)) * s(w); }, memory, phase,
                                            lost);
        out.truncated_energy_fraction = std::max(out.truncated_energy_fraction, lost);
        for (int tau = 0; tau <= memory; ++tau)
        {
            Vector d(2);
            d << tp[static_cast<std::size_t>(tau)], tm[static_cast<std::size_t>(tau)];
            taps.push_back(q * d.asDiagonal() * q.transpose());
        }
    }
    out.filter = LptvShapingFilter(PeriodicTaps(period, memory, std::move(taps)));
    return out;
}

} // namespace plccap

#endif
