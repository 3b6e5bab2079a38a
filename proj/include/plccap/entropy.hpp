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


#ifndef PLCCAP_ENTROPY_HPP
#define PLCCAP_ENTROPY_HPP

// Differential entropies (bits) of innovations and entropy rates of shaped noise.

#include "special.hpp"
#include "spectra.hpp"

namespace plccap
{

/// 0.5 * log2 det(2 pi e cov); throws for a covariance that is not positive definite.
inline double gaussian_entropy(const Matrix &cov)
{
    Eigen::LLT<Matrix> llt(cov);
    if (cov.rows() == 0 || llt.info() != Eigen::Success)
        throw ModelError("gaussian entropy needs a positive definite covariance");
    double ld = 0.0;
    for (Eigen::Index k = 0; k < cov.rows(); ++k)
    {
        const double l = llt.matrixL()(k, k);
        if (!(l > 0.0))
            throw ModelError("gaussian entropy needs a positive definite covariance");
        ld += 2.0 * std::log2(l);
    }
    return 0.5 * (static_cast<double>(cov.rows()) * log2_2pi_e + ld);
}

/// Entropy of one complex Nakagami-m variate with uniform phase.
inline double nakagami_complex_entropy(double m, double omega)
{
    NakagamiParams{m, omega, 2}.validate();
    const double psi = digamma(m);
    const double nats = std::log(pi * omega / m) + std::lgamma(m) + (2.0 * m - (2.0 * m - 1.0) * psi) / 2.0;
    return psi / (2.0 * ln2) + nats / ln2;
}

inline double nakagami_complex_entropy(const NakagamiParams &p)
{
    p.validate();
    return (p.dimension / 2) * nakagami_complex_entropy(p.m, p.omega);
}

namespace detail
{
/// log N(x; mu, cov) in nats for a positive definite cov.
inline double log_normal_pdf(const Vector &x, const Vector &mu, const Matrix &cov)
{
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success)
        throw ModelError("gaussian mixture component covariance is not positive definite");
    const Vector z = llt.matrixL().solve(x - mu);
    double logdet = 0.0;
    for (Eigen::Index k = 0; k < cov.rows(); ++k)
        logdet += 2.0 * std::log(llt.matrixL()(k, k));
    return -0.5 * (static_cast<double>(cov.rows()) * std::log(2.0 * pi) + logdet + z.squaredNorm());
}
} // namespace detail

/// Lower and upper bounds on the entropy of a Gaussian mixture. A single component is exact.
inline EntropyInterval gm_entropy_interval(const GmParams &p)
{
    p.validate();
    const auto ng = p.priors.size();
    if (ng == 1)
        return EntropyInterval::point(gaussian_entropy(p.covariances.front()));

    double upper = 0.0;
    for (std::size_t n = 0; n < ng; ++n)
        upper += p.priors[n] * (gaussian_entropy(p.covariances[n]) - std::log2(p.priors[n]));

    double lower = 0.0;
    std::vector<double> terms(ng);
    for (std::size_t n = 0; n < ng; ++n)
    {
        for (std::size_t m = 0; m < ng; ++m)
            terms[m] = std::log(p.priors[m]) +
                       detail::log_normal_pdf(p.means[n], p.means[m], p.covariances[m] + p.covariances[n]);
        const double mx = *std::max_element(terms.begin(), terms.end());
        double s = 0.0;
        for (double t : terms)
            s += std::exp(t - mx);
        lower -= p.priors[n] * (mx + std::log(s)) / ln2;
    }
    return {lower, upper, false};
}

/// Entropy of one innovation vector.
inline EntropyInterval innovation_entropy(const InnovationPdf &pdf)
{
    if (pdf.is_gm())
        return gm_entropy_interval(pdf.gm());
    if (pdf.is_nakagami())
        return EntropyInterval::point(nakagami_complex_entropy(pdf.nakagami()));
    return EntropyInterval::point(gaussian_entropy(pdf.gaussian().covariance));
}

/// (1/4pi) * integral of log2 det(2 pi e C'(omega)), per lifted sample.
inline double gaussian_entropy_rate(const SpectralGrid &grid)
{
    const double d = grid.lifted_out();
    std::vector<double> v(grid.log2_det_c.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = d * log2_2pi_e + grid.log2_det_c[j];
    return integrate_band(v) / (4.0 * pi);
}

/// Same rate for an arbitrary PSD field; a vanishing determinant raises DivergentIntegral.
inline double gaussian_entropy_rate(const std::vector<double> &omega, const std::vector<CMatrix> &psd)
{
    if (psd.empty())
        throw NumericalError("gaussian_entropy_rate: empty field");
    const double d = static_cast<double>(psd.front().rows());
    return 0.5 * d * log2_2pi_e + 0.5 * szego_logdet(omega, psd);
}

struct NoiseEntropyRate
{
    EntropyInterval per_lifted; ///< H_W per lifted sample
    EntropyInterval per_sample; ///< per_lifted / per
    EntropyInterval innovation; ///< entropy of one innovation vector
    double szego_gain = 0.0;    ///< (1/2pi) integral of log2 |det F'(omega)|
    int per = 1;
};

/// Entropy rate of the shaped noise: Szego gain of the lifted shaping filter plus per
/// innovation entropies.
inline NoiseEntropyRate noise_entropy_rate(const NoiseModel &model, const LiftedChannel &lifted, int n_omega = 512,
                                           int threads = 0)
{
    NoiseEntropyRate r;
    r.per = lifted.per;
    r.innovation = innovation_entropy(model.innovation());
    r.szego_gain = szego_logdet(lifted.f, n_omega, threads);
    r.per_lifted = r.innovation.scaled(lifted.per).shifted(r.szego_gain);
    r.per_sample = r.per_lifted.scaled(1.0 / lifted.per);
    return r;
}

} // namespace plccap

#endif
