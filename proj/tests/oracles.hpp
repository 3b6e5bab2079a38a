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


#ifndef PLCCAP_TESTS_ORACLES_HPP
#define PLCCAP_TESTS_ORACLES_HPP

// Reference computations that share no code with the library: direct convolutions,
// numerical quadrature of entropy integrals and closed-form capacities.

#include <plccap/model.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <random>

namespace oracle
{
using plccap::Matrix;
using plccap::Vector;

/// y[i] = sum_{tau=0}^{memory} taps(i mod period, tau) x[i - tau], computed entry by entry.
template <class TapFn>
std::vector<Vector> lptv_convolve(TapFn &&tap, int period, int memory, int rows, const std::vector<Vector> &x)
{
    std::vector<Vector> y;
    for (long i = 0; i < static_cast<long>(x.size()); ++i)
    {
        Vector acc = Vector::Zero(rows);
        for (int tau = 0; tau <= memory; ++tau)
        {
            if (i - tau < 0)
                break;
            const Matrix t = tap(static_cast<int>(i % period), tau);
            const Vector &xi = x[static_cast<std::size_t>(i - tau)];
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < t.cols(); ++c)
                    acc(r) += t(r, c) * xi(c);
        }
        y.push_back(acc);
    }
    return y;
}

/// Entropy in bits of a complex Nakagami-m variate with uniform phase, by quadrature of
/// -integral f_R(r) ln(f_R(r) / (2 pi r)) dr.
inline double nakagami_entropy_quadrature(double m, double omega)
{
    const double log_c = std::log(2.0) + m * std::log(m) - std::lgamma(m) - m * std::log(omega);
    auto log_f = [&](double r) { return log_c + (2.0 * m - 1.0) * std::log(r) - m * r * r / omega; };
    auto integrand = [&](double r) {
        if (r <= 0.0)
            return 0.0;
        const double lf = log_f(r);
        return -std::exp(lf) * (lf - std::log(2.0 * M_PI * r));
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double top = 14.0 * std::sqrt(omega / m);
    return ts.integrate(integrand, 0.0, top) / std::log(2.0);
}

/// Entropy in bits of a 1-D Gaussian mixture by adaptive quadrature.
inline double gm1d_entropy_quadrature(const std::vector<double> &w, const std::vector<double> &mu,
                                      const std::vector<double> &var)
{
    auto log_p = [&](double x) {
        double mx = -std::numeric_limits<double>::infinity();
        std::vector<double> t(w.size());
        for (std::size_t n = 0; n < w.size(); ++n)
        {
            t[n] = std::log(w[n]) - 0.5 * std::log(2.0 * M_PI * var[n]) - 0.5 * (x - mu[n]) * (x - mu[n]) / var[n];
            mx = std::max(mx, t[n]);
        }
        double s = 0.0;
        for (double v : t)
            s += std::exp(v - mx);
        return mx + std::log(s);
    };
    double lo = 0.0, hi = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n)
    {
        lo = std::min(lo, mu[n] - 40.0 * std::sqrt(var[n]));
        hi = std::max(hi, mu[n] + 40.0 * std::sqrt(var[n]));
    }
    // Split at the component means so narrow peaks are resolved.
    std::vector<double> cuts = {lo, hi};
    for (std::size_t n = 0; n < w.size(); ++n)
        for (double k : {-6.0, -2.0, 0.0, 2.0, 6.0})
            cuts.push_back(mu[n] + k * std::sqrt(var[n]));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double h = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        h += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) {
                const double lp = log_p(x);
                return -std::exp(lp) * lp;
            },
            cuts[k], cuts[k + 1], 15, 1e-14);
    return h / std::log(2.0);
}

/// Water level and capacity (bits) for flat bands with gains lambda and total power p,
/// by enumerating the number of active bands.
inline std::pair<double, double> waterfill_flat(std::vector<double> lambda, double p)
{
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    for (std::size_t k = lambda.size(); k >= 1; --k)
    {
        double inv_sum = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            inv_sum += 1.0 / lambda[i];
        const double delta = (p + inv_sum) / static_cast<double>(k);
        if (delta > 1.0 / lambda[k - 1])
        {
            double c = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                c += 0.5 * std::log2(delta * lambda[i]);
            return {delta, c};
        }
    }
    return {0.0, 0.0};
}

inline Matrix random_matrix(std::mt19937_64 &eng, int r, int c, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = g(eng);
    return m;
}

/// Random matrix pushed away from singularity: identity * shift plus Gaussian entries.
inline Matrix well_conditioned(std::mt19937_64 &eng, int n, double shift = 2.0, double scale = 0.5)
{
    return Matrix::Identity(n, n) * shift + random_matrix(eng, n, n, scale);
}

inline Matrix random_spd(std::mt19937_64 &eng, int n)
{
    const Matrix a = random_matrix(eng, n, n);
    return a * a.transpose() + Matrix::Identity(n, n) * 0.5;
}

} // namespace oracle

#endif
