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

#ifndef PLCCAP_CORE_HPP
#define PLCCAP_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace plccap
{
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double ln2 = std::numbers::ln2;

// log2(2*pi*e)
inline const double log2_2pi_e = std::log2(2.0 * pi * std::numbers::e);

/// Invalid model parameters (dimensions, periods, non-positive definite covariances, ...).
class ModelError : public std::invalid_argument
{
  public:
    explicit ModelError(const std::string &what) : std::invalid_argument(what) {}
};

/// A numerical evaluation failed (singular noise spectrum, broken PSD input, ...).
class NumericalError : public std::runtime_error
{
  public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

/// A log-spectral integral diverges because the integrand hits zero at a quadrature node.
class DivergentIntegral : public NumericalError
{
  public:
    DivergentIntegral(const std::string &what, double omega)
        : NumericalError(what + " (omega = " + std::to_string(omega) + ")"), omega_(omega)
    {
    }
    double omega() const noexcept { return omega_; }

  private:
    double omega_;
};

/// The noise spectral matrix is not positive definite at some node.
class SingularNoise : public NumericalError
{
  public:
    SingularNoise(const std::string &what, double omega)
        : NumericalError(what + " (omega = " + std::to_string(omega) + ")"), omega_(omega)
    {
    }
    double omega() const noexcept { return omega_; }

  private:
    double omega_;
};

/// Closed interval of differential entropies in bits.
struct EntropyInterval
{
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;

    static EntropyInterval point(double h) { return {h, h, true}; }
    double width() const { return upper - lower; }

    EntropyInterval shifted(double by) const { return {lower + by, upper + by, exact}; }
    EntropyInterval scaled(double by) const
    {
        return by >= 0.0 ? EntropyInterval{lower * by, upper * by, exact}
                         : EntropyInterval{upper * by, lower * by, exact};
    }
};

inline int positive_mod(int i, int n)
{
    const int r = i % n;
    return r < 0 ? r + n : r;
}

/// Uniform periodic quadrature nodes on [-pi, pi).
inline std::vector<double> uniform_nodes(int n)
{
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        w[static_cast<std::size_t>(j)] = -pi + 2.0 * pi * j / n;
    return w;
}

/// log2 |det M| for a square matrix through LU, without forming the determinant.
/// Returns -inf when a pivot is (numerically) zero relative to `scale` (default: largest entry).
inline double log2_abs_det(const CMatrix &m, double rel_tol = 1e-13, double scale = 0.0)
{
    if (m.rows() == 0)
        return 0.0;
    Eigen::PartialPivLU<CMatrix> lu(m);
    const CMatrix &u = lu.matrixLU();
    scale = std::max({scale, m.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min()});
    double acc = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
    {
        const double a = std::abs(u(i, i));
        if (!(a > rel_tol * scale))
            return -std::numeric_limits<double>::infinity();
        acc += std::log2(a);
    }
    return acc;
}

/// Reciprocal 2-norm condition number sigma_min / sigma_max (0 for a zero matrix).
inline double rcond(const Matrix &m)
{
    if (m.size() == 0)
        return 1.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto &s = svd.singularValues();
    const double smax = s(0);
    if (!(smax > 0.0))
        return 0.0;
    return s(s.size() - 1) / smax;
}

} // namespace plccap

#endif
