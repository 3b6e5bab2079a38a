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


#ifndef PLCCAP_SPECTRA_HPP
#define PLCCAP_SPECTRA_HPP

// Frequency-domain fields of a lifted channel on a uniform periodic grid.

#include "model.hpp"
#include "parallel.hpp"

namespace plccap
{

/// sum_k taps[k] exp(-j omega k)
inline CMatrix transfer(const std::vector<Matrix> &taps, double omega)
{
    CMatrix out = taps.front().cast<cplx>();
    for (std::size_t k = 1; k < taps.size(); ++k)
        out += taps[k].cast<cplx>() * std::polar(1.0, -omega * static_cast<double>(k));
    return out;
}

/// Power spectral matrix sum_d C[d] exp(-j omega d), with C[-d] = C[d]^T.
inline CMatrix psd_from_lags(const NoiseAutocorrelation &c, double omega)
{
    CMatrix out = c.lags.front().cast<cplx>();
    for (std::size_t d = 1; d < c.lags.size(); ++d)
    {
        const cplx e = std::polar(1.0, -omega * static_cast<double>(d));
        out += c.lags[d].cast<cplx>() * e + c.lags[d].transpose().cast<cplx>() * std::conj(e);
    }
    return out;
}

struct SpectralGrid
{
    int n_omega = 0;
    std::vector<double> omega;
    double weight = 0.0;
    int per = 1;
    int n_out = 1;
    int n_in = 1;

    std::vector<CMatrix> h; ///< H'(omega_j)
    std::vector<CMatrix> c; ///< C'_W(omega_j)

    /// lambda_sig(k, j): eigenvalues of H'H'^H, ascending per node.
    Matrix lambda_sig;
    /// lambda_snr(k, j): eigenvalues of H'^H C'^{-1} H', ascending per node.
    Matrix lambda_snr;
    /// log2 det C'_W(omega_j)
    std::vector<double> log2_det_c;
    /// log2 |det H'(omega_j)|, -inf where singular; empty unless the lifted channel is square.
    std::vector<double> log2_abs_det_h;

    int lifted_out() const { return per * n_out; }
    int lifted_in() const { return per * n_in; }
};

namespace detail
{
inline constexpr double eig_clamp_tol = 1e-10;

inline Vector clamp_eigenvalues(const Vector &ev, const char *field, double omega, double scale)
{
    Vector out = ev;
    for (Eigen::Index k = 0; k < out.size(); ++k)
    {
        if (out(k) < 0.0)
        {
            if (out(k) < -eig_clamp_tol * std::max(1.0, scale))
                throw NumericalError(std::string(field) + " has a negative eigenvalue " + std::to_string(out(k)) +
                                     " at omega = " + std::to_string(omega));
            out(k) = 0.0;
        }
    }
    return out;
}
} // namespace detail

/// Evaluates H', C'_W and both eigenvalue fields at n_omega uniform nodes on [-pi, pi).
inline SpectralGrid build_grid(const LiftedChannel &lifted, int n_omega = 512, int threads = 0)
{
    if (n_omega < 16 || n_omega % 2 != 0)
        throw ModelError("n_omega must be even and at least 16, got " + std::to_string(n_omega));
    SpectralGrid g;
    g.n_omega = n_omega;
    g.omega = uniform_nodes(n_omega);
    g.weight = 2.0 * pi / n_omega;
    g.per = lifted.per;
    g.n_out = lifted.n_out;
    g.n_in = lifted.n_in;

    const auto n = static_cast<std::size_t>(n_omega);
    const int ro = lifted.lifted_out(), ri = lifted.lifted_in();
    const bool square = ro == ri;
    g.h.resize(n);
    g.c.resize(n);
    g.log2_det_c.resize(n);
    if (square)
        g.log2_abs_det_h.resize(n);
    g.lambda_sig.resize(ro, n_omega);
    g.lambda_snr.resize(ri, n_omega);

    const auto lags = lifted_noise_autocorrelation(lifted);
    // Average trace of C over the band and a bound on max |H(w)|.
    const double c_ref = lags.c0().trace();
    double h_ref = 0.0;
    for (const auto &t : lifted.h)
        h_ref += t.cwiseAbs().maxCoeff();

    parallel_for(
        n,
        [&](std::size_t j) {
            const double w = g.omega[j];
            CMatrix hw = transfer(lifted.h, w);
            CMatrix cw = psd_from_lags(lags, w);
            // Remove rounding asymmetry before the Hermitian solvers.
            cw = (0.5 * (cw + cw.adjoint())).eval();

            Eigen::SelfAdjointEigenSolver<CMatrix> ces(cw, Eigen::EigenvaluesOnly);
            const double tr = std::max(cw.trace().real(), c_ref);
            if (!(ces.eigenvalues().minCoeff() > 1e-12 * tr))
                throw SingularNoise("noise spectral matrix is not positive definite", w);

            Eigen::LLT<CMatrix> llt(cw);
            if (llt.info() != Eigen::Success)
                throw SingularNoise("Cholesky factorization of the noise spectral matrix failed", w);
            double ld = 0.0;
            for (int k = 0; k < ro; ++k)
                ld += 2.0 * std::log2(llt.matrixL()(k, k).real());
            g.log2_det_c[j] = ld;

            const CMatrix a = llt.matrixL().solve(hw);
            CMatrix gram = a.adjoint() * a;
            gram = (0.5 * (gram + gram.adjoint())).eval();
            Eigen::SelfAdjointEigenSolver<CMatrix> snr(gram, Eigen::EigenvaluesOnly);
            g.lambda_snr.col(static_cast<Eigen::Index>(j)) =
                detail::clamp_eigenvalues(snr.eigenvalues(), "whitened channel Gram matrix", w, gram.trace().real());

            CMatrix hh = hw * hw.adjoint();
            hh = (0.5 * (hh + hh.adjoint())).eval();
            Eigen::SelfAdjointEigenSolver<CMatrix> sig(hh, Eigen::EigenvaluesOnly);
            g.lambda_sig.col(static_cast<Eigen::Index>(j)) =
                detail::clamp_eigenvalues(sig.eigenvalues(), "channel Gram matrix", w, hh.trace().real());

            if (square)
                g.log2_abs_det_h[j] = log2_abs_det(hw, 1e-13, h_ref);

            g.h[j] = std::move(hw);
            g.c[j] = std::move(cw);
        },
        threads);
    return g;
}

/// Sum of weight * v over the grid; the 1/2pi style prefactors are left to callers.
inline double integrate_band(const std::vector<double> &values)
{
    if (values.empty())
        throw NumericalError("integrate_band: no nodes");
    const double w = 2.0 * pi / static_cast<double>(values.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
    {
        if (std::isnan(values[j]))
            throw NumericalError("integrate_band: NaN at node " + std::to_string(j));
        acc += values[j];
    }
    return w * acc;
}

inline double integrate_band(const Eigen::Ref<const Vector> &values)
{
    return integrate_band(std::vector<double>(values.data(), values.data() + values.size()));
}

/// (1/2pi) * integral of log2 |det M(omega)| over the uniform grid `omega`.
inline double szego_logdet(const std::vector<double> &omega, const std::vector<CMatrix> &field)
{
    if (omega.size() != field.size() || field.empty())
        throw NumericalError("szego_logdet: node and field sizes differ");
    double scale = 0.0;
    for (const auto &f : field)
        scale = std::max(scale, f.cwiseAbs().maxCoeff());
    std::vector<double> v(field.size());
    for (std::size_t j = 0; j < field.size(); ++j)
    {
        if (field[j].rows() != field[j].cols())
            throw NumericalError("szego_logdet: node matrices must be square");
        v[j] = log2_abs_det(field[j], 1e-13, scale);
        if (!std::isfinite(v[j]))
            throw DivergentIntegral("log-determinant integral diverges: determinant vanishes", omega[j]);
    }
    return integrate_band(v) / (2.0 * pi);
}

/// Same integral for a field given by FIR taps, evaluated on n_omega uniform nodes.
inline double szego_logdet(const std::vector<Matrix> &taps, int n_omega, int threads = 0)
{
    const auto omega = uniform_nodes(n_omega);
    std::vector<CMatrix> field(omega.size());
    parallel_for(
        omega.size(), [&](std::size_t j) { field[j] = transfer(taps, omega[j]); }, threads);
    return szego_logdet(omega, field);
}

} // namespace plccap

#endif
