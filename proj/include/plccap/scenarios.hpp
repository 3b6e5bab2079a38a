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


#ifndef PLCCAP_SCENARIOS_HPP
#define PLCCAP_SCENARIOS_HPP

// Synthetic LPTV channels and disturbance templates standing in for measured profiles.

#include "noisegen.hpp"

namespace plccap
{

/// Random LPTV channel with an exponential power-delay profile and a sinusoidal periodic
/// gain envelope per tap: g[i, tau] = a_tau * b_tau * (1 + depth * sin(2 pi i / period + phi_tau)).
/// For n = 2 four such channels form G, and H = S G S with S = [[1, rho], [rho, 1]]^(1/2).
/// With port normalization G is scaled by 1/sqrt(n) so every receive port collects the
/// same average channel energy as a scalar channel.
struct SyntheticChannelSpec
{
    int n = 1;
    int period = 24;
    int memory = 4;
    double decay = 0.5; ///< power-delay decay per tap (nepers)
    double depth = 0.5; ///< periodic envelope depth, |depth| < 1
    double rho = 0.9;
    std::uint64_t seed = 1;
    double min_rcond = 0.05; ///< redraw while some G[i, 0] is worse conditioned
    bool port_normalize = true;
    int max_draws = 1000;

    void validate() const
    {
        if (n != 1 && n != 2)
            throw ModelError("synthetic channels support n = 1 or 2");
        if (period < 1 || memory < 0)
            throw ModelError("synthetic channel period must be positive and memory non-negative");
        if (!(std::abs(depth) < 1.0))
            throw ModelError("synthetic channel depth must satisfy |depth| < 1");
        if (!(std::abs(rho) < 1.0))
            throw ModelError("synthetic channel rho must satisfy |rho| < 1");
        if (!(decay >= 0.0))
            throw ModelError("synthetic channel decay must be non-negative");
        if (max_draws < 1)
            throw ModelError("max_draws must be positive");
    }
};

inline LptvChannel synthetic_channel(const SyntheticChannelSpec &spec)
{
    spec.validate();
    const int n = spec.n, m = spec.memory;
    std::vector<double> a(static_cast<std::size_t>(m + 1));
    double norm = 0.0;
    for (int tau = 0; tau <= m; ++tau)
    {
        a[static_cast<std::size_t>(tau)] = std::exp(-0.5 * spec.decay * tau);
        norm += a[static_cast<std::size_t>(tau)] * a[static_cast<std::size_t>(tau)];
    }
    for (auto &v : a)
        v /= std::sqrt(norm);

    for (int draw = 0; draw < spec.max_draws; ++draw)
    {
        Engine eng(derive_seed(spec.seed, 0x63686eULL, static_cast<std::uint64_t>(draw)));
        std::normal_distribution<double> g;
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        const int count = n * n;
        std::vector<double> b(static_cast<std::size_t>(count * (m + 1))), phi(b.size());
        for (std::size_t k = 0; k < b.size(); ++k)
        {
            b[k] = g(eng);
            phi[k] = u(eng);
        }
        auto gtap = [&](int i, int tau) {
            Matrix out(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                {
                    const auto k = static_cast<std::size_t>((r * n + c) * (m + 1) + tau);
                    out(r, c) = a[static_cast<std::size_t>(tau)] * b[k] *
                                (1.0 + spec.depth * std::sin(2.0 * pi * i / spec.period + phi[k]));
                }
            return out;
        };
        bool ok = true;
        for (int i = 0; i < spec.period && ok; ++i)
            ok = rcond(gtap(i, 0)) > spec.min_rcond;
        if (!ok)
            continue;
        const Matrix s = n == 2 ? spatial_sqrt(spec.rho) : Matrix::Identity(1, 1);
        const double g_scale = spec.port_normalize ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
        return LptvChannel(PeriodicTaps::generate(
            spec.period, m, [&](int i, int tau) -> Matrix { return g_scale * (s * gtap(i, tau) * s); }));
    }
    throw ModelError("synthetic channel: no draw met the conditioning threshold");
}

enum class Disturbance
{
    medium,
    heavy
};

/// Two-level periodic PSD templates: a disturbed fraction of each period sits contrast_db
/// above the quiet level, with a raised-cosine spectral roll-off.
inline PsdProfile disturbance_profile(Disturbance d)
{
    PsdProfile p;
    p.kind = PsdProfile::Kind::two_level;
    if (d == Disturbance::medium)
    {
        p.duty = 0.25;
        p.contrast_db = 6.0;
        p.tilt_db = 6.0;
    }
    else
    {
        p.duty = 0.5;
        p.contrast_db = 15.0;
        p.tilt_db = 10.0;
    }
    return p;
}

} // namespace plccap

#endif
