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


#include "oracles.hpp"

#include <plccap/capacity.hpp>
#include <plccap/noisegen.hpp>

#include <gtest/gtest.h>

using namespace plccap;

namespace
{
std::vector<double> snr_grid(double a, double step, double b)
{
    std::vector<double> v;
    for (double s = a; s <= b + 1e-9; s += step)
        v.push_back(s);
    return v;
}

LptvChannel random_channel(std::mt19937_64 &eng, int period, int memory, int n)
{
    return LptvChannel(PeriodicTaps::generate(period, memory, [&](int, int tau) {
        return tau == 0 ? oracle::well_conditioned(eng, n) : oracle::random_matrix(eng, n, n, 0.5);
    }));
}

LptvShapingFilter random_shaping(std::mt19937_64 &eng, int period, int memory, int n)
{
    return LptvShapingFilter(PeriodicTaps::generate(period, memory, [&](int, int tau) {
        return tau == 0 ? oracle::well_conditioned(eng, n) : oracle::random_matrix(eng, n, n, 0.3);
    }));
}

void expect_same_bounds(const BoundsReport &a, const BoundsReport &b, double tol)
{
    EXPECT_NEAR(a.upper, b.upper, tol);
    EXPECT_NEAR(a.lower1, b.lower1, tol);
    ASSERT_EQ(a.lower2.has_value(), b.lower2.has_value());
    if (a.lower2)
        EXPECT_NEAR(*a.lower2, *b.lower2, tol);
}
} // namespace

TEST(Waterfill, FlatScalar)
{
    const auto r = waterfill(Matrix::Ones(1, 16), 3.0);
    EXPECT_NEAR(r.delta, 4.0, 1e-12);
    EXPECT_NEAR(r.capacity, 1.0, 1e-12);
    EXPECT_EQ(r.active, 16u);
}

TEST(Waterfill, VanishingPower)
{
    const auto r = waterfill(Matrix::Ones(1, 16), 1e-9);
    EXPECT_NEAR(r.capacity, 1e-9 / (2.0 * ln2), 1e-15);
}

TEST(Waterfill, TwoBandClosedForm)
{
    Matrix lambda(2, 32);
    lambda.row(0).setConstant(1.0);
    lambda.row(1).setConstant(1.0 / 9.0);
    const auto r = waterfill(lambda, 2.0);
    EXPECT_NEAR(r.delta, 3.0, 1e-9);
    EXPECT_NEAR(r.capacity, 0.5 * std::log2(3.0), 1e-9);
    const auto [delta, cap] = oracle::waterfill_flat({1.0, 1.0 / 9.0}, 2.0);
    EXPECT_NEAR(r.delta, delta, 1e-9);
    EXPECT_NEAR(r.capacity, cap, 1e-9);
}

TEST(Waterfill, KktAndEnumerationOracle)
{
    std::mt19937_64 eng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial)
    {
        const int modes = 1 + trial % 3, nodes = 64;
        Matrix lambda(modes, nodes);
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            lambda(i) = u(eng) < 0.1 ? 0.0 : std::exp(6.0 * (u(eng) - 0.5));
        const double p = std::exp(8.0 * (u(eng) - 0.5));
        const auto r = waterfill(lambda, p);
        EXPECT_LT(r.residual, 1e-6);
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
        {
            if (lambda(i) <= 0.0)
                continue;
            const double slack = r.delta - 1.0 / lambda(i);
            // Active bands sit below the water level, inactive ones above it.
            if (slack > 0.0)
                EXPECT_GE(slack, 0.0);
            else
                EXPECT_LE(r.delta, 1.0 / lambda(i) + 1e-12);
        }
        std::vector<double> flat;
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            if (lambda(i) > 0.0)
                flat.push_back(lambda(i));
        const auto [delta, cap] = oracle::waterfill_flat(flat, p * nodes);
        EXPECT_NEAR(r.delta, delta, 1e-9 * delta);
        EXPECT_NEAR(r.capacity, cap / nodes, 1e-9 * std::max(1.0, cap / nodes));
    }
}

TEST(Waterfill, ZeroGainIsNotAnError)
{
    const auto r = waterfill(Matrix::Zero(2, 16), 1.0);
    EXPECT_TRUE(r.zero_gain);
    EXPECT_EQ(r.capacity, 0.0);
    EXPECT_THROW(waterfill(Matrix::Ones(1, 16), 0.0), ModelError);
}

TEST(Bounds, GaussianNoiseCollapse)
{
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 6; ++trial)
    {
        const int n = 1 + trial % 3, period = 1 + trial % 4;
        const auto ch = random_channel(eng, period, 2, n);
        const NoiseModel noise(GaussianParams{oracle::random_spd(eng, n)}, random_shaping(eng, 2, 1, n));
        for (const auto &r : snr_sweep(ch, noise, {0.0, 10.0, 25.0}, {256}))
        {
            ASSERT_TRUE(r.ok);
            EXPECT_LT(r.upper - r.lower1, 2e-6);
            EXPECT_GE(r.upper - r.lower1, -1e-9);
        }
    }
}

TEST(Bounds, AwgnCapacity)
{
    const auto noise = build_preset(PresetId::GAUSSIAN_REF);
    for (const auto &r : snr_sweep(LptvChannel::identity(2), noise, snr_grid(0, 2, 30), {64}))
    {
        const double c = std::log2(1.0 + std::pow(10.0, r.snr_db / 10.0));
        EXPECT_NEAR(r.upper_bps(), c, 1e-3);
        EXPECT_NEAR(r.lower1_bps(), c, 1e-3);
        ASSERT_TRUE(r.lower2);
        EXPECT_NEAR(*r.lower2_bps(), c, 1e-3);
    }
}

TEST(Bounds, ZeroDbUsesNoisePower)
{
    std::mt19937_64 eng(43);
    const NoiseModel noise(gm2_params(1), random_shaping(eng, 3, 2, 1), false);
    const auto l = lift(LptvChannel::identity(1), noise);
    const auto r = snr_sweep(LptvChannel::identity(1), noise, {0.0}, {64});
    EXPECT_DOUBLE_EQ(r[0].p_tilde, noise_power_per_sample(l));
    EXPECT_DOUBLE_EQ(snr_sweep(LptvChannel::identity(1), build_preset(PresetId::GM2), {0.0}, {64})[0].p_tilde, 1.0);
}

TEST(Bounds, LiftingInvarianceForLtiChannels)
{
    std::mt19937_64 eng(44);
    const int n_direct = 2048;
    for (int trial = 0; trial < 3; ++trial)
    {
        const auto ch = random_channel(eng, 1, 3, 2);
        const auto noise = build_preset(PresetId::MIMO_GM).with_shaping(random_shaping(eng, 1, 1, 2));
        const auto direct = snr_sweep(ch, noise, {5.0, 20.0}, {n_direct, 1});
        for (int per : {2, 4, 8})
        {
            const auto lifted = snr_sweep(ch, noise, {5.0, 20.0}, {n_direct / per, per});
            ASSERT_EQ(lifted[0].per, per);
            for (std::size_t i = 0; i < direct.size(); ++i)
                expect_same_bounds(direct[i], lifted[i], 1e-6);
        }
    }
}

TEST(Bounds, PeriodDoublingForLptvChannels)
{
    std::mt19937_64 eng(45);
    const auto ch = random_channel(eng, 3, 2, 1);
    const NoiseModel noise(gm1_params(1), random_shaping(eng, 3, 1, 1));
    const auto a = snr_sweep(ch, noise, {0.0, 15.0, 30.0}, {1024, 3});
    const auto b = snr_sweep(ch, noise, {0.0, 15.0, 30.0}, {512, 6});
    for (std::size_t i = 0; i < a.size(); ++i)
        expect_same_bounds(a[i], b[i], 1e-6);
}

TEST(Bounds, OrderingAndResidualOnRandomModels)
{
    std::mt19937_64 eng(46);
    for (int trial = 0; trial < 8; ++trial)
    {
        const int n = 1 + trial % 2;
        const auto id = n == 1 ? (trial % 4 == 0 ? PresetId::GM2 : PresetId::MCA) : PresetId::MIMO_MCA;
        const auto noise = build_preset(id).with_shaping(random_shaping(eng, 2, 2, n));
        for (const auto &r : snr_sweep(random_channel(eng, 4, 2, n), noise, snr_grid(-10, 5, 40), {128}))
        {
            ASSERT_TRUE(r.ok);
            EXPECT_LE(r.lower1, r.upper + 1e-9);
            if (r.lower2)
                EXPECT_LE(*r.lower2, r.upper + 1e-9);
            EXPECT_LT(r.power_residual, 1e-6);
        }
    }
}

TEST(Bounds, ScaleCovariance)
{
    std::mt19937_64 eng(47);
    const auto ch = random_channel(eng, 2, 2, 2);
    const auto noise = build_preset(PresetId::MIMO_GM);
    const double s = 1.6;
    const double shift = 20.0 * std::log10(s);
    const auto scaled = snr_sweep(ch.scaled(s), noise, {0.0, 10.0, 20.0}, {256});
    const auto moved = snr_sweep(ch, noise, {shift, 10.0 + shift, 20.0 + shift}, {256});
    for (std::size_t i = 0; i < scaled.size(); ++i)
        EXPECT_NEAR(scaled[i].lower1, moved[i].lower1, 1e-6);
}

TEST(Bounds, MonotoneInSnr)
{
    std::mt19937_64 eng(48);
    const auto noise = build_preset(PresetId::MCA).with_shaping(random_shaping(eng, 4, 2, 1));
    const auto rows = snr_sweep(random_channel(eng, 4, 3, 1), noise, snr_grid(-10, 1, 40), {128});
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        EXPECT_GE(rows[i].upper, rows[i - 1].upper);
        EXPECT_GE(rows[i].lower1, rows[i - 1].lower1);
        EXPECT_GE(*rows[i].lower2, *rows[i - 1].lower2);
    }
}

TEST(Bounds, NakagamiGapAtTwentyDb)
{
    const auto r = snr_sweep(LptvChannel::identity(2), build_preset(PresetId::NAKAGAMI_08), {20.0}, {64})[0];
    ASSERT_TRUE(r.lower2);
    EXPECT_LT(r.upper_bps() - *r.lower2_bps(), 0.05);
    EXPECT_GT(r.upper_bps() - *r.lower2_bps(), 0.0);
}

TEST(Bounds, SecondLowerBoundGating)
{
    const auto noise1 = build_preset(PresetId::GM1);

    const auto noise_2 = build_preset(PresetId::MIMO_GM);
    const LptvChannel narrow(1, 0, {Matrix::Ones(2, 1)});
    auto r = snr_sweep(narrow, noise_2, {10.0}, {64})[0];
    EXPECT_FALSE(r.lower2);
    EXPECT_EQ(r.flags.at(0), "lower2_omitted:non_square");
    EXPECT_TRUE(r.ok);

    const LptvChannel delay(1, 1, {Matrix::Zero(1, 1), Matrix::Ones(1, 1)});
    r = snr_sweep(delay, noise1, {10.0}, {64})[0];
    EXPECT_FALSE(r.lower2);
    EXPECT_EQ(r.flags.at(0).rfind("lower2_omitted:singular_h0_block_", 0), 0u);

    const LptvChannel null_at_dc(1, 1, {Matrix::Ones(1, 1), Matrix::Constant(1, 1, -1.0)});
    r = snr_sweep(null_at_dc, noise1, {10.0}, {64})[0];
    EXPECT_FALSE(r.lower2);
    EXPECT_EQ(r.flags.at(0).rfind("lower2_omitted:divergent_log_integral", 0), 0u);
    EXPECT_TRUE(std::isfinite(r.upper));
}

TEST(Sweep, SingularNoiseMarksEveryPoint)
{
    const NoiseModel noise(GaussianParams{Matrix::Identity(1, 1)},
                           LptvShapingFilter(1, 1, {Matrix::Ones(1, 1), Matrix::Ones(1, 1)}));
    const auto rows = snr_sweep(LptvChannel::identity(1), noise, {0.0, 10.0}, {64});
    for (const auto &r : rows)
    {
        EXPECT_FALSE(r.ok);
        EXPECT_EQ(r.flags.back().rfind("error:", 0), 0u);
    }
    EXPECT_THROW(snr_sweep(LptvChannel::identity(1), noise, {}, {64}), ModelError);
}

TEST(Sweep, DeterministicAcrossThreads)
{
    std::mt19937_64 eng(49);
    const auto ch = random_channel(eng, 6, 3, 2);
    const auto noise = build_preset(PresetId::MIMO_MCA).with_shaping(random_shaping(eng, 4, 2, 2));
    const auto a = snr_sweep(ch, noise, {0.0, 20.0}, {256, {}, 1});
    const auto b = snr_sweep(ch, noise, {0.0, 20.0}, {256, {}, 4});
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        EXPECT_EQ(a[i].upper, b[i].upper);
        EXPECT_EQ(a[i].lower1, b[i].lower1);
        EXPECT_EQ(a[i].lower2, b[i].lower2);
    }
}
