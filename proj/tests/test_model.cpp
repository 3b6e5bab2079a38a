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

#include <plccap/noisegen.hpp>

#include <gtest/gtest.h>

using namespace plccap;

namespace
{
LptvChannel random_channel(std::mt19937_64 &eng, int period, int memory, int r, int c)
{
    return LptvChannel(PeriodicTaps::generate(period, memory, [&](int, int) { return oracle::random_matrix(eng, r, c); }));
}

std::vector<Vector> random_input(std::mt19937_64 &eng, std::size_t n, int d)
{
    std::vector<Vector> x;
    for (std::size_t i = 0; i < n; ++i)
        x.push_back(oracle::random_matrix(eng, d, 1));
    return x;
}

double max_rel_diff(const std::vector<Vector> &a, const std::vector<Vector> &b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        num = std::max(num, (a[i] - b[i]).cwiseAbs().maxCoeff());
        den = std::max(den, a[i].cwiseAbs().maxCoeff());
    }
    return num / std::max(den, 1e-300);
}

NoiseModel white(int n) { return NoiseModel::iid(GaussianParams{Matrix::Identity(n, n)}, false); }
} // namespace

TEST(ComplexToReal, UnitTapIsIdentity)
{
    ComplexLptvChannel c{1, 0, {CMatrix::Constant(1, 1, cplx(1.0, 0.0))}};
    const auto r = complex_to_real(c);
    EXPECT_TRUE(r.tap(0, 0).isApprox(Matrix::Identity(2, 2)));
}

TEST(ComplexToReal, ImaginaryUnitIsQuarterRotation)
{
    ComplexLptvChannel c{1, 0, {CMatrix::Constant(1, 1, cplx(0.0, 1.0))}};
    Matrix expect(2, 2);
    expect << 0, -1, 1, 0;
    EXPECT_EQ(complex_to_real(c).tap(0, 0), expect);
}

TEST(ComplexToReal, MatchesComplexMultiply)
{
    const cplx h(0.6, 0.8), x(1.0, 0.0);
    ComplexLptvChannel c{1, 0, {CMatrix::Constant(1, 1, h)}};
    const Vector y = complex_to_real(c).tap(0, 0) * complex_to_real(CVector::Constant(1, x));
    const cplx direct = h * x;
    EXPECT_NEAR(y(0), direct.real(), 1e-15);
    EXPECT_NEAR(y(1), direct.imag(), 1e-15);
}

TEST(ComplexToReal, PreservesNorms)
{
    std::mt19937_64 eng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial)
    {
        const cplx h(g(eng), g(eng)), x(g(eng), g(eng));
        ComplexLptvChannel c{1, 0, {CMatrix::Constant(1, 1, h)}};
        const Vector y = complex_to_real(c).tap(0, 0) * complex_to_real(CVector::Constant(1, x));
        EXPECT_NEAR(y.norm(), std::abs(h * x), 1e-12 * (1.0 + std::abs(h * x)));
    }
}

TEST(ComplexToReal, MultiTapBlockStructure)
{
    CMatrix t0(2, 1), t1(2, 1);
    t0 << cplx(1, 2), cplx(3, 4);
    t1 << cplx(-1, 0.5), cplx(0, -2);
    const auto r = complex_to_real(ComplexLptvChannel{1, 1, {t0, t1}});
    EXPECT_EQ(r.n_out(), 4);
    EXPECT_EQ(r.n_in(), 2);
    EXPECT_EQ(r.tap(0, 1)(1, 0), t1(1, 0).real());
    EXPECT_EQ(r.tap(0, 1)(0, 1), -t1(0, 0).imag());
    EXPECT_EQ(r.tap(0, 1)(3, 0), t1(1, 0).imag());
}

TEST(Lift, LtiPassthrough)
{
    const LptvChannel ch(1, 0, {Matrix::Constant(1, 1, 2.0)});
    const auto l = lift(ch, white(1), 1);
    EXPECT_EQ(l.per, 1);
    EXPECT_EQ(l.h0(), Matrix::Constant(1, 1, 2.0));
    EXPECT_EQ(l.h1(), Matrix::Zero(1, 1));
}

TEST(Lift, TwoPhaseBlockPattern)
{
    const double a = 1.5, b = -2.0, c = 0.25, d = 3.0;
    const LptvChannel ch(2, 1,
                         {Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, b), Matrix::Constant(1, 1, c),
                          Matrix::Constant(1, 1, d)});
    const auto l = lift(ch, white(1));
    ASSERT_EQ(l.per, 2);
    Matrix h0(2, 2), h1(2, 2);
    h0 << a, 0, d, c;
    h1 << 0, b, 0, 0;
    EXPECT_EQ(l.h0(), h0);
    EXPECT_EQ(l.h1(), h1);
    EXPECT_EQ(l.h.size(), 2u);
}

TEST(Lift, RoundTripThreePhases)
{
    std::mt19937_64 eng(11);
    const auto ch = random_channel(eng, 3, 2, 1, 1);
    const auto l = lift(ch, white(1), 3);
    const auto x = random_input(eng, 12, 1);
    const auto direct = oracle::lptv_convolve([&](int i, int tau) { return ch.tap(i, tau); }, 3, 2, 1, x);
    const auto via = unstack_blocks(apply_lti(l.h, stack_blocks(x, 3)), 3);
    EXPECT_LT(max_rel_diff(direct, via), 1e-12);
}

TEST(Lift, RoundTripProperty)
{
    std::mt19937_64 eng(12);
    std::uniform_int_distribution<int> pdist(1, 6), mdist(0, 7), ddist(1, 3);
    for (int trial = 0; trial < 60; ++trial)
    {
        const int ph = pdist(eng), pn = pdist(eng), m = mdist(eng), r = ddist(eng), c = ddist(eng);
        const auto ch = random_channel(eng, ph, m, r, c);
        const auto f = LptvShapingFilter(PeriodicTaps::generate(pn, std::max(0, m - 1), [&](int, int tau) {
            return tau == 0 ? oracle::well_conditioned(eng, r) : oracle::random_matrix(eng, r, r, 0.3);
        }));
        const NoiseModel noise(GaussianParams{Matrix::Identity(r, r)}, f, false);
        const auto l = lift(ch, noise);
        EXPECT_GT(l.per, l.memory);
        EXPECT_EQ(l.per % std::lcm(ph, pn), 0);
        const auto x = random_input(eng, 5 * static_cast<std::size_t>(l.per), c);
        const auto direct = oracle::lptv_convolve([&](int i, int tau) { return ch.tap(i, tau); }, ph, m, r, x);
        const auto via = unstack_blocks(apply_lti(l.h, stack_blocks(x, l.per)), l.per);
        EXPECT_LT(max_rel_diff(direct, via), 1e-12) << "trial " << trial;

        const auto wu = random_input(eng, 5 * static_cast<std::size_t>(l.per), r);
        const auto wdirect = oracle::lptv_convolve([&](int i, int tau) { return f.tap(i, tau); }, pn,
                                                   f.memory(), r, wu);
        const auto wvia = unstack_blocks(apply_lti(l.f, stack_blocks(wu, l.per)), l.per);
        EXPECT_LT(max_rel_diff(wdirect, wvia), 1e-12) << "trial " << trial;
    }
}

TEST(Lift, ForcedShortPeriodUsesMoreTaps)
{
    std::mt19937_64 eng(13);
    const auto ch = random_channel(eng, 2, 5, 2, 2);
    const auto l = lift(ch, white(2), 2);
    EXPECT_EQ(l.per, 2);
    EXPECT_EQ(l.h.size(), 4u);
    const auto x = random_input(eng, 16, 2);
    const auto direct = oracle::lptv_convolve([&](int i, int tau) { return ch.tap(i, tau); }, 2, 5, 2, x);
    const auto via = unstack_blocks(apply_lti(l.h, stack_blocks(x, 2)), 2);
    EXPECT_LT(max_rel_diff(direct, via), 1e-12);
}

TEST(Lift, SparsityPattern)
{
    std::mt19937_64 eng(14);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int per = 2 + trial % 5, m = trial % per, n = 1 + trial % 2;
        const auto ch = random_channel(eng, per, m, n, n);
        const auto l = lift(ch, white(n));
        ASSERT_EQ(l.per, per);
        for (int r = 0; r < per; ++r)
            for (int c = 0; c < per; ++c)
            {
                const Matrix b0 = l.h0().block(r * n, c * n, n, n);
                const Matrix b1 = l.h1().block(r * n, c * n, n, n);
                if (c > r || r - c > m)
                    EXPECT_TRUE((b0.array() == 0.0).all());
                else
                    EXPECT_EQ(b0, ch.tap(r, r - c));
                const int lag = per + r - c;
                if (lag > m)
                    EXPECT_TRUE((b1.array() == 0.0).all());
                else
                    EXPECT_EQ(b1, ch.tap(r, lag));
            }
    }
}

TEST(Lift, PeriodSelection)
{
    EXPECT_EQ(choose_lift_period(2, 3, 4), 6);
    EXPECT_EQ(choose_lift_period(2, 3, 6), 12);
    EXPECT_EQ(choose_lift_period(1, 1, 0), 1);
    EXPECT_EQ(choose_lift_period(1, 1, 4), 5);
    EXPECT_EQ(choose_lift_period(4, 6, 11), 12);
    EXPECT_EQ(choose_lift_period(4, 6, 12), 24);
    EXPECT_EQ(choose_lift_period(24, 12, 4), 24);
}

TEST(Lift, MemorylessHasZeroSecondTap)
{
    std::mt19937_64 eng(15);
    const auto l = lift(random_channel(eng, 3, 0, 2, 2), white(2));
    EXPECT_TRUE((l.h1().array() == 0.0).all());
    EXPECT_TRUE((l.f1().array() == 0.0).all());
}

TEST(Lift, Errors)
{
    std::mt19937_64 eng(16);
    EXPECT_THROW(lift(random_channel(eng, 2, 1, 2, 2), white(1)), ModelError);
    EXPECT_THROW(lift(random_channel(eng, 2, 1, 1, 1), white(1), 3), ModelError);
    EXPECT_THROW(LptvChannel(2, 1, {Matrix::Ones(1, 1)}), ModelError);
    EXPECT_THROW(LptvChannel(1, 0, {Matrix::Constant(1, 1, std::nan(""))}), ModelError);
}

TEST(ShapingFilter, RejectsSingularLeadingTap)
{
    Matrix f0(2, 2);
    f0 << 1, 2, 2, 4;
    try
    {
        LptvShapingFilter(1, 0, {f0});
        FAIL() << "expected SingularShaping";
    }
    catch (const SingularShaping &e)
    {
        EXPECT_EQ(e.phase(), 0);
        EXPECT_NE(std::string(e.what()).find("shaping_nonsingular"), std::string::npos);
    }
    EXPECT_THROW(LptvShapingFilter(1, 0, {Matrix::Ones(2, 3)}), ModelError);
}

TEST(NoiseAutocorrelation, WhiteNoise)
{
    const auto l = lift(LptvChannel::identity(3), white(3));
    const auto c = lifted_noise_autocorrelation(l);
    EXPECT_TRUE(c.c0().isApprox(Matrix::Identity(3, 3)));
    EXPECT_TRUE((c.c1().array() == 0.0).all());
}

TEST(NoiseAutocorrelation, MovingAverage)
{
    const double a = -0.35;
    const auto c = lifted_noise_autocorrelation({Matrix::Ones(1, 1), Matrix::Constant(1, 1, a)}, Matrix::Ones(1, 1));
    EXPECT_DOUBLE_EQ(c.c0()(0, 0), 1.0 + a * a);
    EXPECT_DOUBLE_EQ(c.c1()(0, 0), a);
}

TEST(NoiseAutocorrelation, MatchesSimulation)
{
    std::mt19937_64 eng(17);
    const int per = 4;
    const LptvShapingFilter f(PeriodicTaps::generate(per, 2, [&](int, int tau) {
        return tau == 0 ? oracle::well_conditioned(eng, 1) : oracle::random_matrix(eng, 1, 1, 0.6);
    }));
    const NoiseModel noise(GaussianParams{Matrix::Identity(1, 1)}, f, false);
    const auto l = lift(LptvChannel(per, 0, std::vector<Matrix>(per, Matrix::Ones(1, 1))), noise, per);
    const auto c = lifted_noise_autocorrelation(l);

    const std::size_t n = 1000000;
    const Matrix w = sample_lifted_noise(noise, l, n, 99);
    for (int lag = 0; lag <= 1; ++lag)
    {
        const Matrix &target = lag == 0 ? c.c0() : c.c1();
        for (int r = 0; r < per; ++r)
            for (int s = 0; s < per; ++s)
            {
                double mean = 0.0, sq = 0.0;
                const std::size_t count = n - static_cast<std::size_t>(lag);
                for (std::size_t k = 0; k < count; ++k)
                {
                    const double p = w(r, static_cast<Eigen::Index>(k + static_cast<std::size_t>(lag))) *
                                     w(s, static_cast<Eigen::Index>(k));
                    mean += p;
                    sq += p * p;
                }
                mean /= static_cast<double>(count);
                const double se = std::sqrt((sq / static_cast<double>(count) - mean * mean) / static_cast<double>(count));
                EXPECT_LT(std::abs(mean - target(r, s)), 3.0 * se) << "lag " << lag << " (" << r << "," << s << ")";
            }
    }
}

TEST(NoiseModel, NormalizesToUnitTotalVariance)
{
    for (auto id : all_presets)
    {
        const auto m = build_preset(id);
        EXPECT_NEAR(m.innovation().total_variance(), 1.0, 1e-9) << preset_name(id);
        EXPECT_NEAR(m.scale_factor(), 1.0 / std::sqrt(preset_innovation(id).total_variance()), 1e-15);
        EXPECT_TRUE(m.variance_normalized());
    }
}

TEST(NoiseModel, Errors)
{
    EXPECT_THROW(NoiseModel(GaussianParams{Matrix::Identity(2, 2)}, LptvShapingFilter::identity(1)), ModelError);
    GmParams shifted = gm1_params(1);
    shifted.means[0](0) += 1.0;
    EXPECT_THROW(NoiseModel::iid(shifted), ModelError);
    GmParams bad = gm1_params(1);
    bad.priors[0] = 0.6;
    EXPECT_THROW(InnovationPdf{bad}, ModelError);
    EXPECT_THROW(InnovationPdf(NakagamiParams{0.4, 1.0, 2}), ModelError);
    EXPECT_THROW(InnovationPdf(NakagamiParams{1.0, 0.0, 2}), ModelError);
    EXPECT_THROW(InnovationPdf(GaussianParams{Matrix::Zero(2, 2)}), ModelError);
}
