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


#ifndef PLCCAP_KNN_ENTROPY_HPP
#define PLCCAP_KNN_ENTROPY_HPP

// Kozachenko-Leonenko nearest-neighbour entropy estimator. Used for validation only.

#include "random.hpp"
#include "special.hpp"

#include <array>
#include <atomic>

namespace plccap
{

/// Static kd-tree over the columns of a d x N matrix.
class KdTree
{
  public:
    explicit KdTree(const Matrix &points, int leaf_size = 12) : pts_(points), leaf_(leaf_size)
    {
        idx_.resize(static_cast<std::size_t>(pts_.cols()));
        for (std::size_t i = 0; i < idx_.size(); ++i)
            idx_[i] = static_cast<Eigen::Index>(i);
        nodes_.reserve(2 * idx_.size() / static_cast<std::size_t>(leaf_) + 4);
        build(0, idx_.size());
    }

    /// Squared distances to the k nearest points other than column `self`, ascending.
    std::vector<double> knn_sq(Eigen::Index self, int k) const
    {
        Query q{pts_.col(self), self, std::vector<double>(static_cast<std::size_t>(k),
                                                          std::numeric_limits<double>::infinity())};
        search(0, q);
        return q.best;
    }

  private:
    struct Node
    {
        std::size_t begin, end;
        int axis = -1; ///< -1 for leaves
        double split = 0.0;
        int left = -1, right = -1;
    };
    struct Query
    {
        Eigen::Ref<const Vector> x;
        Eigen::Index self;
        std::vector<double> best;
    };

    int build(std::size_t begin, std::size_t end)
    {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back({begin, end});
        if (end - begin <= static_cast<std::size_t>(leaf_))
            return id;
        int axis = 0;
        double spread = -1.0;
        for (Eigen::Index a = 0; a < pts_.rows(); ++a)
        {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t i = begin; i < end; ++i)
            {
                const double v = pts_(a, idx_[i]);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > spread)
            {
                spread = hi - lo;
                axis = static_cast<int>(a);
            }
        }
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(begin),
                         idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                         idx_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](Eigen::Index a, Eigen::Index b) { return pts_(axis, a) < pts_(axis, b); });
        nodes_[static_cast<std::size_t>(id)].axis = axis;
        nodes_[static_cast<std::size_t>(id)].split = pts_(axis, idx_[mid]);
        const int l = build(begin, mid);
        const int r = build(mid, end);
        nodes_[static_cast<std::size_t>(id)].left = l;
        nodes_[static_cast<std::size_t>(id)].right = r;
        return id;
    }

    void search(int id, Query &q) const
    {
        const Node &nd = nodes_[static_cast<std::size_t>(id)];
        if (nd.axis < 0)
        {
            for (std::size_t i = nd.begin; i < nd.end; ++i)
            {
                const Eigen::Index p = idx_[i];
                if (p == q.self)
                    continue;
                const double d2 = (pts_.col(p) - q.x).squaredNorm();
                if (d2 < q.best.back())
                {
                    auto it = std::upper_bound(q.best.begin(), q.best.end(), d2);
                    q.best.insert(it, d2);
                    q.best.pop_back();
                }
            }
            return;
        }
        const double diff = q.x(nd.axis) - nd.split;
        const int near = diff < 0.0 ? nd.left : nd.right;
        const int far = diff < 0.0 ? nd.right : nd.left;
        search(near, q);
        if (diff * diff <= q.best.back())
            search(far, q);
    }

    const Matrix &pts_;
    int leaf_;
    std::vector<Eigen::Index> idx_;
    std::vector<Node> nodes_;
};

struct McEntropyEstimate
{
    double bits = 0.0;
    double std_error = 0.0; ///< spread of independent batch estimates scaled to the full sample
    bool jittered = false;  ///< duplicate points were perturbed
    int k = 4;
    std::size_t n = 0;
};

namespace detail
{
/// 0.5 d ln of the squared k-th neighbour distance per column; false when one of them is zero.
inline bool knn_log_terms(const Matrix &samples, int k, std::vector<double> &terms, int threads)
{
    const auto n = static_cast<std::size_t>(samples.cols());
    const double half_d = 0.5 * static_cast<double>(samples.rows());
    terms.assign(n, 0.0);
    const KdTree tree(samples);
    std::atomic<bool> dup{false};
    parallel_for(
        n,
        [&](std::size_t i) {
            const double d2 = tree.knn_sq(static_cast<Eigen::Index>(i), k).back();
            if (!(d2 > 0.0))
                dup = true;
            else
                terms[i] = half_d * std::log(d2);
        },
        threads);
    return !dup;
}

inline double kl_bits(const std::vector<double> &terms, Eigen::Index d, int k)
{
    const double dd = static_cast<double>(d);
    const double n = static_cast<double>(terms.size());
    const double log_unit_ball = 0.5 * dd * std::log(pi) - std::lgamma(0.5 * dd + 1.0);
    double total = 0.0;
    for (double t : terms)
        total += t;
    return (digamma(n) - digamma(static_cast<double>(k)) + log_unit_ball + total / n) / ln2;
}
} // namespace detail

/// Kozachenko-Leonenko entropy estimate in bits from the columns of a d x N sample matrix.
inline McEntropyEstimate mc_entropy_estimate(Matrix samples, int k = 4, std::uint64_t seed = 0, int threads = 0)
{
    const auto d = samples.rows();
    const auto n = static_cast<std::size_t>(samples.cols());
    if (d < 1 || d > 8)
        throw ModelError("mc_entropy_estimate supports 1 to 8 dimensions");
    if (n < 10000)
        throw ModelError("mc_entropy_estimate needs at least 1e4 samples");
    if (k < 1)
        throw ModelError("neighbour order k must be positive");

    McEntropyEstimate out;
    out.k = k;
    out.n = n;
    std::vector<double> terms;

    if (!detail::knn_log_terms(samples, k, terms, threads))
    {
        out.jittered = true;
        const Vector sd = ((samples.colwise() - samples.rowwise().mean()).rowwise().squaredNorm() /
                           static_cast<double>(n))
                              .cwiseSqrt();
        for_each_chunk(n, seed, 0x6b6e6eULL, [&](Engine &eng, std::size_t b, std::size_t e) {
            std::normal_distribution<double> g;
            for (std::size_t i = b; i < e; ++i)
                for (Eigen::Index a = 0; a < d; ++a)
                    samples(a, static_cast<Eigen::Index>(i)) += 1e-10 * std::max(sd(a), 1e-300) * g(eng);
        }, threads);
        if (!detail::knn_log_terms(samples, k, terms, threads))
            throw NumericalError("mc_entropy_estimate: duplicate points remain after jitter");
    }
    out.bits = detail::kl_bits(terms, d, k);

    // Standard error from the spread of estimates on disjoint batches.
    constexpr std::size_t batches = 50;
    std::array<double, batches> est{};
    std::vector<double> bt;
    for (std::size_t b = 0; b < batches; ++b)
    {
        const auto lo = static_cast<Eigen::Index>(b * n / batches);
        const auto hi = static_cast<Eigen::Index>((b + 1) * n / batches);
        const Matrix part = samples.middleCols(lo, hi - lo);
        if (!detail::knn_log_terms(part, k, bt, threads))
            throw NumericalError("mc_entropy_estimate: duplicate points inside a batch");
        est[b] = detail::kl_bits(bt, d, k);
    }
    double mean = 0.0;
    for (double v : est)
        mean += v / batches;
    double var = 0.0;
    for (double v : est)
        var += (v - mean) * (v - mean);
    out.std_error = std::sqrt(var / (batches - 1.0) / batches);
    return out;
}

} // namespace plccap

#endif
