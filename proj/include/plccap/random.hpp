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


#ifndef PLCCAP_RANDOM_HPP
#define PLCCAP_RANDOM_HPP

// Seeded, chunked random streams: chunk c of a request uses its own engine derived from
// (seed, stream, c), so output does not depend on how chunks are scheduled.

#include "parallel.hpp"

#include <cstdint>
#include <random>

namespace plccap
{

using Engine = std::mt19937_64;

inline constexpr std::size_t rng_chunk = 65536;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ chunk);
}

/// Calls fn(engine, begin, end) for consecutive chunks of [0, n).
template <class Fn>
void for_each_chunk(std::size_t n, std::uint64_t seed, std::uint64_t stream, Fn &&fn, int threads = 0)
{
    const std::size_t chunks = (n + rng_chunk - 1) / rng_chunk;
    parallel_for(
        chunks,
        [&](std::size_t c) {
            Engine eng(derive_seed(seed, stream, c));
            fn(eng, c * rng_chunk, std::min(n, (c + 1) * rng_chunk));
        },
        threads);
}

} // namespace plccap

#endif
