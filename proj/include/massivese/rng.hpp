// SPDX-License-Identifier: Apache-2.0
//
// massivese - spectral efficiency optimization for multi-cell massive MIMO
// Copyright (C) 2026 The massivese authors
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

#ifndef MASSIVESE_RNG_HPP
#define MASSIVESE_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace massivese
{

using Engine = std::mt19937_64;

// Independent stream for (master seed, stream id, sub-stream id).
//
// Every parallel kernel partitions its work into chunks whose boundaries do
// not depend on the thread count, and seeds one stream per chunk. Results are
// therefore identical for the serial reference loop and any OpenMP schedule.
inline Engine make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32),
                      0x6d617373u};
    return Engine(seq);
}

// Circularly symmetric CN(0, 1): two independent N(0, 1/2) parts.
class ComplexNormal
{
public:
    template <class Rng>
    std::complex<double> operator()(Rng &rng)
    {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {re * kInvSqrt2, im * kInvSqrt2};
    }

private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Stream ids used by the library kernels. Keeping them distinct means two
// kernels fed the same master seed never share random numbers.
namespace streams
{
constexpr std::uint64_t moments = 1;
constexpr std::uint64_t positions = 2;
constexpr std::uint64_t antenna_draws = 3;
constexpr std::uint64_t gram_draws = 4;
} // namespace streams

} // namespace massivese

#endif
