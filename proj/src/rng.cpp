// SPDX-License-Identifier: Apache-2.0
//
// metabcrb: estimation bounds for meta-material backscatter sensing
// Copyright (C) 2026 The metabcrb authors
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

#include "metabcrb/rng.hpp"

#include <cmath>
#include <numbers>

namespace metabcrb {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const
{
    Key key = key_;
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, Stream stream, std::uint64_t index)
    : philox_(seed), stream_(static_cast<std::uint32_t>(stream)), index_(index)
{
}

void CounterStream::refill()
{
    buffer_ = philox_({static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32), block_, stream_});
    ++block_;
    consumed_ = 0;
}

std::uint32_t CounterStream::bits()
{
    if (consumed_ >= 4)
        refill();
    return buffer_[consumed_++];
}

double CounterStream::uniform()
{
    const std::uint64_t hi = bits();
    const std::uint64_t lo = bits();
    const std::uint64_t word = (hi << 32) | lo;
    // midpoint of one of 2^53 equal cells, never 0 or 1
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace metabcrb
