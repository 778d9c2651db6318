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

#pragma once

#include <array>
#include <cstdint>

namespace metabcrb {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output depends only
/// on (key, counter), so any sample can be regenerated in isolation.
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(Key key) : key_(key) {}
    explicit Philox4x32(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
    {
    }

    Counter operator()(Counter counter) const;

  private:
    Key key_;
};

/// Well-separated counter streams. Each Monte Carlo consumer owns one so that, e.g., the
/// prior draws of c are shared between the expectation engine and the BFIM oracle.
enum class Stream : std::uint32_t
{
    prior = 1,
    channel = 2,
    noise = 3,
    bootstrap = 4,
};

/// Sequential variates for one (seed, stream, index) triple. Block b of the sequence is
/// Philox(seed)[index_lo, index_hi, b, stream], so results do not depend on which thread
/// generates which index.
class CounterStream
{
  public:
    CounterStream(std::uint64_t seed, Stream stream, std::uint64_t index);

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller; each block yields two variates.
    double normal();

    /// Raw 32-bit output.
    std::uint32_t bits();

  private:
    void refill();

    Philox4x32 philox_;
    std::uint32_t stream_;
    std::uint64_t index_;
    std::uint32_t block_ = 0;
    Philox4x32::Counter buffer_{};
    int consumed_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace metabcrb
