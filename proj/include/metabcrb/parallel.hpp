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

#include <cstddef>
#include <functional>
#include <span>

namespace metabcrb {

/// Worker count: the value set by set_thread_count() if nonzero, else METABCRB_THREADS if set
/// and nonzero, else std::thread::hardware_concurrency().
unsigned thread_count();

/// Process-wide override; 0 restores the environment/hardware default.
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Work is split into contiguous
/// index ranges; callers write results into index-addressed storage so the outcome does not
/// depend on the schedule. The first exception thrown by any body is rethrown. Calls made from
/// inside a worker run serially on that worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

/// Pairwise (cascade) summation in index order. Bit-stable for a given input.
double pairwise_sum(std::span<const double> values);

} // namespace metabcrb
