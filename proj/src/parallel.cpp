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

#include "metabcrb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace metabcrb {

namespace {

std::atomic<unsigned> g_override{0};
thread_local bool t_inside_worker = false;

unsigned env_threads()
{
    const char *value = std::getenv("METABCRB_THREADS");
    if (value == nullptr || *value == '\0')
        return 0;
    try
    {
        const long n = std::stol(value);
        return n > 0 ? static_cast<unsigned>(n) : 0;
    }
    catch (const std::exception &)
    {
        return 0;
    }
}

} // namespace

unsigned thread_count()
{
    if (const unsigned n = g_override.load(); n > 0)
        return n;
    if (const unsigned n = env_threads(); n > 0)
        return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(unsigned n)
{
    g_override.store(n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
    if (n == 0)
        return;
    const std::size_t workers = t_inside_worker ? 1 : std::min<std::size_t>(thread_count(), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        const std::size_t begin = w * n / workers;
        const std::size_t end = (w + 1) * n / workers;
        threads.emplace_back([&, begin, end] {
            t_inside_worker = true;
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto &t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

double pairwise_sum(std::span<const double> values)
{
    constexpr std::size_t kLeaf = 16;
    if (values.size() <= kLeaf)
    {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace metabcrb
