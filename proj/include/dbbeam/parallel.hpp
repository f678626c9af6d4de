// SPDX-License-Identifier: Apache-2.0
//
// dbbeam - dual-band channel synthesis and hybrid beam selection toolkit
// Copyright (C) 2026 The dbbeam authors
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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dbbeam
{

// Number of workers for a requested degree; zero means all hardware threads.
inline std::size_t resolve_threads(std::size_t requested)
{
    if (requested != 0)
        return requested;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Splits [0, count) into contiguous chunks, one per worker, and calls
// fn(begin, end, worker). The first exception thrown by a worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn &&fn)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min(resolve_threads(threads), count));
    if (workers == 1)
    {
        fn(std::size_t{0}, count, std::size_t{0});
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back(
            [&, begin, end, w]
            {
                try
                {
                    fn(begin, end, w);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
    }
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace dbbeam
