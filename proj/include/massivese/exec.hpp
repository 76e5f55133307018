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

#ifndef MASSIVESE_EXEC_HPP
#define MASSIVESE_EXEC_HPP

#include <exception>
#include <vector>

namespace massivese
{

// Selects the serial reference loop or the OpenMP kernel. Both visit the same
// fixed chunk decomposition and reduce partial sums in chunk order, so they
// return bit-identical results.
enum class Exec
{
    serial,
    parallel
};

int max_threads();
void set_threads(int n);

// Runs body(i) for i in [0, n). Exceptions are rethrown after the loop; if
// several iterations fail, the one with the lowest index wins.
template <class Body>
void for_each_index(long n, Exec exec, Body &&body)
{
    if (exec == Exec::serial)
    {
        for (long i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n > 0 ? n : 0));
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i)
    {
        try
        {
            body(i);
        }
        catch (...)
        {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace massivese

#endif
