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

#ifndef MASSIVESE_ERRORS_HPP
#define MASSIVESE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace massivese
{

// Pilot reuse factor not of the form i^2 + ij + j^2.
class InvalidReuseFactor : public std::invalid_argument
{
public:
    explicit InvalidReuseFactor(const std::string &what) : std::invalid_argument(what) {}
};

// A configuration violates a scheme or frame bound (M > K, M > B, B <= S, ...).
class InfeasibleConfig : public std::domain_error
{
public:
    explicit InfeasibleConfig(const std::string &what) : std::domain_error(what) {}
};

// Singular Gram matrix or non-positive duality solution.
class LinearAlgebraError : public std::runtime_error
{
public:
    explicit LinearAlgebraError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace massivese

#endif
