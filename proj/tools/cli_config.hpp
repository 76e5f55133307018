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

#ifndef MASSIVESE_TOOLS_CLI_CONFIG_HPP
#define MASSIVESE_TOOLS_CLI_CONFIG_HPP

#include "massivese/moments.hpp"
#include "massivese/se_core.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace massivese::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_infeasible = 2;
inline constexpr int exit_validation = 3;

struct RunConfig
{
    int S = 400;
    double snr_db = 5.0;
    double kappa = 3.7;
    int tiers = 5;
    std::string interference_case = "average";
    double epsilon = 0.0;
    double zeta_ul = 0.5;
    std::uint64_t seed = 1;
    std::uint64_t n_mu_samples = 1000000;
    std::vector<int> beta_set{1, 3, 4, 7};
    std::vector<std::int64_t> m_list;
    double m_min = 10;
    double m_max = 1e6;
    int m_per_decade = 20;
    std::vector<std::string> schemes{"MR", "ZF", "P-ZF"};
    std::string cache_dir;
    int threads = 0;
};

// Registers the RunConfig flags on `app` (kebab-case long names). The cache
// directory also reads MASSIVESE_CACHE_DIR.
void add_run_options(CLI::App &app, RunConfig &cfg);

// Throws std::invalid_argument for out-of-range values.
void check(const RunConfig &cfg);

SeConfig base_se_config(const RunConfig &cfg);
InterferenceCase parsed_case(const RunConfig &cfg);
std::vector<Scheme> parsed_schemes(const RunConfig &cfg);

// m_list if given, else the logarithmic grid m_min..m_max.
std::vector<std::int64_t> m_values(const RunConfig &cfg);

std::uint64_t fnv1a(std::string_view s);

} // namespace massivese::cli

#endif
