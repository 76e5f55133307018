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

#include "cli_config.hpp"

#include "massivese/exec.hpp"
#include "massivese/optimizer.hpp"

#include <stdexcept>

namespace massivese::cli
{

void add_run_options(CLI::App &app, RunConfig &cfg)
{
    app.add_option("-S,--coherence-block", cfg.S, "symbols per coherence block")->capture_default_str();
    app.add_option("--snr-db", cfg.snr_db, "cell-edge SNR rho/sigma^2 in dB")->capture_default_str();
    app.add_option("--kappa", cfg.kappa, "pathloss exponent")->capture_default_str();
    app.add_option("--tiers", cfg.tiers, "interference tiers around the reference cell")->capture_default_str();
    app.add_option("--case", cfg.interference_case, "average, best or worst")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "hardware impairment level")->capture_default_str();
    app.add_option("--zeta-ul", cfg.zeta_ul, "uplink fraction of the data symbols")->capture_default_str();
    app.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    app.add_option("--n-mu-samples", cfg.n_mu_samples, "Monte-Carlo samples per cell for average moments")
        ->capture_default_str();
    app.add_option("--beta-set", cfg.beta_set, "candidate pilot reuse factors")->delimiter(',')->capture_default_str();
    app.add_option("--m-list", cfg.m_list, "explicit antenna counts")->delimiter(',');
    app.add_option("--m-min", cfg.m_min, "smallest M of the log grid")->capture_default_str();
    app.add_option("--m-max", cfg.m_max, "largest M of the log grid")->capture_default_str();
    app.add_option("--m-per-decade", cfg.m_per_decade, "log grid density")->capture_default_str();
    app.add_option("--schemes", cfg.schemes, "MR, ZF, P-ZF")->delimiter(',')->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "moment table cache directory")
        ->envname("MASSIVESE_CACHE_DIR")
        ->default_str("massivese_cache");
    app.add_option("--threads", cfg.threads, "OpenMP threads (0 keeps the runtime default)")->capture_default_str();
}

void check(const RunConfig &cfg)
{
    if (cfg.S < 1)
        throw std::invalid_argument("coherence-block must be >= 1");
    if (cfg.kappa < 2.0)
        throw std::invalid_argument("kappa must be >= 2");
    if (cfg.tiers < 0)
        throw std::invalid_argument("tiers must be >= 0");
    if (cfg.epsilon < 0.0 || cfg.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    if (cfg.zeta_ul < 0.0 || cfg.zeta_ul > 1.0)
        throw std::invalid_argument("zeta-ul must lie in [0, 1]");
    if (cfg.n_mu_samples < 2)
        throw std::invalid_argument("n-mu-samples must be >= 2");
    if (cfg.beta_set.empty())
        throw std::invalid_argument("beta-set is empty");
    if (cfg.m_list.empty() && (cfg.m_min < 1 || cfg.m_max < cfg.m_min || cfg.m_per_decade < 1))
        throw std::invalid_argument("bad M grid");
    for (std::int64_t m : cfg.m_list)
        if (m < 1)
            throw std::invalid_argument("m-list entries must be >= 1");
    if (cfg.threads < 0)
        throw std::invalid_argument("threads must be >= 0");
    parsed_case(cfg);
    parsed_schemes(cfg);
}

SeConfig base_se_config(const RunConfig &cfg)
{
    SeConfig s;
    s.S = cfg.S;
    s.snr = db_to_linear(cfg.snr_db);
    s.epsilon = cfg.epsilon;
    s.zeta_ul = cfg.zeta_ul;
    s.zeta_dl = 1.0 - cfg.zeta_ul;
    return s;
}

InterferenceCase parsed_case(const RunConfig &cfg)
{
    return parse_interference_case(cfg.interference_case);
}

std::vector<Scheme> parsed_schemes(const RunConfig &cfg)
{
    std::vector<Scheme> out;
    for (const std::string &s : cfg.schemes)
        out.push_back(parse_scheme(s));
    if (out.empty())
        throw std::invalid_argument("no schemes selected");
    return out;
}

std::vector<std::int64_t> m_values(const RunConfig &cfg)
{
    if (!cfg.m_list.empty())
        return cfg.m_list;
    return log_m_grid(cfg.m_min, cfg.m_max, cfg.m_per_decade);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace massivese::cli
