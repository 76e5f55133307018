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

#ifndef MASSIVESE_OPTIMIZER_HPP
#define MASSIVESE_OPTIMIZER_HPP

#include "massivese/exec.hpp"
#include "massivese/hexnet.hpp"
#include "massivese/moments.hpp"
#include "massivese/se_core.hpp"

#include <cstdint>
#include <vector>

namespace massivese
{

inline const std::vector<int> default_beta_candidates{1, 3, 4, 7};

/// Pilot plans and interference models for every candidate reuse factor,
/// all sharing one moment table.
class ReuseCatalog
{
public:
    ReuseCatalog(const HexNetwork &net, MomentTable moments, std::vector<int> betas = default_beta_candidates);

    const std::vector<int> &betas() const { return betas_; }
    const MomentTable &moments() const { return moments_; }
    InterferenceCase interference_case() const { return moments_.interference_case; }

    const PilotPlan &plan(int beta) const;
    const InterferenceModel &model(int beta) const;

private:
    std::size_t slot(int beta) const;

    MomentTable moments_;
    std::vector<int> betas_;
    std::vector<PilotPlan> plans_;
    std::vector<InterferenceModel> models_;
};

struct OptimumPoint
{
    std::int64_t M = 0;
    Scheme scheme = Scheme::mr;
    bool feasible = false;
    int K_star = 0;
    int beta_star = 0;
    double se_star = 0.0;
    double per_ue_se = 0.0;
    double antennas_per_ue = 0.0;
    double interference = 0.0;
};

// Largest K allowed for (scheme, beta) at M antennas and S symbols; 0 if none.
int max_feasible_k(Scheme scheme, std::int64_t M, int beta, int S);

// Exhaustive scan over beta in the catalog and K = 1..max_feasible_k. Ties go
// to the smaller K, then the smaller beta. Throws InfeasibleConfig when no
// point is feasible.
OptimumPoint optimize_point(std::int64_t M, Scheme scheme, const SeConfig &base, const ReuseCatalog &catalog);

struct SweepSpec
{
    std::vector<std::int64_t> m_values;
    std::vector<Scheme> schemes{all_schemes.begin(), all_schemes.end()};
    SeConfig base;
};

// One point per (scheme, M), ordered by scheme then M. Infeasible points are
// returned with feasible = false.
std::vector<OptimumPoint> sweep(const SweepSpec &spec, const ReuseCatalog &catalog, Exec exec = Exec::parallel);

// Rounded, de-duplicated logarithmic grid from lo to hi inclusive.
std::vector<std::int64_t> log_m_grid(double lo, double hi, int per_decade);

struct SeVsKPoint
{
    int K = 0;
    double se_total = 0.0;
    bool is_peak = false;
};

// SE for fixed beta over K in [k_min, k_max], restricted to feasible K. The
// first maximiser is flagged.
std::vector<SeVsKPoint> se_vs_k_curve(std::int64_t M, Scheme scheme, const SeConfig &base, int beta, int k_min,
                                      int k_max, const ReuseCatalog &catalog);

} // namespace massivese

#endif
