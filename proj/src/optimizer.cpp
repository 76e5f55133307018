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

#include "massivese/optimizer.hpp"
#include "massivese/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace massivese
{

ReuseCatalog::ReuseCatalog(const HexNetwork &net, MomentTable moments, std::vector<int> betas)
    : moments_(std::move(moments)), betas_(std::move(betas))
{
    if (!moments_.matches(net))
        throw std::invalid_argument("moment table was built for a different network");
    if (betas_.empty())
        throw std::invalid_argument("empty reuse factor candidate list");
    std::sort(betas_.begin(), betas_.end());
    betas_.erase(std::unique(betas_.begin(), betas_.end()), betas_.end());
    plans_.reserve(betas_.size());
    models_.reserve(betas_.size());
    for (int b : betas_)
    {
        plans_.push_back(make_pilot_plan(b, net, 1));
        models_.emplace_back(moments_, plans_.back());
    }
}

std::size_t ReuseCatalog::slot(int beta) const
{
    auto it = std::lower_bound(betas_.begin(), betas_.end(), beta);
    if (it == betas_.end() || *it != beta)
        throw std::invalid_argument("reuse factor " + std::to_string(beta) + " not in catalog");
    return static_cast<std::size_t>(it - betas_.begin());
}

const PilotPlan &ReuseCatalog::plan(int beta) const
{
    return plans_[slot(beta)];
}

const InterferenceModel &ReuseCatalog::model(int beta) const
{
    return models_[slot(beta)];
}

int max_feasible_k(Scheme scheme, std::int64_t M, int beta, int S)
{
    std::int64_t k = S / beta;
    if (scheme == Scheme::zf)
        k = std::min<std::int64_t>(k, M - 1);
    else if (scheme == Scheme::pzf)
        k = std::min<std::int64_t>(k, (M - 1) / beta);
    return static_cast<int>(std::max<std::int64_t>(k, 0));
}

OptimumPoint optimize_point(std::int64_t M, Scheme scheme, const SeConfig &base, const ReuseCatalog &catalog)
{
    OptimumPoint best;
    best.M = M;
    best.scheme = scheme;
    SeConfig cfg = base;
    cfg.M = M;
    // betas are ascending, so strict improvement keeps the smaller beta on ties
    for (int beta : catalog.betas())
    {
        cfg.beta = beta;
        const InterferenceModel &model = catalog.model(beta);
        const int kmax = max_feasible_k(scheme, M, beta, base.S);
        for (int k = 1; k <= kmax; ++k)
        {
            cfg.K = k;
            const SeResult r = model.evaluate(scheme, cfg);
            const bool better = !best.feasible || r.se_total > best.se_star ||
                                (r.se_total == best.se_star && k < best.K_star);
            if (better)
            {
                best.feasible = true;
                best.K_star = k;
                best.beta_star = beta;
                best.se_star = r.se_total;
                best.per_ue_se = r.per_ue_se;
                best.interference = r.interference;
            }
        }
    }
    if (!best.feasible)
        throw InfeasibleConfig("no feasible (K, beta) for " + std::string(to_string(scheme)) +
                               " at M = " + std::to_string(M));
    best.antennas_per_ue = static_cast<double>(M) / best.K_star;
    return best;
}

std::vector<OptimumPoint> sweep(const SweepSpec &spec, const ReuseCatalog &catalog, Exec exec)
{
    if (spec.m_values.empty())
        throw std::invalid_argument("sweep: empty M grid");
    if (!std::is_sorted(spec.m_values.begin(), spec.m_values.end()))
        throw std::invalid_argument("sweep: M grid must be ascending");
    const long nm = static_cast<long>(spec.m_values.size());
    const long n = static_cast<long>(spec.schemes.size()) * nm;
    std::vector<OptimumPoint> out(n);

    auto body = [&](long i) {
        const Scheme s = spec.schemes[i / nm];
        const std::int64_t M = spec.m_values[i % nm];
        try
        {
            out[i] = optimize_point(M, s, spec.base, catalog);
        }
        catch (const InfeasibleConfig &)
        {
            out[i].M = M;
            out[i].scheme = s;
            out[i].feasible = false;
        }
    };
    for_each_index(n, exec, [&](long i) { body(i); });
    return out;
}

std::vector<std::int64_t> log_m_grid(double lo, double hi, int per_decade)
{
    if (!(lo >= 1.0 && hi >= lo && per_decade >= 1))
        throw std::invalid_argument("log_m_grid: need 1 <= lo <= hi and per_decade >= 1");
    const double l0 = std::log10(lo), l1 = std::log10(hi);
    const int steps = static_cast<int>(std::floor((l1 - l0) * per_decade + 1e-9));
    std::vector<std::int64_t> out;
    for (int i = 0; i <= steps; ++i)
        out.push_back(static_cast<std::int64_t>(std::llround(std::pow(10.0, l0 + static_cast<double>(i) / per_decade))));
    const auto top = static_cast<std::int64_t>(std::llround(hi));
    if (out.back() != top)
        out.push_back(top);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<SeVsKPoint> se_vs_k_curve(std::int64_t M, Scheme scheme, const SeConfig &base, int beta, int k_min,
                                      int k_max, const ReuseCatalog &catalog)
{
    if (k_min < 1 || k_max < k_min)
        throw std::invalid_argument("se_vs_k_curve: need 1 <= k_min <= k_max");
    const InterferenceModel &model = catalog.model(beta);
    SeConfig cfg = base;
    cfg.M = M;
    cfg.beta = beta;
    const int hi = std::min(k_max, max_feasible_k(scheme, M, beta, base.S));
    std::vector<SeVsKPoint> out;
    std::size_t peak = 0;
    for (int k = k_min; k <= hi; ++k)
    {
        cfg.K = k;
        out.push_back({k, model.evaluate(scheme, cfg).se_total, false});
        if (out.back().se_total > out[peak].se_total)
            peak = out.size() - 1;
    }
    if (out.empty())
        throw InfeasibleConfig("se_vs_k_curve: no feasible K in range");
    out[peak].is_peak = true;
    return out;
}

} // namespace massivese
