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

#include "massivese/se_core.hpp"
#include "massivese/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace massivese
{

namespace
{
void check_inputs(const SeConfig &cfg, const MomentTable &moments, const PilotPlan &plan)
{
    if (plan.beta() != cfg.beta)
        throw std::invalid_argument("pilot plan reuse factor " + std::to_string(plan.beta()) +
                                    " does not match configuration beta " + std::to_string(cfg.beta));
    if (moments.size() != plan.colors().size() || moments.size() == 0 || moments.cells[0] != CellId{0, 0})
        throw std::invalid_argument("moment table and pilot plan cover different cell sets");
}

double log2_1p(double x)
{
    return std::log1p(x) / std::numbers::ln2;
}
} // namespace

std::string_view to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::mr:
        return "MR";
    case Scheme::zf:
        return "ZF";
    case Scheme::pzf:
        return "P-ZF";
    }
    return "?";
}

Scheme parse_scheme(std::string_view s)
{
    std::string t;
    for (char c : s)
        if (c != '-' && c != '_')
            t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (t == "MR")
        return Scheme::mr;
    if (t == "ZF")
        return Scheme::zf;
    if (t == "PZF")
        return Scheme::pzf;
    throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

void SeConfig::validate() const
{
    if (M < 1)
        throw std::invalid_argument("M must be >= 1");
    if (K < 1)
        throw std::invalid_argument("K must be >= 1");
    if (S < 1)
        throw std::invalid_argument("S must be >= 1");
    if (!is_symmetric_reuse_factor(beta))
        throw InvalidReuseFactor("reuse factor " + std::to_string(beta) + " is not of the form i^2 + ij + j^2");
    if (!(snr > 0.0))
        throw std::invalid_argument("snr must be positive");
    if (!(zeta_ul > 0.0 && zeta_ul < 1.0 && zeta_dl > 0.0 && zeta_dl < 1.0) ||
        std::abs(zeta_ul + zeta_dl - 1.0) > 1e-12)
        throw std::invalid_argument("zeta_ul and zeta_dl must lie in (0, 1) and sum to 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    if (static_cast<long>(beta) * K > S)
        throw InfeasibleConfig("B = beta K = " + std::to_string(static_cast<long>(beta) * K) + " exceeds S = " +
                               std::to_string(S));
}

void SeConfig::validate(Scheme scheme) const
{
    validate();
    if (scheme == Scheme::zf && M <= K)
        throw InfeasibleConfig("ZF needs M > K (M = " + std::to_string(M) + ", K = " + std::to_string(K) + ")");
    if (scheme == Scheme::pzf && M <= pilots())
        throw InfeasibleConfig("P-ZF needs M > B (M = " + std::to_string(M) + ", B = " + std::to_string(pilots()) +
                               ")");
}

bool SeConfig::feasible(Scheme scheme) const noexcept
{
    try
    {
        validate(scheme);
        return true;
    }
    catch (const std::exception &)
    {
        return false;
    }
}

double AsymptoticSinr::value() const
{
    if (!value_)
        throw std::logic_error("asymptotic SINR is unbounded");
    return *value_;
}

SchemeConstants scheme_constants(Scheme scheme, const SeConfig &cfg, const MomentTable &moments,
                                 const PilotPlan &plan)
{
    cfg.validate(scheme);
    check_inputs(cfg, moments, plan);
    const double impair = 1.0 - cfg.epsilon * cfg.epsilon;
    const double noise_b = 1.0 / (cfg.pilots() * cfg.snr);
    const double M = static_cast<double>(cfg.M);
    const double K = cfg.K;
    const std::size_t n = moments.size();

    auto copilot_mu1 = [&](std::size_t l) {
        double s = 0.0;
        for (std::size_t i : plan.co_pilot_set(l))
            s += moments.mu1[i];
        return s;
    };

    SchemeConstants c;
    c.Z.assign(n, K);
    switch (scheme)
    {
    case Scheme::mr:
        c.G = M * impair;
        break;
    case Scheme::zf: {
        c.G = (M - K) * impair;
        const double s0 = copilot_mu1(0);
        for (std::size_t l : plan.co_pilot_set(0))
            c.Z[l] = K * (1.0 - impair * moments.mu1[l] / (s0 + noise_b));
        break;
    }
    case Scheme::pzf:
        c.G = (M - cfg.pilots()) * impair;
        for (std::size_t l = 0; l < n; ++l)
            c.Z[l] = K * (1.0 - impair * moments.mu1[l] / (copilot_mu1(l) + noise_b));
        break;
    }
    return c;
}

double interference_term(Scheme scheme, const SeConfig &cfg, const MomentTable &moments, const PilotPlan &plan)
{
    const SchemeConstants c = scheme_constants(scheme, cfg, moments, plan);
    const double noise = 1.0 / cfg.snr;
    const double noise_b = noise / cfg.pilots();

    double contamination = 0.0;
    double own = 0.0;
    for (std::size_t l : plan.co_pilot_set(0))
    {
        own += moments.mu1[l];
        if (l == 0)
            continue;
        const double m1 = moments.mu1[l], m2 = moments.mu2[l];
        contamination += m2 + (m2 - m1 * m1) / c.G;
    }
    double weighted = 0.0;
    for (std::size_t l = 0; l < moments.size(); ++l)
        weighted += moments.mu1[l] * c.Z[l];
    return contamination + (weighted + noise) * (own + noise_b) / c.G;
}

SeResult se_from_interference(const SeConfig &cfg, double interference)
{
    const double e2 = cfg.epsilon * cfg.epsilon;
    SeResult r;
    r.interference = interference;
    r.sinr = (1.0 - e2) / (interference + e2);
    const double prelog = cfg.K * (1.0 - static_cast<double>(cfg.pilots()) / cfg.S);
    r.se_total = prelog * log2_1p(r.sinr);
    r.se_ul = cfg.zeta_ul * r.se_total;
    r.se_dl = cfg.zeta_dl * r.se_total;
    r.per_ue_se = r.se_total / cfg.K;
    return r;
}

SeResult se_joint(Scheme scheme, const SeConfig &cfg, const MomentTable &moments, const PilotPlan &plan)
{
    return se_from_interference(cfg, interference_term(scheme, cfg, moments, plan));
}

AsymptoticSinr asymptotic_sinr(const MomentTable &moments, const PilotPlan &plan, double epsilon)
{
    if (moments.size() != plan.colors().size())
        throw std::invalid_argument("moment table and pilot plan cover different cell sets");
    double c2 = 0.0;
    for (std::size_t l : plan.co_pilot_set(0))
        if (l != 0)
            c2 += moments.mu2[l];
    const double e2 = epsilon * epsilon;
    if (c2 + e2 == 0.0)
        return AsymptoticSinr::unbounded();
    return AsymptoticSinr::finite((1.0 - e2) / (c2 + e2));
}

AsymptoticOptimum asymptotic_se(int S, int beta, const MomentTable &moments, const PilotPlan &plan, double epsilon)
{
    if (plan.beta() != beta)
        throw std::invalid_argument("pilot plan reuse factor does not match beta");
    if (S < 2 * beta)
        throw InfeasibleConfig("asymptotic optimum needs S >= 2 beta");
    AsymptoticOptimum o;
    o.k_floor = S / (2 * beta);
    o.k_ceil = (S + 2 * beta - 1) / (2 * beta);
    // K (S - beta K) is the only K-dependent factor.
    auto value = [&](long k) { return k * (S - beta * k); };
    o.k_star = value(o.k_ceil) > value(o.k_floor) ? o.k_ceil : o.k_floor;
    const AsymptoticSinr sinr = asymptotic_sinr(moments, plan, epsilon);
    if (!sinr.is_unbounded())
        o.se_infinity = o.k_star * (1.0 - static_cast<double>(beta) * o.k_star / S) * log2_1p(sinr.value());
    return o;
}

InterferenceModel::InterferenceModel(const MomentTable &moments, const PilotPlan &plan)
    : beta_(plan.beta()), own_color_(plan.color_of_index(0))
{
    if (moments.size() != plan.colors().size() || moments.size() == 0 || moments.cells[0] != CellId{0, 0})
        throw std::invalid_argument("moment table and pilot plan cover different cell sets");
    color_mu1_.assign(beta_, 0.0);
    color_mu1sq_.assign(beta_, 0.0);
    for (std::size_t l = 0; l < moments.size(); ++l)
    {
        const double m1 = moments.mu1[l];
        const int c = plan.color_of_index(l);
        total_mu1_ += m1;
        color_mu1_[c] += m1;
        color_mu1sq_[c] += m1 * m1;
        if (l != 0 && c == own_color_)
        {
            contamination_mu2_ += moments.mu2[l];
            contamination_var_ += moments.mu2[l] - m1 * m1;
        }
    }
}

double InterferenceModel::interference(Scheme scheme, const SeConfig &cfg) const
{
    if (cfg.beta != beta_)
        throw std::invalid_argument("interference model built for a different reuse factor");
    cfg.validate(scheme);
    const double impair = 1.0 - cfg.epsilon * cfg.epsilon;
    const double noise = 1.0 / cfg.snr;
    const double noise_b = noise / cfg.pilots();
    const double K = cfg.K;
    const double s0 = color_mu1_[own_color_];

    double G = 0.0;
    double weighted = K * total_mu1_;
    switch (scheme)
    {
    case Scheme::mr:
        G = static_cast<double>(cfg.M) * impair;
        break;
    case Scheme::zf:
        G = static_cast<double>(cfg.M - cfg.K) * impair;
        weighted -= K * impair * color_mu1sq_[own_color_] / (s0 + noise_b);
        break;
    case Scheme::pzf:
        G = static_cast<double>(cfg.M - cfg.pilots()) * impair;
        for (int c = 0; c < beta_; ++c)
            weighted -= K * impair * color_mu1sq_[c] / (color_mu1_[c] + noise_b);
        break;
    }
    return contamination_mu2_ + contamination_var_ / G + (weighted + noise) * (s0 + noise_b) / G;
}

SeResult InterferenceModel::evaluate(Scheme scheme, const SeConfig &cfg) const
{
    return se_from_interference(cfg, interference(scheme, cfg));
}

AsymptoticSinr InterferenceModel::asymptotic(double epsilon) const
{
    const double e2 = epsilon * epsilon;
    if (contamination_mu2_ + e2 == 0.0)
        return AsymptoticSinr::unbounded();
    return AsymptoticSinr::finite((1.0 - e2) / (contamination_mu2_ + e2));
}

} // namespace massivese
