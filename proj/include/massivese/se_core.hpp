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

#ifndef MASSIVESE_SE_CORE_HPP
#define MASSIVESE_SE_CORE_HPP

#include "massivese/hexnet.hpp"
#include "massivese/moments.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace massivese
{

enum class Scheme
{
    mr,
    zf,
    pzf
};

inline constexpr std::array<Scheme, 3> all_schemes{Scheme::mr, Scheme::zf, Scheme::pzf};

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

double db_to_linear(double db);

struct SeConfig
{
    std::int64_t M = 100;
    int K = 10;
    int beta = 1;
    int S = 400;
    double snr = 3.1622776601683795; // 5 dB
    double zeta_ul = 0.5;
    double zeta_dl = 0.5;
    double epsilon = 0.0;

    int pilots() const { return beta * K; }

    // Scheme-independent invariants. Throws std::invalid_argument for bad
    // parameters and InfeasibleConfig when B > S.
    void validate() const;

    // Adds M > K (ZF) or M > B (P-ZF).
    void validate(Scheme scheme) const;

    bool feasible(Scheme scheme) const noexcept;
};

struct SchemeConstants
{
    double G = 0.0;
    std::vector<double> Z; // network cell order
};

struct SeResult
{
    double interference = 0.0;
    double sinr = 0.0;
    double se_ul = 0.0;
    double se_dl = 0.0;
    double se_total = 0.0;
    double per_ue_se = 0.0;
};

// M -> infinity SINR. Unbounded when there is no pilot contamination and no
// hardware impairment.
class AsymptoticSinr
{
public:
    static AsymptoticSinr unbounded() { return AsymptoticSinr(); }
    static AsymptoticSinr finite(double v) { return AsymptoticSinr(v); }

    bool is_unbounded() const { return !value_.has_value(); }
    double value() const; // throws std::logic_error if unbounded

private:
    AsymptoticSinr() = default;
    explicit AsymptoticSinr(double v) : value_(v) {}
    std::optional<double> value_;
};

// Reference path, literal evaluation of every sum. The reference cell is
// network cell 0.
SchemeConstants scheme_constants(Scheme scheme, const SeConfig &cfg, const MomentTable &moments,
                                 const PilotPlan &plan);
double interference_term(Scheme scheme, const SeConfig &cfg, const MomentTable &moments, const PilotPlan &plan);
SeResult se_joint(Scheme scheme, const SeConfig &cfg, const MomentTable &moments, const PilotPlan &plan);

// K (1 - B/S) log2(1 + (1 - eps^2) / (I + eps^2)) split by zeta.
SeResult se_from_interference(const SeConfig &cfg, double interference);

AsymptoticSinr asymptotic_sinr(const MomentTable &moments, const PilotPlan &plan, double epsilon);

struct AsymptoticOptimum
{
    int k_floor = 0;
    int k_ceil = 0;
    int k_star = 0;
    std::optional<double> se_infinity; // empty when the limit SINR is unbounded
};

// Maximiser of K (1 - beta K / S) log2(1 + SINR_inf) over integer K.
AsymptoticOptimum asymptotic_se(int S, int beta, const MomentTable &moments, const PilotPlan &plan,
                                double epsilon = 0.0);

/// Precomputed moment sums for one (moment table, pilot plan) pair.
///
/// Evaluates the same interference term as interference_term() in O(beta)
/// per configuration; used by the optimizer.
class InterferenceModel
{
public:
    InterferenceModel(const MomentTable &moments, const PilotPlan &plan);

    int beta() const { return beta_; }
    double contamination_mu2() const { return contamination_mu2_; }

    double interference(Scheme scheme, const SeConfig &cfg) const;
    SeResult evaluate(Scheme scheme, const SeConfig &cfg) const;
    AsymptoticSinr asymptotic(double epsilon) const;

private:
    int beta_;
    int own_color_;
    double contamination_mu2_ = 0.0; // sum over L_0 \ {0} of mu2
    double contamination_var_ = 0.0; // sum over L_0 \ {0} of mu2 - mu1^2
    double total_mu1_ = 0.0;         // sum over all cells of mu1
    std::vector<double> color_mu1_;  // per colour: sum of mu1
    std::vector<double> color_mu1sq_; // per colour: sum of mu1^2
};

} // namespace massivese

#endif
