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

#include "massivese/mc_oracle.hpp"
#include "massivese/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace massivese
{

namespace
{
// E{|g_lm^H h_{l,u}|^2} / E{||g_lm||^2} for every (u, w = lm).
Eigen::MatrixXd coupling(const McScenario &sc, const ChannelExpectations &ex)
{
    const int K = sc.config.K;
    const auto N = static_cast<Eigen::Index>(sc.n_users());
    Eigen::MatrixXd C(N, N);
    for (std::size_t l = 0; l < sc.n_cells(); ++l)
    {
        const BsExpectations &e = ex.at(l);
        for (int m = 0; m < K; ++m)
        {
            const auto w = static_cast<Eigen::Index>(l * K + m);
            C.col(w) = e.mean_abs2.row(m).transpose() / e.mean_norm2[m];
        }
    }
    return C;
}

// |E{g_jk^H h_jjk}|^2 / E{||g_jk||^2} per UE.
Eigen::VectorXd beamforming_gain(const McScenario &sc, const ChannelExpectations &ex)
{
    const int K = sc.config.K;
    Eigen::VectorXd a(static_cast<Eigen::Index>(sc.n_users()));
    for (std::size_t j = 0; j < sc.n_cells(); ++j)
    {
        const BsExpectations &e = ex.at(j);
        for (int k = 0; k < K; ++k)
            a[static_cast<Eigen::Index>(j * K + k)] = std::norm(e.mean_signal[k]) / e.mean_norm2[k];
    }
    return a;
}
} // namespace

std::vector<double> ul_sinr_all(const McScenario &sc, const ChannelExpectations &ex, double epsilon)
{
    std::vector<double> out;
    out.reserve(sc.n_users());
    for (std::size_t j = 0; j < sc.n_cells(); ++j)
    {
        const auto s = ul_sinr(sc, ex.at(j), j, epsilon);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

DualitySolution duality_power_control(const McScenario &sc, const ChannelExpectations &ex,
                                      std::span<const double> ul_sinrs)
{
    const auto N = static_cast<Eigen::Index>(sc.n_users());
    if (static_cast<Eigen::Index>(ul_sinrs.size()) != N)
        throw std::invalid_argument("duality_power_control: need one SINR target per UE");

    DualitySolution sol;
    const Eigen::VectorXd a = beamforming_gain(sc, ex);
    sol.Psi = coupling(sc, ex);
    sol.Psi.diagonal() -= a;
    sol.D.resize(N);
    for (Eigen::Index u = 0; u < N; ++u)
        sol.D[u] = ul_sinrs[u] / a[u];

    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(N, N) - sol.D.asDiagonal() * sol.Psi;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    sol.rcond = lu.rcond();
    if (!(sol.rcond > 1e-14))
        throw LinearAlgebraError("duality system is singular (rcond " + std::to_string(sol.rcond) + ")");
    sol.q = McScenario::sigma2 * lu.solve(sol.D);
    for (Eigen::Index u = 0; u < N; ++u)
        if (!(sol.q[u] > 0.0))
            throw LinearAlgebraError("duality power control produced a non-positive power for UE " +
                                     std::to_string(u));
    return sol;
}

std::vector<double> dl_sinr(const McScenario &sc, const ChannelExpectations &ex, const Eigen::VectorXd &q)
{
    const Eigen::MatrixXd C = coupling(sc, ex);
    const Eigen::VectorXd a = beamforming_gain(sc, ex);
    const Eigen::VectorXd received = C * q;
    std::vector<double> out(sc.n_users());
    for (Eigen::Index u = 0; u < static_cast<Eigen::Index>(out.size()); ++u)
    {
        const double signal = q[u] * a[u];
        out[u] = signal / (received[u] - signal + McScenario::sigma2);
    }
    return out;
}

std::vector<McSeEstimate> mc_spectral_efficiency(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg,
                                                 std::span<const Scheme> schemes, std::uint64_t n_outer,
                                                 std::uint64_t n_inner, std::uint64_t seed, McDomain domain,
                                                 Exec exec)
{
    if (n_outer < 2)
        throw std::invalid_argument("mc_spectral_efficiency: need at least two position draws");
    for (Scheme s : schemes)
        cfg.validate(s);
    const std::size_t ns = schemes.size();
    const double prelog = cfg.K * (1.0 - static_cast<double>(cfg.pilots()) / cfg.S);
    std::vector<std::vector<double>> per(ns, std::vector<double>(n_outer));

    auto mean_log = [&](const std::vector<double> &sinr) {
        double acc = 0.0;
        for (double x : sinr)
            acc += std::log1p(x) / std::numbers::ln2;
        return prelog * acc / static_cast<double>(sinr.size());
    };

    auto one_position = [&](long o) {
        const auto id = static_cast<std::uint64_t>(o);
        Engine rng = make_stream(seed, streams::positions, id);
        const McScenario sc = sample_scenario(net, plan, cfg, rng);
        if (domain == McDomain::gram)
        {
            const GramExpectations ex = gram_expectations(sc, schemes, n_inner, seed, Exec::serial, id);
            for (std::size_t i = 0; i < ns; ++i)
                per[i][id] = mean_log(gram_ul_sinr(schemes[i], sc, ex));
        }
        else
        {
            const std::size_t bs0[] = {0};
            for (std::size_t i = 0; i < ns; ++i)
            {
                const ChannelExpectations ex =
                    estimate_expectations(schemes[i], sc, bs0, n_inner, seed, Exec::serial, id);
                per[i][id] = mean_log(ul_sinr(sc, ex.at(0), 0));
            }
        }
    };
    for_each_index(static_cast<long>(n_outer), exec, one_position);

    std::vector<McSeEstimate> out(ns);
    for (std::size_t i = 0; i < ns; ++i)
    {
        double sum = 0.0;
        for (double v : per[i])
            sum += v;
        const double mean = sum / static_cast<double>(n_outer);
        double ss = 0.0;
        for (double v : per[i])
            ss += (v - mean) * (v - mean);
        out[i].scheme = schemes[i];
        out[i].mean_se = mean;
        out[i].stderr_se = std::sqrt(ss / static_cast<double>(n_outer - 1) / static_cast<double>(n_outer));
        out[i].per_position_se = std::move(per[i]);
    }
    return out;
}

} // namespace massivese
