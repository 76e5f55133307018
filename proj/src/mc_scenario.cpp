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
#include <complex>
#include <numbers>
#include <stdexcept>

namespace massivese
{

Eigen::MatrixXcd dft_pilot_book(int B)
{
    if (B < 1)
        throw std::invalid_argument("dft_pilot_book: B must be >= 1");
    Eigen::MatrixXcd V(B, B);
    for (int r = 0; r < B; ++r)
        for (int c = 0; c < B; ++c)
        {
            // reduce the exponent first to keep the phase accurate for large B
            const long e = (static_cast<long>(r) * c) % B;
            V(r, c) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(e) / B);
        }
    return V;
}

double McScenario::variance(std::size_t bs, std::size_t ue) const
{
    return grid.pathloss_from(bs, ue_positions[ue]);
}

double McScenario::gain_ratio(std::size_t bs, std::size_t ue) const
{
    const std::size_t own = cell_of(ue);
    if (bs == own)
        return 1.0;
    // ratio of distances avoids the pathloss constant
    const double d_bs = distance(grid.bs(bs), ue_positions[ue]);
    const double d_own = distance(grid.bs(own), ue_positions[ue]);
    return std::pow(d_own / d_bs, grid.kappa());
}

McScenario make_scenario(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg,
                         std::vector<Point> ue_positions)
{
    cfg.validate();
    if (plan.beta() != cfg.beta || plan.users_per_cell() != cfg.K)
        throw std::invalid_argument("make_scenario: pilot plan does not match the configuration");
    if (ue_positions.size() != net.size() * static_cast<std::size_t>(cfg.K))
        throw std::invalid_argument("make_scenario: need K positions per cell");

    McScenario sc{net, plan, cfg, std::move(ue_positions), {}, {}, dft_pilot_book(cfg.pilots())};
    const std::size_t U = sc.ue_positions.size();
    sc.pilot_index.resize(U);
    sc.power.resize(U);
    for (std::size_t u = 0; u < U; ++u)
    {
        const std::size_t l = sc.cell_of(u);
        const int k = static_cast<int>(u % cfg.K);
        sc.pilot_index[u] = plan.pilot_index(l, k);
        sc.power[u] = sc.rho() / net.pathloss_from(l, sc.ue_positions[u]);
    }
    return sc;
}

McScenario sample_scenario(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg, Engine &rng)
{
    std::vector<Point> pos;
    pos.reserve(net.size() * cfg.K);
    for (std::size_t l = 0; l < net.size(); ++l)
        for (int k = 0; k < cfg.K; ++k)
            pos.push_back(sample_ue_position(net.cell(l), net, rng));
    return make_scenario(net, plan, cfg, std::move(pos));
}

Eigen::MatrixXcd build_psi_matrix(const McScenario &sc, std::size_t bs)
{
    const int B = sc.pilots();
    Eigen::MatrixXcd psi = (McScenario::sigma2 / sc.rho()) * Eigen::MatrixXcd::Identity(B, B);
    for (std::size_t u = 0; u < sc.n_users(); ++u)
    {
        const auto v = sc.pilot_book.col(sc.pilot_index[u]);
        psi.noalias() += sc.gain_ratio(bs, u) * (v * v.adjoint());
    }
    return psi;
}

Eigen::VectorXd mmse_error_variance(const McScenario &sc, std::size_t bs)
{
    const std::size_t U = sc.n_users();
    const int B = sc.pilots();
    Eigen::VectorXd lambda(U);
    for (std::size_t u = 0; u < U; ++u)
        lambda[u] = sc.gain_ratio(bs, u);
    Eigen::VectorXd out(U);
    for (std::size_t u = 0; u < U; ++u)
    {
        const auto vu = sc.pilot_book.col(sc.pilot_index[u]);
        double den = McScenario::sigma2 / sc.rho();
        for (std::size_t m = 0; m < U; ++m)
            den += lambda[m] * std::real(vu.dot(sc.pilot_book.col(sc.pilot_index[m])));
        out[u] = sc.rho() * lambda[u] * (1.0 - lambda[u] * B / den);
    }
    return out;
}

std::vector<double> closed_form_fixed_sinr(Scheme scheme, const McScenario &sc, std::size_t bs)
{
    const SeConfig &cfg = sc.config;
    cfg.validate(scheme);
    const int K = cfg.K;
    const int B = sc.pilots();
    const std::size_t U = sc.n_users();
    const double M = static_cast<double>(cfg.M);
    const double rho = sc.rho();

    const Eigen::MatrixXcd psi = build_psi_matrix(sc, bs);
    const Eigen::LLT<Eigen::MatrixXcd> llt(psi);
    if (llt.info() != Eigen::Success)
        throw LinearAlgebraError("closed_form_fixed_sinr: Psi is not positive definite");
    const Eigen::MatrixXcd P = sc.pilot_book.adjoint() * llt.solve(sc.pilot_book);

    std::vector<bool> own_pilot(B, false);
    for (int k = 0; k < K; ++k)
        own_pilot[sc.pilot_index[bs * K + k]] = true;

    std::vector<double> out(K);
    for (int k = 0; k < K; ++k)
    {
        const int bk = sc.pilot_index[bs * K + k];
        const double a = std::real(P(bk, bk));
        double den = 0.0;
        if (scheme == Scheme::mr)
        {
            for (std::size_t u = 0; u < U; ++u)
            {
                const double lam = sc.gain_ratio(bs, u);
                den += lam / M + lam * lam * std::real(P(bk, sc.pilot_index[u]));
            }
            den += -a + McScenario::sigma2 / (M * rho);
            out[k] = a / den;
            continue;
        }
        const double G = scheme == Scheme::zf ? M - K : M - B;
        for (std::size_t u = 0; u < U; ++u)
        {
            const int bu = sc.pilot_index[u];
            const double lam = sc.gain_ratio(bs, u);
            const double overlap = std::real(sc.pilot_book.col(bk).dot(sc.pilot_book.col(bu))) / B;
            const double A = (scheme == Scheme::pzf || own_pilot[bu]) ? 1.0 : 0.0;
            den += lam * lam * overlap + rho * lam * (1.0 - A * lam * std::real(P(bu, bu))) / (G * rho * a);
        }
        den += -1.0 + McScenario::sigma2 / (G * rho * a);
        out[k] = 1.0 / den;
    }
    return out;
}

} // namespace massivese
