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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace massivese
{

namespace
{
struct Partial
{
    std::vector<BsExpectations> per_bs;
};

BsExpectations zero_expectations(int K, std::size_t U)
{
    return {Eigen::VectorXcd::Zero(K), Eigen::MatrixXd::Zero(K, static_cast<Eigen::Index>(U)),
            Eigen::VectorXd::Zero(K)};
}
} // namespace

Eigen::MatrixXcd draw_channels(const McScenario &sc, std::size_t bs, Engine &rng)
{
    const auto M = static_cast<Eigen::Index>(sc.config.M);
    const auto U = static_cast<Eigen::Index>(sc.n_users());
    ComplexNormal cn;
    Eigen::MatrixXcd h(M, U);
    for (Eigen::Index u = 0; u < U; ++u)
    {
        const double s = std::sqrt(sc.variance(bs, static_cast<std::size_t>(u)));
        for (Eigen::Index m = 0; m < M; ++m)
            h(m, u) = s * cn(rng);
    }
    return h;
}

Eigen::MatrixXcd received_pilot_block(const McScenario &sc, const Eigen::MatrixXcd &h, Engine &rng)
{
    const Eigen::Index M = h.rows();
    const Eigen::Index U = h.cols();
    const int B = sc.pilots();
    Eigen::MatrixXcd vt(U, B); // row u = v_{b_u}^T
    for (Eigen::Index u = 0; u < U; ++u)
        vt.row(u) = std::sqrt(sc.power[u]) * sc.pilot_book.col(sc.pilot_index[u]).transpose();
    Eigen::MatrixXcd Y = h * vt;
    ComplexNormal cn;
    const double sn = std::sqrt(McScenario::sigma2);
    for (Eigen::Index b = 0; b < B; ++b)
        for (Eigen::Index m = 0; m < M; ++m)
            Y(m, b) += sn * cn(rng);
    return Y;
}

Eigen::MatrixXcd estimation_filter(const McScenario &sc, std::size_t bs)
{
    const Eigen::MatrixXcd psi_t = build_psi_matrix(sc, bs).transpose();
    const Eigen::LLT<Eigen::MatrixXcd> llt(psi_t);
    if (llt.info() != Eigen::Success)
        throw LinearAlgebraError("mmse_estimate: Psi is not positive definite");
    return llt.solve(sc.pilot_book.conjugate());
}

Eigen::MatrixXcd mmse_estimate(const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &Y)
{
    return Y * estimation_filter(sc, bs);
}

Eigen::MatrixXcd effective_estimates(const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &h_hat_v)
{
    const auto U = static_cast<Eigen::Index>(sc.n_users());
    Eigen::MatrixXcd out(h_hat_v.rows(), U);
    for (Eigen::Index u = 0; u < U; ++u)
        out.col(u) = sc.gain_ratio(bs, static_cast<std::size_t>(u)) * h_hat_v.col(sc.pilot_index[u]);
    return out;
}

Eigen::MatrixXcd combiner(Scheme scheme, const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &h_hat_v)
{
    const int K = sc.config.K;
    const Eigen::Index M = h_hat_v.rows();
    Eigen::MatrixXcd g(M, K);
    switch (scheme)
    {
    case Scheme::mr:
        for (int k = 0; k < K; ++k)
            g.col(k) = h_hat_v.col(sc.pilot_index[bs * K + k]);
        break;
    case Scheme::zf: {
        Eigen::MatrixXcd HE(M, K);
        for (int k = 0; k < K; ++k)
            HE.col(k) = h_hat_v.col(sc.pilot_index[bs * K + k]);
        const Eigen::MatrixXcd A = HE.adjoint() * HE;
        const Eigen::LLT<Eigen::MatrixXcd> llt(A);
        if (llt.info() != Eigen::Success)
            throw LinearAlgebraError("ZF combiner: singular Gram matrix");
        g = HE * llt.solve(Eigen::MatrixXcd::Identity(K, K));
        break;
    }
    case Scheme::pzf: {
        const Eigen::MatrixXcd Gm = h_hat_v.adjoint() * h_hat_v;
        const Eigen::LLT<Eigen::MatrixXcd> llt(Gm);
        if (llt.info() != Eigen::Success)
            throw LinearAlgebraError("P-ZF combiner: singular Gram matrix");
        Eigen::MatrixXcd sel = Eigen::MatrixXcd::Zero(Gm.rows(), K);
        for (int k = 0; k < K; ++k)
            sel(sc.pilot_index[bs * K + k], k) = 1.0;
        g = h_hat_v * llt.solve(sel);
        break;
    }
    }
    return g;
}

const BsExpectations &ChannelExpectations::at(std::size_t bs_index) const
{
    auto it = std::find(bs.begin(), bs.end(), bs_index);
    if (it == bs.end())
        throw std::out_of_range("no expectations recorded for this BS");
    return per_bs[static_cast<std::size_t>(it - bs.begin())];
}

ChannelExpectations estimate_expectations(Scheme scheme, const McScenario &sc, std::span<const std::size_t> bs_set,
                                          std::uint64_t n_draws, std::uint64_t seed, Exec exec,
                                          std::uint64_t scenario_id)
{
    sc.config.validate(scheme);
    if (n_draws == 0)
        throw std::invalid_argument("estimate_expectations: need at least one draw");
    const int K = sc.config.K;
    const std::size_t U = sc.n_users();
    const std::size_t nb = bs_set.size();
    const std::uint64_t n_chunks = (n_draws + draw_chunk - 1) / draw_chunk;
    std::vector<Partial> partials(n_chunks);
    std::vector<Eigen::MatrixXcd> filters;
    for (std::size_t j : bs_set)
        filters.push_back(estimation_filter(sc, j));

    auto run_chunk = [&](std::uint64_t c) {
        Partial &p = partials[c];
        p.per_bs.assign(nb, zero_expectations(K, U));
        Engine rng = make_stream(seed, streams::antenna_draws, (scenario_id << 32) | c);
        const std::uint64_t end = std::min(n_draws, (c + 1) * draw_chunk);
        for (std::uint64_t d = c * draw_chunk; d < end; ++d)
            for (std::size_t i = 0; i < nb; ++i)
            {
                const std::size_t j = bs_set[i];
                const Eigen::MatrixXcd h = draw_channels(sc, j, rng);
                const Eigen::MatrixXcd Y = received_pilot_block(sc, h, rng);
                const Eigen::MatrixXcd hv = Y * filters[i];
                const Eigen::MatrixXcd g = combiner(scheme, sc, j, hv);
                const Eigen::MatrixXcd gh = g.adjoint() * h;
                BsExpectations &e = p.per_bs[i];
                for (int k = 0; k < K; ++k)
                    e.mean_signal[k] += gh(k, static_cast<Eigen::Index>(j * K + k));
                e.mean_abs2 += gh.cwiseAbs2();
                e.mean_norm2 += g.colwise().squaredNorm().transpose();
            }
    };

    const auto nc = static_cast<long>(n_chunks);
    for_each_index(nc, exec, [&](long c) { run_chunk(static_cast<std::uint64_t>(c)); });

    ChannelExpectations out;
    out.scheme = scheme;
    out.n_draws = n_draws;
    out.bs.assign(bs_set.begin(), bs_set.end());
    out.per_bs.assign(nb, zero_expectations(K, U));
    for (const Partial &p : partials)
        for (std::size_t i = 0; i < nb; ++i)
        {
            out.per_bs[i].mean_signal += p.per_bs[i].mean_signal;
            out.per_bs[i].mean_abs2 += p.per_bs[i].mean_abs2;
            out.per_bs[i].mean_norm2 += p.per_bs[i].mean_norm2;
        }
    const double inv = 1.0 / static_cast<double>(n_draws);
    for (BsExpectations &e : out.per_bs)
    {
        e.mean_signal *= inv;
        e.mean_abs2 *= inv;
        e.mean_norm2 *= inv;
    }
    return out;
}

std::vector<double> ul_sinr(const McScenario &sc, const BsExpectations &ex, std::size_t bs, double epsilon)
{
    const int K = sc.config.K;
    const double keep = 1.0 - epsilon * epsilon;
    std::vector<double> out(K);
    for (int k = 0; k < K; ++k)
    {
        const std::size_t own = bs * K + k;
        const double signal = sc.power[own] * std::norm(ex.mean_signal[k]);
        double total = 0.0;
        for (std::size_t u = 0; u < sc.n_users(); ++u)
            total += sc.power[u] * ex.mean_abs2(k, static_cast<Eigen::Index>(u));
        out[k] = keep * signal / (total - keep * signal + McScenario::sigma2 * ex.mean_norm2[k]);
    }
    return out;
}

} // namespace massivese
