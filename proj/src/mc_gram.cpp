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
#include <random>
#include <stdexcept>

namespace massivese
{

namespace
{
std::size_t slot(Scheme s)
{
    return static_cast<std::size_t>(s);
}

GramStats zero_stats(int K, int B)
{
    return {Eigen::VectorXcd::Zero(K), Eigen::MatrixXd::Zero(K, B), Eigen::VectorXd::Zero(K)};
}

struct GramPartial
{
    std::array<GramStats, 3> stats;
};
} // namespace

const GramStats &GramExpectations::at(Scheme s) const
{
    if (!has[slot(s)])
        throw std::out_of_range("no Gram statistics recorded for this scheme");
    return stats[slot(s)];
}

Eigen::VectorXd estimate_scales(const McScenario &sc)
{
    const int B = sc.pilots();
    Eigen::VectorXd lam_sum = Eigen::VectorXd::Zero(B);
    for (std::size_t u = 0; u < sc.n_users(); ++u)
        lam_sum[sc.pilot_index[u]] += sc.gain_ratio(0, u);
    Eigen::VectorXd s(B);
    for (int b = 0; b < B; ++b)
        s[b] = std::sqrt(B * sc.rho() / (B * lam_sum[b] + McScenario::sigma2 / sc.rho()));
    return s;
}

Eigen::MatrixXcd sample_wishart(int B, std::int64_t M, Engine &rng)
{
    ComplexNormal cn;
    if (M >= B)
    {
        Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(B, B);
        for (int i = 0; i < B; ++i)
        {
            std::gamma_distribution<double> gamma(static_cast<double>(M - i), 1.0);
            T(i, i) = std::sqrt(gamma(rng));
            for (int j = 0; j < i; ++j)
                T(i, j) = cn(rng);
        }
        return T * T.adjoint();
    }
    Eigen::MatrixXcd W(M, B);
    for (int b = 0; b < B; ++b)
        for (std::int64_t m = 0; m < M; ++m)
            W(m, b) = cn(rng);
    return W.adjoint() * W;
}

GramExpectations gram_expectations(const McScenario &sc, std::span<const Scheme> schemes, std::uint64_t n_draws,
                                   std::uint64_t seed, Exec exec, std::uint64_t scenario_id)
{
    if (n_draws == 0)
        throw std::invalid_argument("gram_expectations: need at least one draw");
    for (Scheme s : schemes)
        sc.config.validate(s);
    const int K = sc.config.K;
    const int B = sc.pilots();
    const std::int64_t M = sc.config.M;
    const Eigen::VectorXd s = estimate_scales(sc);
    std::vector<int> own(K);
    for (int k = 0; k < K; ++k)
        own[k] = sc.pilot_index[k];
    std::array<bool, 3> want{};
    for (Scheme x : schemes)
        want[slot(x)] = true;

    const std::uint64_t n_chunks = (n_draws + draw_chunk - 1) / draw_chunk;
    std::vector<GramPartial> partials(n_chunks);

    // Pilots other than the reference cell's, in increasing order.
    std::vector<int> others;
    for (int b = 0; b < B; ++b)
        if (std::find(own.begin(), own.end(), b) == own.end())
            others.push_back(b);
    const bool bartlett = M >= B;
    const bool need_rows = want[slot(Scheme::mr)] || want[slot(Scheme::zf)];

    // Rows of G for the K own pilots, columns in pilot order. With the
    // Bartlett factor T of a Wishart matrix whose first K indices are the own
    // pilots, those rows only involve the first K columns of T.
    auto own_rows = [&](Engine &rng, ComplexNormal &cn) {
        Eigen::MatrixXcd rows(K, B);
        if (bartlett)
        {
            Eigen::MatrixXcd T1 = Eigen::MatrixXcd::Zero(B, K);
            for (int i = 0; i < K; ++i)
            {
                std::gamma_distribution<double> gamma(static_cast<double>(M - i), 1.0);
                T1(i, i) = std::sqrt(gamma(rng));
                for (int j = 0; j < i; ++j)
                    T1(i, j) = cn(rng);
            }
            for (int i = K; i < B; ++i)
                for (int j = 0; j < K; ++j)
                    T1(i, j) = cn(rng);
            const Eigen::MatrixXcd Qrows = T1.topRows(K) * T1.adjoint();
            for (int k = 0; k < K; ++k)
            {
                for (int m = 0; m < K; ++m)
                    rows(k, own[m]) = Qrows(k, m);
                for (int i = 0; i < B - K; ++i)
                    rows(k, others[i]) = Qrows(k, K + i);
            }
        }
        else
        {
            const Eigen::MatrixXcd Q = sample_wishart(B, M, rng);
            for (int k = 0; k < K; ++k)
                rows.row(k) = Q.row(own[k]);
        }
        for (int k = 0; k < K; ++k)
            for (int b = 0; b < B; ++b)
                rows(k, b) *= s[own[k]] * s[b];
        return rows;
    };

    auto run_chunk = [&](std::uint64_t c) {
        GramPartial &p = partials[c];
        for (auto &st : p.stats)
            st = zero_stats(K, B);
        Engine rng = make_stream(seed, streams::gram_draws, (scenario_id << 32) | c);
        ComplexNormal cn;
        const std::uint64_t end = std::min(n_draws, (c + 1) * draw_chunk);
        for (std::uint64_t d = c * draw_chunk; d < end; ++d)
        {
            if (need_rows)
            {
                const Eigen::MatrixXcd GE = own_rows(rng, cn);
                if (want[slot(Scheme::mr)])
                {
                    GramStats &st = p.stats[slot(Scheme::mr)];
                    for (int k = 0; k < K; ++k)
                    {
                        st.mean_signal[k] += GE(k, own[k]);
                        st.mean_norm2[k] += std::real(GE(k, own[k]));
                    }
                    st.mean_cross += GE.cwiseAbs2();
                }
                if (want[slot(Scheme::zf)])
                {
                    Eigen::MatrixXcd A(K, K);
                    for (int k = 0; k < K; ++k)
                        A.col(k) = GE.col(own[k]);
                    const Eigen::LLT<Eigen::MatrixXcd> llt(A);
                    if (llt.info() != Eigen::Success)
                        throw LinearAlgebraError("gram ZF: singular Gram matrix");
                    const Eigen::MatrixXcd Ainv = llt.solve(Eigen::MatrixXcd::Identity(K, K));
                    const Eigen::MatrixXcd R = Ainv * GE;
                    GramStats &st = p.stats[slot(Scheme::zf)];
                    for (int k = 0; k < K; ++k)
                    {
                        st.mean_signal[k] += R(k, own[k]);
                        st.mean_norm2[k] += std::real(Ainv(k, k));
                    }
                    st.mean_cross += R.cwiseAbs2();
                }
            }
            if (want[slot(Scheme::pzf)])
            {
                // P-ZF nulls every estimated direction, so g_k^H H_V = e_{b_k}^T
                // and only ||g_k||^2 = [G^-1]_{b_k b_k} is random. With the own
                // pilots as the last K Bartlett indices it depends on the
                // trailing K x K block of T alone.
                Eigen::MatrixXcd T22 = Eigen::MatrixXcd::Zero(K, K);
                for (int i = 0; i < K; ++i)
                {
                    std::gamma_distribution<double> gamma(static_cast<double>(M - (B - K) - i), 1.0);
                    T22(i, i) = std::sqrt(gamma(rng));
                    for (int j = 0; j < i; ++j)
                        T22(i, j) = cn(rng);
                }
                const Eigen::MatrixXcd Tinv = T22.triangularView<Eigen::Lower>().solve(
                    Eigen::MatrixXcd::Identity(K, K));
                GramStats &st = p.stats[slot(Scheme::pzf)];
                for (int k = 0; k < K; ++k)
                {
                    st.mean_signal[k] += 1.0;
                    st.mean_cross(k, own[k]) += 1.0;
                    st.mean_norm2[k] += Tinv.col(k).squaredNorm() / (s[own[k]] * s[own[k]]);
                }
            }
        }
    };

    const auto nc = static_cast<long>(n_chunks);
    for_each_index(nc, exec, [&](long c) { run_chunk(static_cast<std::uint64_t>(c)); });

    GramExpectations out;
    out.n_draws = n_draws;
    out.has = want;
    const double inv = 1.0 / static_cast<double>(n_draws);
    for (std::size_t i = 0; i < 3; ++i)
    {
        out.stats[i] = zero_stats(K, B);
        if (!want[i])
            continue;
        for (const GramPartial &p : partials)
        {
            out.stats[i].mean_signal += p.stats[i].mean_signal;
            out.stats[i].mean_cross += p.stats[i].mean_cross;
            out.stats[i].mean_norm2 += p.stats[i].mean_norm2;
        }
        out.stats[i].mean_signal *= inv;
        out.stats[i].mean_cross *= inv;
        out.stats[i].mean_norm2 *= inv;
    }
    return out;
}

std::vector<double> gram_ul_sinr(Scheme scheme, const McScenario &sc, const GramExpectations &ex, double epsilon)
{
    const GramStats &st = ex.at(scheme);
    const int K = sc.config.K;
    const int B = sc.pilots();
    const double keep = 1.0 - epsilon * epsilon;

    Eigen::VectorXd lam2 = Eigen::VectorXd::Zero(B);
    for (std::size_t u = 0; u < sc.n_users(); ++u)
    {
        const double l = sc.gain_ratio(0, u);
        lam2[sc.pilot_index[u]] += l * l;
    }
    const double c_tot = mmse_error_variance(sc, 0).sum();

    std::vector<double> out(K);
    for (int k = 0; k < K; ++k)
    {
        const double signal = std::norm(st.mean_signal[k]);
        const double total = st.mean_cross.row(k).dot(lam2) + c_tot * st.mean_norm2[k];
        out[k] = keep * signal / (total - keep * signal + McScenario::sigma2 * st.mean_norm2[k]);
    }
    return out;
}

} // namespace massivese
