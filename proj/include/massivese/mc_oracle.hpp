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

#ifndef MASSIVESE_MC_ORACLE_HPP
#define MASSIVESE_MC_ORACLE_HPP

#include "massivese/exec.hpp"
#include "massivese/hexnet.hpp"
#include "massivese/rng.hpp"
#include "massivese/se_core.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace massivese
{

// B x B DFT matrix, entries exp(-2 pi i r c / B); columns are the pilots.
Eigen::MatrixXcd dft_pilot_book(int B);

/// One network realisation for the Monte-Carlo oracle.
///
/// UEs are indexed u = cell * K + k in network cell order. Noise power is 1,
/// so the transmit SNR rho equals config.snr and UE u transmits with power
/// rho / d_own(z_u).
struct McScenario
{
    HexNetwork grid;
    PilotPlan plan;
    SeConfig config;
    std::vector<Point> ue_positions;
    std::vector<int> pilot_index;
    std::vector<double> power;
    Eigen::MatrixXcd pilot_book;

    static constexpr double sigma2 = 1.0;

    int users_per_cell() const { return config.K; }
    int pilots() const { return config.pilots(); }
    std::size_t n_cells() const { return grid.size(); }
    std::size_t n_users() const { return ue_positions.size(); }
    std::size_t cell_of(std::size_t ue) const { return ue / config.K; }
    double rho() const { return config.snr; }

    // d_bs(z_u)
    double variance(std::size_t bs, std::size_t ue) const;
    // d_bs(z_u) / d_own(z_u)
    double gain_ratio(std::size_t bs, std::size_t ue) const;
};

McScenario make_scenario(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg,
                         std::vector<Point> ue_positions);
McScenario sample_scenario(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg, Engine &rng);

// Psi_j = sum_u lambda_ju v_u v_u^H + (sigma^2 / rho) I_B.
Eigen::MatrixXcd build_psi_matrix(const McScenario &sc, std::size_t bs);

// Per-UE error variance (diagonal of the MMSE error covariance) at BS `bs`.
Eigen::VectorXd mmse_error_variance(const McScenario &sc, std::size_t bs);

// Raw channels h_{bs,u}, one CN(0, d_bs(z_u) I_M) column per UE.
Eigen::MatrixXcd draw_channels(const McScenario &sc, std::size_t bs, Engine &rng);

// Y = sum_u sqrt(p_u) h_u v_u^T + N.
Eigen::MatrixXcd received_pilot_block(const McScenario &sc, const Eigen::MatrixXcd &h, Engine &rng);

// (Psi^T)^{-1} V^*, fixed for a scenario.
Eigen::MatrixXcd estimation_filter(const McScenario &sc, std::size_t bs);

// H_V = Y (Psi^T)^{-1} V^*, the M x B matrix whose column b estimates the
// pilot-b direction. Effective estimate of UE u is lambda_u H_V e_{b_u}.
Eigen::MatrixXcd mmse_estimate(const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &Y);
Eigen::MatrixXcd effective_estimates(const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &h_hat_v);

// M x K combining vectors of the K UEs served by `bs`. Throws
// LinearAlgebraError when the Gram matrix is singular.
Eigen::MatrixXcd combiner(Scheme scheme, const McScenario &sc, std::size_t bs, const Eigen::MatrixXcd &h_hat_v);

// Channel-draw averages seen by one BS for its own K UEs.
struct BsExpectations
{
    Eigen::VectorXcd mean_signal; // E{g_k^H h_{bs,bs,k}}
    Eigen::MatrixXd mean_abs2;    // K x U, E{|g_k^H h_{bs,u}|^2}
    Eigen::VectorXd mean_norm2;   // E{||g_k||^2}
};

struct ChannelExpectations
{
    Scheme scheme = Scheme::mr;
    std::uint64_t n_draws = 0;
    std::vector<std::size_t> bs;
    std::vector<BsExpectations> per_bs;

    const BsExpectations &at(std::size_t bs_index) const;
};

// Draws are split into fixed chunks of `draw_chunk` with one rng substream
// each; partial sums are combined in chunk order.
inline constexpr std::uint64_t draw_chunk = 64;

ChannelExpectations estimate_expectations(Scheme scheme, const McScenario &sc, std::span<const std::size_t> bs_set,
                                          std::uint64_t n_draws, std::uint64_t seed, Exec exec = Exec::parallel,
                                          std::uint64_t scenario_id = 0);

// UL SINR of the K UEs of `bs` from channel-draw averages, with hardware
// impairment level epsilon (0 gives the unimpaired expression).
std::vector<double> ul_sinr(const McScenario &sc, const BsExpectations &ex, std::size_t bs, double epsilon = 0.0);

// Fixed-position closed forms (channel expectations evaluated analytically).
std::vector<double> closed_form_fixed_sinr(Scheme scheme, const McScenario &sc, std::size_t bs);

/// Reference-cell statistics from the Gram-domain sampler.
///
/// With an orthogonal pilot book H_V = W diag(s) where W has iid CN(0, 1)
/// entries, so every combiner statistic is a function of the Gram matrix
/// H_V^H H_V = diag(s) Q diag(s) with Q complex Wishart. Q is sampled by the
/// Bartlett decomposition when M >= B.
struct GramStats
{
    Eigen::VectorXcd mean_signal; // E{g_k^H H_V e_{b_k}}
    Eigen::MatrixXd mean_cross;   // K x B, E{|g_k^H H_V e_b|^2}
    Eigen::VectorXd mean_norm2;
};

struct GramExpectations
{
    std::uint64_t n_draws = 0;
    std::array<bool, 3> has{};
    std::array<GramStats, 3> stats;

    const GramStats &at(Scheme s) const;
};

// Column scales s_b of H_V at BS 0.
Eigen::VectorXd estimate_scales(const McScenario &sc);

// Complex Wishart CW_B(M, I) sample.
Eigen::MatrixXcd sample_wishart(int B, std::int64_t M, Engine &rng);

GramExpectations gram_expectations(const McScenario &sc, std::span<const Scheme> schemes, std::uint64_t n_draws,
                                   std::uint64_t seed, Exec exec = Exec::parallel, std::uint64_t scenario_id = 0);

// UL SINR of the reference-cell UEs; the interference power is evaluated
// conditionally on the estimates (estimate plus independent error).
std::vector<double> gram_ul_sinr(Scheme scheme, const McScenario &sc, const GramExpectations &ex,
                                 double epsilon = 0.0);

struct DualitySolution
{
    Eigen::VectorXd q;
    Eigen::VectorXd D;
    Eigen::MatrixXd Psi;
    double rcond = 0.0;
};

// UL SINRs of every UE in every cell; `ex` must cover all BSs.
std::vector<double> ul_sinr_all(const McScenario &sc, const ChannelExpectations &ex, double epsilon = 0.0);

// q = sigma^2 (I - D Psi)^{-1} D 1. Throws LinearAlgebraError if the system is
// singular or any power is not positive.
DualitySolution duality_power_control(const McScenario &sc, const ChannelExpectations &ex,
                                      std::span<const double> ul_sinrs);

// DL SINR of every UE with precoders equal to the normalised combiners.
std::vector<double> dl_sinr(const McScenario &sc, const ChannelExpectations &ex, const Eigen::VectorXd &q);

enum class McDomain
{
    antenna,
    gram
};

struct McSeEstimate
{
    Scheme scheme = Scheme::mr;
    double mean_se = 0.0; // bit/s/Hz/cell
    double stderr_se = 0.0;
    std::vector<double> per_position_se;
};

// Two-level estimate of the per-cell SE of the reference cell: n_outer iid
// position draws, each with n_inner channel draws. The standard error is the
// spread over position draws, which already contains the inner noise.
std::vector<McSeEstimate> mc_spectral_efficiency(const HexNetwork &net, const PilotPlan &plan, const SeConfig &cfg,
                                                 std::span<const Scheme> schemes, std::uint64_t n_outer,
                                                 std::uint64_t n_inner, std::uint64_t seed, McDomain domain,
                                                 Exec exec = Exec::parallel);

} // namespace massivese

#endif
