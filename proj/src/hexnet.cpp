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

#include "massivese/hexnet.hpp"
#include "massivese/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace massivese
{

namespace
{
constexpr double kSqrt3 = 1.73205080756887729353;

long floor_mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}
} // namespace

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

int tier_of(CellId cell)
{
    return (std::abs(cell.a1) + std::abs(cell.a2) + std::abs(cell.a1 + cell.a2)) / 2;
}

Point bs_position(CellId cell, double r)
{
    // sqrt(3) * (sqrt(3) r / 2) = 1.5 r
    return {1.5 * r * cell.a1, kSqrt3 * r * (0.5 * cell.a1 + cell.a2)};
}

double pathloss(Point bs, Point ue, double C, double kappa)
{
    const double d = distance(bs, ue);
    if (!(d > 0.0))
        throw std::domain_error("pathloss: UE coincides with BS");
    return C * std::pow(d, -kappa);
}

HexNetwork::HexNetwork(int tiers, double cell_radius, double kappa, double pathloss_ref, double min_ue_distance_factor)
    : tiers_(tiers), radius_(cell_radius), kappa_(kappa), pathloss_ref_(pathloss_ref),
      min_ue_factor_(min_ue_distance_factor)
{
    if (tiers < 0)
        throw std::invalid_argument("HexNetwork: tiers must be >= 0");
    if (!(cell_radius > 0.0))
        throw std::invalid_argument("HexNetwork: cell radius must be positive");
    if (!(kappa > 0.0))
        throw std::invalid_argument("HexNetwork: pathloss exponent must be positive");
    if (!(pathloss_ref > 0.0))
        throw std::invalid_argument("HexNetwork: pathloss constant must be positive");
    if (min_ue_distance_factor < 0.0 || min_ue_distance_factor >= kSqrt3 / 2.0)
        throw std::invalid_argument("HexNetwork: min UE distance factor must lie in [0, sqrt(3)/2)");

    for (int a1 = -tiers; a1 <= tiers; ++a1)
        for (int a2 = -tiers; a2 <= tiers; ++a2)
            if (tier_of({a1, a2}) <= tiers)
                cells_.push_back({a1, a2});
    std::sort(cells_.begin(), cells_.end(), [](CellId a, CellId b) {
        const int ta = tier_of(a), tb = tier_of(b);
        if (ta != tb)
            return ta < tb;
        return a < b;
    });
    bs_.reserve(cells_.size());
    for (CellId c : cells_)
        bs_.push_back(bs_position(c, radius_));
}

std::optional<std::size_t> HexNetwork::index_of(CellId cell) const
{
    if (tier_of(cell) > tiers_)
        return std::nullopt;
    auto it = std::find(cells_.begin(), cells_.end(), cell);
    if (it == cells_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
}

bool HexNetwork::hex_contains(CellId cell, Point p) const
{
    const Point c = bs(cell);
    const double x = std::abs(p.x - c.x);
    const double y = std::abs(p.y - c.y);
    const double tol = 1e-12 * radius_;
    return y <= kSqrt3 / 2.0 * radius_ + tol && kSqrt3 * x + y <= kSqrt3 * radius_ + tol;
}

double HexNetwork::pathloss_from(std::size_t bs_index, Point ue) const
{
    return pathloss(bs_.at(bs_index), ue, pathloss_ref_, kappa_);
}

Point sample_ue_position(CellId cell, const HexNetwork &net, Engine &rng, SamplingStats *stats)
{
    const double r = net.cell_radius();
    const double h = kSqrt3 / 2.0 * r;
    const double dmin2 = net.min_ue_distance() * net.min_ue_distance();
    const Point c = net.bs(cell);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;)
    {
        const double u = r * (2.0 * unit(rng) - 1.0);
        const double v = h * (2.0 * unit(rng) - 1.0);
        if (stats)
            ++stats->attempts;
        if (kSqrt3 * std::abs(u) + std::abs(v) > kSqrt3 * r)
            continue;
        if (u * u + v * v < dmin2)
            continue;
        if (stats)
            ++stats->accepted;
        return {c.x + u, c.y + v};
    }
}

bool is_symmetric_reuse_factor(int beta)
{
    if (beta < 1)
        return false;
    for (int i = 0; i * i <= beta; ++i)
        for (int j = 0; j <= i; ++j)
            if (i * i + i * j + j * j == beta)
                return true;
    return false;
}

std::pair<int, int> reuse_shift(int beta)
{
    if (beta >= 1)
        for (int i = 1; i * i <= beta; ++i)
            for (int j = 0; j <= i; ++j)
                if (i * i + i * j + j * j == beta)
                    return {i, j};
    throw InvalidReuseFactor("reuse factor " + std::to_string(beta) + " is not of the form i^2 + ij + j^2");
}

PilotPlan::PilotPlan(int beta, const HexNetwork &net, int users_per_cell) : beta_(beta), users_(users_per_cell)
{
    if (users_per_cell < 1)
        throw std::invalid_argument("PilotPlan: users per cell must be >= 1");
    std::tie(shift_i_, shift_j_) = reuse_shift(beta);

    // Every coset has a representative in this box.
    for (int a1 = -beta; a1 <= beta; ++a1)
        for (int a2 = -beta; a2 <= beta; ++a2)
            keys_.push_back(coset_key({a1, a2}));
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    if (static_cast<int>(keys_.size()) != beta)
        throw std::logic_error("PilotPlan: coset enumeration failed");

    classes_.assign(beta, {});
    colors_.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i)
    {
        const int c = color_of(net.cell(i));
        colors_.push_back(c);
        classes_[c].push_back(i);
    }
}

std::pair<long, long> PilotPlan::coset_key(CellId cell) const
{
    // Coordinates of the cell in the basis s1 = (i, j), s2 = (-j, i + j),
    // scaled by the determinant beta.
    const long i = shift_i_, j = shift_j_, a1 = cell.a1, a2 = cell.a2;
    const long m = (i + j) * a1 + j * a2;
    const long n = -j * a1 + i * a2;
    return {floor_mod(m, beta_), floor_mod(n, beta_)};
}

int PilotPlan::color_of(CellId cell) const
{
    const auto key = coset_key(cell);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    return static_cast<int>(it - keys_.begin());
}

const std::vector<std::size_t> &PilotPlan::co_pilot_set(std::size_t cell_index) const
{
    return classes_.at(colors_.at(cell_index));
}

PilotPlan make_pilot_plan(int beta, const HexNetwork &net, int users_per_cell)
{
    return PilotPlan(beta, net, users_per_cell);
}

} // namespace massivese
