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

#ifndef MASSIVESE_HEXNET_HPP
#define MASSIVESE_HEXNET_HPP

#include "massivese/rng.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace massivese
{

// Lattice coordinates of a cell. (0, 0) is the reference cell.
struct CellId
{
    int a1 = 0;
    int a2 = 0;

    auto operator<=>(const CellId &) const = default;
};

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

// Hex-lattice distance (tier index) of a cell from (0, 0).
int tier_of(CellId cell);

// BS location: sqrt(3) * [sqrt(3) r / 2; r / 2] * a1 + [0; sqrt(3) r] * a2.
Point bs_position(CellId cell, double r);

// Channel variance C / ||ue - bs||^kappa. Throws std::domain_error if the
// points coincide.
double pathloss(Point bs, Point ue, double C, double kappa);

/// Symmetric hexagonal network truncated to a number of tiers around (0, 0).
///
/// Hexagons are flat-topped: corners at angles 0, 60, ..., 300 degrees and
/// distance r from the BS, edge midpoints at distance sqrt(3) r / 2 facing the
/// six first-tier neighbours. Cell index 0 is always the reference cell; the
/// remaining cells are ordered by tier, then by (a1, a2).
class HexNetwork
{
public:
    explicit HexNetwork(int tiers, double cell_radius = 1.0, double kappa = 3.7, double pathloss_ref = 1.0,
                        double min_ue_distance_factor = 0.14);

    int tiers() const { return tiers_; }
    double cell_radius() const { return radius_; }
    double kappa() const { return kappa_; }
    double pathloss_ref() const { return pathloss_ref_; }
    double min_ue_distance_factor() const { return min_ue_factor_; }
    double min_ue_distance() const { return min_ue_factor_ * radius_; }

    std::size_t size() const { return cells_.size(); }
    std::span<const CellId> cells() const { return cells_; }
    CellId cell(std::size_t index) const { return cells_.at(index); }
    std::optional<std::size_t> index_of(CellId cell) const;

    Point bs(std::size_t index) const { return bs_.at(index); }
    Point bs(CellId cell) const { return bs_position(cell, radius_); }

    // Closed hexagon membership (boundary included, relative tolerance 1e-12).
    bool hex_contains(CellId cell, Point p) const;

    // Pathloss from the BS of network cell `bs_index` to `ue`.
    double pathloss_from(std::size_t bs_index, Point ue) const;

private:
    int tiers_;
    double radius_;
    double kappa_;
    double pathloss_ref_;
    double min_ue_factor_;
    std::vector<CellId> cells_;
    std::vector<Point> bs_;
};

// Counters filled by sample_ue_position when requested.
struct SamplingStats
{
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;

    double acceptance() const { return attempts == 0 ? 0.0 : static_cast<double>(accepted) / attempts; }
};

// Uniform point in the hexagon of `cell` at distance >= min_ue_distance from
// its BS, by rejection from the bounding box.
Point sample_ue_position(CellId cell, const HexNetwork &net, Engine &rng, SamplingStats *stats = nullptr);

// True for beta = i^2 + ij + j^2 with i, j >= 0 not both zero.
bool is_symmetric_reuse_factor(int beta);

// Shift (i, j) with i >= j >= 0 and i^2 + ij + j^2 == beta. Throws
// InvalidReuseFactor otherwise.
std::pair<int, int> reuse_shift(int beta);

/// Pilot-reuse colouring of the hexagonal lattice.
///
/// The colour classes are the cosets of the sub-lattice spanned by the shift
/// (i, j) and its 60 degree rotation (-j, i + j), so every class is itself a
/// translated sub-lattice. Cell (0, 0) has colour 0. UE k of a cell with
/// colour c transmits pilot c * K + k (0-based) from a book of B = beta * K.
class PilotPlan
{
public:
    PilotPlan(int beta, const HexNetwork &net, int users_per_cell);

    int beta() const { return beta_; }
    int users_per_cell() const { return users_; }
    int pilot_book_size() const { return beta_ * users_; }

    // Colour of any lattice cell, inside the network or not.
    int color_of(CellId cell) const;
    int color_of_index(std::size_t cell_index) const { return colors_.at(cell_index); }
    std::span<const int> colors() const { return colors_; }

    // Network cells sharing the colour of `cell_index`, itself included.
    const std::vector<std::size_t> &co_pilot_set(std::size_t cell_index) const;
    bool shares_pilots(std::size_t a, std::size_t b) const { return colors_.at(a) == colors_.at(b); }

    int pilot_index(std::size_t cell_index, int k) const { return colors_.at(cell_index) * users_ + k; }

private:
    std::pair<long, long> coset_key(CellId cell) const;

    int beta_;
    int users_;
    int shift_i_;
    int shift_j_;
    std::vector<std::pair<long, long>> keys_;
    std::vector<int> colors_;
    std::vector<std::vector<std::size_t>> classes_;
};

PilotPlan make_pilot_plan(int beta, const HexNetwork &net, int users_per_cell);

} // namespace massivese

#endif
