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

#ifndef MASSIVESE_MOMENTS_HPP
#define MASSIVESE_MOMENTS_HPP

#include "massivese/exec.hpp"
#include "massivese/hexnet.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace massivese
{

enum class InterferenceCase
{
    average,
    best,
    worst
};

std::string_view to_string(InterferenceCase c);
InterferenceCase parse_interference_case(std::string_view s);

/// First and second interference moments of every cell relative to the
/// reference BS:
///   mu_w[l] = E{ (||z - b_l|| / ||z - b_0||)^(kappa w) },  z in cell l.
/// Entries follow the cell order of the HexNetwork the table was built from.
struct MomentTable
{
    InterferenceCase interference_case = InterferenceCase::average;
    int tiers = 0;
    double kappa = 0.0;
    double min_ue_distance_factor = 0.0;
    std::uint64_t n_samples = 0; // boundary resolution for best/worst
    std::uint64_t seed = 0;

    std::vector<CellId> cells;
    std::vector<double> mu1;
    std::vector<double> mu2;
    std::vector<double> stderr1;
    std::vector<double> stderr2;

    std::size_t size() const { return cells.size(); }
    std::optional<std::size_t> index_of(CellId cell) const;

    // True if the cell list matches net.cells() element by element.
    bool matches(const HexNetwork &net) const;

    // sum over cells with tier <= max_tier of mu_omega, omega in {1, 2}
    double tier_sum(int omega, int max_tier) const;
};

MomentTable compute_moments_average(const HexNetwork &net, std::uint64_t n_samples, std::uint64_t seed,
                                    Exec exec = Exec::parallel);

MomentTable compute_moments_extremal(const HexNetwork &net, InterferenceCase which, int boundary_resolution);

// Ratio ||z - b_l|| / ||z - b_0|| at the boundary point z of cell l that is
// furthest from (best) or closest to (worst) the reference BS. Returns the
// point through `where`.
double extremal_boundary_ratio(const HexNetwork &net, CellId cell, InterferenceCase which, int boundary_resolution,
                               Point *where = nullptr);

// Plain-text cache format.
void write_moment_table(std::ostream &os, const MomentTable &table);
MomentTable read_moment_table(std::istream &is);

std::string moment_cache_name(int tiers, double kappa, InterferenceCase which, std::uint64_t n_samples,
                              std::uint64_t seed);

// Boundary resolution used for cached best/worst tables.
inline constexpr int cached_boundary_resolution = 6000;

// Cache file for the table load_or_compute_moments would use. Best and worst
// tables ignore n_samples and seed.
std::filesystem::path moment_cache_path(const std::filesystem::path &cache_dir, const HexNetwork &net,
                                        InterferenceCase which, std::uint64_t n_samples, std::uint64_t seed);

// Reads the table from `cache_dir` if present and consistent with the
// arguments, otherwise computes and stores it. An empty cache_dir disables
// the cache.
MomentTable load_or_compute_moments(const std::filesystem::path &cache_dir, const HexNetwork &net,
                                    InterferenceCase which, std::uint64_t n_samples, std::uint64_t seed,
                                    Exec exec = Exec::parallel, bool *cache_hit = nullptr);

} // namespace massivese

#endif
