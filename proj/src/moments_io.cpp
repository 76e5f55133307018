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

#include "massivese/moments.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace massivese
{

namespace
{
std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

// Layout:
//   # massivese moment table
//   # <key> <value>            (tiers, kappa, case, n_samples, seed, min_ue_distance_factor)
//   a1 a2 mu1 mu2 stderr1 stderr2
//   <one row per cell, network order>
void write_moment_table(std::ostream &os, const MomentTable &t)
{
    os << "# massivese moment table\n";
    os << "# tiers " << t.tiers << "\n";
    os << "# kappa " << fmt17(t.kappa) << "\n";
    os << "# case " << to_string(t.interference_case) << "\n";
    os << "# n_samples " << t.n_samples << "\n";
    os << "# seed " << t.seed << "\n";
    os << "# min_ue_distance_factor " << fmt17(t.min_ue_distance_factor) << "\n";
    os << "a1 a2 mu1 mu2 stderr1 stderr2\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        os << t.cells[i].a1 << ' ' << t.cells[i].a2 << ' ' << fmt17(t.mu1[i]) << ' ' << fmt17(t.mu2[i]) << ' '
           << fmt17(t.stderr1[i]) << ' ' << fmt17(t.stderr2[i]) << '\n';
}

MomentTable read_moment_table(std::istream &is)
{
    MomentTable t;
    std::string line;
    bool header_seen = false;
    int fields = 0;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        if (line[0] == '#')
        {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "tiers")
                ls >> t.tiers, ++fields;
            else if (key == "kappa")
                ls >> t.kappa, ++fields;
            else if (key == "case")
            {
                std::string v;
                ls >> v;
                t.interference_case = parse_interference_case(v);
                ++fields;
            }
            else if (key == "n_samples")
                ls >> t.n_samples, ++fields;
            else if (key == "seed")
                ls >> t.seed, ++fields;
            else if (key == "min_ue_distance_factor")
                ls >> t.min_ue_distance_factor, ++fields;
            continue;
        }
        if (!header_seen)
        {
            if (line.rfind("a1 a2 mu1 mu2", 0) != 0)
                throw std::runtime_error("moment table: missing column header");
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        CellId c;
        double m1, m2, s1, s2;
        if (!(ls >> c.a1 >> c.a2 >> m1 >> m2 >> s1 >> s2))
            throw std::runtime_error("moment table: malformed row '" + line + "'");
        t.cells.push_back(c);
        t.mu1.push_back(m1);
        t.mu2.push_back(m2);
        t.stderr1.push_back(s1);
        t.stderr2.push_back(s2);
    }
    if (fields != 6 || !header_seen)
        throw std::runtime_error("moment table: incomplete header");
    return t;
}

std::string moment_cache_name(int tiers, double kappa, InterferenceCase which, std::uint64_t n_samples,
                              std::uint64_t seed)
{
    std::ostringstream os;
    os << "moments_T" << tiers << "_k" << std::setprecision(10) << kappa << '_' << to_string(which) << "_n"
       << n_samples << "_s" << seed << ".txt";
    return os.str();
}

std::filesystem::path moment_cache_path(const std::filesystem::path &cache_dir, const HexNetwork &net,
                                        InterferenceCase which, std::uint64_t n_samples, std::uint64_t seed)
{
    if (which != InterferenceCase::average)
    {
        n_samples = cached_boundary_resolution;
        seed = 0;
    }
    return cache_dir / moment_cache_name(net.tiers(), net.kappa(), which, n_samples, seed);
}

MomentTable load_or_compute_moments(const std::filesystem::path &cache_dir, const HexNetwork &net,
                                    InterferenceCase which, std::uint64_t n_samples, std::uint64_t seed, Exec exec,
                                    bool *cache_hit)
{
    if (which != InterferenceCase::average)
    {
        n_samples = cached_boundary_resolution;
        seed = 0;
    }
    if (cache_hit)
        *cache_hit = false;
    std::filesystem::path file;
    if (!cache_dir.empty())
    {
        file = moment_cache_path(cache_dir, net, which, n_samples, seed);
        std::ifstream in(file);
        if (in)
        {
            try
            {
                MomentTable t = read_moment_table(in);
                if (t.matches(net) && t.interference_case == which && t.n_samples == n_samples && t.seed == seed &&
                    t.kappa == net.kappa() && t.min_ue_distance_factor == net.min_ue_distance_factor())
                {
                    if (cache_hit)
                        *cache_hit = true;
                    return t;
                }
            }
            catch (const std::exception &)
            {
                // stale or corrupt file, recompute below
            }
        }
    }

    MomentTable t = which == InterferenceCase::average
                        ? compute_moments_average(net, n_samples, seed, exec)
                        : compute_moments_extremal(net, which, static_cast<int>(n_samples));

    if (!file.empty())
    {
        std::filesystem::create_directories(cache_dir);
        const auto tmp = file.string() + ".tmp";
        {
            std::ofstream out(tmp);
            write_moment_table(out, t);
            if (!out)
                throw std::runtime_error("cannot write moment cache " + tmp);
        }
        std::filesystem::rename(tmp, file);
    }
    return t;
}

} // namespace massivese
