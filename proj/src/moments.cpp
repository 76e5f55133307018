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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace massivese
{

namespace
{
constexpr double kSqrt3 = 1.73205080756887729353;

std::uint64_t cell_substream(CellId c)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.a1)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.a2));
}

MomentTable empty_table(const HexNetwork &net, InterferenceCase which, std::uint64_t n, std::uint64_t seed)
{
    MomentTable t;
    t.interference_case = which;
    t.tiers = net.tiers();
    t.kappa = net.kappa();
    t.min_ue_distance_factor = net.min_ue_distance_factor();
    t.n_samples = n;
    t.seed = seed;
    t.cells.assign(net.cells().begin(), net.cells().end());
    t.mu1.assign(net.size(), 1.0);
    t.mu2.assign(net.size(), 1.0);
    t.stderr1.assign(net.size(), 0.0);
    t.stderr2.assign(net.size(), 0.0);
    return t;
}

struct CellEstimate
{
    double mu1, mu2, se1, se2;
};

CellEstimate estimate_cell(const HexNetwork &net, std::size_t idx, std::uint64_t n, std::uint64_t seed)
{
    const CellId cell = net.cell(idx);
    const Point bl = net.bs(idx);
    const Point b0 = net.bs(0);
    const double half_kappa = 0.5 * net.kappa();
    Engine rng = make_stream(seed, streams::moments, cell_substream(cell));

    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
    {
        const Point z = sample_ue_position(cell, net, rng);
        const double dl2 = (z.x - bl.x) * (z.x - bl.x) + (z.y - bl.y) * (z.y - bl.y);
        const double d02 = (z.x - b0.x) * (z.x - b0.x) + (z.y - b0.y) * (z.y - b0.y);
        const double t = std::pow(dl2 / d02, half_kappa);
        const double t2 = t * t;
        s1 += t;
        s2 += t2;
        s4 += t2 * t2;
    }
    const double nn = static_cast<double>(n);
    const double m1 = s1 / nn, m2 = s2 / nn, m4 = s4 / nn;
    const double var1 = std::max(0.0, (m2 - m1 * m1) * nn / (nn - 1.0));
    const double var2 = std::max(0.0, (m4 - m2 * m2) * nn / (nn - 1.0));
    return {m1, m2, std::sqrt(var1 / nn), std::sqrt(var2 / nn)};
}

// Hexagon corners of a cell, counter-clockwise from angle 0.
std::array<Point, 6> corners(const HexNetwork &net, CellId cell)
{
    const Point c = net.bs(cell);
    const double r = net.cell_radius();
    std::array<Point, 6> out{};
    for (int k = 0; k < 6; ++k)
    {
        const double a = k * M_PI / 3.0;
        out[k] = {c.x + r * std::cos(a), c.y + r * std::sin(a)};
    }
    return out;
}
} // namespace

std::string_view to_string(InterferenceCase c)
{
    switch (c)
    {
    case InterferenceCase::average:
        return "average";
    case InterferenceCase::best:
        return "best";
    case InterferenceCase::worst:
        return "worst";
    }
    return "?";
}

InterferenceCase parse_interference_case(std::string_view s)
{
    if (s == "average")
        return InterferenceCase::average;
    if (s == "best")
        return InterferenceCase::best;
    if (s == "worst")
        return InterferenceCase::worst;
    throw std::invalid_argument("unknown interference case '" + std::string(s) + "'");
}

std::optional<std::size_t> MomentTable::index_of(CellId cell) const
{
    auto it = std::find(cells.begin(), cells.end(), cell);
    if (it == cells.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - cells.begin());
}

bool MomentTable::matches(const HexNetwork &net) const
{
    const auto c = net.cells();
    return std::equal(cells.begin(), cells.end(), c.begin(), c.end());
}

double MomentTable::tier_sum(int omega, int max_tier) const
{
    const auto &mu = omega == 1 ? mu1 : mu2;
    double s = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (tier_of(cells[i]) <= max_tier)
            s += mu[i];
    return s;
}

MomentTable compute_moments_average(const HexNetwork &net, std::uint64_t n_samples, std::uint64_t seed, Exec exec)
{
    if (n_samples < 2)
        throw std::invalid_argument("compute_moments_average: need at least 2 samples");
    MomentTable t = empty_table(net, InterferenceCase::average, n_samples, seed);
    const long n_cells = static_cast<long>(net.size());

    auto body = [&](long i) {
        const CellEstimate e = estimate_cell(net, static_cast<std::size_t>(i), n_samples, seed);
        t.mu1[i] = e.mu1;
        t.mu2[i] = e.mu2;
        t.stderr1[i] = e.se1;
        t.stderr2[i] = e.se2;
    };
    for_each_index(n_cells - 1, exec, [&](long i) { body(i + 1); });
    return t;
}

double extremal_boundary_ratio(const HexNetwork &net, CellId cell, InterferenceCase which, int boundary_resolution,
                               Point *where)
{
    if (which == InterferenceCase::average)
        throw std::invalid_argument("extremal_boundary_ratio: case must be best or worst");
    if (boundary_resolution < 6)
        throw std::invalid_argument("extremal_boundary_ratio: resolution too small");
    const Point bl = net.bs(cell);
    const Point b0 = net.bs(0);
    // best: furthest boundary point from the reference BS, worst: closest
    const double sign = which == InterferenceCase::best ? -1.0 : 1.0;
    const auto cs = corners(net, cell);

    auto point_on = [&](int edge, double s) {
        const Point a = cs[edge], b = cs[(edge + 1) % 6];
        return Point{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
    };
    // objective to minimise
    auto f = [&](Point z) { return sign * distance(z, b0); };

    const int per_edge = (boundary_resolution + 5) / 6;
    int best_edge = 0;
    int best_step = 0;
    double best_val = f(point_on(0, 0.0));
    for (int e = 0; e < 6; ++e)
        for (int s = 0; s < per_edge; ++s)
        {
            const double v = f(point_on(e, static_cast<double>(s) / per_edge));
            if (v < best_val)
            {
                best_val = v;
                best_edge = e;
                best_step = s;
            }
        }

    // Golden-section refinement around the grid optimum. A grid optimum at a
    // corner may belong to either adjacent edge.
    const double h = 1.0 / per_edge;
    auto refine = [&](int edge, double lo, double hi, Point &arg) {
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = f(point_on(edge, x1)), f2 = f(point_on(edge, x2));
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it)
        {
            if (f1 < f2)
            {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = f(point_on(edge, x1));
            }
            else
            {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = f(point_on(edge, x2));
            }
        }
        arg = point_on(edge, 0.5 * (lo + hi));
        return f(arg);
    };

    Point z = point_on(best_edge, best_step * h);
    double v = best_val;
    Point cand;
    double fc = refine(best_edge, std::max(0.0, (best_step - 1) * h), std::min(1.0, (best_step + 1) * h), cand);
    if (fc < v)
    {
        z = cand;
        v = fc;
    }
    if (best_step == 0)
    {
        fc = refine((best_edge + 5) % 6, 1.0 - h, 1.0, cand);
        if (fc < v)
        {
            z = cand;
            v = fc;
        }
    }
    if (where)
        *where = z;
    return distance(z, bl) / distance(z, b0);
}

MomentTable compute_moments_extremal(const HexNetwork &net, InterferenceCase which, int boundary_resolution)
{
    MomentTable t = empty_table(net, which, static_cast<std::uint64_t>(boundary_resolution), 0);
    for (std::size_t i = 1; i < net.size(); ++i)
    {
        const double ratio = extremal_boundary_ratio(net, net.cell(i), which, boundary_resolution);
        const double m1 = std::pow(ratio, net.kappa());
        t.mu1[i] = m1;
        t.mu2[i] = m1 * m1;
    }
    return t;
}

} // namespace massivese
