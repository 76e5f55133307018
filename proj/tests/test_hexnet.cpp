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

#include "catch2/catch_amalgamated.hpp"
#include "massivese/errors.hpp"
#include "massivese/hexnet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

using namespace massivese;

TEST_CASE("bs_position follows the lattice basis", "[hexnet]")
{
    // sqrt(3) * (sqrt(3) r / 2, r / 2) * a1 + (0, sqrt(3) r) * a2
    const double s3 = std::sqrt(3.0);

    Point p = bs_position({0, 0}, 1.0);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);

    // (1, 0), r = 1 -> (3/2, sqrt(3)/2)
    p = bs_position({1, 0}, 1.0);
    CHECK(std::abs(p.x - 1.5) < 1e-15);
    CHECK(std::abs(p.y - 0.8660254037844386) < 1e-15);

    // (0, 1), r = 2 -> (0, sqrt(3) * 2) = (0, 3.4641016151377544)
    p = bs_position({0, 1}, 2.0);
    CHECK(std::abs(p.x) < 1e-15);
    CHECK(std::abs(p.y - 3.4641016151377544) < 1e-14);

    // first-tier neighbours all sit at sqrt(3) r
    HexNetwork net(1, 1.0);
    for (std::size_t i = 1; i < net.size(); ++i)
        CHECK(std::abs(distance(net.bs(i), net.bs(0)) - s3) < 1e-14);
}

TEST_CASE("Network size and ordering", "[hexnet]")
{
    for (int T = 0; T <= 6; ++T)
    {
        HexNetwork net(T);
        CHECK(net.size() == static_cast<std::size_t>(1 + 3 * T * (T + 1)));
        CHECK(net.cell(0) == CellId{0, 0});
    }
    HexNetwork net(2);
    int tier1 = 0, tier2 = 0;
    for (CellId c : net.cells())
    {
        tier1 += tier_of(c) == 1;
        tier2 += tier_of(c) == 2;
    }
    CHECK(tier1 == 6);
    CHECK(tier2 == 12);
    for (std::size_t i = 1; i < net.size(); ++i)
        CHECK(tier_of(net.cell(i - 1)) <= tier_of(net.cell(i)));
    CHECK(net.index_of({2, -1}).has_value());
    CHECK_FALSE(net.index_of({3, 0}).has_value());
}

TEST_CASE("Hexagon membership", "[hexnet]")
{
    HexNetwork net(1, 2.0);
    const double r = 2.0;
    CHECK(net.hex_contains({0, 0}, {0.0, 0.0}));
    CHECK(net.hex_contains({0, 0}, {r, 0.0}));                         // corner
    CHECK(net.hex_contains({0, 0}, {0.0, std::sqrt(3.0) / 2.0 * r}));  // edge midpoint
    CHECK_FALSE(net.hex_contains({0, 0}, {0.0, 0.9 * r}));
    CHECK_FALSE(net.hex_contains({0, 0}, {1.01 * r, 0.0}));
    // shared edge midpoint between (0,0) and (1,0) belongs to both
    const Point mid{0.75 * r, std::sqrt(3.0) / 4.0 * r};
    CHECK(net.hex_contains({0, 0}, mid));
    CHECK(net.hex_contains({1, 0}, mid));
}

TEST_CASE("Pathloss", "[hexnet]")
{
    CHECK(pathloss({0, 0}, {1, 0}, 1.0, 3.7) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(pathloss({0, 0}, {0, 2}, 1.0, 2.0) == Catch::Approx(0.25).epsilon(1e-15));
    // 5 * 3^-3.7 = 5 * exp(-3.7 ln 3) = 0.08571...
    const double expected = 5.0 * std::exp(-3.7 * std::log(3.0));
    CHECK(std::abs(pathloss({1, 1}, {4, 1}, 5.0, 3.7) - expected) < 1e-15);
    CHECK_THROWS_AS(pathloss({1, 1}, {1, 1}, 1.0, 3.7), std::domain_error);

    // log-log slope is -kappa and the function is strictly decreasing
    double prev_d = 0.5;
    double prev = pathloss({0, 0}, {prev_d, 0}, 1.0, 3.7);
    for (double d = 0.65; d < 20.0; d *= 1.3)
    {
        const double v = pathloss({0, 0}, {d, 0}, 1.0, 3.7);
        CHECK(v < prev);
        CHECK(std::log(v / prev) / std::log(d / prev_d) == Catch::Approx(-3.7).epsilon(1e-12));
        prev = v;
        prev_d = d;
    }
}

TEST_CASE("UE sampling stays in the cell and outside the exclusion disk", "[hexnet]")
{
    HexNetwork net(2, 1.5);
    Engine rng = make_stream(7, streams::positions);
    for (std::size_t i = 0; i < net.size(); ++i)
        for (int n = 0; n < 2000; ++n)
        {
            const Point z = sample_ue_position(net.cell(i), net, rng);
            REQUIRE(net.hex_contains(net.cell(i), z));
            REQUIRE(distance(z, net.bs(i)) >= 0.14 * 1.5);
        }
}

TEST_CASE("UE sampling is centred and has the expected acceptance", "[hexnet]")
{
    HexNetwork net(0);
    Engine rng = make_stream(11, streams::positions);
    SamplingStats stats;
    const int n = 1000000;
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i)
    {
        const Point z = sample_ue_position({0, 0}, net, rng, &stats);
        sx += z.x;
        sy += z.y;
        sxx += z.x * z.x;
        syy += z.y * z.y;
    }
    const double mx = sx / n, my = sy / n;
    const double se_x = std::sqrt((sxx / n - mx * mx) / n);
    const double se_y = std::sqrt((syy / n - my * my) / n);
    CHECK(std::abs(mx) < 3 * se_x);
    CHECK(std::abs(my) < 3 * se_y);

    // box 2r x sqrt(3) r, accepted region = hexagon (3 sqrt(3)/2 r^2) minus disk (pi 0.14^2 r^2)
    const double p = (1.5 * std::sqrt(3.0) - M_PI * 0.14 * 0.14) / (2.0 * std::sqrt(3.0));
    const double se_p = std::sqrt(p * (1 - p) / static_cast<double>(stats.attempts));
    CHECK(stats.accepted == static_cast<std::uint64_t>(n));
    CHECK(std::abs(stats.acceptance() - p) < 3 * se_p);
}

TEST_CASE("UE sampling is reproducible", "[hexnet]")
{
    HexNetwork net(1);
    Engine a = make_stream(5, streams::positions, 3);
    Engine b = make_stream(5, streams::positions, 3);
    for (int i = 0; i < 100; ++i)
    {
        const Point p = sample_ue_position({1, -1}, net, a);
        const Point q = sample_ue_position({1, -1}, net, b);
        CHECK(p.x == q.x);
        CHECK(p.y == q.y);
    }
}

TEST_CASE("Reuse factors", "[hexnet]")
{
    for (int b : {1, 3, 4, 7, 9, 12, 13, 16, 19, 21})
        CHECK(is_symmetric_reuse_factor(b));
    for (int b : {0, 2, 5, 6, 8, 10, 11, 14, 15})
    {
        CHECK_FALSE(is_symmetric_reuse_factor(b));
        CHECK_THROWS_AS(reuse_shift(b), InvalidReuseFactor);
    }
    CHECK(reuse_shift(7) == std::pair{2, 1});
    HexNetwork net(1);
    CHECK_THROWS_AS(make_pilot_plan(2, net, 3), InvalidReuseFactor);
}

TEST_CASE("Pilot colouring", "[hexnet]")
{
    HexNetwork net(4);
    for (int beta : {1, 3, 4, 7, 9, 12, 13})
    {
        const PilotPlan plan = make_pilot_plan(beta, net, 5);
        CHECK(plan.pilot_book_size() == 5 * beta);
        CHECK(plan.color_of({0, 0}) == 0);

        std::set<int> used;
        for (int c : plan.colors())
            used.insert(c);
        CHECK(static_cast<int>(used.size()) == beta);

        const CellId nb[6] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
        for (int a1 = -6; a1 <= 6; ++a1)
            for (int a2 = -6; a2 <= 6; ++a2)
            {
                const CellId c{a1, a2};
                // never lattice-adjacent to a same-colour cell
                if (beta > 1)
                    for (CellId d : nb)
                        CHECK(plan.color_of({a1 + d.a1, a2 + d.a2}) != plan.color_of(c));
                // translation invariance: colour classes are translates of the class of (0,0)
                for (int b1 = -3; b1 <= 3; ++b1)
                    for (int b2 = -3; b2 <= 3; ++b2)
                    {
                        const bool same = plan.color_of(c) == plan.color_of({b1, b2});
                        const bool shifted = plan.color_of({a1 - b1, a2 - b2}) == 0;
                        CHECK(same == shifted);
                    }
            }

        // pilot indices within a cell are distinct and stay in their colour block
        for (std::size_t l = 0; l < net.size(); ++l)
        {
            std::set<int> ids;
            for (int k = 0; k < 5; ++k)
            {
                const int p = plan.pilot_index(l, k);
                ids.insert(p);
                CHECK(p / 5 == plan.color_of_index(l));
            }
            CHECK(ids.size() == 5u);
            const auto &set = plan.co_pilot_set(l);
            CHECK(std::find(set.begin(), set.end(), l) != set.end());
        }
    }
}

TEST_CASE("Universal reuse puts every cell in one class", "[hexnet]")
{
    HexNetwork net(3);
    const PilotPlan plan = make_pilot_plan(1, net, 2);
    CHECK(plan.co_pilot_set(0).size() == net.size());
}

TEST_CASE("Reuse 3 separates the first tier from the centre", "[hexnet]")
{
    HexNetwork net(1);
    const PilotPlan plan = make_pilot_plan(3, net, 1);
    for (std::size_t i = 1; i < net.size(); ++i)
        CHECK(plan.color_of_index(i) != plan.color_of_index(0));
    // nearest co-pilot cells are at distance 3r
    HexNetwork big(3);
    const PilotPlan p3 = make_pilot_plan(3, big, 1);
    double dmin = 1e9;
    for (std::size_t l : p3.co_pilot_set(0))
        if (l != 0)
            dmin = std::min(dmin, distance(big.bs(l), big.bs(0)));
    CHECK(dmin == Catch::Approx(3.0).epsilon(1e-14));
}
