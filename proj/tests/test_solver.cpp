/*
 * Copyright 2026 The sasgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include "sas/generate.hpp"
#include "sas/oracles.hpp"
#include "sas/solver.hpp"
#include "test_util.hpp"

using namespace sas;

TEST_SUITE("solver")
{
    TEST_CASE("infinite-memory game is winning everywhere")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto r = solve_sas(g);
        CHECK(r.w1.count() == 4);
        CHECK(r.w2.empty());
        CHECK(r.trace->kind == TraceNode::Kind::Even);
        CHECK(r.trace->d == 2);
        CHECK(r.trace->A.count() == 4);
    }

    TEST_CASE("all odd first condition loses everywhere")
    {
        auto g = test::load_game("games/omega1-all-odd.spg");
        auto r = solve_sas(g);
        CHECK(r.w1.empty());
        CHECK(r.w2.count() == g.size());
    }

    TEST_CASE("random games agree with the enumeration oracles")
    {
        RandomGameParams p;
        for (std::uint64_t seed = 0; seed < 300; seed++) {
            p.n = 2 + seed % 6;
            auto g = random_game(p, seed);
            auto r = solve_sas(g);
            CAPTURE(seed);
            CHECK(r.w1 == oracle_sas_region(g));
            CHECK((r.w1 | r.w2) == VertexSet::full(g.size()));
            CHECK(!r.w1.intersects(r.w2));
            auto as = solve_as_parity(g.graph(), g.prio2());
            CHECK(as.w1 == oracle_as_parity_region(g.graph(), g.prio2()));
        }
    }
}
