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

namespace {

D2pw
as_d2pw(const Dpw& b)
{
    D2pw a;
    a.alphabet = b.alphabet;
    a.initial = b.initial;
    a.delta = b.delta;
    a.prio1 = b.prio;
    a.prio2.assign(b.size(), 0);
    return a;
}

} // namespace

TEST_SUITE("oracles")
{
    TEST_CASE("equivalence oracle: empty against universal")
    {
        D2pw a;
        a.alphabet = {"x"};
        a.delta = {{1}, {0}};
        a.prio1 = {1, 1};
        a.prio2 = {0, 0};
        Dpw b;
        b.alphabet = {"x"};
        b.delta = {{0}};
        b.prio = {0};
        auto r = dpw_equiv_oracle(a, b);
        REQUIRE_FALSE(r.equal);
        CHECK_FALSE(r.accepted_by_reference);
        CHECK(!r.cycle.empty());
    }

    TEST_CASE("equivalence oracle verdicts do not depend on the reference side")
    {
        for (std::uint64_t seed = 0; seed < 150; seed++) {
            CAPTURE(seed);
            auto a = random_d2pw(1 + seed % 5, 2, 3, 3, seed);
            auto b = build_conjunction_dpw(a);
            if (seed % 2) b.prio[seed % b.size()] += 1;
            auto fwd = dpw_equiv_oracle(a, b);
            auto bwd = dpw_equiv_oracle(as_d2pw(b), build_conjunction_dpw(a));
            CHECK(fwd.equal == bwd.equal);
            if (!fwd.equal) {
                // the witness separates the two automata
                std::vector<std::size_t> stem, cycle;
                auto idx = [&](const std::string& c) {
                    return static_cast<std::size_t>(std::find(a.alphabet.begin(), a.alphabet.end(), c) - a.alphabet.begin());
                };
                for (auto& c : fwd.stem) stem.push_back(idx(c));
                for (auto& c : fwd.cycle) cycle.push_back(idx(c));
                CHECK(word_accepts(a, stem, cycle) == fwd.accepted_by_reference);
                CHECK(word_accepts(b, stem, cycle) != fwd.accepted_by_reference);
            }
        }
    }

    TEST_CASE("equivalence oracle enforces its bound")
    {
        auto a = random_d2pw(6, 2, 4, 4, 9);
        auto b = build_conjunction_dpw(a);
        CHECK_THROWS_AS(dpw_equiv_oracle(a, b, 3), BoundExceeded);
    }

    TEST_CASE("region oracles on the bundled games")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        CHECK(oracle_as_parity_region(g.graph(), g.prio2()) == VertexSet::full(4));
        CHECK(oracle_as_parity_region(g.graph(), std::vector<Priority>(4, 2)) == VertexSet::full(4));
        CHECK(oracle_sas_region(g) == solve_sas(g).w1);
        auto ones = with_priorities(g, std::vector<Priority>(4, 1), g.prio2());
        CHECK(oracle_sas_region(ones).empty());
        CHECK_THROWS_AS(oracle_as_parity_region(g.graph(), g.prio2(), 1), BoundExceeded);
    }

    TEST_CASE("sas oracle enforces its bound")
    {
        RandomGameParams p;
        p.n = 12;
        p.random_permille = 0;
        p.branching = 3;
        auto g = random_game(p, 5);
        CHECK_THROWS_AS(oracle_sas_region(g, 4), BoundExceeded);
    }

    TEST_CASE("memory product")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto s = MealyStrategy(Player::P1, 2, 4);
        for (VertexId v = 0; v < 4; v++) {
            s.update_table[v] = 1;
            s.update_table[4 + v] = 0;
            if (g.owner(v) == Owner::P1) {
                s.move_table[v] = g.succ(v)[0];
                s.move_table[4 + v] = g.succ(v).back();
            }
        }
        VertexSet start(4);
        start.insert(0);
        auto mp = memory_product(g.graph(), s, start);
        REQUIRE(mp.initial.size() == 1);
        for (VertexId x = 0; x < mp.graph.size(); x++) {
            if (g.owner(mp.base[x]) == Owner::P1) CHECK(mp.graph.out_degree(x) == 1);
        }
    }
}
