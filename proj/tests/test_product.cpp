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

#include <algorithm>
#include <random>

#include "sas/generate.hpp"
#include "sas/oracles.hpp"
#include "sas/product.hpp"
#include "sas/qualitative.hpp"
#include "test_util.hpp"

using namespace sas;

namespace {

D2pw
load_example()
{
    return parse_d2pw(test::read_file("games/example.d2pw"));
}

Priority
product_priority(const Dpw& d, StateId base, std::vector<Priority> regs)
{
    for (StateId q = 0; q < d.size(); q++) {
        if (d.base[q] == base && d.registers[q] == regs) return d.prio[q];
    }
    FAIL("state not reached");
    return 0;
}

// good end components for the conjunction inside S of an MDP: both maxima even
VertexSet
good_ecs(const GameGraph& g, const std::vector<Priority>& p1, const std::vector<Priority>& p2, const VertexSet& S)
{
    VertexSet out(g.size());
    for (auto& m : mec_decomposition(g, &S)) {
        Priority a = max_priority(p1, m), b = max_priority(p2, m);
        if (a % 2 == 0 && b % 2 == 0) {
            out |= m;
            continue;
        }
        VertexSet rest = m;
        for (auto v : m) {
            if ((a % 2 && p1[v] == a) || (b % 2 && p2[v] == b)) rest.erase(v);
        }
        if (rest.any()) out |= good_ecs(g, p1, p2, rest);
    }
    return out;
}

// almost-sure conjunction by enumerating memoryless player 2 strategies
VertexSet
as_conjunction_oracle(const GameGraph& g, const std::vector<Priority>& p1, const std::vector<Priority>& p2)
{
    std::vector<VertexId> p2v;
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) == Owner::P2) p2v.push_back(v);
    }
    std::vector<std::size_t> pick(p2v.size(), 0);
    auto win = VertexSet::full(g.size());
    while (true) {
        std::vector<VertexId> sigma(g.size(), kNoVertex);
        for (std::size_t i = 0; i < p2v.size(); i++) sigma[p2v[i]] = g.succ(p2v[i])[pick[i]];
        auto mdp = fix_strategy(g, Player::P2, sigma);
        win &= as_reach(mdp, Player::P1, good_ecs(mdp, p1, p2, VertexSet::full(g.size()))).region;
        std::size_t i = 0;
        while (i < p2v.size() && ++pick[i] == g.out_degree(p2v[i])) pick[i++] = 0;
        if (i == p2v.size()) break;
    }
    return win;
}

} // namespace

TEST_SUITE("product")
{
    TEST_CASE("worked example priorities")
    {
        auto a = load_example();
        auto d = build_conjunction_dpw(a, Orientation::Direct);
        CHECK(product_priority(d, 0, {0, 0}) == 0);
        CHECK(product_priority(d, 1, {5, 5}) == 5);
        CHECK(product_priority(d, 2, {3, 5}) == 13);
        CHECK(product_priority(d, 1, {3, 1}) == 3);
        CHECK(product_priority(d, 3, {3, 1}) == 7);
        CHECK(product_priority(d, 2, {6, 6}) == 14);
        CHECK(product_priority(d, 3, {6, 1}) == 7);
        CHECK(product_priority(d, 0, {6, 1}) == 6);
        CHECK(d.initial == 0);
        CHECK(dpw_equiv_oracle(a, d).equal);
    }

    TEST_CASE("layout formulas")
    {
        auto l = RegisterLayout::fixed(Orientation::Direct, 2, 6);
        CHECK(l.num_registers() == 2);
        CHECK(l.offset(2) == 8);
        std::vector<Priority> r{3, 5};
        CHECK(l.priority(2, r) == 13);
        CHECK(l.priority(1, r) == 7);
        l.update(r, 2, 1);
        CHECK(r == std::vector<Priority>{3, 1});
        // odd d2 is normalized upward
        CHECK(RegisterLayout::fixed(Orientation::Direct, 2, 1).d_reg == 2);
        // (2+1)^2 against (2+1)^1: registers go on the second condition
        CHECK(RegisterLayout::choose(2, 1).orientation == Orientation::Swapped);
        CHECK(RegisterLayout::choose(2, 2).orientation == Orientation::Direct);
    }

    TEST_CASE("constant second condition reproduces the first up to the affine map")
    {
        D2pw a;
        a.alphabet = {"a", "b"};
        a.delta = {{1, 2}, {2, 0}, {0, 1}};
        a.prio1 = {0, 1, 2};
        a.prio2 = {0, 0, 0};
        auto d = build_conjunction_dpw(a, Orientation::Direct);
        for (StateId q = 0; q < d.size(); q++) CHECK(d.prio[q] == a.prio1[d.base[q]]);
    }

    TEST_CASE("lasso acceptance")
    {
        GameBuilder b;
        b.add_vertex(Owner::P1, 1, 0);
        b.add_vertex(Owner::P1, 2, 0);
        b.add_vertex(Owner::P1, 3, 0);
        b.add_edge(0, 1);
        b.add_edge(1, 0);
        b.add_edge(1, 2);
        b.add_edge(2, 2);
        auto g = std::move(b).build();
        CHECK(lasso_accepts(g.graph(), g.prio1(), {}, {0, 1}));
        CHECK_FALSE(lasso_accepts(g.graph(), g.prio1(), {0, 1}, {2}));
        CHECK_THROWS_AS(lasso_accepts(g.graph(), g.prio1(), {}, {0, 2}), PreconditionError);

        D2pw a;
        a.alphabet = {"a"};
        a.delta = {{0}};
        a.prio1 = {2};
        a.prio2 = {3};
        CHECK_FALSE(lasso_accepts(a, {}, {0}));
        CHECK_FALSE(word_accepts(a, {}, {0}));
    }

    TEST_CASE("random automata: bounds and language equality")
    {
        for (std::uint64_t seed = 0; seed < 120; seed++) {
            CAPTURE(seed);
            std::mt19937_64 rng(seed);
            auto states = 1 + seed % 6;
            Priority d1 = static_cast<Priority>(seed % 5), d2 = static_cast<Priority>((seed / 5) % 5);
            auto a = random_d2pw(states, 2, d1, d2, seed);
            auto l = RegisterLayout::choose(max_priority(a.prio1), max_priority(a.prio2));
            auto d = build_conjunction_dpw(a);
            d.validate();
            // exact top of the priority map; for odd d_index this is (d(d_r+2)+d_r)/2
            Priority bound = l.d_index % 2 ? (l.d_index * (l.d_reg + 2) + l.d_reg) / 2 : l.offset(l.d_index) + l.d_reg;
            CHECK(max_priority(d.prio) <= bound);
            CHECK(boost::multiprecision::cpp_int(d.size()) <= states * l.grid_size());
            CHECK(dpw_equiv_oracle(a, d).equal);
            for (auto o : {Orientation::Direct, Orientation::Swapped}) CHECK(dpw_equiv_oracle(a, build_conjunction_dpw(a, o)).equal);
        }
    }

    TEST_CASE("a wrong automaton is caught by the equivalence oracle")
    {
        auto a = load_example();
        auto d = build_conjunction_dpw(a);
        d.prio[2] += 1;
        auto r = dpw_equiv_oracle(a, d);
        REQUIRE_FALSE(r.equal);
        CHECK(!r.cycle.empty());
    }

    TEST_CASE("disjunction")
    {
        D2pw a;
        a.alphabet = {"a", "b"};
        a.delta = {{1, 0}, {0, 1}};
        a.prio1 = {0, 0};
        a.prio2 = {1, 3};
        auto u = build_disjunction_dpw(a);
        for (StateId q = 0; q < u.size(); q++) CHECK(u.prio[q] % 2 == 0);
        a.prio1 = {1, 1};
        auto e = build_disjunction_dpw(a);
        for (StateId q = 0; q < e.size(); q++) CHECK(e.prio[q] % 2 == 1);

        for (std::uint64_t seed = 0; seed < 60; seed++) {
            auto r = random_d2pw(1 + seed % 6, 2, 3, 3, seed + 1000);
            auto dis = build_disjunction_dpw(r);
            D2pw c1 = r, c2 = r;
            std::fill(c1.prio2.begin(), c1.prio2.end(), 0);
            std::fill(c2.prio1.begin(), c2.prio1.end(), 0);
            std::mt19937_64 rng(seed);
            for (int k = 0; k < 100; k++) {
                std::vector<std::size_t> stem(rng() % 4), cycle(1 + rng() % 4);
                for (auto& x : stem) x = rng() % 2;
                for (auto& x : cycle) x = rng() % 2;
                bool expect = word_accepts(c1, stem, cycle) || word_accepts(c2, stem, cycle);
                CHECK(word_accepts(dis, stem, cycle) == expect);
            }
        }
    }

    TEST_CASE("registers hold the second priority since the last visit")
    {
        for (std::uint64_t seed = 0; seed < 40; seed++) {
            auto a = random_d2pw(5, 2, 4, 4, seed + 77);
            auto d = build_conjunction_dpw(a, Orientation::Direct);
            std::mt19937_64 rng(seed);
            std::vector<StateId> run{a.initial};
            StateId x = d.initial;
            for (int t = 0; t < 60; t++) {
                auto c = rng() % 2;
                x = d.delta[x][c];
                run.push_back(a.delta[run.back()][c]);
                REQUIRE(d.base[x] == run.back());
                for (std::size_t i = 0; i < d.registers[x].size(); i++) {
                    Priority expect = 0;
                    for (std::size_t j = run.size() - 1; j-- > 0;) {
                        expect = std::max(expect, a.prio2[run[j]]);
                        if (a.prio1[run[j]] == 2 * i) break;
                    }
                    CHECK(d.registers[x][i] == expect);
                }
            }
        }
    }

    TEST_CASE("priority segments are ordered by the first condition")
    {
        auto l = RegisterLayout::fixed(Orientation::Direct, 5, 4);
        for (Priority a = 0; a < 5; a++) {
            std::vector<Priority> lo(l.num_registers(), 0), hi(l.num_registers(), l.d_reg);
            CHECK(l.priority(a, hi) < l.priority(a + 1, lo));
        }
    }

    TEST_CASE("infinite-memory game product")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto p = lift_conjunction(g.graph(), g.prio1(), g.prio2());
        CHECK(p.layout.orientation == Orientation::Swapped);
        CHECK(boost::multiprecision::cpp_int(p.graph.size()) <= g.size() * p.layout.grid_size());
        auto sol = solve_as_parity(p.graph, p.prio);
        for (VertexId v = 0; v < g.size(); v++) CHECK(sol.w1.contains(p.root[v]));
    }

    TEST_CASE("lifted games agree with the almost-sure conjunction oracle")
    {
        RandomGameParams rp;
        rp.random_permille = 300;
        for (std::uint64_t seed = 0; seed < 300; seed++) {
            rp.n = 2 + seed % 5;
            auto g = random_game(rp, seed);
            CAPTURE(seed);
            auto p = lift_conjunction(g.graph(), g.prio1(), g.prio2());
            auto sol = solve_as_parity(p.graph, p.prio);
            VertexSet projected(g.size());
            for (VertexId v = 0; v < g.size(); v++) {
                if (sol.w1.contains(p.root[v])) projected.insert(v);
            }
            CHECK(projected == as_conjunction_oracle(g.graph(), g.prio1(), g.prio2()));
        }
    }

    TEST_CASE("text round trip")
    {
        auto a = load_example();
        CHECK(to_text(parse_d2pw(to_text(a))) == to_text(a));
        auto d = build_conjunction_dpw(a);
        CHECK(to_text(parse_dpw(to_text(d))) == to_text(d));
        CHECK_THROWS_AS(parse_d2pw("d2pw 1;\nstate 0 p1=0 on a -> 4;"), Error);
    }
}
