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
#include "sas/strategy.hpp"
#include "test_util.hpp"

using namespace sas;

namespace {

MemorylessStrategy
always(const StochasticGame& g, VertexId at, VertexId to)
{
    MemorylessStrategy s{Player::P1, std::vector<VertexId>(g.size(), kNoVertex)};
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) == Owner::P1) s.choice[v] = g.succ(v)[0];
    }
    s.choice[at] = to;
    return s;
}

VertexSet
only(std::size_t n, VertexId v)
{
    VertexSet s(n);
    s.insert(v);
    return s;
}

// v0 (Omega1 = 1) loops or moves to v1 (Omega1 = 2), which returns to v0
StochasticGame
switch_game()
{
    GameBuilder b;
    b.add_vertex(Owner::P1, 1, 0);
    b.add_vertex(Owner::P1, 2, 0);
    b.add_edge(0, 0);
    b.add_edge(0, 1);
    b.add_edge(1, 0);
    return std::move(b).build();
}

} // namespace

TEST_SUITE("strategy")
{
    TEST_CASE("infinite-memory game memoryless strategies fail for the stated reasons")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto to_b = check_fixed_strategy_sas(g, always(g, 0, 1), only(4, 0));
        CHECK_FALSE(to_b.ok);
        CHECK(to_b.reason.find("sure") != std::string::npos);
        auto to_d = check_fixed_strategy_sas(g, always(g, 0, 3), only(4, 0));
        CHECK_FALSE(to_d.ok);
        CHECK(to_d.reason.find("almost") != std::string::npos);
    }

    TEST_CASE("trivial conditions pass the checker")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto z = with_priorities(g, std::vector<Priority>(4, 0), std::vector<Priority>(4, 0));
        CHECK(check_fixed_strategy_sas(z, always(z, 0, 1), VertexSet::full(4)).ok);
    }

    TEST_CASE("schedules")
    {
        auto s = Schedule::parse("geometric:4,2");
        CHECK(s.horizon(0) == 4);
        CHECK(s.horizon(3) == 32);
        CHECK(s.horizon(Natural(1000)) == std::numeric_limits<std::uint64_t>::max());
        CHECK(s.describe() == "geometric:4,2");
        auto t = Schedule::parse("table:3,5");
        CHECK(t.horizon(0) == 3);
        CHECK(t.horizon(1) == 5);
        CHECK(t.horizon(7) == 5);
        CHECK_THROWS_AS(Schedule::parse("linear:1"), Error);
        CHECK_THROWS_AS(Schedule::parse("table:"), Error);
    }

    TEST_CASE("counter machine: three pure odd visits set unlucky, the attractor takes over")
    {
        auto g = switch_game();
        auto r = solve_sas(g);
        REQUIRE(r.w1.count() == 2);
        auto cs = synth_counter_strategy(g, *r.trace, Schedule::from_table({3}));
        auto m = cs.make_machine();
        auto a = m->step(0);
        auto b = m->step(0);
        CHECK_FALSE(a.unlucky);
        CHECK_FALSE(b.unlucky);
        auto c = m->step(0);
        CHECK(c.unlucky_set);
        CHECK(c.unlucky);
        CHECK(c.in_a);
        CHECK(c.move == 1);
        auto d = m->step(1);
        CHECK(d.at_top);
        CHECK_FALSE(d.unlucky);
        CHECK(d.move == 0);
    }

    TEST_CASE("counter machine on the infinite-memory game: moves to b until unlucky, then to d")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto r = solve_sas(g);
        auto cs = synth_counter_strategy(g, *r.trace, Schedule::from_table({2}));
        auto m = cs.make_machine();
        CHECK(m->step(0).move == 1);
        // the second odd visit in a row fires the purity event
        CHECK(m->step(1).unlucky_set);
        auto x = m->step(0);
        CHECK(x.unlucky);
        CHECK(x.in_a);
        CHECK(x.move == 3);
        auto y = m->step(3);
        CHECK(y.at_top);
        CHECK_FALSE(y.unlucky);
        CHECK(m->step(0).move == 1);
    }

    TEST_CASE("counter machine with no odd priorities never switches")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto z = with_priorities(g, std::vector<Priority>(4, 0), g.prio2());
        auto r = solve_sas(z);
        auto cs = synth_counter_strategy(z, *r.trace, default_schedule(z));
        SimulationOptions o;
        o.seed = 3;
        o.runs = 20;
        o.steps = 2000;
        auto st = simulate(z, [&] { return cs.make_machine(); }, std::nullopt, o);
        CHECK(st.total_unlucky == 0);
    }

    TEST_CASE("counter strategy requires a winning game")
    {
        auto g = test::load_game("games/omega1-all-odd.spg");
        auto r = solve_sas(g);
        CHECK_THROWS_AS(synth_counter_strategy(g, *r.trace, default_schedule(g)), PreconditionError);
    }

    TEST_CASE("simulation on infinite-memory game is reproducible and structurally sound")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto r = solve_sas(g);
        auto cs = synth_counter_strategy(g, *r.trace, Schedule::geometric(4, 2));
        SimulationOptions o;
        o.seed = 42;
        o.runs = 200;
        o.steps = 3000;
        auto one = simulate(g, [&] { return cs.make_machine(); }, std::nullopt, o);
        o.jobs = 3;
        auto three = simulate(g, [&] { return cs.make_machine(); }, std::nullopt, o);
        CHECK(one.structural_violations == 0);
        CHECK(one.total_unlucky > 0);
        CHECK(one.to_json(true) == three.to_json(true));
        o.seed = 43;
        auto other = simulate(g, [&] { return cs.make_machine(); }, std::nullopt, o);
        CHECK(other.runs[0].digest != one.runs[0].digest);
        // the random vertex splits evenly
        CHECK(one.visits1[2] > 0);
    }

    TEST_CASE("an adversary shows the always-b lasso")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        // a random vertex is not steerable, so the lasso a b a b ... is exhibited on the derandomized graph
        auto d = derandomize(g);
        MemorylessStrategy adv{Player::P2, std::vector<VertexId>(4, kNoVertex)};
        adv.choice[1] = 0;
        auto s = always(d, 0, 1);
        SimulationOptions o;
        o.steps = 100;
        auto st = simulate(d, [&] { return make_machine(s); }, adv, o);
        CHECK(st.visits1[2] == 0);
        CHECK(lasso_accepts(d.graph(), d.prio1(), {}, {0, 1}) == false);
    }

    TEST_CASE("coBuchi synthesis: two-vertex example")
    {
        GameBuilder b;
        b.add_vertex(Owner::P1, 1, 0);
        b.add_vertex(Owner::P1, 0, 2);
        b.add_edge(0, 0);
        b.add_edge(0, 1);
        b.add_edge(1, 1);
        auto g = std::move(b).build();
        auto r = solve_sas(g);
        auto s = synth_memoryless_cobuchi(g, *r.trace);
        CHECK(s.choice[0] == 1);
        CHECK(check_fixed_strategy_sas(g, s, r.w1).ok);
    }

    TEST_CASE("coBuchi synthesis on random games")
    {
        RandomGameParams p;
        p.d1 = 1;
        p.d2 = 3;
        p.branching = 3;
        int tried = 0;
        for (std::uint64_t seed = 0; seed < 200; seed++) {
            p.n = 2 + seed % 7;
            auto g = random_game(p, seed);
            auto r = solve_sas(g);
            if (r.w1.empty()) continue;
            tried++;
            CAPTURE(seed);
            auto s = synth_memoryless_cobuchi(g, *r.trace);
            s.validate(g.graph());
            auto c = check_fixed_strategy_sas(g, s, r.w1);
            CHECK_MESSAGE(c.ok, c.reason);
        }
        CHECK(tried > 30);
        auto g = test::load_game("games/infinite-memory.spg");
        CHECK_THROWS_AS(synth_memoryless_cobuchi(g, *solve_sas(g).trace), PreconditionError);
    }

    TEST_CASE("Buchi synthesis on random games")
    {
        RandomGameParams p;
        p.d1 = 4;
        p.d2 = 1;
        p.branching = 3;
        int tried = 0;
        for (std::uint64_t seed = 0; seed < 200; seed++) {
            p.n = 2 + seed % 7;
            auto raw = random_game(p, seed);
            auto p2 = raw.prio2();
            for (auto& x : p2) x = x + 1;
            auto g = with_priorities(raw, raw.prio1(), p2);
            auto r = solve_sas(g);
            if (r.w1.empty()) continue;
            tried++;
            CAPTURE(seed);
            auto f = synth_finite_buchi(g, *r.trace);
            f.strategy.validate(g.graph());
            Priority d1 = max_priority(g.prio1());
            CHECK(f.strategy.memory <= f.constant * g.size() * std::max<Priority>(d1, 1));
            auto c = check_fixed_strategy_sas(g, f.strategy, r.w1);
            CHECK_MESSAGE(c.ok, c.reason);
        }
        CHECK(tried > 50);
    }

    TEST_CASE("Buchi synthesis with d1 = 0 is memoryless")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto z = with_priorities(g, std::vector<Priority>(4, 0), {1, 2, 1, 1});
        auto r = solve_sas(z);
        auto f = synth_finite_buchi(z, *r.trace);
        CHECK(f.strategy.memory == 1);
        CHECK(check_fixed_strategy_sas(z, f.strategy, r.w1).ok);
    }

    TEST_CASE("spoiling strategies on random games")
    {
        RandomGameParams p;
        p.branching = 3;
        p.random_permille = 250;
        int tried = 0;
        for (std::uint64_t seed = 0; seed < 300; seed++) {
            p.n = 2 + seed % 6;
            auto g = random_game(p, seed);
            auto r = solve_sas(g);
            if (r.w2.empty()) continue;
            tried++;
            CAPTURE(seed);
            auto s = synth_spoiling(g, *r.trace);
            s.validate(g.graph());
            auto c = check_spoiling_strategy(g, s, r.w2);
            CHECK_MESSAGE(c.ok, c.reason);
        }
        CHECK(tried > 50);
    }

    TEST_CASE("memoryless spoiler by enumeration")
    {
        auto g = test::load_game("games/omega1-all-odd.spg");
        auto s = find_memoryless_spoiler(g);
        REQUIRE(s.has_value());
        CHECK(check_spoiling_strategy(g, MealyStrategy::from_memoryless(*s), VertexSet::full(g.size())).ok);
        auto f = test::load_game("games/infinite-memory.spg");
        CHECK_THROWS_AS(synth_spoiling(f, *solve_sas(f).trace), PreconditionError);
    }

    TEST_CASE("strategy json round trip")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto m = always(g, 0, 1);
        auto back = memoryless_from_json(strategy_to_json(m), 4);
        CHECK(back.choice == m.choice);

        auto z = with_priorities(g, g.prio1(), {1, 2, 1, 1});
        auto f = synth_finite_buchi(z, *solve_sas(z).trace).strategy;
        auto j = strategy_to_json(f);
        auto fb = mealy_from_json(j);
        CHECK(strategy_to_json(fb) == j);
        CHECK(fb.update_table == f.update_table);
        CHECK(fb.move_table == f.move_table);

        auto cs = synth_counter_strategy(g, *solve_sas(g).trace, default_schedule(g));
        auto cj = cs.to_json();
        CHECK(cj["kind"] == "counter");
        CHECK(cj["schedule"] == "geometric:16,2");
    }

    TEST_CASE("illegal strategies are rejected")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto s = always(g, 0, 2);
        CHECK_THROWS_AS(s.validate(g.graph()), PreconditionError);
        MealyStrategy m(Player::P1, 1, 4);
        CHECK_THROWS_AS(check_fixed_strategy_sas(g, m, only(4, 0)), PreconditionError);
    }
}
