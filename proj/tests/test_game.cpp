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

#include <random>

#include <doctest.h>

#include "sas/attractor.hpp"
#include "sas/game_io.hpp"
#include "sas/generate.hpp"
#include "test_util.hpp"

using namespace sas;

namespace {

VertexSet
set_of(std::size_t n, std::initializer_list<VertexId> xs)
{
    VertexSet s(n);
    for (auto x : xs) s.insert(x);
    return s;
}

std::size_t
edge_count(const StochasticGame& g)
{
    std::size_t e = 0;
    for (VertexId v = 0; v < g.size(); v++) e += g.succ(v).size();
    return e;
}

} // namespace

TEST_SUITE("game")
{
    TEST_CASE("the infinite-memory game parses as described")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        CHECK(g.size() == 4);
        CHECK(edge_count(g) == 6);
        CHECK(g.owner(0) == Owner::P1);
        CHECK(g.owner(1) == Owner::Random);
        CHECK(g.owner(2) == Owner::P1);
        CHECK(g.owner(3) == Owner::P1);
        CHECK(g.label(1) == "b");
        CHECK(g.probs(1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    }

    TEST_CASE("minimal game")
    {
        auto g = parse_game("spg 1;\nvertex 0 owner=p1 p1=0 p2=0 succ=0;\n");
        CHECK(g.size() == 1);
        CHECK(g.succ(0).size() == 1);
    }

    TEST_CASE("syntax errors carry the line")
    {
        try {
            parse_game("spg 1;\n# comment\nvertex 0 owner=p3 p1=0 p2=0 succ=0;\n");
            FAIL("accepted a bad owner");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_game(""), ParseError);
        CHECK_THROWS_AS(parse_game("spg 2;\nvertex 0 owner=p1 p1=0 p2=0 succ=0;"), ParseError);
        CHECK_THROWS_AS(parse_game("spg 1;\nvertex 0 owner=p1 p1=0 p2=0 succ=0 colour=red;"), ParseError);
        CHECK_THROWS_AS(parse_game("spg 1;\nvertex 0 owner=p1 p1=x p2=0 succ=0;"), ParseError);
    }

    TEST_CASE("semantic errors name the file's vertex")
    {
        auto expect = [](const char* text, VertexId v, const char* what) {
            try {
                parse_game(text);
                FAIL("accepted: " << text);
            } catch (const ValidationError& e) {
                CHECK(e.vertex() == v);
                CHECK_MESSAGE(std::string(e.what()).find(what) != std::string::npos, e.what());
            }
        };
        expect("spg 1;\nvertex 7 owner=rand p1=0 p2=0 succ=7:1/2,9:1/3;\nvertex 9 owner=p1 p1=0 p2=0 succ=9;", 7, "5/6");
        expect("spg 1;\nvertex 3 owner=p1 p1=0 p2=0 succ=4;", 3, "dangling");
        expect("spg 1;\nvertex 3 p1=0 p2=0 succ=3;", 3, "owner");
        expect("spg 1;\nvertex 3 owner=p2 p1=0 p2=0 succ=3:1/1;", 3, "non-random");
        expect("spg 1;\nvertex 3 owner=rand p1=0 p2=0 succ=3;", 3, "missing probability");
        expect("spg 1;\nvertex 3 owner=p1 p1=0 p2=0 succ=3;\nvertex 3 owner=p1 p1=0 p2=0 succ=3;", 3, "twice");
    }

    TEST_CASE("sparse ids are renumbered in ascending order")
    {
        auto g = parse_game("spg 1;\nvertex 40 owner=p2 p1=1 p2=0 succ=10;\nvertex 10 owner=p1 p1=2 p2=3 succ=40,10;\n");
        CHECK(g.owner(0) == Owner::P1);
        CHECK(g.prio2(0) == 3);
        CHECK(g.succ(1)[0] == 0);
    }

    TEST_CASE("text and JSON round trips")
    {
        for (std::uint64_t seed = 0; seed < 100; seed++) {
            RandomGameParams p;
            p.n = 1 + seed % 9;
            p.random_permille = 400;
            auto g = random_game(p, seed);
            auto text = to_spg(g);
            CHECK(parse_game(text) == g);
            CHECK(to_spg(parse_game(text)) == text);
            CHECK(game_from_json(nlohmann::json::parse(game_to_json(g).dump())) == g);
        }
        auto g = test::load_game("games/infinite-memory.spg");
        auto j = game_to_json(g);
        CHECK(j["schema"] == 1);
        CHECK(j["vertices"].size() == 4);
        for (std::string key : {"id", "owner", "prio1", "prio2"}) CHECK_MESSAGE(j["vertices"][0].contains(key), key);
        CHECK(j["edges"].size() == 6);
        for (const auto& e : j["edges"]) {
            CHECK(e.contains("from"));
            CHECK(e.contains("to"));
            CHECK(e.contains("prob") == (e["from"] == 1));
        }
    }

    TEST_CASE("generator is reproducible")
    {
        RandomGameParams p;
        CHECK(to_spg(random_game(p, 9)) == to_spg(random_game(p, 9)));
        CHECK(to_spg(random_game(p, 9)) != to_spg(random_game(p, 10)));
    }

    TEST_CASE("restrict")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        CHECK(restrict(g, VertexSet::full(4)).game == g);
        try {
            restrict(g, set_of(4, {0, 1}));
            FAIL("restricted to a set that is not a subgame");
        } catch (const PreconditionError& e) {
            CHECK(std::string(e.what()).find("1") != std::string::npos);
        }
        RandomGameParams p;
        p.n = 6;
        int tried = 0;
        for (std::uint64_t seed = 0; seed < 200; seed++) {
            auto h = random_game(p, seed);
            auto trap = VertexSet::full(6) - pos_attractor(h.graph(), Player::P1, set_of(6, {0})).region;
            if (trap.empty()) continue;
            REQUIRE(is_trap(h.graph(), Player::P1, trap));
            auto r = restrict(h, trap);
            CHECK(r.game.size() == trap.count());
            CHECK(parse_game(to_spg(r.game)) == r.game);
            tried++;
        }
        CHECK(tried > 20);
    }

    TEST_CASE("subgame closure")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto c = subgame_closure(g, set_of(4, {0, 1}));
        REQUIRE(c.game.size() == 3);
        const auto s = c.map.sink;
        REQUIRE(s != kNoVertex);
        CHECK(c.game.is_sink(s));
        CHECK(c.game.owner(s) == Owner::Random);
        CHECK(c.game.prio1(s) == 0);
        CHECK(c.game.prio2(s) == 0);
        CHECK(c.game.succ(s).size() == 1);
        CHECK(c.game.succ(s)[0] == s);
        auto b = c.map.from_parent[1];
        auto a = c.map.from_parent[0];
        REQUIRE(c.game.succ(b).size() == 2);
        for (std::size_t i = 0; i < 2; i++) {
            CHECK((c.game.succ(b)[i] == a || c.game.succ(b)[i] == s));
            CHECK(c.game.probs(b)[i] == Rational(1, 2));
        }
        // player vertices lose their outside edges
        CHECK(c.game.succ(a).size() == 1);

        // a subgame gains only an unreachable sink
        auto whole = subgame_closure(g, VertexSet::full(4));
        CHECK(whole.game.size() == 5);
        for (VertexId v = 0; v < 4; v++) {
            for (auto u : whole.game.succ(v)) CHECK(u != whole.map.sink);
        }

        // every random vertex leaks
        GameBuilder bld;
        bld.add_vertex(Owner::Random, 0, 0);
        bld.add_vertex(Owner::Random, 1, 1);
        bld.add_vertex(Owner::P1, 0, 0);
        bld.add_edge(0, 1, Rational(1, 3));
        bld.add_edge(0, 2, Rational(2, 3));
        bld.add_edge(1, 0, Rational(1, 4));
        bld.add_edge(1, 2, Rational(3, 4));
        bld.add_edge(2, 2);
        auto h = std::move(bld).build();
        auto ch = subgame_closure(h, set_of(3, {0, 1}));
        for (VertexId v : {0u, 1u}) {
            auto x = ch.map.from_parent[v];
            auto succ = ch.game.succ(x);
            CHECK(std::find(succ.begin(), succ.end(), ch.map.sink) != succ.end());
        }
        CHECK_THROWS_AS(subgame_closure(g, set_of(4, {2, 3})), PreconditionError);
    }

    TEST_CASE("closures of random games validate")
    {
        RandomGameParams p;
        p.n = 7;
        p.random_permille = 500;
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 0; seed < 150; seed++) {
            auto g = random_game(p, seed);
            VertexSet U(7);
            for (VertexId v = 0; v < 7; v++) {
                if (rng() % 2) U.insert(v);
            }
            bool ok = true;
            for (auto v : U) {
                if (g.owner(v) == Owner::Random) continue;
                bool inside = false;
                for (auto u : g.succ(v)) inside = inside || U.contains(u);
                ok = ok && inside;
            }
            if (U.empty()) continue;
            if (!ok) {
                CHECK_THROWS_AS(subgame_closure(g, U), PreconditionError);
                continue;
            }
            auto c = subgame_closure(g, U);
            CHECK(c.game.size() == U.count() + 1);
            CHECK(parse_game(to_spg(c.game)).size() == c.game.size());
        }
    }

    TEST_CASE("derandomize")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto d = derandomize(g);
        CHECK(d.owner(1) == Owner::P2);
        CHECK(d.probs(1).empty());
        CHECK(d.graph().succ(1).size() == 2);
        auto plain = parse_game("spg 1;\nvertex 0 owner=p2 p1=1 p2=0 succ=0,1;\nvertex 1 owner=p1 p1=0 p2=0 succ=0;");
        CHECK(derandomize(plain) == plain);
        for (std::uint64_t seed = 0; seed < 50; seed++) {
            auto r = derandomize(random_game({}, seed));
            for (VertexId v = 0; v < r.size(); v++) CHECK(r.owner(v) != Owner::Random);
            CHECK(parse_game(to_spg(r)) == r);
        }
    }
}
