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

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <string>

#include "sas/sas.h"
#include "test_util.hpp"

using nlohmann::json;

namespace {

std::string
take(char* p)
{
    std::string s = p ? p : "";
    sas_string_free(p);
    return s;
}

struct Game
{
    sas_game* g = nullptr;
    explicit Game(const std::string& text) { REQUIRE(sas_game_parse(text.c_str(), &g) == SAS_OK); }
    ~Game() { sas_game_free(g); }
};

struct Solution
{
    sas_solution* s = nullptr;
    explicit Solution(const sas_game* g) { REQUIRE(sas_solve(g, &s) == SAS_OK); }
    ~Solution() { sas_solution_free(s); }
};

} // namespace

TEST_SUITE("capi")
{
    TEST_CASE("errors are reported through status and last error")
    {
        sas_game* g = nullptr;
        CHECK(sas_game_parse("spg 1;\nvertex 0 owner=rand p1=0 p2=0 succ=0:1/2;", &g) == SAS_E_VALIDATION);
        CHECK(g == nullptr);
        CHECK(std::string(sas_last_error()).find("1/2") != std::string::npos);
        CHECK(sas_game_parse("spg 1;\nvertex 0 owner=p1 succ=;", &g) != SAS_OK);
        CHECK(sas_game_parse("nonsense", &g) == SAS_E_PARSE);
        CHECK(sas_game_parse(nullptr, &g) == SAS_E_ARGUMENT);
        CHECK(sas_game_from_json("{", &g) == SAS_E_PARSE);
        CHECK(std::string(sas_version()).size() > 0);
    }

    TEST_CASE("solve the infinite-memory game")
    {
        Game g(sas::test::read_file("games/infinite-memory.spg"));
        CHECK(sas_game_vertex_count(g.g) == 4);
        Solution s(g.g);
        char* out = nullptr;
        REQUIRE(sas_solution_to_json(s.s, &out) == SAS_OK);
        auto j = json::parse(take(out));
        CHECK(j["winning"] == json({0, 1, 2, 3}));
        CHECK(j["losing"] == json::array());
        CHECK(j["trace_digest"].get<std::string>().size() == 64);
        int win = 0;
        CHECK(sas_solution_is_winning(s.s, 0, &win) == SAS_OK);
        CHECK(win == 1);
        CHECK(sas_solution_is_winning(s.s, 9, &win) == SAS_E_PRECONDITION);
        REQUIRE(sas_solution_trace_json(s.s, &out) == SAS_OK);
        CHECK(json::parse(take(out))["kind"] == "even");
    }

    TEST_CASE("synthesize, check and simulate")
    {
        Game g(sas::test::read_file("games/infinite-memory.spg"));
        Solution s(g.g);
        char* out = nullptr;
        REQUIRE(sas_synthesize(g.g, s.s, "auto", "geometric:4,2", &out) == SAS_OK);
        auto strat = take(out);
        CHECK(json::parse(strat)["kind"] == "counter");
        int ok = 0;
        CHECK(sas_check_strategy(g.g, strat.c_str(), nullptr, &ok, &out) == SAS_E_PRECONDITION);

        sas_sim_options o{42, 2000, 4, 1000, 0, 2, 1};
        REQUIRE(sas_simulate(g.g, strat.c_str(), nullptr, &o, &out) == SAS_OK);
        auto a = json::parse(take(out));
        o.jobs = 1;
        REQUIRE(sas_simulate(g.g, strat.c_str(), nullptr, &o, &out) == SAS_OK);
        auto b = json::parse(take(out));
        CHECK(a == b);
        CHECK(a["runs"] == 4);
        CHECK(a["structural_violations"] == 0);

        CHECK(sas_synthesize(g.g, s.s, "spoiler", nullptr, &out) == SAS_E_PRECONDITION);
        CHECK(sas_synthesize(g.g, s.s, "magic", nullptr, &out) == SAS_E_ARGUMENT);
    }

    TEST_CASE("memoryless synthesis passes the exact checker")
    {
        // largest first priority 1: player 1 must eventually stay in the 1-2 component
        Game g("spg 1;\n"
               "vertex 0 owner=p1 p1=1 p2=0 succ=1,3;\n"
               "vertex 1 owner=rand p1=0 p2=1 succ=1:1/2,2:1/2;\n"
               "vertex 2 owner=p1 p1=0 p2=2 succ=1,2;\n"
               "vertex 3 owner=p2 p1=1 p2=1 succ=3;\n");
        Solution s(g.g);
        char* out = nullptr;
        REQUIRE(sas_solution_to_json(s.s, &out) == SAS_OK);
        CHECK(json::parse(take(out))["winning"] == json({0, 1, 2}));
        REQUIRE(sas_synthesize(g.g, s.s, "auto", nullptr, &out) == SAS_OK);
        auto strat = take(out);
        CHECK(json::parse(strat)["kind"] == "memoryless");
        int ok = 0;
        REQUIRE(sas_check_strategy(g.g, strat.c_str(), nullptr, &ok, &out) == SAS_OK);
        auto report = take(out);
        CHECK_MESSAGE(ok == 1, report);

        REQUIRE(sas_synthesize(g.g, s.s, "spoiler", nullptr, &out) == SAS_OK);
        auto spoiler = take(out);
        REQUIRE(sas_check_strategy(g.g, spoiler.c_str(), nullptr, &ok, &out) == SAS_OK);
        report = take(out);
        CHECK_MESSAGE(ok == 1, report);
    }

    TEST_CASE("certificates")
    {
        Game g(sas::test::read_file("games/certificate-even.spg"));
        Solution s(g.g);
        char* out = nullptr;
        REQUIRE(sas_certify(g.g, s.s, &out) == SAS_OK);
        auto cert = take(out);
        sas_verdict v;
        char* diag = nullptr;
        REQUIRE(sas_verify_certificate(g.g, cert.c_str(), &v, &diag) == SAS_OK);
        take(diag);
        CHECK(v == SAS_ACCEPTED);
        REQUIRE(sas_verify_certificate(g.g, "{not json", &v, &diag) == SAS_OK);
        take(diag);
        CHECK(v == SAS_MALFORMED);
        Game other(sas::test::read_file("games/even-split.spg"));
        REQUIRE(sas_verify_certificate(other.g, cert.c_str(), &v, &diag) == SAS_OK);
        CHECK(take(diag).find("different game") != std::string::npos);
        CHECK(v == SAS_REJECTED);
    }

    TEST_CASE("product and the equivalence oracle")
    {
        auto text = sas::test::read_file("games/example.d2pw");
        char *dpw = nullptr, *info = nullptr;
        REQUIRE(sas_product(text.c_str(), "conjunction", nullptr, &dpw, &info) == SAS_OK);
        auto d = take(dpw);
        auto i = json::parse(take(info));
        CHECK(i["max_priority"] == 14);
        int agree = 0;
        char* rep = nullptr;
        REQUIRE(sas_oracle_dpw_equiv(text.c_str(), d.c_str(), 4096, &agree, &rep) == SAS_OK);
        CHECK(json::parse(take(rep))["result"] == "equal");
        CHECK(agree == 1);
        REQUIRE(sas_product(text.c_str(), "disjunction", "swapped", &dpw, &info) == SAS_OK);
        auto dis = take(dpw);
        take(info);
        REQUIRE(sas_oracle_dpw_equiv(text.c_str(), dis.c_str(), 4096, &agree, &rep) == SAS_OK);
        take(rep);
        CHECK(agree == 0);
        CHECK(sas_product(text.c_str(), "conjunction", "sideways", &dpw, &info) == SAS_E_ARGUMENT);
    }

    TEST_CASE("oracles and generators")
    {
        sas_random_params p{5, 2, 300, 3, 3};
        sas_game* g = nullptr;
        REQUIRE(sas_game_random(&p, 17, &g) == SAS_OK);
        char* out = nullptr;
        REQUIRE(sas_game_to_spg(g, &out) == SAS_OK);
        auto text = take(out);
        sas_game* h = nullptr;
        REQUIRE(sas_game_random(&p, 17, &h) == SAS_OK);
        REQUIRE(sas_game_to_spg(h, &out) == SAS_OK);
        CHECK(take(out) == text);
        REQUIRE(sas_game_to_json(g, &out) == SAS_OK);
        sas_game* k = nullptr;
        REQUIRE(sas_game_from_json(take(out).c_str(), &k) == SAS_OK);
        REQUIRE(sas_game_to_spg(k, &out) == SAS_OK);
        CHECK(take(out) == text);

        int agree = 0;
        REQUIRE(sas_oracle_sas(g, 1 << 16, &agree, &out) == SAS_OK);
        take(out);
        CHECK(agree == 1);
        REQUIRE(sas_oracle_as_parity(g, 1 << 20, &agree, &out) == SAS_OK);
        take(out);
        CHECK(agree == 1);
        CHECK(sas_oracle_sas(g, 1, &agree, &out) == SAS_E_BOUND);

        REQUIRE(sas_oracle_batch(&p, 100, 30, 1 << 16, 3, &agree, &out) == SAS_OK);
        auto a = json::parse(take(out));
        REQUIRE(sas_oracle_batch(&p, 100, 30, 1 << 16, 1, &agree, &out) == SAS_OK);
        CHECK(json::parse(take(out)) == a);
        CHECK(a["disagreements"] == 0);

        REQUIRE(sas_game_to_dot(g, "[0,1]", nullptr, &out) == SAS_OK);
        CHECK(take(out).rfind("digraph", 0) == 0);
        REQUIRE(sas_d2pw_random(3, 2, 2, 2, 1, &out) == SAS_OK);
        CHECK(take(out).rfind("d2pw 1;", 0) == 0);
        sas_game_free(g);
        sas_game_free(h);
        sas_game_free(k);
    }
}
