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

#include "sas/certificate.hpp"
#include "sas/game_io.hpp"
#include "sas/generate.hpp"
#include "sas/oracles.hpp"
#include "sas/solver.hpp"
#include "test_util.hpp"

using namespace sas;

namespace {

StochasticGame
loop_game(Priority p1)
{
    GameBuilder b;
    b.add_vertex(Owner::P1, p1, 0);
    b.add_edge(0, 0);
    return std::move(b).build();
}

Certificate
certify(const StochasticGame& g)
{
    auto r = solve_sas(g);
    return build_certificate(g, *r.trace);
}

// first odd part whose attractor is strictly larger than its trap, as a JSON pointer
std::optional<nlohmann::json::json_pointer>
find_wide_part(const nlohmann::json& node, nlohmann::json::json_pointer at)
{
    if (!node.is_object()) return std::nullopt;
    if (node["kind"] == "even") return find_wide_part(node["child"], at / "child");
    if (node["kind"] != "odd") return std::nullopt;
    for (std::size_t i = 0; i < node["parts"].size(); i++) {
        const auto& p = node["parts"][i];
        if (p["U"].size() > p["R"].size()) return at / "parts" / i;
        if (auto r = find_wide_part(p["child"], at / "parts" / i / "child")) return r;
    }
    return std::nullopt;
}

} // namespace

TEST_SUITE("certificate")
{
    TEST_CASE("infinite-memory game certificate is a single even node")
    {
        auto g = test::load_game("games/infinite-memory.spg");
        auto c = certify(g);
        const auto& root = c.doc["root"];
        CHECK(root["kind"] == "even");
        CHECK(root["d"] == 2);
        CHECK(root["A"].size() == g.size());
        CHECK(root["child"].is_null());
        CHECK(c.w1(g.size()).count() == g.size());
        auto v = verify_certificate(g, c);
        CHECK_MESSAGE(v.accepted(), v.diagnostic);
    }

    TEST_CASE("constant zero priority gives one even node")
    {
        auto g = loop_game(0);
        auto c = certify(g);
        CHECK(c.doc["root"]["kind"] == "even");
        CHECK(verify_certificate(g, c).accepted());
    }

    TEST_CASE("round trip on random games")
    {
        RandomGameParams p;
        for (std::uint64_t seed = 0; seed < 250; seed++) {
            p.n = 2 + seed % 6;
            auto g = random_game(p, seed);
            auto c = certify(g);
            auto text = c.doc.dump();
            Certificate back{nlohmann::json::parse(text)};
            auto v = verify_certificate(g, back);
            CHECK_MESSAGE(v.accepted(), "seed " << seed << ": " << v.diagnostic);
            CHECK(back.w1(g.size()) == solve_sas(g).w1);
        }
    }

    TEST_CASE("verification does not call the solver")
    {
        auto g = random_game({}, 7);
        auto c = certify(g);
        auto before = solve_sas_invocations();
        CHECK(verify_certificate(g, c).accepted());
        CHECK(solve_sas_invocations() == before);
    }

    TEST_CASE("false claims are rejected")
    {
        auto g = loop_game(1);
        CHECK(solve_sas(g).w1.empty());
        nlohmann::json base = {{"kind", "base"}, {"vertices", 1}};
        nlohmann::json part = {{"vertices", 1}, {"R", {0}}, {"U", {0}}, {"child", base}};
        Certificate c;
        c.doc = {{"schema", 1}, {"kind", "sas-certificate"}, {"game_sha256", sha256_hex(to_spg(g))}, {"vertices", 1}, {"w1", {0}}};
        c.doc["root"] = {{"kind", "odd"}, {"d", 1}, {"vertices", 1}, {"parts", nlohmann::json::array({part})}};
        seal(c);
        auto v = verify_certificate(g, c);
        CHECK(v.verdict == Verdict::Rejected);
        CHECK(v.diagnostic.find("priority 1") != std::string::npos);

        c.doc["root"] = {{"kind", "even"}, {"d", 0}, {"vertices", 1}};
        seal(c);
        CHECK(verify_certificate(g, c).verdict == Verdict::Rejected);
    }

    TEST_CASE("a vertex of the attractor moved into the trap is caught")
    {
        RandomGameParams p;
        p.n = 7;
        int tried = 0;
        for (std::uint64_t seed = 0; seed < 400 && tried < 10; seed++) {
            auto g = random_game(p, seed);
            auto c = certify(g);
            auto at = find_wide_part(c.doc["root"], nlohmann::json::json_pointer("/root"));
            if (!at) continue;
            tried++;
            auto& part = c.doc[*at];
            auto R = part["R"].get<std::vector<VertexId>>();
            for (auto u : part["U"].get<std::vector<VertexId>>()) {
                if (std::find(R.begin(), R.end(), u) == R.end()) {
                    R.insert(std::upper_bound(R.begin(), R.end(), u), u);
                    break;
                }
            }
            part["R"] = R;
            seal(c);
            auto v = verify_certificate(g, c);
            CHECK_MESSAGE(v.verdict == Verdict::Rejected, "seed " << seed);
            CHECK(v.diagnostic.find("parts[") != std::string::npos);
        }
        CHECK(tried > 0);
    }

    TEST_CASE("tampering and foreign games")
    {
        auto g = random_game({}, 3);
        auto c = certify(g);
        auto t = c;
        t.doc["vertices"] = 999;
        CHECK(verify_certificate(g, t).verdict == Verdict::Malformed);
        t.doc.erase("root");
        seal(t);
        CHECK(verify_certificate(g, t).verdict == Verdict::Malformed);
        t = c;
        t.doc["w1"].push_back(1000);
        seal(t);
        auto v = verify_certificate(g, t);
        CHECK(v.verdict == Verdict::Rejected);
        CHECK(v.diagnostic.find("out of range") != std::string::npos);
        CHECK(verify_certificate(random_game({}, 4), c).verdict == Verdict::Rejected);
    }

    TEST_CASE("region mutants are rejected unless still sound")
    {
        RandomGameParams p;
        std::mt19937_64 rng(11);
        std::size_t rejected = 0, accepted = 0;
        for (std::uint64_t seed = 0; seed < 60; seed++) {
            p.n = 3 + seed % 5;
            auto g = random_game(p, seed);
            auto c = certify(g);
            auto truth = oracle_sas_region(g);
            REQUIRE(c.w1(g.size()) == truth);
            for (int k = 0; k < 25; k++) {
                std::string what;
                auto m = mutate_region(c, rng, &what);
                auto v = verify_certificate(g, m);
                REQUIRE(v.verdict != Verdict::Malformed);
                if (v.accepted()) {
                    accepted++;
                    auto w = m.w1(g.size());
                    CHECK_MESSAGE((w - truth).empty(), "seed " << seed << " " << what);
                } else {
                    rejected++;
                }
            }
        }
        CHECK(rejected > 0);
        MESSAGE("mutants rejected " << rejected << ", accepted " << accepted);
    }
}
