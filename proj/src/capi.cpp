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

#include "sas/sas.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "sas/certificate.hpp"
#include "sas/game_io.hpp"
#include "sas/generate.hpp"
#include "sas/oracles.hpp"
#include "sas/product.hpp"
#include "sas/qualitative.hpp"
#include "sas/solver.hpp"
#include "sas/strategy.hpp"

#ifndef SAS_VERSION
#define SAS_VERSION "0.0.0"
#endif

struct sas_game
{
    sas::StochasticGame game;
};

struct sas_solution
{
    sas::SasResult result;
    sas::StochasticGame game;
};

namespace {

using nlohmann::json;
using namespace sas;

thread_local std::string g_error;

char*
dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

struct ArgumentError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

template <typename F>
sas_status
guard(F&& f)
{
    g_error.clear();
    try {
        f();
        return SAS_OK;
    } catch (const ArgumentError& e) {
        g_error = e.what();
        return SAS_E_ARGUMENT;
    } catch (const ParseError& e) {
        g_error = e.what();
        return SAS_E_PARSE;
    } catch (const ValidationError& e) {
        g_error = e.what();
        return SAS_E_VALIDATION;
    } catch (const PreconditionError& e) {
        g_error = e.what();
        return SAS_E_PRECONDITION;
    } catch (const BoundExceeded& e) {
        g_error = e.what();
        return SAS_E_BOUND;
    } catch (const json::exception& e) {
        g_error = std::string("invalid JSON: ") + e.what();
        return SAS_E_PARSE;
    } catch (const std::exception& e) {
        g_error = std::string("internal error: ") + e.what();
        return SAS_E_INTERNAL;
    } catch (...) {
        g_error = "internal error";
        return SAS_E_INTERNAL;
    }
}

template <typename... P>
void
need(const P*... p)
{
    if (((p == nullptr) || ...)) throw ArgumentError("null argument");
}

json
parse_json(const char* text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
}

std::string
game_digest(const StochasticGame& g)
{
    return sha256_hex(to_spg(g));
}

void
check_game(const json& j, const StochasticGame& g)
{
    if (j.contains("game_sha256") && j.at("game_sha256") != game_digest(g)) {
        throw PreconditionError("strategy was synthesized for a different game");
    }
}

VertexSet
region_or(const char* text, const json& fallback, std::size_t n)
{
    if (text) return region_from_json(parse_json(text), n);
    if (!fallback.is_null()) return region_from_json(fallback, n);
    return VertexSet::full(n);
}

json
strategy_moves(const std::vector<VertexId>& sigma, const GameGraph& g, Owner who, const VertexSet& on)
{
    json moves = json::array();
    for (auto v : on) {
        if (g.owner(v) == who && sigma[v] != kNoVertex) moves.push_back({v, sigma[v]});
    }
    return moves;
}

json
oracle_sas_report(const StochasticGame& g, std::uint64_t bound)
{
    auto solver = solve_sas(g).w1;
    auto oracle = oracle_sas_region(g, bound);
    json r = {{"schema", 1}, {"oracle", "sas"}, {"agree", solver == oracle}, {"solver", region_to_json(solver)},
              {"oracle_region", region_to_json(oracle)}};
    for (VertexId v = 0; v < g.size(); v++) {
        if (solver.contains(v) != oracle.contains(v)) {
            json w = {{"vertex", v}, {"solver", solver.contains(v) ? "win" : "lose"}, {"oracle", oracle.contains(v) ? "win" : "lose"}};
            if (!solver.contains(v)) {
                if (auto s = find_memoryless_spoiler(g, bound)) w["spoiler"] = strategy_to_json(*s);
            }
            r["first_witness"] = std::move(w);
            break;
        }
    }
    return r;
}

std::unique_ptr<Machine>
machine_for(const json& j, const StochasticGame& g)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "memoryless") {
        auto s = memoryless_from_json(j, g.size());
        if (s.player != Player::P1) throw PreconditionError("simulation needs a player 1 strategy");
        s.validate(g.graph());
        return make_machine(s);
    }
    if (kind == "mealy") {
        auto s = mealy_from_json(j);
        if (s.player != Player::P1) throw PreconditionError("simulation needs a player 1 strategy");
        if (s.vertices != g.size()) throw PreconditionError("strategy built for a different game");
        s.validate(g.graph());
        return make_machine(s);
    }
    throw ParseError("unknown strategy kind '" + kind + "'", 0);
}

} // namespace

extern "C" {

const char*
sas_version(void)
{
    return SAS_VERSION;
}

const char*
sas_last_error(void)
{
    return g_error.c_str();
}

void
sas_string_free(char* s)
{
    std::free(s);
}

sas_status
sas_game_parse(const char* text, sas_game** out)
{
    return guard([&] {
        need(text, out);
        *out = new sas_game{parse_game(text)};
    });
}

sas_status
sas_game_from_json(const char* text, sas_game** out)
{
    return guard([&] {
        need(text, out);
        *out = new sas_game{game_from_json(parse_json(text))};
    });
}

sas_status
sas_game_random(const sas_random_params* p, uint64_t seed, sas_game** out)
{
    return guard([&] {
        need(p, out);
        RandomGameParams q;
        q.n = p->n;
        q.branching = p->branching;
        q.random_permille = p->random_permille;
        q.d1 = p->d1;
        q.d2 = p->d2;
        if (q.random_permille > 1000) throw ArgumentError("random_permille must be at most 1000");
        *out = new sas_game{random_game(q, seed)};
    });
}

void
sas_game_free(sas_game* g)
{
    delete g;
}

size_t
sas_game_vertex_count(const sas_game* g)
{
    return g ? g->game.size() : 0;
}

sas_status
sas_game_to_spg(const sas_game* g, char** out)
{
    return guard([&] {
        need(g, out);
        *out = dup(to_spg(g->game));
    });
}

sas_status
sas_game_to_json(const sas_game* g, char** out)
{
    return guard([&] {
        need(g, out);
        *out = dup(game_to_json(g->game).dump(2) + "\n");
    });
}

sas_status
sas_game_to_dot(const sas_game* g, const char* region_json, const char* strategy_json, char** out)
{
    return guard([&] {
        need(g, out);
        std::optional<VertexSet> w;
        if (region_json) w = region_from_json(parse_json(region_json), g->game.size());
        std::optional<std::vector<VertexId>> choice;
        if (strategy_json) {
            auto s = memoryless_from_json(parse_json(strategy_json), g->game.size());
            s.validate(g->game.graph());
            choice = s.choice;
        }
        *out = dup(to_dot(g->game, w ? &*w : nullptr, choice ? &*choice : nullptr));
    });
}

sas_status
sas_solve(const sas_game* g, sas_solution** out)
{
    return guard([&] {
        need(g, out);
        *out = new sas_solution{solve_sas(g->game), g->game};
    });
}

void
sas_solution_free(sas_solution* s)
{
    delete s;
}

sas_status
sas_solution_is_winning(const sas_solution* s, uint32_t v, int* winning)
{
    return guard([&] {
        need(s, winning);
        if (v >= s->game.size()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        *winning = s->result.w1.contains(v) ? 1 : 0;
    });
}

sas_status
sas_solution_to_json(const sas_solution* s, char** out)
{
    return guard([&] {
        need(s, out);
        json j = {{"schema", 1},
                  {"winning", region_to_json(s->result.w1)},
                  {"losing", region_to_json(s->result.w2)},
                  {"trace_digest", trace_digest(*s->result.trace)}};
        *out = dup(j.dump() + "\n");
    });
}

sas_status
sas_solution_trace_json(const sas_solution* s, char** out)
{
    return guard([&] {
        need(s, out);
        *out = dup(trace_to_json(*s->result.trace).dump(1) + "\n");
    });
}

sas_status
sas_synthesize(const sas_game* gp, const sas_solution* s, const char* kind_c, const char* schedule, char** out)
{
    return guard([&] {
        need(gp, s, out);
        const auto& g = gp->game;
        if (!(s->game == g)) throw PreconditionError("solution belongs to a different game");
        std::string kind = kind_c ? kind_c : "auto";
        const auto& W = s->result.w1;
        if (kind == "auto") {
            if (W.empty()) kind = "spoiler";
            else if (max_priority(g.prio1()) <= 1) kind = "memoryless";
            else if (std::all_of(g.prio2().begin(), g.prio2().end(), [](Priority p) { return p == 1 || p == 2; })) kind = "finite";
            else kind = "counter";
        }
        json j;
        if (kind == "memoryless") {
            j = strategy_to_json(synth_memoryless_cobuchi(g, *s->result.trace));
        } else if (kind == "finite") {
            auto f = synth_finite_buchi(g, *s->result.trace);
            j = strategy_to_json(f.strategy);
            j["memory_constant"] = f.constant;
        } else if (kind == "spoiler") {
            j = strategy_to_json(synth_spoiling(g, *s->result.trace));
            j["losing"] = region_to_json(s->result.w2);
        } else if (kind == "counter") {
            if (W.empty()) throw PreconditionError("player 1 wins nowhere; no counter strategy to build");
            auto sub = restrict(g, W);
            auto r = solve_sas(sub.game);
            auto sched = schedule ? Schedule::parse(schedule) : default_schedule(sub.game);
            j = synth_counter_strategy(sub.game, *r.trace, sched).to_json();
        } else {
            throw ArgumentError("unknown strategy kind '" + kind + "'");
        }
        if (!j.contains("losing")) j["winning"] = region_to_json(W);
        j["game_sha256"] = game_digest(g);
        *out = dup(j.dump() + "\n");
    });
}

sas_status
sas_simulate(const sas_game* gp, const char* strategy_json, const char* adversary_json, const sas_sim_options* opt, char** out)
{
    return guard([&] {
        need(gp, strategy_json, opt, out);
        const auto& g = gp->game;
        auto j = parse_json(strategy_json);
        check_game(j, g);
        std::optional<MemorylessStrategy> adv;
        if (adversary_json) {
            adv = memoryless_from_json(parse_json(adversary_json), g.size());
            if (adv->player != Player::P2) throw PreconditionError("the adversary must be a player 2 strategy");
        }
        SimulationOptions o;
        o.seed = opt->seed;
        o.steps = opt->steps;
        o.runs = opt->runs;
        o.late_after = opt->late_after;
        o.start = opt->start;
        o.jobs = std::max(1u, opt->jobs);
        if (o.start >= g.size()) throw PreconditionError("start vertex out of range");

        SimulationStats st;
        if (j.at("kind") == "counter") {
            // the counter machine lives on the winning region, which player 2 and chance cannot leave
            auto W = region_from_json(j.at("winning"), g.size());
            if (!W.contains(o.start)) throw PreconditionError("start vertex is not in the winning region");
            auto sub = restrict(g, W);
            auto r = solve_sas(sub.game);
            auto cs = synth_counter_strategy(sub.game, *r.trace, Schedule::parse(j.at("schedule").get<std::string>()));
            std::optional<MemorylessStrategy> sub_adv;
            if (adv) {
                sub_adv = MemorylessStrategy{Player::P2, std::vector<VertexId>(sub.game.size(), kNoVertex)};
                for (VertexId c = 0; c < sub.game.size(); c++) {
                    auto u = adv->choice[sub.map.to_parent[c]];
                    if (u != kNoVertex) sub_adv->choice[c] = sub.map.from_parent[u];
                }
            }
            o.start = sub.map.from_parent[o.start];
            st = simulate(sub.game, [&] { return cs.make_machine(); }, sub_adv, o);
        } else {
            st = simulate(g, [&] { return machine_for(j, g); }, adv, o);
        }
        auto rep = st.to_json(opt->per_run != 0);
        rep["start"] = opt->start;
        rep["steps"] = o.steps;
        rep["strategy"] = j.at("kind");
        *out = dup(rep.dump() + "\n");
    });
}

sas_status
sas_check_strategy(const sas_game* gp, const char* strategy_json, const char* region_json, int* ok, char** report)
{
    return guard([&] {
        need(gp, strategy_json, ok, report);
        const auto& g = gp->game;
        auto j = parse_json(strategy_json);
        check_game(j, g);
        const auto kind = j.at("kind").get<std::string>();
        CheckResult res;
        VertexSet claimed;
        if (kind == "memoryless") {
            auto s = memoryless_from_json(j, g.size());
            if (s.player != Player::P1) throw PreconditionError("only player 1 memoryless strategies can be checked");
            claimed = region_or(region_json, j.value("winning", json()), g.size());
            res = check_fixed_strategy_sas(g, s, claimed);
        } else if (kind == "mealy") {
            auto s = mealy_from_json(j);
            if (s.vertices != g.size()) throw PreconditionError("strategy built for a different game");
            if (s.player == Player::P1) {
                claimed = region_or(region_json, j.value("winning", json()), g.size());
                res = check_fixed_strategy_sas(g, s, claimed);
            } else {
                claimed = region_or(region_json, j.value("losing", json()), g.size());
                res = check_spoiling_strategy(g, s, claimed);
            }
        } else if (kind == "counter") {
            throw PreconditionError("counter strategies use unbounded memory; check them by simulation");
        } else {
            throw ParseError("unknown strategy kind '" + kind + "'", 0);
        }
        *ok = res.ok ? 1 : 0;
        json r = {{"schema", 1}, {"ok", res.ok}, {"claimed", region_to_json(claimed)}};
        if (!res.ok) r["reason"] = res.reason;
        *report = dup(r.dump() + "\n");
    });
}

sas_status
sas_certify(const sas_game* g, const sas_solution* s, char** out)
{
    return guard([&] {
        need(g, s, out);
        if (!(s->game == g->game)) throw PreconditionError("solution belongs to a different game");
        *out = dup(build_certificate(g->game, *s->result.trace).doc.dump() + "\n");
    });
}

sas_status
sas_verify_certificate(const sas_game* g, const char* text, sas_verdict* verdict, char** diagnostic)
{
    return guard([&] {
        need(g, text, verdict, diagnostic);
        Certificate c;
        try {
            c.doc = json::parse(text);
        } catch (const json::parse_error& e) {
            *verdict = SAS_MALFORMED;
            *diagnostic = dup(std::string("invalid JSON: ") + e.what());
            return;
        }
        auto r = verify_certificate(g->game, c);
        *verdict = r.verdict == Verdict::Accepted ? SAS_ACCEPTED : r.verdict == Verdict::Rejected ? SAS_REJECTED : SAS_MALFORMED;
        *diagnostic = dup(r.diagnostic);
    });
}

sas_status
sas_product(const char* text, const char* mode_c, const char* orientation, char** dpw_text, char** info)
{
    return guard([&] {
        need(text, dpw_text, info);
        auto a = parse_d2pw(text);
        std::string mode = mode_c ? mode_c : "conjunction";
        std::optional<Orientation> force;
        std::string o = orientation ? orientation : "auto";
        if (o == "direct") force = Orientation::Direct;
        else if (o == "swapped") force = Orientation::Swapped;
        else if (o != "auto") throw ArgumentError("orientation must be auto, direct or swapped");
        Dpw d;
        if (mode == "conjunction") d = build_conjunction_dpw(a, force);
        else if (mode == "disjunction") d = build_disjunction_dpw(a, force);
        else throw ArgumentError("mode must be conjunction or disjunction");
        json j = {{"schema", 1},
                  {"mode", mode},
                  {"input_states", a.size()},
                  {"states", d.size()},
                  {"max_priority", max_priority(d.prio)}};
        if (mode == "conjunction") {
            auto p1 = max_priority(a.prio1), p2 = max_priority(a.prio2);
            auto layout = force ? RegisterLayout::fixed(*force, p1, p2) : RegisterLayout::choose(p1, p2);
            j["orientation"] = layout.orientation == Orientation::Direct ? "direct" : "swapped";
            j["registers"] = layout.num_registers();
        }
        *dpw_text = dup(to_text(d));
        *info = dup(j.dump() + "\n");
    });
}

sas_status
sas_d2pw_random(size_t states, size_t letters, uint32_t d1, uint32_t d2, uint64_t seed, char** out)
{
    return guard([&] {
        need(out);
        *out = dup(to_text(random_d2pw(states, letters, d1, d2, seed)));
    });
}

sas_status
sas_oracle_dpw_equiv(const char* a_text, const char* b_text, size_t max_states, int* agree, char** report)
{
    return guard([&] {
        need(a_text, b_text, agree, report);
        auto a = parse_d2pw(a_text);
        auto b = parse_dpw(b_text);
        auto r = dpw_equiv_oracle(a, b, max_states);
        *agree = r.equal ? 1 : 0;
        json j = {{"schema", 1}, {"oracle", "dpw-equiv"}, {"result", r.equal ? "equal" : "different"}, {"product_states", r.product_states}};
        if (!r.equal) {
            j["witness"] = {{"stem", r.stem}, {"cycle", r.cycle}, {"accepted_by_d2pw", r.accepted_by_reference}};
        }
        *report = dup(j.dump() + "\n");
    });
}

sas_status
sas_oracle_sas(const sas_game* g, uint64_t bound, int* agree, char** report)
{
    return guard([&] {
        need(g, agree, report);
        auto r = oracle_sas_report(g->game, bound);
        *agree = r["agree"].get<bool>() ? 1 : 0;
        *report = dup(r.dump() + "\n");
    });
}

sas_status
sas_oracle_as_parity(const sas_game* gp, uint64_t bound, int* agree, char** report)
{
    return guard([&] {
        need(gp, agree, report);
        const auto& g = gp->game;
        auto sol = solve_as_parity(g.graph(), g.prio2());
        auto oracle = oracle_as_parity_region(g.graph(), g.prio2(), bound);
        json r = {{"schema", 1}, {"oracle", "as-parity"}, {"agree", sol.w1 == oracle}, {"solver", region_to_json(sol.w1)},
                  {"oracle_region", region_to_json(oracle)}};
        for (VertexId v = 0; v < g.size(); v++) {
            if (sol.w1.contains(v) != oracle.contains(v)) {
                r["first_witness"] = {{"vertex", v},
                                      {"solver", sol.w1.contains(v) ? "win" : "lose"},
                                      {"oracle", oracle.contains(v) ? "win" : "lose"},
                                      {"solver_strategy", strategy_moves(sol.sigma1, g.graph(), Owner::P1, sol.w1)}};
                break;
            }
        }
        *agree = sol.w1 == oracle ? 1 : 0;
        *report = dup(r.dump() + "\n");
    });
}

sas_status
sas_oracle_batch(const sas_random_params* p, uint64_t seed, uint64_t count, uint64_t bound, unsigned jobs, int* agree, char** report)
{
    return guard([&] {
        need(p, agree, report);
        RandomGameParams q;
        q.n = p->n;
        q.branching = p->branching;
        q.random_permille = p->random_permille;
        q.d1 = p->d1;
        q.d2 = p->d2;
        // 0 agree, 1 disagree, 2 skipped (bound)
        std::vector<int> outcome(count, 0);
        std::vector<json> witness(count);
        auto work = [&](unsigned id, unsigned step) {
            for (std::uint64_t i = id; i < count; i += step) {
                auto g = random_game(q, seed + i);
                try {
                    auto r = oracle_sas_report(g, bound);
                    if (!r["agree"].get<bool>()) {
                        outcome[i] = 1;
                        witness[i] = {{"seed", seed + i}, {"game", to_spg(g)}, {"report", r}};
                    }
                } catch (const BoundExceeded&) {
                    outcome[i] = 2;
                }
            }
        };
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(jobs);
        for (unsigned k = 0; k < jobs; k++) {
            pool.emplace_back([&, k] {
                try {
                    work(k, jobs);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        std::uint64_t bad = 0, skipped = 0;
        json first;
        for (std::uint64_t i = 0; i < count; i++) {
            if (outcome[i] == 1 && bad++ == 0) first = witness[i];
            skipped += outcome[i] == 2;
        }
        json r = {{"schema", 1}, {"oracle", "sas-batch"}, {"seed", seed}, {"games", count}, {"disagreements", bad}, {"skipped", skipped}};
        if (bad) r["first_disagreement"] = first;
        *agree = bad == 0 ? 1 : 0;
        *report = dup(r.dump() + "\n");
    });
}

} // extern "C"
