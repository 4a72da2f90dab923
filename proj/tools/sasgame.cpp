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

// sasgame: command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sas/sas.h"

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInput = 3 };

struct Failure
{
    int code;
    std::string message;
};

using GamePtr = std::unique_ptr<sas_game, decltype(&sas_game_free)>;
using SolutionPtr = std::unique_ptr<sas_solution, decltype(&sas_solution_free)>;

int
code_of(sas_status s)
{
    return s == SAS_E_ARGUMENT ? kUsage : kInput;
}

void
check(sas_status s, const std::string& what)
{
    if (s != SAS_OK) throw Failure{code_of(s), what + ": " + sas_last_error()};
}

// Takes ownership of a library string.
std::string
take(char* p)
{
    std::string s = p ? p : "";
    sas_string_free(p);
    return s;
}

std::string
read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kInput, "cannot open " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void
write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kInput, "cannot write " + path};
}

void
emit(const std::string& text, const std::string& path)
{
    if (path.empty()) std::cout << text;
    else write_file(path, text);
}

GamePtr
load_game(const std::string& path)
{
    auto text = read_file(path);
    sas_game* g = nullptr;
    auto first = text.find_first_not_of(" \t\r\n");
    bool json = first != std::string::npos && text[first] == '{';
    check(json ? sas_game_from_json(text.c_str(), &g) : sas_game_parse(text.c_str(), &g), path);
    return GamePtr(g, sas_game_free);
}

SolutionPtr
solve(const sas_game* g)
{
    sas_solution* s = nullptr;
    check(sas_solve(g, &s), "solve");
    return SolutionPtr(s, sas_solution_free);
}

const char*
opt(const std::string& s)
{
    return s.empty() ? nullptr : s.c_str();
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Solver for stochastic parity games with a sure and an almost-sure parity objective", "sasgame"};
    app.set_version_flag("--version", std::string(sas_version()));
    app.require_subcommand(1);
    int rc = kOk;

    // solve
    std::string game_path, out_path, trace_path;
    std::optional<std::uint32_t> vertex;
    auto* c_solve = app.add_subcommand("solve", "Compute the winning region of player 1");
    c_solve->add_option("game", game_path, "Game file (.spg or JSON)")->required();
    c_solve->add_option("--vertex", vertex, "Exit 1 unless this vertex is winning");
    c_solve->add_option("--trace", trace_path, "Write the derivation trace as JSON");
    c_solve->callback([&] {
        auto g = load_game(game_path);
        auto s = solve(g.get());
        char* out = nullptr;
        check(sas_solution_to_json(s.get(), &out), "solve");
        std::cout << take(out);
        if (!trace_path.empty()) {
            check(sas_solution_trace_json(s.get(), &out), "trace");
            write_file(trace_path, take(out));
        }
        if (vertex) {
            int win = 0;
            check(sas_solution_is_winning(s.get(), *vertex, &win), "--vertex");
            if (!win) rc = kNegative;
        }
    });

    // synth
    std::string kind = "auto", schedule;
    auto* c_synth = app.add_subcommand("synth", "Synthesize a strategy file");
    c_synth->add_option("game", game_path)->required();
    c_synth->add_option("--kind", kind, "Strategy kind")
        ->check(CLI::IsMember({"auto", "counter", "memoryless", "finite", "spoiler"}))
        ->capture_default_str();
    c_synth->add_option("--schedule", schedule, "Counter schedule: geometric:N0,base or table:a,b,...");
    c_synth->add_option("-o,--output", out_path, "Output file (default standard output)");
    c_synth->callback([&] {
        auto g = load_game(game_path);
        auto s = solve(g.get());
        char* out = nullptr;
        check(sas_synthesize(g.get(), s.get(), kind.c_str(), opt(schedule), &out), "synth");
        emit(take(out), out_path);
    });

    // simulate
    std::string strategy_path, adversary = "random";
    sas_sim_options sim{0, 10000, 1, 0, 0, 1, 0};
    bool per_run = false;
    auto* c_sim = app.add_subcommand("simulate", "Sample plays of a strategy");
    c_sim->add_option("game", game_path)->required();
    c_sim->add_option("strategy", strategy_path, "Strategy file from synth")->required();
    c_sim->add_option("--seed", sim.seed)->capture_default_str();
    c_sim->add_option("--steps", sim.steps)->capture_default_str();
    c_sim->add_option("--runs", sim.runs)->capture_default_str();
    c_sim->add_option("--start", sim.start)->capture_default_str();
    c_sim->add_option("--late-after", sim.late_after, "Count unlucky events after this step")->capture_default_str();
    c_sim->add_option("--jobs", sim.jobs)->capture_default_str()->check(CLI::PositiveNumber);
    c_sim->add_option("--schedule", schedule, "Override the schedule of a counter strategy");
    c_sim->add_option("--adversary", adversary, "random, or a player 2 memoryless strategy file")->capture_default_str();
    c_sim->add_flag("--per-run", per_run, "Report every run");
    c_sim->callback([&] {
        auto g = load_game(game_path);
        auto strat = read_file(strategy_path);
        if (!schedule.empty()) {
            // rewrite the schedule field in place; the library validates the result
            auto key = strat.find("\"schedule\":\"");
            if (key == std::string::npos) throw Failure{kUsage, "--schedule applies to counter strategies only"};
            auto from = key + 12, to = strat.find('"', from);
            strat.replace(from, to - from, schedule);
        }
        std::string adv_text;
        if (adversary != "random") adv_text = read_file(adversary);
        sim.per_run = per_run;
        char* out = nullptr;
        check(sas_simulate(g.get(), strat.c_str(), opt(adv_text), &sim, &out), "simulate");
        auto rep = take(out);
        std::cout << rep;
        if (rep.find("\"structural_violations\":0") == std::string::npos) rc = kNegative;
    });

    // certify / verify-cert
    auto* c_cert = app.add_subcommand("certify", "Produce a certificate for the winning region");
    c_cert->add_option("game", game_path)->required();
    c_cert->add_option("-o,--output", out_path);
    c_cert->callback([&] {
        auto g = load_game(game_path);
        auto s = solve(g.get());
        char* out = nullptr;
        check(sas_certify(g.get(), s.get(), &out), "certify");
        emit(take(out), out_path);
    });

    std::string cert_path;
    auto* c_verify = app.add_subcommand("verify-cert", "Check a certificate; exit 0 accepted, 1 rejected, 2 malformed");
    c_verify->add_option("game", game_path)->required();
    c_verify->add_option("certificate", cert_path)->required();
    c_verify->callback([&] {
        auto g = load_game(game_path);
        auto text = read_file(cert_path);
        sas_verdict v = SAS_MALFORMED;
        char* diag = nullptr;
        check(sas_verify_certificate(g.get(), text.c_str(), &v, &diag), "verify-cert");
        auto d = take(diag);
        const char* names[] = {"accepted", "rejected", "malformed"};
        std::cout << "{\"schema\":1,\"verdict\":\"" << names[v] << "\"}\n";
        if (!d.empty()) std::cerr << "verify-cert: " << d << "\n";
        rc = static_cast<int>(v);
    });

    // product
    std::string automaton_path, mode = "conjunction", orientation = "auto";
    auto* c_prod = app.add_subcommand("product", "Translate a two-condition automaton into one parity automaton");
    c_prod->add_option("automaton", automaton_path, ".d2pw file")->required();
    c_prod->add_option("-o,--output", out_path, "Write the automaton here and the summary to standard output");
    c_prod->add_option("--mode", mode)->check(CLI::IsMember({"conjunction", "disjunction"}))->capture_default_str();
    c_prod->add_option("--orientation", orientation)->check(CLI::IsMember({"auto", "direct", "swapped"}))->capture_default_str();
    c_prod->callback([&] {
        auto text = read_file(automaton_path);
        char *dpw = nullptr, *info = nullptr;
        check(sas_product(text.c_str(), mode.c_str(), orientation.c_str(), &dpw, &info), automaton_path);
        auto d = take(dpw), i = take(info);
        if (out_path.empty()) {
            std::cout << d;
            std::cerr << i;
        } else {
            write_file(out_path, d);
            std::cout << i;
        }
    });

    // oracle
    auto* c_oracle = app.add_subcommand("oracle", "Brute-force cross-checks; exit 1 on disagreement");
    c_oracle->require_subcommand(1);
    std::uint64_t max_strategies = 1 << 16;
    std::size_t max_states = 4096;
    std::string second_path, region_path;
    auto finish = [&](sas_status s, const std::string& what, int agree, char* report) {
        check(s, what);
        std::cout << take(report);
        if (!agree) rc = kNegative;
    };

    auto* o_sas = c_oracle->add_subcommand("sas", "Solver vs enumeration of memoryless player 2 strategies");
    o_sas->add_option("game", game_path)->required();
    o_sas->add_option("--max-strategies", max_strategies)->capture_default_str();
    o_sas->callback([&] {
        auto g = load_game(game_path);
        int agree = 0;
        char* rep = nullptr;
        auto st = sas_oracle_sas(g.get(), max_strategies, &agree, &rep);
        finish(st, "oracle sas", agree, rep);
    });

    auto* o_as = c_oracle->add_subcommand("as-parity", "Almost-sure parity on the second condition vs enumeration");
    o_as->add_option("game", game_path)->required();
    o_as->add_option("--max-strategies", max_strategies)->capture_default_str();
    o_as->callback([&] {
        auto g = load_game(game_path);
        int agree = 0;
        char* rep = nullptr;
        auto st = sas_oracle_as_parity(g.get(), max_strategies, &agree, &rep);
        finish(st, "oracle as-parity", agree, rep);
    });

    auto* o_eq = c_oracle->add_subcommand("dpw-equiv", "Language equality of a .d2pw and a .dpw automaton");
    o_eq->add_option("d2pw", automaton_path)->required();
    o_eq->add_option("dpw", second_path)->required();
    o_eq->add_option("--max-states", max_states)->capture_default_str();
    o_eq->callback([&] {
        auto a = read_file(automaton_path), b = read_file(second_path);
        int agree = 0;
        char* rep = nullptr;
        auto st = sas_oracle_dpw_equiv(a.c_str(), b.c_str(), max_states, &agree, &rep);
        finish(st, "oracle dpw-equiv", agree, rep);
    });

    auto* o_check = c_oracle->add_subcommand("check", "Exact check of a finite-memory strategy file");
    o_check->add_option("game", game_path)->required();
    o_check->add_option("strategy", strategy_path)->required();
    o_check->add_option("--region", region_path, "JSON array of vertices to check from");
    o_check->callback([&] {
        auto g = load_game(game_path);
        auto s = read_file(strategy_path);
        std::string r;
        if (!region_path.empty()) r = read_file(region_path);
        int ok = 0;
        char* rep = nullptr;
        auto st = sas_check_strategy(g.get(), s.c_str(), opt(r), &ok, &rep);
        finish(st, "oracle check", ok, rep);
    });

    sas_random_params rp{6, 2, 200, 3, 3};
    double random_fraction = 0.2;
    std::uint64_t seed = 0, count = 100;
    unsigned jobs = 1;
    auto add_params = [&](CLI::App* c) {
        c->add_option("--seed", seed)->capture_default_str();
        c->add_option("--n", rp.n, "Vertices")->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--branching", rp.branching, "Largest out-degree")->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--random-fraction", random_fraction, "Share of random vertices")->capture_default_str()->check(CLI::Range(0.0, 1.0));
        c->add_option("--d1", rp.d1, "Largest first-condition priority")->capture_default_str();
        c->add_option("--d2", rp.d2, "Largest second-condition priority")->capture_default_str();
    };
    auto* o_batch = c_oracle->add_subcommand("batch", "Solver vs oracle on consecutive random games");
    add_params(o_batch);
    o_batch->add_option("--count", count)->capture_default_str();
    o_batch->add_option("--max-strategies", max_strategies)->capture_default_str();
    o_batch->add_option("--jobs", jobs)->capture_default_str()->check(CLI::PositiveNumber);
    o_batch->callback([&] {
        rp.random_permille = static_cast<unsigned>(random_fraction * 1000 + 0.5);
        int agree = 0;
        char* rep = nullptr;
        auto st = sas_oracle_batch(&rp, seed, count, max_strategies, jobs, &agree, &rep);
        finish(st, "oracle batch", agree, rep);
    });

    // gen
    std::string format = "spg";
    bool automaton = false;
    std::size_t states = 4, letters = 2;
    auto* c_gen = app.add_subcommand("gen", "Generate a reproducible random game or automaton");
    add_params(c_gen);
    c_gen->add_option("--format", format)->check(CLI::IsMember({"spg", "json"}))->capture_default_str();
    c_gen->add_flag("--automaton", automaton, "Generate a .d2pw automaton instead");
    c_gen->add_option("--states", states, "Automaton states")->capture_default_str();
    c_gen->add_option("--letters", letters, "Automaton alphabet size")->capture_default_str();
    c_gen->add_option("-o,--output", out_path);
    c_gen->callback([&] {
        char* out = nullptr;
        if (automaton) {
            check(sas_d2pw_random(states, letters, rp.d1, rp.d2, seed, &out), "gen");
        } else {
            rp.random_permille = static_cast<unsigned>(random_fraction * 1000 + 0.5);
            sas_game* g = nullptr;
            check(sas_game_random(&rp, seed, &g), "gen");
            GamePtr hold(g, sas_game_free);
            check(format == "json" ? sas_game_to_json(g, &out) : sas_game_to_spg(g, &out), "gen");
        }
        emit(take(out), out_path);
    });

    // export-dot
    bool shade_winning = false;
    auto* c_dot = app.add_subcommand("export-dot", "Render a game as Graphviz DOT");
    c_dot->add_option("game", game_path)->required();
    auto* reg = c_dot->add_option("--region", region_path, "JSON array of vertices to shade");
    c_dot->add_flag("--winning", shade_winning, "Shade the winning region")->excludes(reg);
    c_dot->add_option("--strategy", strategy_path, "Memoryless strategy file whose moves are drawn bold");
    c_dot->add_option("-o,--output", out_path);
    c_dot->callback([&] {
        auto g = load_game(game_path);
        std::string region, strat;
        if (!region_path.empty()) region = read_file(region_path);
        if (shade_winning) {
            auto s = solve(g.get());
            char* out = nullptr;
            check(sas_solution_to_json(s.get(), &out), "solve");
            auto j = take(out);
            auto a = j.find('['), b = j.find(']');
            region = j.substr(a, b - a + 1);
        }
        if (!strategy_path.empty()) strat = read_file(strategy_path);
        char* out = nullptr;
        check(sas_game_to_dot(g.get(), opt(region), opt(strat), &out), "export-dot");
        emit(take(out), out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kOk : kUsage;
    } catch (const Failure& f) {
        std::cerr << "sasgame: " << f.message << "\n";
        return f.code;
    }
    std::cout.flush();
    return rc;
}
