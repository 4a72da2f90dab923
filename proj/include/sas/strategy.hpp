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

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "sas/game.hpp"
#include "sas/solver.hpp"

namespace sas {

using Natural = boost::multiprecision::cpp_int;

struct MemorylessStrategy
{
    Player player = Player::P1;
    std::vector<VertexId> choice; // kNoVertex where the player does not move

    /** Throws PreconditionError if a choice is not an edge or sits on a foreign vertex. */
    void validate(const GameGraph& g) const;
};

/**
 * Finite-memory strategy. On reaching vertex v with memory m the memory
 * becomes m' = update(m, v), and if v belongs to the player the move is move(m', v).
 */
struct MealyStrategy
{
    Player player = Player::P1;
    std::uint32_t memory = 1;
    std::uint32_t initial = 0;
    std::size_t vertices = 0;
    std::vector<std::uint32_t> update_table; // [m * vertices + v]
    std::vector<VertexId> move_table;        // [m * vertices + v]

    std::uint32_t update(std::uint32_t m, VertexId v) const { return update_table[m * vertices + v]; }
    VertexId move(std::uint32_t m, VertexId v) const { return move_table[m * vertices + v]; }

    static MealyStrategy from_memoryless(const MemorylessStrategy& s);
    MealyStrategy(Player p = Player::P1) : player(p) { }
    MealyStrategy(Player p, std::uint32_t mem, std::size_t n)
        : player(p), memory(mem), vertices(n), update_table(mem * n, 0), move_table(mem * n, kNoVertex) { }

    void validate(const GameGraph& g) const;
};

/** N_i for phase i: geometric N0 * base^i or an explicit table (last entry repeats). */
struct Schedule
{
    enum class Kind { Geometric, Table } kind = Kind::Geometric;
    std::uint64_t n0 = 4;
    std::uint64_t base = 2;
    std::vector<std::uint64_t> table;

    /** Saturates at 2^64-1. */
    std::uint64_t horizon(const Natural& i) const;
    static Schedule geometric(std::uint64_t n0, std::uint64_t base) { return {Kind::Geometric, n0, base, {}}; }
    static Schedule from_table(std::vector<std::uint64_t> t) { return {Kind::Table, 0, 0, std::move(t)}; }
    /** "geometric:N0,base" or "table:a,b,c". */
    static Schedule parse(const std::string& text);
    std::string describe() const;
};

/** What a machine reports about the step it just took (for the simulator's assertions). */
struct StepInfo
{
    VertexId move = kNoVertex;
    bool unlucky = false;     // flag after this step (top level)
    bool unlucky_set = false; // flag went from false to true on this step
    bool in_a = false;        // top-level even node: vertex in the attractor region A
    bool at_top = false;      // vertex has the top node's largest Omega1 priority
    std::uint32_t a_rank = 0; // attractor rank when in_a
};

/**
 * Executable strategy state. step() consumes the next play vertex (in the ids
 * of the game the machine was built for) and returns the move when the vertex
 * is owned by the machine's player.
 */
class Machine
{
  public:
    virtual ~Machine() = default;
    virtual void reset() = 0;
    virtual StepInfo step(VertexId v) = 0;
};

/**
 * Immutable description of the counter-switching strategy for a trace whose
 * game is entirely winning; make_machine() creates fresh mutable state.
 */
class CounterStrategy
{
  public:
    struct Node;
    CounterStrategy(std::shared_ptr<const Node> root, Schedule schedule, std::size_t n);
    std::unique_ptr<Machine> make_machine() const;
    const Schedule& schedule() const { return schedule_; }
    nlohmann::json to_json() const;
    std::shared_ptr<const Node> root() const { return root_; }

  private:
    std::shared_ptr<const Node> root_;
    Schedule schedule_;
    std::size_t n_;
};

/** Default schedule N_i = 4|V| * 2^i. */
Schedule default_schedule(const StochasticGame& g);

/** Requires the trace to declare every non-sink vertex winning. */
CounterStrategy synth_counter_strategy(const StochasticGame& g, const TraceNode& trace, const Schedule& schedule);

/** For games whose largest Omega1 priority is at most 1. Memoryless on the trace's winning region. */
MemorylessStrategy synth_memoryless_cobuchi(const StochasticGame& g, const TraceNode& trace);

struct FiniteSynthesis
{
    MealyStrategy strategy;
    /** memory <= constant * n * max(d1, 1). */
    std::uint32_t constant = 2;
};

/** For games whose Omega2 takes values in {1, 2}. */
FiniteSynthesis synth_finite_buchi(const StochasticGame& g, const TraceNode& trace);

/**
 * Spoiling strategy of player 2 on the losing region, as a finite Mealy machine
 * assembled from positive attractors and the recursive cases of the trace.
 */
MealyStrategy synth_spoiling(const StochasticGame& g, const TraceNode& trace);

/** Memoryless spoiler by enumeration: kills every vertex of the losing region at once, if one exists. */
std::optional<MemorylessStrategy> find_memoryless_spoiler(const StochasticGame& g, std::uint64_t bound = 1 << 16);

struct SimulationOptions
{
    std::uint64_t seed = 0;
    std::uint64_t steps = 10000;
    std::uint64_t runs = 1;
    VertexId start = 0;
    /** Record per-step unlucky timestamps only after this step (0 records all). */
    std::uint64_t late_after = 0;
    unsigned jobs = 1;
};

struct RunStats
{
    std::uint64_t seed = 0;
    std::string digest; // of the vertex sequence
    std::uint64_t unlucky = 0;                 // times unlucky was set
    std::vector<std::uint64_t> unlucky_events; // step indices where unlucky was set (see late_after)
    std::uint64_t late_unlucky = 0;            // events strictly after late_after
    std::uint64_t structural_violations = 0;
};

struct SimulationStats
{
    std::uint64_t seed = 0;
    std::vector<RunStats> runs;
    std::vector<std::uint64_t> visits1, visits2; // visit counts per Omega1 / Omega2 priority
    std::uint64_t total_unlucky = 0;
    std::uint64_t runs_with_late_unlucky = 0;
    std::uint64_t structural_violations = 0;

    nlohmann::json to_json(bool per_run = false) const;
};

/** Adversary: memoryless player-2 choice, or uniform random when absent. */
SimulationStats simulate(const StochasticGame& g, const std::function<std::unique_ptr<Machine>()>& player1,
                         const std::optional<MemorylessStrategy>& adversary, const SimulationOptions& opt);

std::unique_ptr<Machine> make_machine(const MealyStrategy& s);
std::unique_ptr<Machine> make_machine(const MemorylessStrategy& s);

nlohmann::json strategy_to_json(const MemorylessStrategy& s);
nlohmann::json strategy_to_json(const MealyStrategy& s);
MemorylessStrategy memoryless_from_json(const nlohmann::json& j, std::size_t n);
MealyStrategy mealy_from_json(const nlohmann::json& j);

} // namespace sas
