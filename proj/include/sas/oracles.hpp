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
#include <string>
#include <vector>

#include "sas/game.hpp"
#include "sas/product.hpp"
#include "sas/strategy.hpp"

namespace sas {

struct EquivResult
{
    bool equal = true;
    std::size_t product_states = 0;
    /** Counterexample word stem.cycle^omega as letter names (empty when equal). */
    std::vector<std::string> stem, cycle;
    bool accepted_by_reference = false; // membership in a's language
};

/**
 * Language equality of a two-condition automaton and a parity automaton over
 * the same letters, by searching the synchronized product for a strongly
 * connected cycle set on which the two acceptance conditions disagree.
 */
EquivResult dpw_equiv_oracle(const D2pw& a, const Dpw& b, std::size_t bound = 4096);

/** Union over memoryless sigma1 of the vertices where the induced P2-MDP cannot spoil with positive probability. */
VertexSet oracle_as_parity_region(const GameGraph& g, const std::vector<Priority>& prio, std::uint64_t bound = 1 << 20);

/** Intersection over memoryless sigma2 of the solver's winning region on the induced MDP. */
VertexSet oracle_sas_region(const Arena& a, std::uint64_t bound = 1 << 16);
VertexSet oracle_sas_region(const StochasticGame& g, std::uint64_t bound = 1 << 16);

struct CheckResult
{
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/**
 * Decides whether the fixed finite-memory strategy of player 1 wins sure
 * Parity(prio1) and almost-sure Parity(prio2) from every claimed vertex.
 */
CheckResult check_fixed_strategy_sas(const GameGraph& g, const std::vector<Priority>& prio1,
                                     const std::vector<Priority>& prio2, const MealyStrategy& s, const VertexSet& claimed);
CheckResult check_fixed_strategy_sas(const StochasticGame& g, const MealyStrategy& s, const VertexSet& claimed);
CheckResult check_fixed_strategy_sas(const StochasticGame& g, const MemorylessStrategy& s, const VertexSet& claimed);

/**
 * Decides whether a fixed finite-memory strategy of player 2 spoils every
 * player-1 strategy from each claimed vertex, by solving the game with the
 * strategy's memory folded in.
 */
CheckResult check_spoiling_strategy(const StochasticGame& g, const MealyStrategy& s, const VertexSet& claimed);

/** Product of a game with a player's Mealy memory, reachable from the claimed vertices. */
struct MemoryProduct
{
    GameGraph graph; // the fixed player's vertices become single-successor random vertices
    std::vector<VertexId> base;
    std::vector<std::uint32_t> mem;
    std::vector<VertexId> initial; // product ids of the claimed starts
};
MemoryProduct memory_product(const GameGraph& g, const MealyStrategy& s, const VertexSet& starts);

} // namespace sas
