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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sas/game.hpp"

namespace sas {

using StateId = std::uint32_t;
using RegisterVector = std::vector<Priority>;

/** Deterministic complete automaton with two priority functions. */
struct D2pw
{
    std::vector<std::string> alphabet;
    StateId initial = 0;
    std::vector<std::vector<StateId>> delta; // delta[q][letter]
    std::vector<Priority> prio1, prio2;

    std::size_t size() const { return delta.size(); }
    /** Throws ValidationError on an incomplete or out-of-range table. */
    void validate() const;
};

/** Deterministic parity automaton; base/registers record product provenance when built. */
struct Dpw
{
    std::vector<std::string> alphabet;
    StateId initial = 0;
    std::vector<std::vector<StateId>> delta;
    std::vector<Priority> prio;
    std::vector<StateId> base;
    std::vector<RegisterVector> registers;

    std::size_t size() const { return delta.size(); }
    void validate() const;
};

/**
 * Which condition indexes the registers. Direct: one register per even
 * priority of condition 1, holding condition-2 priorities. Swapped: roles exchanged.
 */
enum class Orientation { Direct, Swapped };

struct RegisterLayout
{
    Orientation orientation = Orientation::Direct;
    Priority d_index = 0; // largest priority of the indexing condition
    Priority d_reg = 0;   // largest priority of the register condition, made even

    std::size_t num_registers() const { return d_index / 2 + 1; }
    Priority offset(Priority d) const { return d * (d_reg + 2) / 2; }
    /** Product priority of a state whose indexing priority is a. */
    Priority priority(Priority a, std::span<const Priority> r) const
    {
        return a % 2 ? (a * (d_reg + 2) + d_reg) / 2 : offset(a) + r[a / 2];
    }
    /** Register step leaving a state with indexing priority a and register priority b. */
    void update(std::span<Priority> r, Priority a, Priority b) const
    {
        for (std::size_t i = 0; i < r.size(); i++) r[i] = (2 * i == a) ? b : std::max(r[i], b);
    }
    /** (d_reg+1)^ceil((d_index+1)/2), the per-state register grid size. */
    boost::multiprecision::cpp_int grid_size() const;

    /** Smaller grid wins; ties go to the direct orientation. */
    static RegisterLayout choose(Priority d1, Priority d2);
    static RegisterLayout fixed(Orientation o, Priority d1, Priority d2);
};

Dpw build_conjunction_dpw(const D2pw& a, std::optional<Orientation> force = std::nullopt);
/** Union of the two single-condition languages, as complement(conjunction(complements)). */
Dpw build_disjunction_dpw(const D2pw& a, std::optional<Orientation> force = std::nullopt);

/** Product of a game with the register memory, reachable from chosen roots (v, 0...0). */
struct ProductArena
{
    GameGraph graph;
    std::vector<Priority> prio; // the single merged priority
    std::vector<VertexId> base;
    std::vector<Priority> regs; // num_registers entries per product vertex
    RegisterLayout layout;
    /** root[v] = id of (v, 0...0) or kNoVertex. */
    std::vector<VertexId> root;

    std::span<const Priority> registers(VertexId x) const
    {
        auto k = layout.num_registers();
        return {regs.data() + x * k, k};
    }
    /** Product id of (v, r), or kNoVertex if it was not materialized. */
    VertexId find(VertexId v, std::span<const Priority> r) const;

    std::unordered_map<std::string, VertexId> index;
};

inline constexpr std::size_t kDefaultProductBound = 4'000'000;

/**
 * Register product of g for Parity(prio1) and Parity(prio2). Roots default to every vertex.
 * Successor i of (v, r) corresponds to successor i of v.
 */
ProductArena lift_conjunction(const GameGraph& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2,
                              const VertexSet* roots = nullptr, std::optional<Orientation> force = std::nullopt,
                              std::size_t bound = kDefaultProductBound);

struct ProductGame
{
    StochasticGame game; // prio1 = merged priority, prio2 = 0
    ProductArena arena;
};

/** Stochastic product with inherited owners and distributions. */
ProductGame lift_conjunction_game(const StochasticGame& g, const std::vector<Priority>& prio1,
                                  const std::vector<Priority>& prio2, std::optional<Orientation> force = std::nullopt);

/** Lasso over a run of states or vertices; throws PreconditionError if it is not a legal run. */
bool lasso_accepts(const D2pw& a, const std::vector<StateId>& stem, const std::vector<StateId>& cycle);
bool lasso_accepts(const Dpw& a, const std::vector<StateId>& stem, const std::vector<StateId>& cycle);
bool lasso_accepts(const GameGraph& g, const std::vector<Priority>& prio, const std::vector<VertexId>& stem,
                   const std::vector<VertexId>& cycle);

/** Acceptance of the ultimately periodic word stem.cycle^omega (letters by index). */
bool word_accepts(const D2pw& a, const std::vector<std::size_t>& stem, const std::vector<std::size_t>& cycle);
bool word_accepts(const Dpw& a, const std::vector<std::size_t>& stem, const std::vector<std::size_t>& cycle);

D2pw parse_d2pw(std::string_view text);
Dpw parse_dpw(std::string_view text);
std::string to_text(const D2pw& a);
std::string to_text(const Dpw& a);

} // namespace sas
