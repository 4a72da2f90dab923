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
#include <limits>
#include <vector>

#include "sas/game.hpp"

namespace sas {

inline constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

struct AttractorResult
{
    VertexSet region;
    /** Chosen successor for the attracting player's vertices in region minus target; kNoVertex elsewhere. */
    std::vector<VertexId> strategy;
    /** Fixpoint round of entry (0 for the target); kNoRank outside the region. */
    std::vector<std::uint32_t> rank;
};

VertexSet sure_pre(const GameGraph& g, Player p, const VertexSet& U);
VertexSet pos_pre(const GameGraph& g, Player p, const VertexSet& U);

/**
 * Least fixpoints of X -> T | sure_pre(X) and X -> T | pos_pre(X).
 * With a domain D the computation runs in the subgame induced by D: only
 * edges inside D count and T is intersected with D.
 */
AttractorResult sure_attractor(const GameGraph& g, Player p, const VertexSet& T, const VertexSet* domain = nullptr);
AttractorResult pos_attractor(const GameGraph& g, Player p, const VertexSet& T, const VertexSet* domain = nullptr);

/** U induces a subgame and player p cannot leave it. */
bool is_trap(const GameGraph& g, Player p, const VertexSet& U);

inline VertexSet sure_pre(const StochasticGame& g, Player p, const VertexSet& U) { return sure_pre(g.graph(), p, U); }
inline VertexSet pos_pre(const StochasticGame& g, Player p, const VertexSet& U) { return pos_pre(g.graph(), p, U); }
inline AttractorResult sure_attractor(const StochasticGame& g, Player p, const VertexSet& T) { return sure_attractor(g.graph(), p, T); }
inline AttractorResult pos_attractor(const StochasticGame& g, Player p, const VertexSet& T) { return pos_attractor(g.graph(), p, T); }
inline bool is_trap(const StochasticGame& g, Player p, const VertexSet& U) { return is_trap(g.graph(), p, U); }

} // namespace sas
