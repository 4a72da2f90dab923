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

#include <vector>

#include "sas/strategy.hpp"

namespace sas::detail {

/** A region of a game played by a child strategy that is restarted on every entry. */
struct RegionBlock
{
    VertexSet region;       // parent ids
    MealyStrategy strategy; // child ids
    std::vector<VertexId> of; // parent -> child
    std::vector<VertexId> to; // child -> parent (kNoVertex for a fresh sink)
};

/**
 * Mealy machine that runs each block's strategy from its initial memory
 * whenever the play enters the block's region, and plays fallback elsewhere
 * (the first successor where fallback has no entry). Memory state 0 is shared
 * by all vertices outside the blocks and is the initial state.
 */
MealyStrategy compose_regions(Player p, const GameGraph& g, const std::vector<VertexId>& fallback,
                              const std::vector<RegionBlock>& blocks);

/** Strategy of a subgame extended to the parent; memory is left unchanged outside. */
MealyStrategy lift_mealy(const MealyStrategy& sub, const SubMap& map, const GameGraph& parent);

void identity_block(RegionBlock& b, std::size_t n);
/** Maps for a child whose ids go through child_to_level and then level_to_node (empty = identity). */
void child_block(RegionBlock& b, const SubMap& child_to_level, const std::vector<VertexId>& level_to_node, std::size_t n);

/** Throws unless every vertex of the trace's game is declared winning. */
void require_all_winning(const TraceNode& t);

/** Restriction of the node's first child to its winning part, re-solved. */
struct Resolved
{
    SasResult result;
    SubMap map; // resolved ids -> first child ids
};
Resolved resolve_first_winning(const TraceNode& t);

} // namespace sas::detail
