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
#include <memory>
#include <string>

#include <json.hpp>

#include "sas/attractor.hpp"
#include "sas/game.hpp"
#include "sas/product.hpp"
#include "sas/qualitative.hpp"

namespace sas {

/**
 * One call of the recursive solver. All sets are in this node's ids.
 *
 * Even node (largest Omega1 priority d even): the game is first cut down to
 * the almost-sure region of the conjunction (w_as, giving work = game|w_as).
 * Then Z, A = sure attractor of P1 to Z, first = closure(work, V\A), and if
 * first loses somewhere, B = positive attractor of P2 to first's losing part
 * and second = work|(V\B).
 *
 * Odd node: Z, A = positive attractor of P2 to Z, first = game|(V\A), and if
 * first wins somewhere, B = sure attractor of P1 to that part and
 * second = closure(game, V\B). When B holds only sinks there is no second
 * child and everything outside B is lost.
 */
struct TraceNode
{
    enum class Kind { Base, Even, Odd };

    Kind kind = Kind::Base;
    Arena game;
    Priority d = 0;
    /** Monotone number of the node in creation order (pre-order). */
    std::uint32_t serial = 0;

    // even nodes only
    VertexSet w_as;
    Arena work;      // game restricted to w_as
    SubMap work_map; // work ids -> game ids
    std::shared_ptr<const ProductArena> product;
    std::shared_ptr<const ParitySolution> product_solution;

    // in work ids (even) or game ids (odd)
    VertexSet Z, A, B;
    AttractorResult a_attr, b_attr;
    std::unique_ptr<TraceNode> first, second;
    SubMap first_map, second_map; // child ids -> work/game ids
    VertexSet first_w1, first_w2, second_w1, second_w2; // children's results lifted (no fresh sink)

    VertexSet w1, w2; // node result; sinks of this game are in w1

    /** Work-level arena the attractors and child maps refer to. */
    const Arena& level() const { return kind == Kind::Even ? work : game; }
};

struct SasResult
{
    VertexSet w1, w2; // top-level ids, sinks stripped
    std::shared_ptr<const TraceNode> trace;
};

SasResult solve_sas(const StochasticGame& g);
SasResult solve_sas(const StochasticGame& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2);
/** On an arena (may contain sinks); regions in arena ids with sinks stripped. */
SasResult solve_sas(const Arena& a);

/** Number of solver nodes created so far in this process (for call-graph assertions). */
std::uint64_t solve_sas_invocations();

nlohmann::json trace_to_json(const TraceNode& t);
std::string trace_digest(const TraceNode& t);

/** Depth-first walk; f(node, depth). */
template <typename F>
void
walk_trace(const TraceNode& t, F&& f, std::size_t depth = 0)
{
    f(t, depth);
    if (t.first) walk_trace(*t.first, f, depth + 1);
    if (t.second) walk_trace(*t.second, f, depth + 1);
}

} // namespace sas
