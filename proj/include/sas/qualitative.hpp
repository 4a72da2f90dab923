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

#include "sas/attractor.hpp"
#include "sas/game.hpp"

namespace sas {

/**
 * Parity is max-parity throughout: a play is won by player 1 iff the largest
 * priority seen infinitely often is even.
 */
struct ParitySolution
{
    VertexSet w1, w2;
    /** sigma1 is meaningful on P1 vertices of w1, sigma2 on P2 vertices of w2. */
    std::vector<VertexId> sigma1, sigma2;
};

/** Two-player parity; throws PreconditionError if random vertices are present. */
ParitySolution solve_parity_zielonka(const GameGraph& g, const std::vector<Priority>& prio);

/**
 * Qualitative stochastic parity. w1 is the almost-sure region of player 1,
 * w2 = V \ w1 where player 2 wins with positive probability. sigma1 is
 * almost-sure winning on w1, sigma2 positively winning on w2; both memoryless.
 */
ParitySolution solve_as_parity(const GameGraph& g, const std::vector<Priority>& prio);

/** Almost-sure reachability of T for player p; strategy and ranks as for attractors. */
AttractorResult as_reach(const GameGraph& g, Player p, const VertexSet& T);

/** Strongly connected components of the graph induced by S, in reverse topological order. */
std::vector<std::vector<VertexId>> scc_decomposition(const GameGraph& g, const VertexSet& S);

/**
 * Maximal end components inside S (all vertices by default). Single-controller:
 * throws PreconditionError when both P1 and P2 vertices are present.
 */
std::vector<VertexSet> mec_decomposition(const GameGraph& g, const VertexSet* S = nullptr);

/** Union of end components whose maximal priority is even. */
VertexSet winning_ec_states(const GameGraph& g, const std::vector<Priority>& prio);

/** Controller wins parity with probability 1 / with positive probability. */
VertexSet mdp_as_parity(const GameGraph& g, const std::vector<Priority>& prio);
VertexSet mdp_pos_parity(const GameGraph& g, const std::vector<Priority>& prio);

/** The controlling player of a single-controller graph (P1 if neither owns a vertex). */
Player controller_of(const GameGraph& g);

/**
 * Graph where every vertex of player p takes only the successor sigma[v]
 * and becomes a random vertex. Entries of kNoVertex are left untouched.
 */
GameGraph fix_strategy(const GameGraph& g, Player p, const std::vector<VertexId>& sigma);

/** prio + 1 everywhere (complement condition). */
std::vector<Priority> shifted(const std::vector<Priority>& prio);

inline ParitySolution solve_as_parity(const StochasticGame& g, const std::vector<Priority>& prio)
{
    return solve_as_parity(g.graph(), prio);
}

} // namespace sas
