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
#include <string>
#include <vector>

#include "sas/game.hpp"
#include "sas/product.hpp"

namespace sas {

struct RandomGameParams
{
    std::size_t n = 6;
    unsigned branching = 2;        // successors per vertex in [1, branching]
    unsigned random_permille = 200; // share of random vertices
    Priority d1 = 3, d2 = 3;
};

/** Reproducible for a given seed on every platform. */
StochasticGame random_game(const RandomGameParams& p, std::uint64_t seed);

D2pw random_d2pw(std::size_t states, std::size_t letters, Priority d1, Priority d2, std::uint64_t seed);

/**
 * Graph shape of a corpus game: owners and successor lists. Vertices with a
 * single successor are always owned by player 1 (ownership is irrelevant there);
 * a random vertex has two successors with probability 1/2 each.
 */
struct Shape
{
    std::vector<Owner> owner;
    std::vector<std::vector<VertexId>> succ;
};

/**
 * Every shape on n vertices with at most two successors per vertex, at most
 * max_random random vertices, one representative per isomorphism class.
 */
void for_each_shape(std::size_t n, unsigned max_random, const std::function<void(const Shape&)>& f);

/**
 * Every priority vector over n vertices with values at most max_prio, up to
 * renamings that keep order and parity (adjacent values of equal parity merged,
 * smallest value 0 or 1).
 */
void for_each_compressed_priorities(std::size_t n, Priority max_prio, const std::function<void(const std::vector<Priority>&)>& f);

/** Order- and parity-preserving compression of a priority vector. */
std::vector<Priority> compress_priorities(const std::vector<Priority>& prio);

StochasticGame game_from_shape(const Shape& s, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2);

/** Graphviz rendering; w1 and a memoryless choice vector are optional. */
std::string to_dot(const StochasticGame& g, const VertexSet* w1 = nullptr, const std::vector<VertexId>* choice = nullptr);

} // namespace sas
