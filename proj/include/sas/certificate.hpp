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
#include <random>
#include <string>

#include <json.hpp>

#include "sas/game.hpp"
#include "sas/solver.hpp"

namespace sas {

/**
 * Certificate that a region W1 is sure-almost-sure winning, as a JSON document:
 *
 *   { schema, kind: "sas-certificate", game_sha256, vertices, w1, root, sha256 }
 *
 * root certifies the subgame on w1, in which every vertex wins. A node is
 *   base: no vertex other than sinks;
 *   even: d, A (sure attractor to the priority-d vertices), a memoryless product
 *         strategy (product_moves as [state, successor index]) with its
 *         product_region, and a child for the closure of V \ A (null if A = V);
 *   odd:  parts [R_i, U_i, child_i] over the games H_1 = node game,
 *         H_{i+1} = closure(H_i, H_i \ U_i); R_i is a player-2 trap without
 *         priority d, U_i the sure attractor of R_i, child_i certifies H_i|R_i.
 * Ids inside a node or part refer to that node's (part's) game.
 */
struct Certificate
{
    nlohmann::json doc;

    VertexSet w1(std::size_t n) const;
};

/** Reads the sets off a trace of solve_sas on g; the winning part is re-solved as its own game. */
Certificate build_certificate(const StochasticGame& g, const TraceNode& trace);

enum class Verdict { Accepted, Rejected, Malformed };

struct VerifyResult
{
    Verdict verdict = Verdict::Accepted;
    std::string diagnostic; // first failing check, with its path in the document
    bool accepted() const { return verdict == Verdict::Accepted; }
};

/** Checks every local condition; never runs the solver. */
VerifyResult verify_certificate(const StochasticGame& g, const Certificate& c);

/** Recomputes the content digest after an edit. */
void seal(Certificate& c);

/** Number of region arrays (w1, A, product_region, R_i, U_i) in the document. */
std::size_t region_slot_count(const Certificate& c);

/**
 * Copy of c with one element toggled (added or removed) in a uniformly chosen
 * region array, within that array's id range; resealed so that only the
 * semantic checks can reject it. Returns a description of the edit.
 */
Certificate mutate_region(const Certificate& c, std::mt19937_64& rng, std::string* what = nullptr);

} // namespace sas
