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

#include <string>
#include <string_view>

#include <json.hpp>

#include "sas/game.hpp"

namespace sas {

/**
 * Reads the line-oriented .spg format:
 *
 *   spg 1;
 *   vertex <id> owner=<p1|p2|rand> p1=<nat> p2=<nat> succ=<id>[:<num>/<den>],... [label=<ident>];
 *
 * Ids may be any distinct naturals; they are renumbered densely in ascending order.
 * Throws ParseError (syntax, with line) or ValidationError (semantics, with the file's vertex id).
 */
StochasticGame parse_game(std::string_view text);

/** Normalized .spg text; parse_game(to_spg(g)) == g. */
std::string to_spg(const StochasticGame& g);

nlohmann::json game_to_json(const StochasticGame& g);
StochasticGame game_from_json(const nlohmann::json& j);

nlohmann::json region_to_json(const VertexSet& s);
VertexSet region_from_json(const nlohmann::json& j, std::size_t universe);

std::string sha256_hex(std::string_view data);

} // namespace sas
