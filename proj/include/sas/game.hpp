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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sas/error.hpp"
#include "sas/vertex_set.hpp"

namespace sas {

using Rational = boost::multiprecision::cpp_rational;

enum class Owner : std::uint8_t { P1 = 0, P2 = 1, Random = 2 };
enum class Player : std::uint8_t { P1 = 1, P2 = 2 };

constexpr Owner owner_of(Player p) { return p == Player::P1 ? Owner::P1 : Owner::P2; }
constexpr Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
const char* owner_name(Owner o);

/**
 * Ownership and edges only, in compressed adjacency form. Successor order is
 * the declaration order. Every vertex has at least one successor, no duplicates.
 */
class GameGraph
{
  public:
    GameGraph() = default;
    GameGraph(std::vector<Owner> owners, const std::vector<std::vector<VertexId>>& succ);

    std::size_t size() const { return owner_.size(); }
    std::size_t edge_count() const { return sdat_.size(); }
    Owner owner(VertexId v) const { return owner_[v]; }
    const std::vector<Owner>& owners() const { return owner_; }

    std::span<const VertexId> succ(VertexId v) const
    {
        return {sdat_.data() + sbeg_[v], sdat_.data() + sbeg_[v + 1]};
    }
    std::span<const VertexId> pred(VertexId v) const
    {
        return {pdat_.data() + pbeg_[v], pdat_.data() + pbeg_[v + 1]};
    }
    std::size_t out_degree(VertexId v) const { return sbeg_[v + 1] - sbeg_[v]; }
    /** Position of u in succ(v), or -1. */
    int succ_index(VertexId v, VertexId u) const;
    bool has_edge(VertexId v, VertexId u) const { return succ_index(v, u) >= 0; }

    friend bool operator==(const GameGraph& a, const GameGraph& b)
    {
        return a.owner_ == b.owner_ && a.sbeg_ == b.sbeg_ && a.sdat_ == b.sdat_;
    }

  private:
    std::vector<Owner> owner_;
    std::vector<std::uint32_t> sbeg_{0}, pbeg_{0};
    std::vector<VertexId> sdat_, pdat_;
};

/** Id translation between a derived graph and its parent. */
struct SubMap
{
    std::vector<VertexId> to_parent;   // derived id -> parent id (kNoVertex for a fresh sink)
    std::vector<VertexId> from_parent; // parent id -> derived id (kNoVertex when absent)
    VertexId sink = kNoVertex;         // fresh sink id in the derived graph, if any

    VertexSet lift(const VertexSet& derived, std::size_t parent_size) const;
    VertexSet lower(const VertexSet& parent) const;
};

/** Whether U induces a subgame; on failure *witness receives the offending vertex. */
bool induces_subgame(const GameGraph& g, const VertexSet& U, VertexId* witness = nullptr);

/** g restricted to U; requires that U induces a subgame. Members keep ascending order. */
GameGraph restrict_graph(const GameGraph& g, const VertexSet& U, SubMap* map = nullptr);

/**
 * Members of U in ascending order followed by a fresh random sink with a self-loop.
 * Random vertices of U with a successor outside U get one edge to the sink.
 * Requires E(v) to meet U for controlled vertices of U.
 */
GameGraph close_graph(const GameGraph& g, const VertexSet& U, SubMap* map = nullptr);

/** Priorities transported to a derived graph; fresh sinks get 0. */
std::vector<Priority> pull_back(const std::vector<Priority>& prio, const SubMap& map);

/**
 * Qualitative view of a game: graph, both priority functions and the id of each
 * vertex in the top-level game (kNoVertex for sinks added by closures).
 */
struct Arena
{
    GameGraph graph;
    std::vector<Priority> prio1, prio2;
    std::vector<VertexId> origin;

    std::size_t size() const { return graph.size(); }
    bool is_sink(VertexId v) const { return origin[v] == kNoVertex; }
    VertexSet sinks() const;
    VertexSet non_sinks() const { return sinks().complement(); }
    std::size_t non_sink_count() const;
};

std::pair<Arena, SubMap> restrict_arena(const Arena& a, const VertexSet& U);
std::pair<Arena, SubMap> close_arena(const Arena& a, const VertexSet& U);

Priority max_priority(const std::vector<Priority>& prio);
Priority max_priority(const std::vector<Priority>& prio, const VertexSet& among);

class GameBuilder;

/**
 * Immutable validated stochastic game with exact transition probabilities
 * on random vertices and two priority functions.
 */
class StochasticGame
{
  public:
    StochasticGame() = default;

    std::size_t size() const { return graph_.size(); }
    const GameGraph& graph() const { return graph_; }
    Owner owner(VertexId v) const { return graph_.owner(v); }
    std::span<const VertexId> succ(VertexId v) const { return graph_.succ(v); }
    /** Probabilities aligned with succ(v); empty unless v is random. */
    const std::vector<Rational>& probs(VertexId v) const { return probs_[v]; }
    Priority prio1(VertexId v) const { return prio1_[v]; }
    Priority prio2(VertexId v) const { return prio2_[v]; }
    const std::vector<Priority>& prio1() const { return prio1_; }
    const std::vector<Priority>& prio2() const { return prio2_; }
    const std::string& label(VertexId v) const { return labels_[v]; }
    bool is_sink(VertexId v) const { return sink_[v]; }
    bool has_sinks() const;

    /** Qualitative view with the identity origin map (sinks map to kNoVertex). */
    Arena arena() const;

    friend bool operator==(const StochasticGame& a, const StochasticGame& b);

  private:
    friend class GameBuilder;
    GameGraph graph_;
    std::vector<std::vector<Rational>> probs_;
    std::vector<Priority> prio1_, prio2_;
    std::vector<std::string> labels_;
    std::vector<bool> sink_;
};

class GameBuilder
{
  public:
    VertexId add_vertex(Owner owner, Priority p1, Priority p2, std::string label = {});
    /** prob is required on random vertices and must be absent (zero) otherwise. */
    void add_edge(VertexId from, VertexId to, Rational prob = 0);
    void mark_sink(VertexId v);
    std::size_t size() const { return owners_.size(); }

    /** Validates every invariant; throws ValidationError naming the vertex. */
    StochasticGame build() &&;

  private:
    std::vector<Owner> owners_;
    std::vector<Priority> p1_, p2_;
    std::vector<std::string> labels_;
    std::vector<std::vector<VertexId>> succ_;
    std::vector<std::vector<Rational>> probs_;
    std::vector<bool> sink_;
};

struct Restriction
{
    StochasticGame game;
    SubMap map;
};

Restriction restrict(const StochasticGame& g, const VertexSet& U);
Restriction subgame_closure(const StochasticGame& g, const VertexSet& U);
StochasticGame derandomize(const StochasticGame& g);
StochasticGame with_priorities(const StochasticGame& g, std::vector<Priority> p1, std::vector<Priority> p2);

} // namespace sas
