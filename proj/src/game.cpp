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

#include "sas/game.hpp"

#include <algorithm>

namespace sas {

const char*
owner_name(Owner o)
{
    switch (o) {
    case Owner::P1: return "p1";
    case Owner::P2: return "p2";
    default: return "rand";
    }
}

GameGraph::GameGraph(std::vector<Owner> owners, const std::vector<std::vector<VertexId>>& succ)
    : owner_(std::move(owners))
{
    const std::size_t n = owner_.size();
    if (succ.size() != n) throw Error("successor table size does not match vertex count");
    sbeg_.assign(n + 1, 0);
    std::vector<std::uint32_t> indeg(n, 0);
    for (std::size_t v = 0; v < n; v++) {
        if (succ[v].empty()) throw ValidationError("no successor", static_cast<VertexId>(v));
        for (std::size_t i = 0; i < succ[v].size(); i++) {
            auto u = succ[v][i];
            if (u >= n) throw ValidationError("dangling successor " + std::to_string(u), static_cast<VertexId>(v));
            for (std::size_t j = 0; j < i; j++) {
                if (succ[v][j] == u) throw ValidationError("duplicate successor " + std::to_string(u), static_cast<VertexId>(v));
            }
            indeg[u]++;
        }
        sbeg_[v + 1] = sbeg_[v] + static_cast<std::uint32_t>(succ[v].size());
    }
    sdat_.reserve(sbeg_[n]);
    for (auto& s : succ) sdat_.insert(sdat_.end(), s.begin(), s.end());

    pbeg_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; v++) pbeg_[v + 1] = pbeg_[v] + indeg[v];
    pdat_.resize(pbeg_[n]);
    std::vector<std::uint32_t> fill(pbeg_.begin(), pbeg_.end() - 1);
    for (std::size_t v = 0; v < n; v++) {
        for (auto u : succ[v]) pdat_[fill[u]++] = static_cast<VertexId>(v);
    }
}

int
GameGraph::succ_index(VertexId v, VertexId u) const
{
    auto s = succ(v);
    for (std::size_t i = 0; i < s.size(); i++) {
        if (s[i] == u) return static_cast<int>(i);
    }
    return -1;
}

VertexSet
SubMap::lift(const VertexSet& derived, std::size_t parent_size) const
{
    VertexSet out(parent_size);
    for (auto v : derived) {
        if (to_parent[v] != kNoVertex) out.insert(to_parent[v]);
    }
    return out;
}

VertexSet
SubMap::lower(const VertexSet& parent) const
{
    VertexSet out(to_parent.size());
    for (auto v : parent) {
        if (v < from_parent.size() && from_parent[v] != kNoVertex) out.insert(from_parent[v]);
    }
    return out;
}

bool
induces_subgame(const GameGraph& g, const VertexSet& U, VertexId* witness)
{
    for (auto v : U) {
        bool some = false, all = true;
        for (auto u : g.succ(v)) {
            if (U.contains(u)) some = true;
            else all = false;
        }
        bool ok = g.owner(v) == Owner::Random ? all : some;
        if (!ok) {
            if (witness) *witness = v;
            return false;
        }
    }
    return true;
}

namespace {

void
index_members(const GameGraph& g, const VertexSet& U, SubMap& m)
{
    m.to_parent = U.to_vector();
    m.from_parent.assign(g.size(), kNoVertex);
    for (std::size_t i = 0; i < m.to_parent.size(); i++) m.from_parent[m.to_parent[i]] = static_cast<VertexId>(i);
    m.sink = kNoVertex;
}

} // namespace

GameGraph
restrict_graph(const GameGraph& g, const VertexSet& U, SubMap* map)
{
    VertexId bad;
    if (!induces_subgame(g, U, &bad)) {
        throw PreconditionError(g.owner(bad) == Owner::Random
                                    ? "random vertex has a successor outside the set"
                                    : "controlled vertex has no successor inside the set",
                                bad);
    }
    SubMap local;
    SubMap& m = map ? *map : local;
    index_members(g, U, m);
    std::vector<Owner> own;
    std::vector<std::vector<VertexId>> succ;
    own.reserve(m.to_parent.size());
    succ.reserve(m.to_parent.size());
    for (auto v : m.to_parent) {
        own.push_back(g.owner(v));
        auto& s = succ.emplace_back();
        for (auto u : g.succ(v)) {
            if (m.from_parent[u] != kNoVertex) s.push_back(m.from_parent[u]);
        }
    }
    return GameGraph(std::move(own), succ);
}

GameGraph
close_graph(const GameGraph& g, const VertexSet& U, SubMap* map)
{
    SubMap local;
    SubMap& m = map ? *map : local;
    index_members(g, U, m);
    const auto k = static_cast<VertexId>(m.to_parent.size());
    std::vector<Owner> own;
    std::vector<std::vector<VertexId>> succ;
    own.reserve(k + 1);
    succ.reserve(k + 1);
    for (auto v : m.to_parent) {
        own.push_back(g.owner(v));
        auto& s = succ.emplace_back();
        bool leak = false;
        for (auto u : g.succ(v)) {
            if (m.from_parent[u] != kNoVertex) s.push_back(m.from_parent[u]);
            else leak = true;
        }
        if (g.owner(v) == Owner::Random) {
            if (leak) s.push_back(k);
        } else if (s.empty()) {
            throw PreconditionError("controlled vertex has no successor inside the set", v);
        }
    }
    own.push_back(Owner::Random);
    succ.push_back({k});
    m.to_parent.push_back(kNoVertex);
    m.sink = k;
    return GameGraph(std::move(own), succ);
}

std::vector<Priority>
pull_back(const std::vector<Priority>& prio, const SubMap& map)
{
    std::vector<Priority> out(map.to_parent.size(), 0);
    for (std::size_t i = 0; i < out.size(); i++) {
        if (map.to_parent[i] != kNoVertex) out[i] = prio[map.to_parent[i]];
    }
    return out;
}

VertexSet
Arena::sinks() const
{
    VertexSet s(size());
    for (VertexId v = 0; v < size(); v++) {
        if (origin[v] == kNoVertex) s.insert(v);
    }
    return s;
}

std::size_t
Arena::non_sink_count() const
{
    return static_cast<std::size_t>(std::count_if(origin.begin(), origin.end(), [](VertexId o) { return o != kNoVertex; }));
}

namespace {

Arena
derive_arena(const Arena& a, GameGraph graph, const SubMap& m)
{
    Arena out;
    out.graph = std::move(graph);
    out.prio1 = pull_back(a.prio1, m);
    out.prio2 = pull_back(a.prio2, m);
    out.origin.resize(m.to_parent.size(), kNoVertex);
    for (std::size_t i = 0; i < m.to_parent.size(); i++) {
        if (m.to_parent[i] != kNoVertex) out.origin[i] = a.origin[m.to_parent[i]];
    }
    return out;
}

} // namespace

std::pair<Arena, SubMap>
restrict_arena(const Arena& a, const VertexSet& U)
{
    SubMap m;
    auto g = restrict_graph(a.graph, U, &m);
    auto out = derive_arena(a, std::move(g), m);
    return {std::move(out), std::move(m)};
}

std::pair<Arena, SubMap>
close_arena(const Arena& a, const VertexSet& U)
{
    SubMap m;
    auto g = close_graph(a.graph, U, &m);
    auto out = derive_arena(a, std::move(g), m);
    return {std::move(out), std::move(m)};
}

Priority
max_priority(const std::vector<Priority>& prio)
{
    Priority d = 0;
    for (auto p : prio) d = std::max(d, p);
    return d;
}

Priority
max_priority(const std::vector<Priority>& prio, const VertexSet& among)
{
    Priority d = 0;
    for (auto v : among) d = std::max(d, prio[v]);
    return d;
}

bool
StochasticGame::has_sinks() const
{
    return std::find(sink_.begin(), sink_.end(), true) != sink_.end();
}

Arena
StochasticGame::arena() const
{
    Arena a;
    a.graph = graph_;
    a.prio1 = prio1_;
    a.prio2 = prio2_;
    a.origin.resize(size());
    for (VertexId v = 0; v < size(); v++) a.origin[v] = sink_[v] ? kNoVertex : v;
    return a;
}

bool
operator==(const StochasticGame& a, const StochasticGame& b)
{
    return a.graph_ == b.graph_ && a.probs_ == b.probs_ && a.prio1_ == b.prio1_ && a.prio2_ == b.prio2_ &&
           a.labels_ == b.labels_ && a.sink_ == b.sink_;
}

VertexId
GameBuilder::add_vertex(Owner owner, Priority p1, Priority p2, std::string label)
{
    owners_.push_back(owner);
    p1_.push_back(p1);
    p2_.push_back(p2);
    labels_.push_back(std::move(label));
    succ_.emplace_back();
    probs_.emplace_back();
    sink_.push_back(false);
    return static_cast<VertexId>(owners_.size() - 1);
}

void
GameBuilder::add_edge(VertexId from, VertexId to, Rational prob)
{
    if (from >= owners_.size()) throw ValidationError("edge from unknown vertex", from);
    succ_[from].push_back(to);
    probs_[from].push_back(std::move(prob));
}

void
GameBuilder::mark_sink(VertexId v)
{
    sink_.at(v) = true;
}

StochasticGame
GameBuilder::build() &&
{
    const std::size_t n = owners_.size();
    for (std::size_t v = 0; v < n; v++) {
        auto id = static_cast<VertexId>(v);
        if (owners_[v] == Owner::Random) {
            Rational sum = 0;
            for (auto& p : probs_[v]) {
                if (p <= 0) throw ValidationError("probability must be positive", id);
                sum += p;
            }
            if (!succ_[v].empty() && sum != 1) {
                throw ValidationError("probabilities sum to " + sum.str() + ", not 1", id);
            }
        } else {
            for (auto& p : probs_[v]) {
                if (p != 0) throw ValidationError("probability annotation on a non-random vertex", id);
            }
            probs_[v].clear();
        }
    }
    StochasticGame g;
    g.graph_ = GameGraph(owners_, succ_);
    g.probs_ = std::move(probs_);
    g.prio1_ = std::move(p1_);
    g.prio2_ = std::move(p2_);
    g.labels_ = std::move(labels_);
    g.sink_ = std::move(sink_);
    return g;
}

namespace {

StochasticGame
derive_game(const StochasticGame& g, const GameGraph& graph, const SubMap& m)
{
    GameBuilder b;
    for (VertexId i = 0; i < graph.size(); i++) {
        auto pv = m.to_parent[i];
        if (pv == kNoVertex) {
            b.add_vertex(Owner::Random, 0, 0, "sink");
            b.mark_sink(i);
        } else {
            b.add_vertex(g.owner(pv), g.prio1(pv), g.prio2(pv), g.label(pv));
            if (g.is_sink(pv)) b.mark_sink(i);
        }
    }
    for (VertexId i = 0; i < graph.size(); i++) {
        auto pv = m.to_parent[i];
        if (pv == kNoVertex) {
            b.add_edge(i, i, 1);
            continue;
        }
        if (g.owner(pv) != Owner::Random) {
            for (auto u : graph.succ(i)) b.add_edge(i, u);
            continue;
        }
        Rational leak = 0;
        auto ps = g.succ(pv);
        for (std::size_t j = 0; j < ps.size(); j++) {
            auto u = ps[j];
            if (m.from_parent[u] != kNoVertex) b.add_edge(i, m.from_parent[u], g.probs(pv)[j]);
            else leak += g.probs(pv)[j];
        }
        if (leak != 0) b.add_edge(i, m.sink, leak);
    }
    return std::move(b).build();
}

} // namespace

Restriction
restrict(const StochasticGame& g, const VertexSet& U)
{
    Restriction r;
    auto graph = restrict_graph(g.graph(), U, &r.map);
    r.game = derive_game(g, graph, r.map);
    return r;
}

Restriction
subgame_closure(const StochasticGame& g, const VertexSet& U)
{
    Restriction r;
    auto graph = close_graph(g.graph(), U, &r.map);
    r.game = derive_game(g, graph, r.map);
    return r;
}

StochasticGame
derandomize(const StochasticGame& g)
{
    GameBuilder b;
    for (VertexId v = 0; v < g.size(); v++) {
        auto o = g.owner(v) == Owner::Random ? Owner::P2 : g.owner(v);
        b.add_vertex(o, g.prio1(v), g.prio2(v), g.label(v));
        if (g.is_sink(v)) b.mark_sink(v);
    }
    for (VertexId v = 0; v < g.size(); v++) {
        for (auto u : g.succ(v)) b.add_edge(v, u);
    }
    return std::move(b).build();
}

StochasticGame
with_priorities(const StochasticGame& g, std::vector<Priority> p1, std::vector<Priority> p2)
{
    if (p1.size() != g.size() || p2.size() != g.size()) throw PreconditionError("priority vector size mismatch");
    GameBuilder b;
    for (VertexId v = 0; v < g.size(); v++) {
        b.add_vertex(g.owner(v), p1[v], p2[v], g.label(v));
        if (g.is_sink(v)) b.mark_sink(v);
    }
    for (VertexId v = 0; v < g.size(); v++) {
        auto s = g.succ(v);
        for (std::size_t j = 0; j < s.size(); j++) {
            b.add_edge(v, s[j], g.owner(v) == Owner::Random ? g.probs(v)[j] : Rational(0));
        }
    }
    return std::move(b).build();
}

} // namespace sas
