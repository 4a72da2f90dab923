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

#include "sas/attractor.hpp"

namespace sas {

namespace {

// Random vertices side with the attractor in the positive variant only.
bool
existential(Owner o, Player p, bool positive)
{
    return o == owner_of(p) || (positive && o == Owner::Random);
}

VertexSet
pre(const GameGraph& g, Player p, const VertexSet& U, bool positive)
{
    VertexSet out(g.size());
    for (VertexId v = 0; v < g.size(); v++) {
        bool some = false, all = true;
        for (auto u : g.succ(v)) {
            if (U.contains(u)) some = true;
            else all = false;
        }
        if (existential(g.owner(v), p, positive) ? some : all) out.insert(v);
    }
    return out;
}

AttractorResult
attract(const GameGraph& g, Player p, const VertexSet& T, const VertexSet* domain, bool positive)
{
    const std::size_t n = g.size();
    AttractorResult r;
    r.region = VertexSet(n);
    r.strategy.assign(n, kNoVertex);
    r.rank.assign(n, kNoRank);

    auto in_dom = [&](VertexId v) { return !domain || domain->contains(v); };

    // successors still outside the region, for vertices that need all of them
    std::vector<std::uint32_t> left(n, 0);
    for (VertexId v = 0; v < n; v++) {
        if (!in_dom(v) || existential(g.owner(v), p, positive)) continue;
        for (auto u : g.succ(v)) left[v] += in_dom(u) ? 1 : 0;
    }

    std::vector<VertexId> queue;
    queue.reserve(n);
    for (auto v : T) {
        if (!in_dom(v)) continue;
        r.region.insert(v);
        r.rank[v] = 0;
        queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); head++) {
        auto u = queue[head];
        for (auto v : g.pred(u)) {
            if (r.region.contains(v) || !in_dom(v)) continue;
            if (!existential(g.owner(v), p, positive) && --left[v] != 0) continue;
            r.region.insert(v);
            r.rank[v] = r.rank[u] + 1;
            queue.push_back(v);
        }
    }

    const Owner mine = owner_of(p);
    for (auto v : r.region) {
        if (r.rank[v] == 0 || g.owner(v) != mine) continue;
        VertexId best = kNoVertex;
        for (auto u : g.succ(v)) {
            if (r.rank[u] < r.rank[v] && u < best) best = u;
        }
        r.strategy[v] = best;
    }
    return r;
}

} // namespace

VertexSet
sure_pre(const GameGraph& g, Player p, const VertexSet& U)
{
    return pre(g, p, U, false);
}

VertexSet
pos_pre(const GameGraph& g, Player p, const VertexSet& U)
{
    return pre(g, p, U, true);
}

AttractorResult
sure_attractor(const GameGraph& g, Player p, const VertexSet& T, const VertexSet* domain)
{
    return attract(g, p, T, domain, false);
}

AttractorResult
pos_attractor(const GameGraph& g, Player p, const VertexSet& T, const VertexSet* domain)
{
    return attract(g, p, T, domain, true);
}

bool
is_trap(const GameGraph& g, Player p, const VertexSet& U)
{
    if (!induces_subgame(g, U)) return false;
    for (auto v : U) {
        if (g.owner(v) != owner_of(p)) continue;
        for (auto u : g.succ(v)) {
            if (!U.contains(u)) return false;
        }
    }
    return true;
}

} // namespace sas
