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

#include <stdexcept>

#include "sas/qualitative.hpp"
#include "sas/strategy.hpp"
#include "strategy_internal.hpp"

namespace sas {

namespace {

using detail::RegionBlock;

void
check_trace(const StochasticGame& g, const TraceNode& trace)
{
    if (trace.game.size() != g.size() || trace.game.graph != g.graph() || trace.game.prio1 != g.prio1() ||
        trace.game.prio2 != g.prio2()) {
        throw PreconditionError("trace was computed for a different game");
    }
}

/** Solves g restricted to its winning region; map is empty when nothing was removed. */
struct Winning
{
    std::shared_ptr<const TraceNode> trace;
    std::optional<SubMap> map;
};

Winning
winning_part(const StochasticGame& g, const TraceNode& trace)
{
    const auto arena = g.arena();
    if (trace.w1.count() == g.size()) return {std::shared_ptr<const TraceNode>(std::shared_ptr<const TraceNode>{}, &trace), std::nullopt};
    if ((trace.w1 - arena.sinks()).empty()) throw PreconditionError("the winning region is empty");
    auto [sub, map] = restrict_arena(arena, trace.w1);
    auto r = solve_sas(sub);
    detail::require_all_winning(*r.trace);
    return {r.trace, std::move(map)};
}

MealyStrategy
lift_if(const MealyStrategy& s, const Winning& w, const GameGraph& g)
{
    return w.map ? detail::lift_mealy(s, *w.map, g) : s;
}

// memoryless strategy on a game that is winning everywhere and whose Omega1 is at most 1
std::vector<VertexId>
cobuchi(const TraceNode& t)
{
    const auto& G = t.game;
    const auto n = G.size();
    detail::require_all_winning(t);
    std::vector<VertexId> choice(n, kNoVertex);
    if (t.kind == TraceNode::Kind::Base) return choice;
    if (t.d == 0) {
        auto sol = solve_as_parity(G.graph, G.prio2);
        if (sol.w1.count() != n) throw std::logic_error("winning node is not almost-sure winning");
        for (VertexId v = 0; v < n; v++) {
            if (G.graph.owner(v) == Owner::P1) choice[v] = sol.sigma1[v];
        }
        return choice;
    }
    if (t.d != 1) throw std::logic_error("coBuchi synthesis reached a larger priority");
    // W1' by re-solving the first child on its winning part, attractor to it, then the closure
    auto res = detail::resolve_first_winning(t);
    auto c1 = cobuchi(*res.result.trace);
    const auto& F = t.first_map.to_parent;
    const auto& R = res.map.to_parent;
    for (VertexId c = 0; c < c1.size(); c++) {
        if (c1[c] != kNoVertex) choice[F[R[c]]] = F[R[c1[c]]];
    }
    for (auto v : t.B - t.first_w1) {
        if (G.graph.owner(v) == Owner::P1) choice[v] = t.b_attr.strategy[v];
    }
    auto c2 = cobuchi(*t.second);
    const auto& S = t.second_map.to_parent;
    for (VertexId c = 0; c < c2.size(); c++) {
        if (c2[c] != kNoVertex) choice[S[c]] = S[c2[c]];
    }
    return choice;
}

MealyStrategy
memoryless_node(const TraceNode& t)
{
    MemorylessStrategy m{Player::P1, cobuchi(t)};
    return MealyStrategy::from_memoryless(m);
}

// Mealy machine of memory O(n * d) for almost-sure Buchi, on a game winning everywhere
MealyStrategy
buchi(const TraceNode& t)
{
    const auto& G = t.game;
    const auto n = G.size();
    detail::require_all_winning(t);
    if (t.kind == TraceNode::Kind::Base || t.d <= 1) return memoryless_node(t);

    if (t.kind == TraceNode::Kind::Odd) {
        auto res = detail::resolve_first_winning(t);
        std::vector<RegionBlock> blocks(2);
        blocks[0].region = t.first_w1;
        blocks[0].strategy = buchi(*res.result.trace);
        SubMap comp;
        comp.to_parent.resize(res.map.to_parent.size());
        for (VertexId c = 0; c < comp.to_parent.size(); c++) comp.to_parent[c] = t.first_map.to_parent[res.map.to_parent[c]];
        detail::child_block(blocks[0], comp, {}, n);
        blocks[1].region = VertexSet::full(n) - t.B;
        blocks[1].strategy = buchi(*t.second);
        detail::child_block(blocks[1], t.second_map, {}, n);
        if (blocks[1].region.empty()) blocks.pop_back();
        return detail::compose_regions(Player::P1, G.graph, t.b_attr.strategy, blocks);
    }

    // even: 0 = attractor, 1..k = rounds of the almost-sure Buchi strategy, then the sub machine
    if (t.w_as.count() != n) throw std::logic_error("winning even node with a smaller almost-sure region");
    const auto& W = t.work_map.to_parent;
    VertexSet A(n);
    std::vector<VertexId> attr(n, kNoVertex);
    for (auto w : t.A) {
        A.insert(W[w]);
        if (t.a_attr.strategy[w] != kNoVertex) attr[W[w]] = W[t.a_attr.strategy[w]];
    }
    auto as = solve_as_parity(G.graph, G.prio2);
    if (as.w1.count() != n) throw std::logic_error("winning node is not almost-sure winning");
    const auto k = static_cast<std::uint32_t>(G.non_sink_count());

    const bool has_b = A.count() != n;
    MealyStrategy sub;
    RegionBlock map;
    if (has_b) {
        sub = buchi(*t.first);
        detail::child_block(map, t.first_map, W, n);
    }
    const std::uint32_t off = 1 + k;
    MealyStrategy s(Player::P1, off + (has_b ? sub.memory : 0), n);
    for (std::uint32_t m = 0; m < s.memory; m++) {
        for (VertexId v = 0; v < n; v++) {
            const auto cell = static_cast<std::size_t>(m) * n + v;
            std::uint32_t next;
            if (G.prio1[v] == t.d) next = 1;
            else if (m >= 1 && m < k) next = m + 1;
            else if (A.contains(v)) next = 0;
            else next = off + sub.update(m >= off ? m - off : sub.initial, map.of[v]);
            s.update_table[cell] = next;

            if (G.graph.owner(v) != Owner::P1) continue;
            VertexId u;
            if (m >= 1 && m < off) u = as.sigma1[v];
            else if (m == 0) u = A.contains(v) ? attr[v] : kNoVertex;
            else if (map.of[v] != kNoVertex) {
                // cells with v in A are never read: entering A resets the memory to 0
                auto c = sub.move(m - off, map.of[v]);
                u = c == kNoVertex ? kNoVertex : map.to[c];
            } else {
                u = kNoVertex;
            }
            s.move_table[cell] = u != kNoVertex ? u : G.graph.succ(v)[0];
        }
    }
    return s;
}

Priority
max_d(const std::vector<Priority>& prio, const Arena& a)
{
    return max_priority(prio, a.non_sinks());
}

// spoiling strategy of player 2 from every vertex of the node's losing region
MealyStrategy
spoil(const TraceNode& t)
{
    const auto& G = t.game;
    const auto n = G.size();
    std::vector<VertexId> fallback(n, kNoVertex);
    std::vector<RegionBlock> blocks;
    if (t.kind == TraceNode::Kind::Base) return detail::compose_regions(Player::P2, G.graph, fallback, blocks);

    if (t.kind == TraceNode::Kind::Odd) {
        if (!t.second) {
            for (VertexId v = 0; v < n; v++) {
                if (t.a_attr.strategy[v] != kNoVertex) fallback[v] = t.a_attr.strategy[v];
            }
            RegionBlock b;
            b.region = VertexSet::full(n) - t.A;
            if (!b.region.empty()) {
                b.strategy = spoil(*t.first);
                detail::child_block(b, t.first_map, {}, n);
                blocks.push_back(std::move(b));
            }
        } else if (t.second_w2.any()) {
            RegionBlock b;
            b.region = t.second_w2;
            b.strategy = spoil(*t.second);
            detail::child_block(b, t.second_map, {}, n);
            blocks.push_back(std::move(b));
        }
        return detail::compose_regions(Player::P2, G.graph, fallback, blocks);
    }

    // even: outside the almost-sure region follow the product's positive strategy
    const auto not_as = VertexSet::full(n) - t.w_as;
    if (not_as.any()) {
        const auto& P = *t.product;
        const auto& sigma2 = t.product_solution->sigma2;
        const auto ps = static_cast<std::uint32_t>(P.graph.size());
        RegionBlock b;
        b.region = not_as;
        detail::identity_block(b, n);
        b.strategy = MealyStrategy(Player::P2, ps + 1, n);
        auto& s = b.strategy;
        for (std::uint32_t m = 0; m <= ps; m++) {
            for (VertexId v = 0; v < n; v++) {
                const auto cell = static_cast<std::size_t>(m) * n + v;
                VertexId x = kNoVertex;
                if (m > 0) {
                    int i = G.graph.succ_index(P.base[m - 1], v);
                    if (i >= 0) x = P.graph.succ(m - 1)[i];
                }
                if (x == kNoVertex) x = P.root[v];
                s.update_table[cell] = x + 1;
                if (G.graph.owner(v) != Owner::P2 || m == 0) continue;
                auto y = P.base[m - 1] == v ? sigma2[m - 1] : kNoVertex;
                if (y != kNoVertex) s.move_table[cell] = P.base[y];
            }
        }
        blocks.push_back(std::move(b));
    }
    const auto& W = t.work_map.to_parent;
    if (t.first_w2.any()) {
        RegionBlock b;
        b.region = t.work_map.lift(t.first_w2, n);
        b.strategy = spoil(*t.first);
        detail::child_block(b, t.first_map, W, n);
        blocks.push_back(std::move(b));
        for (auto w : t.B - t.first_w2) {
            if (t.b_attr.strategy[w] != kNoVertex) fallback[W[w]] = W[t.b_attr.strategy[w]];
        }
    }
    if (t.second && t.second_w2.any()) {
        RegionBlock b;
        b.region = t.work_map.lift(t.second_w2, n);
        b.strategy = spoil(*t.second);
        detail::child_block(b, t.second_map, W, n);
        blocks.push_back(std::move(b));
    }
    return detail::compose_regions(Player::P2, G.graph, fallback, blocks);
}

} // namespace

MemorylessStrategy
synth_memoryless_cobuchi(const StochasticGame& g, const TraceNode& trace)
{
    check_trace(g, trace);
    const auto arena = g.arena();
    if (max_d(g.prio1(), arena) > 1) throw PreconditionError("Omega1 uses priorities above 1; not a coBuchi condition");
    auto w = winning_part(g, trace);
    auto local = cobuchi(*w.trace);
    MemorylessStrategy s{Player::P1, std::vector<VertexId>(g.size(), kNoVertex)};
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) == Owner::P1) s.choice[v] = g.succ(v)[0];
    }
    for (VertexId c = 0; c < local.size(); c++) {
        if (local[c] == kNoVertex) continue;
        auto v = w.map ? w.map->to_parent[c] : c;
        s.choice[v] = w.map ? w.map->to_parent[local[c]] : local[c];
    }
    return s;
}

FiniteSynthesis
synth_finite_buchi(const StochasticGame& g, const TraceNode& trace)
{
    check_trace(g, trace);
    for (VertexId v = 0; v < g.size(); v++) {
        if (!g.is_sink(v) && (g.prio2(v) < 1 || g.prio2(v) > 2)) {
            throw PreconditionError("Omega2 must take values in {1, 2} for Buchi synthesis", v);
        }
    }
    auto w = winning_part(g, trace);
    FiniteSynthesis out;
    out.strategy = lift_if(buchi(*w.trace), w, g.graph());
    return out;
}

MealyStrategy
synth_spoiling(const StochasticGame& g, const TraceNode& trace)
{
    check_trace(g, trace);
    if ((trace.w2 - g.arena().sinks()).empty()) throw PreconditionError("the losing region is empty");
    return spoil(trace);
}

std::optional<MemorylessStrategy>
find_memoryless_spoiler(const StochasticGame& g, std::uint64_t bound)
{
    const auto arena = g.arena();
    const auto& G = g.graph();
    const auto target = solve_sas(arena).w1;
    std::vector<VertexId> theirs;
    std::uint64_t total = 1;
    for (VertexId v = 0; v < g.size(); v++) {
        if (G.owner(v) != Owner::P2) continue;
        theirs.push_back(v);
        total *= G.out_degree(v);
        if (total > bound) throw BoundExceeded("too many memoryless strategies for player 2");
    }
    std::vector<std::size_t> pick(theirs.size(), 0);
    MemorylessStrategy s{Player::P2, std::vector<VertexId>(g.size(), kNoVertex)};
    for (std::uint64_t k = 0; k < total; k++) {
        for (std::size_t i = 0; i < theirs.size(); i++) s.choice[theirs[i]] = G.succ(theirs[i])[pick[i]];
        Arena mdp = arena;
        mdp.graph = fix_strategy(G, Player::P2, s.choice);
        if (solve_sas(mdp).w1 == target) return s;
        for (std::size_t i = 0; i < theirs.size(); i++) {
            if (++pick[i] < G.out_degree(theirs[i])) break;
            pick[i] = 0;
        }
    }
    return std::nullopt;
}

} // namespace sas
