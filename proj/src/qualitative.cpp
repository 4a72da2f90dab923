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

#include "sas/qualitative.hpp"

#include <algorithm>

namespace sas {

namespace {

VertexSet
with_priority(const std::vector<Priority>& prio, const VertexSet& D, Priority d)
{
    VertexSet z(prio.size());
    for (auto v : D) {
        if (prio[v] == d) z.insert(v);
    }
    return z;
}

VertexId
first_succ_in(const GameGraph& g, VertexId v, const VertexSet& D)
{
    for (auto u : g.succ(v)) {
        if (D.contains(u)) return u;
    }
    return kNoVertex;
}

/*
 * Zielonka on a domain mask. Strategy arrays are shared across the recursion;
 * each call leaves correct entries for the owner's vertices of each returned region.
 */
class Zielonka
{
  public:
    Zielonka(const GameGraph& g, const std::vector<Priority>& prio) : g_(g), prio_(prio)
    {
        sigma_[0].assign(g.size(), kNoVertex);
        sigma_[1].assign(g.size(), kNoVertex);
    }

    std::pair<VertexSet, VertexSet> solve(const VertexSet& D)
    {
        const auto n = g_.size();
        if (D.empty()) return {VertexSet(n), VertexSet(n)};
        Priority d = max_priority(prio_, D);
        Player p = d % 2 == 0 ? Player::P1 : Player::P2;
        Player o = opponent(p);
        auto Z = with_priority(prio_, D, d);
        auto A = sure_attractor(g_, p, Z, &D);
        auto [w1a, w2a] = solve(D - A.region);
        auto& wo = o == Player::P1 ? w1a : w2a;
        if (wo.empty()) {
            for (auto v : A.region) {
                if (g_.owner(v) != owner_of(p)) continue;
                sig(p)[v] = Z.contains(v) ? first_succ_in(g_, v, D) : A.strategy[v];
            }
            VertexSet empty(n);
            return p == Player::P1 ? std::make_pair(D, empty) : std::make_pair(empty, D);
        }
        auto B = sure_attractor(g_, o, wo, &D);
        for (auto v : B.region - wo) {
            if (g_.owner(v) == owner_of(o)) sig(o)[v] = B.strategy[v];
        }
        auto [w1b, w2b] = solve(D - B.region);
        if (o == Player::P1) w1b |= B.region;
        else w2b |= B.region;
        return {w1b, w2b};
    }

    std::vector<VertexId>& sig(Player p) { return sigma_[p == Player::P1 ? 0 : 1]; }

  private:
    const GameGraph& g_;
    const std::vector<Priority>& prio_;
    std::vector<VertexId> sigma_[2];
};

/*
 * Two-player game with the same almost-sure region. Each random vertex v
 * becomes a player 2 vertex choosing an even level j; player 1 then either
 * takes level j itself (player 2 picks the successor, priority j) or level
 * j - 1 (player 1 picks it, priority j - 1). Levels count in reversed
 * priority order, so a low level dominates.
 */
struct Gadget
{
    GameGraph graph;
    std::vector<Priority> prio;
};

Gadget
random_gadget(const GameGraph& g, const std::vector<Priority>& prio)
{
    const auto n = g.size();
    Priority top = max_priority(prio);
    top += top % 2;
    // min-parity level of v is top - prio[v]; the gadget is then read back as max-parity via top + 2 - level
    const Priority back = top + 2;
    std::vector<Owner> own(n);
    std::vector<std::vector<VertexId>> succ(n);
    std::vector<Priority> out(n);
    for (VertexId v = 0; v < n; v++) {
        auto s = g.succ(v);
        out[v] = back - (top - prio[v]);
        if (g.owner(v) != Owner::Random) {
            own[v] = g.owner(v);
            succ[v].assign(s.begin(), s.end());
            continue;
        }
        own[v] = Owner::P2;
        const Priority level = top - prio[v];
        auto add = [&](Owner o, Priority pr, std::vector<VertexId> next) {
            own.push_back(o);
            succ.push_back(std::move(next));
            out.push_back(pr);
            return static_cast<VertexId>(own.size() - 1);
        };
        std::vector<VertexId> hats;
        for (Priority j = 0; j <= level + 1; j += 2) {
            std::vector<VertexId> options;
            options.push_back(add(Owner::P2, back - j, {s.begin(), s.end()}));
            if (j >= 2) options.push_back(add(Owner::P1, back - (j - 1), {s.begin(), s.end()}));
            hats.push_back(add(Owner::P1, out[v], std::move(options)));
        }
        succ[v] = std::move(hats);
    }
    return {GameGraph(std::move(own), succ), std::move(out)};
}

} // namespace

ParitySolution
solve_parity_zielonka(const GameGraph& g, const std::vector<Priority>& prio)
{
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) == Owner::Random) throw PreconditionError("two-player parity solver given a random vertex", v);
    }
    Zielonka z(g, prio);
    auto [w1, w2] = z.solve(VertexSet::full(g.size()));
    ParitySolution r{w1, w2, z.sig(Player::P1), z.sig(Player::P2)};
    for (VertexId v = 0; v < g.size(); v++) {
        if (!(w1.contains(v) && g.owner(v) == Owner::P1)) r.sigma1[v] = kNoVertex;
        if (!(w2.contains(v) && g.owner(v) == Owner::P2)) r.sigma2[v] = kNoVertex;
    }
    return r;
}

ParitySolution
solve_as_parity(const GameGraph& g, const std::vector<Priority>& prio)
{
    if (prio.size() != g.size()) throw PreconditionError("priority vector size mismatch");
    const auto n = g.size();
    auto gd = random_gadget(g, prio);
    auto z = solve_parity_zielonka(gd.graph, gd.prio);
    ParitySolution r{VertexSet(n), VertexSet(n), std::vector<VertexId>(n, kNoVertex), std::vector<VertexId>(n, kNoVertex)};
    for (VertexId v = 0; v < n; v++) {
        if (z.w1.contains(v)) r.w1.insert(v);
        else r.w2.insert(v);
        if (g.owner(v) == Owner::P1) r.sigma1[v] = z.sigma1[v];
        if (g.owner(v) == Owner::P2) r.sigma2[v] = z.sigma2[v];
    }
    return r;
}

AttractorResult
as_reach(const GameGraph& g, Player p, const VertexSet& T)
{
    const auto n = g.size();
    const Owner mine = owner_of(p);
    auto Y = VertexSet::full(n);
    AttractorResult r;
    std::vector<std::uint32_t> left(n);
    std::vector<VertexId> queue;
    while (true) {
        r.region = VertexSet(n);
        r.rank.assign(n, kNoRank);
        // random vertices may only be used if they cannot leave Y
        VertexSet usable(n);
        for (auto v : Y) {
            bool inside = true;
            for (auto u : g.succ(v)) inside = inside && Y.contains(u);
            if (g.owner(v) != Owner::Random || inside) usable.insert(v);
            left[v] = 0;
            if (g.owner(v) != mine && g.owner(v) != Owner::Random) left[v] = static_cast<std::uint32_t>(g.out_degree(v));
        }
        queue.clear();
        for (auto v : T & Y) {
            r.region.insert(v);
            r.rank[v] = 0;
            queue.push_back(v);
        }
        for (std::size_t h = 0; h < queue.size(); h++) {
            auto u = queue[h];
            for (auto v : g.pred(u)) {
                if (!usable.contains(v) || r.region.contains(v)) continue;
                if (g.owner(v) != mine && g.owner(v) != Owner::Random && --left[v] != 0) continue;
                r.region.insert(v);
                r.rank[v] = r.rank[u] + 1;
                queue.push_back(v);
            }
        }
        if (r.region == Y) break;
        Y = r.region;
    }
    r.strategy.assign(n, kNoVertex);
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

std::vector<std::vector<VertexId>>
scc_decomposition(const GameGraph& g, const VertexSet& S)
{
    // iterative Tarjan
    const auto n = g.size();
    std::vector<std::uint32_t> index(n, kNoRank), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexId> stack;
    std::vector<std::pair<VertexId, std::uint32_t>> call;
    std::vector<std::vector<VertexId>> out;
    std::uint32_t counter = 0;
    for (auto root : S) {
        if (index[root] != kNoRank) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            auto s = g.succ(v);
            if (i < s.size()) {
                auto u = s[i++];
                if (!S.contains(u)) continue;
                if (index[u] == kNoRank) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    call.push_back({u, 0});
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], index[u]);
                }
                continue;
            }
            VertexId done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                auto& comp = out.emplace_back();
                VertexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
            }
        }
    }
    return out;
}

Player
controller_of(const GameGraph& g)
{
    bool p1 = false, p2 = false;
    for (VertexId v = 0; v < g.size(); v++) {
        p1 = p1 || g.owner(v) == Owner::P1;
        p2 = p2 || g.owner(v) == Owner::P2;
    }
    if (p1 && p2) throw PreconditionError("single-controller analysis given vertices of both players");
    return p2 ? Player::P2 : Player::P1;
}

std::vector<VertexSet>
mec_decomposition(const GameGraph& g, const VertexSet* S)
{
    const auto n = g.size();
    Player ctrl = controller_of(g);
    std::vector<VertexSet> out;
    std::vector<VertexSet> work{S ? *S : VertexSet::full(n)};
    while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        for (auto& comp : scc_decomposition(g, cur)) {
            auto C = VertexSet::from_vector(n, comp);
            VertexSet leak(n);
            for (auto v : comp) {
                bool some = false, all = true;
                for (auto u : g.succ(v)) {
                    if (C.contains(u)) some = true;
                    else all = false;
                }
                if (g.owner(v) == Owner::Random ? !all : !some) leak.insert(v);
            }
            if (leak.empty()) {
                out.push_back(std::move(C));
                continue;
            }
            // vertices from which leaving C cannot be prevented
            auto R = pos_attractor(g, opponent(ctrl), leak, &C);
            auto rest = C - R.region;
            if (rest.any()) work.push_back(std::move(rest));
        }
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });
    return out;
}

VertexSet
winning_ec_states(const GameGraph& g, const std::vector<Priority>& prio)
{
    const auto n = g.size();
    VertexSet good(n);
    std::vector<VertexSet> work{VertexSet::full(n)};
    while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        for (auto& M : mec_decomposition(g, &cur)) {
            Priority p = max_priority(prio, M);
            if (p % 2 == 0) {
                good |= M;
                continue;
            }
            auto rest = M - with_priority(prio, M, p);
            if (rest.any()) work.push_back(std::move(rest));
        }
    }
    return good;
}

VertexSet
mdp_pos_parity(const GameGraph& g, const std::vector<Priority>& prio)
{
    auto good = winning_ec_states(g, prio);
    // plain backward reachability
    VertexSet seen = good;
    std::vector<VertexId> queue = good.to_vector();
    for (std::size_t h = 0; h < queue.size(); h++) {
        for (auto v : g.pred(queue[h])) {
            if (!seen.contains(v)) {
                seen.insert(v);
                queue.push_back(v);
            }
        }
    }
    return seen;
}

VertexSet
mdp_as_parity(const GameGraph& g, const std::vector<Priority>& prio)
{
    Player ctrl = controller_of(g);
    return as_reach(g, ctrl, winning_ec_states(g, prio)).region;
}

GameGraph
fix_strategy(const GameGraph& g, Player p, const std::vector<VertexId>& sigma)
{
    std::vector<Owner> own(g.owners());
    std::vector<std::vector<VertexId>> succ(g.size());
    for (VertexId v = 0; v < g.size(); v++) {
        auto s = g.succ(v);
        if (g.owner(v) == owner_of(p) && sigma[v] != kNoVertex) {
            if (!g.has_edge(v, sigma[v])) throw PreconditionError("strategy picks a non-edge", v);
            own[v] = Owner::Random;
            succ[v] = {sigma[v]};
        } else {
            succ[v].assign(s.begin(), s.end());
        }
    }
    return GameGraph(std::move(own), succ);
}

std::vector<Priority>
shifted(const std::vector<Priority>& prio)
{
    std::vector<Priority> out(prio);
    for (auto& p : out) p++;
    return out;
}

} // namespace sas
