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

#include "sas/oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sas/qualitative.hpp"
#include "sas/solver.hpp"

namespace sas {

namespace {

struct Cond
{
    int fn;    // 0: a.prio1, 1: a.prio2, 2: b.prio
    int parity;
};

struct SyncProduct
{
    std::vector<StateId> qa, qb;
    std::vector<std::vector<StateId>> delta;
    GameGraph graph;
    std::vector<Priority> f[3];
};

// Finds a nonempty strongly connected set inside S whose maxima meet every condition.
bool
find_cycle_set(const SyncProduct& p, const VertexSet& S, const std::vector<Cond>& conds, VertexSet& out)
{
    for (auto& comp : scc_decomposition(p.graph, S)) {
        const auto n = p.graph.size();
        auto C = VertexSet::from_vector(n, comp);
        if (comp.size() == 1) {
            auto v = comp[0];
            if (!p.graph.has_edge(v, v)) continue;
        }
        const Cond* bad = nullptr;
        Priority bad_max = 0;
        for (auto& c : conds) {
            Priority m = max_priority(p.f[c.fn], C);
            if (static_cast<int>(m % 2) != c.parity) {
                bad = &c;
                bad_max = m;
                break;
            }
        }
        if (!bad) {
            out = C;
            return true;
        }
        VertexSet rest = C;
        for (auto v : comp) {
            if (p.f[bad->fn][v] == bad_max) rest.erase(v);
        }
        if (rest.any() && find_cycle_set(p, rest, conds, out)) return true;
    }
    return false;
}

// letters along a shortest path from -> to inside S
std::vector<std::size_t>
path_letters(const SyncProduct& p, StateId from, StateId to, const VertexSet* S, bool nonempty)
{
    const auto n = p.delta.size();
    std::vector<std::pair<StateId, std::size_t>> parent(n, {kNoVertex, 0});
    std::vector<bool> seen(n, false);
    std::vector<StateId> queue;
    // nonempty: start from the successors so that from == to yields a real cycle
    if (nonempty) {
        for (std::size_t c = 0; c < p.delta[from].size(); c++) {
            auto t = p.delta[from][c];
            if ((S && !S->contains(t)) || seen[t]) continue;
            seen[t] = true;
            parent[t] = {from, c};
            queue.push_back(t);
        }
    } else {
        seen[from] = true;
        queue.push_back(from);
    }
    for (std::size_t h = 0; h < queue.size() && !seen[to]; h++) {
        auto x = queue[h];
        for (std::size_t c = 0; c < p.delta[x].size(); c++) {
            auto t = p.delta[x][c];
            if ((S && !S->contains(t)) || seen[t]) continue;
            seen[t] = true;
            parent[t] = {x, c};
            queue.push_back(t);
        }
    }
    if (!seen[to]) throw std::logic_error("witness path not found");
    std::vector<std::size_t> letters;
    if (!nonempty && from == to) return letters;
    StateId x = to;
    do {
        letters.push_back(parent[x].second);
        x = parent[x].first;
    } while (x != from || (nonempty && letters.empty()));
    std::reverse(letters.begin(), letters.end());
    return letters;
}

} // namespace

EquivResult
dpw_equiv_oracle(const D2pw& a, const Dpw& b, std::size_t bound)
{
    a.validate();
    b.validate();
    if (a.alphabet.size() != b.alphabet.size()) throw PreconditionError("automata have different alphabets");
    std::vector<std::size_t> bmap(a.alphabet.size());
    for (std::size_t c = 0; c < a.alphabet.size(); c++) {
        auto it = std::find(b.alphabet.begin(), b.alphabet.end(), a.alphabet[c]);
        if (it == b.alphabet.end()) throw PreconditionError("letter " + a.alphabet[c] + " missing from the second automaton");
        bmap[c] = static_cast<std::size_t>(it - b.alphabet.begin());
    }

    SyncProduct p;
    std::map<std::pair<StateId, StateId>, StateId> index;
    auto intern = [&](StateId x, StateId y) {
        auto [it, fresh] = index.emplace(std::make_pair(x, y), static_cast<StateId>(p.qa.size()));
        if (fresh) {
            if (p.qa.size() >= bound) throw BoundExceeded("synchronized product exceeds " + std::to_string(bound) + " states");
            p.qa.push_back(x);
            p.qb.push_back(y);
            p.delta.emplace_back();
        }
        return it->second;
    };
    intern(a.initial, b.initial);
    for (StateId s = 0; s < p.qa.size(); s++) {
        std::vector<StateId> row;
        for (std::size_t c = 0; c < a.alphabet.size(); c++) row.push_back(intern(a.delta[p.qa[s]][c], b.delta[p.qb[s]][bmap[c]]));
        p.delta[s] = std::move(row);
    }
    const auto n = p.qa.size();
    std::vector<std::vector<VertexId>> succ(n);
    for (StateId s = 0; s < n; s++) {
        for (auto t : p.delta[s]) {
            if (std::find(succ[s].begin(), succ[s].end(), t) == succ[s].end()) succ[s].push_back(t);
        }
    }
    p.graph = GameGraph(std::vector<Owner>(n, Owner::P1), succ);
    for (StateId s = 0; s < n; s++) {
        p.f[0].push_back(a.prio1[p.qa[s]]);
        p.f[1].push_back(a.prio2[p.qa[s]]);
        p.f[2].push_back(b.prio[p.qb[s]]);
    }

    EquivResult r;
    r.product_states = n;
    const std::vector<std::vector<Cond>> cases = {
        {{0, 0}, {1, 0}, {2, 1}}, // a accepts, b rejects
        {{0, 1}, {2, 0}},         // a rejects on condition 1, b accepts
        {{1, 1}, {2, 0}},         // a rejects on condition 2, b accepts
    };
    auto all = VertexSet::full(n);
    for (std::size_t k = 0; k < cases.size(); k++) {
        VertexSet C;
        if (!find_cycle_set(p, all, cases[k], C)) continue;
        auto members = C.to_vector();
        StateId s = members[0];
        auto stem = path_letters(p, 0, s, nullptr, false);
        std::vector<std::size_t> cycle;
        StateId at = s;
        for (std::size_t i = 1; i <= members.size(); i++) {
            StateId next = i < members.size() ? members[i] : s;
            auto seg = path_letters(p, at, next, &C, next == at);
            cycle.insert(cycle.end(), seg.begin(), seg.end());
            at = next;
        }
        r.equal = false;
        r.accepted_by_reference = k == 0;
        // self-check of the witness against both automata
        std::vector<std::size_t> bstem, bcycle;
        for (auto c : stem) bstem.push_back(bmap[c]);
        for (auto c : cycle) bcycle.push_back(bmap[c]);
        if (word_accepts(a, stem, cycle) == word_accepts(b, bstem, bcycle)) throw std::logic_error("equivalence witness does not separate");
        for (auto c : stem) r.stem.push_back(a.alphabet[c]);
        for (auto c : cycle) r.cycle.push_back(a.alphabet[c]);
        return r;
    }
    return r;
}

VertexSet
oracle_as_parity_region(const GameGraph& g, const std::vector<Priority>& prio, std::uint64_t bound)
{
    std::vector<VertexId> mine;
    std::uint64_t total = 1;
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Owner::P1) continue;
        mine.push_back(v);
        total *= g.out_degree(v);
        if (total > bound) throw BoundExceeded("too many memoryless strategies for player 1");
    }
    auto co = shifted(prio);
    VertexSet win(g.size());
    std::vector<std::size_t> pick(mine.size(), 0);
    std::vector<VertexId> sigma(g.size(), kNoVertex);
    for (std::uint64_t k = 0; k < total; k++) {
        for (std::size_t i = 0; i < mine.size(); i++) sigma[mine[i]] = g.succ(mine[i])[pick[i]];
        auto h = fix_strategy(g, Player::P1, sigma);
        win |= mdp_pos_parity(h, co).complement();
        for (std::size_t i = 0; i < mine.size(); i++) {
            if (++pick[i] < g.out_degree(mine[i])) break;
            pick[i] = 0;
        }
    }
    return win;
}

VertexSet
oracle_sas_region(const Arena& a, std::uint64_t bound)
{
    const auto& g = a.graph;
    std::vector<VertexId> theirs;
    std::uint64_t total = 1;
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Owner::P2) continue;
        theirs.push_back(v);
        total *= g.out_degree(v);
        if (total > bound) throw BoundExceeded("too many memoryless strategies for player 2");
    }
    auto win = VertexSet::full(g.size());
    std::vector<std::size_t> pick(theirs.size(), 0);
    std::vector<VertexId> sigma(g.size(), kNoVertex);
    for (std::uint64_t k = 0; k < total && win.any(); k++) {
        for (std::size_t i = 0; i < theirs.size(); i++) sigma[theirs[i]] = g.succ(theirs[i])[pick[i]];
        Arena mdp = a;
        mdp.graph = fix_strategy(g, Player::P2, sigma);
        win &= solve_sas(mdp).w1;
        for (std::size_t i = 0; i < theirs.size(); i++) {
            if (++pick[i] < g.out_degree(theirs[i])) break;
            pick[i] = 0;
        }
    }
    return win - a.sinks();
}

VertexSet
oracle_sas_region(const StochasticGame& g, std::uint64_t bound)
{
    return oracle_sas_region(g.arena(), bound);
}

MemoryProduct
memory_product(const GameGraph& g, const MealyStrategy& s, const VertexSet& starts)
{
    if (s.vertices != g.size()) throw PreconditionError("strategy built for a different game");
    const Owner mine = owner_of(s.player);
    MemoryProduct p;
    std::vector<std::uint32_t> index(static_cast<std::size_t>(s.memory) * g.size(), kNoVertex);
    std::vector<Owner> owners;
    auto intern = [&](VertexId v, std::uint32_t m) {
        auto& slot = index[static_cast<std::size_t>(m) * g.size() + v];
        if (slot == kNoVertex) {
            slot = static_cast<std::uint32_t>(p.base.size());
            p.base.push_back(v);
            p.mem.push_back(m);
            owners.push_back(g.owner(v) == mine ? Owner::Random : g.owner(v));
        }
        return slot;
    };
    for (auto v : starts) p.initial.push_back(intern(v, s.update(s.initial, v)));
    std::vector<std::vector<VertexId>> succ;
    for (VertexId x = 0; x < p.base.size(); x++) {
        auto v = p.base[x];
        auto m = p.mem[x];
        std::vector<VertexId> row;
        if (g.owner(v) == mine) {
            auto u = s.move(m, v);
            if (u == kNoVertex) throw PreconditionError("strategy has no move for a reachable state", v);
            if (!g.has_edge(v, u)) throw PreconditionError("strategy move is not an edge", v);
            row.push_back(intern(u, s.update(m, u)));
        } else {
            for (auto u : g.succ(v)) {
                auto y = intern(u, s.update(m, u));
                if (std::find(row.begin(), row.end(), y) == row.end()) row.push_back(y);
            }
        }
        succ.push_back(std::move(row));
    }
    p.graph = GameGraph(std::move(owners), succ);
    return p;
}

CheckResult
check_fixed_strategy_sas(const GameGraph& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2,
                         const MealyStrategy& s, const VertexSet& claimed)
{
    if (s.player != Player::P1) throw PreconditionError("fixed-strategy check expects a player-1 strategy");
    auto p = memory_product(g, s, claimed);
    const auto n = p.graph.size();
    std::vector<Priority> q1(n), q2(n);
    for (VertexId x = 0; x < n; x++) {
        q1[x] = prio1[p.base[x]];
        q2[x] = prio2[p.base[x]];
    }
    // sure part: no reachable cycle whose largest Omega1 priority is odd
    Priority top = max_priority(q1);
    for (Priority odd = 1; odd <= top; odd += 2) {
        VertexSet low(n);
        for (VertexId x = 0; x < n; x++) {
            if (q1[x] <= odd) low.insert(x);
        }
        for (auto& comp : scc_decomposition(p.graph, low)) {
            bool has = false;
            for (auto x : comp) has = has || q1[x] == odd;
            if (!has) continue;
            if (comp.size() > 1 || p.graph.has_edge(comp[0], comp[0])) {
                return {false, "sure part: reachable cycle with largest Omega1 priority " + std::to_string(odd) +
                                   " through vertex " + std::to_string(p.base[comp[0]])};
            }
        }
    }
    // almost-sure part: player 2 cannot win the complement with positive probability
    auto spoil = mdp_pos_parity(p.graph, shifted(q2));
    for (std::size_t i = 0; i < p.initial.size(); i++) {
        if (spoil.contains(p.initial[i])) {
            return {false, "almost-sure part: player 2 spoils Omega2 with positive probability from vertex " +
                               std::to_string(p.base[p.initial[i]])};
        }
    }
    return {};
}

CheckResult
check_fixed_strategy_sas(const StochasticGame& g, const MealyStrategy& s, const VertexSet& claimed)
{
    return check_fixed_strategy_sas(g.graph(), g.prio1(), g.prio2(), s, claimed);
}

CheckResult
check_fixed_strategy_sas(const StochasticGame& g, const MemorylessStrategy& s, const VertexSet& claimed)
{
    return check_fixed_strategy_sas(g, MealyStrategy::from_memoryless(s), claimed);
}

CheckResult
check_spoiling_strategy(const StochasticGame& g, const MealyStrategy& s, const VertexSet& claimed)
{
    if (s.player != Player::P2) throw PreconditionError("spoiling check expects a player-2 strategy");
    auto p = memory_product(g.graph(), s, claimed);
    Arena a;
    a.graph = p.graph;
    for (VertexId x = 0; x < p.graph.size(); x++) {
        a.prio1.push_back(g.prio1(p.base[x]));
        a.prio2.push_back(g.prio2(p.base[x]));
        a.origin.push_back(g.is_sink(p.base[x]) ? kNoVertex : x);
    }
    auto w1 = solve_sas(a).w1;
    for (auto x : p.initial) {
        if (w1.contains(x)) return {false, "player 1 still wins from vertex " + std::to_string(p.base[x])};
    }
    return {};
}

} // namespace sas
