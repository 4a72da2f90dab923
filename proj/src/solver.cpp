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

#include "sas/solver.hpp"

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "sas/game_io.hpp"

namespace sas {

namespace {

std::atomic<std::uint64_t> g_invocations{0};

struct AsEntry
{
    VertexSet w_as;
    std::shared_ptr<const ProductArena> product;
    std::shared_ptr<const ParitySolution> solution;
};

std::string
arena_key(const Arena& a)
{
    std::string k;
    auto put = [&k](std::uint32_t x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(static_cast<std::uint32_t>(a.size()));
    for (VertexId v = 0; v < a.size(); v++) {
        put(static_cast<std::uint32_t>(a.graph.owner(v)));
        put(a.prio1[v]);
        put(a.prio2[v]);
        put(static_cast<std::uint32_t>(a.graph.out_degree(v)));
        for (auto u : a.graph.succ(v)) put(u);
    }
    return k;
}

class Solver
{
  public:
    std::unique_ptr<TraceNode> solve(Arena game)
    {
        auto node = std::make_unique<TraceNode>();
        node->serial = serial_++;
        g_invocations++;
        node->game = std::move(game);
        const auto& G = node->game;
        const auto n = G.size();
        node->w1 = VertexSet(n);
        node->w2 = VertexSet(n);
        node->Z = node->A = node->B = VertexSet(n);

        if (G.non_sink_count() == 0) {
            node->kind = TraceNode::Kind::Base;
            node->w1 = VertexSet::full(n);
            return node;
        }
        node->d = max_priority(G.prio1);
        if (node->d % 2 == 0) even(*node);
        else odd(*node);
        return node;
    }

  private:
    void check_measure(const TraceNode& parent, const Arena& child)
    {
        Priority dc = max_priority(child.prio1);
        auto np = parent.game.non_sink_count(), nc = child.non_sink_count();
        if (!(dc < parent.d || (dc == parent.d && nc < np))) {
            throw std::logic_error("termination measure did not decrease");
        }
    }

    std::unique_ptr<TraceNode> recurse(const TraceNode& parent, Arena child)
    {
        check_measure(parent, child);
        return solve(std::move(child));
    }

    const AsEntry& as_region(const Arena& G)
    {
        auto key = arena_key(G);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto product = std::make_shared<ProductArena>(lift_conjunction(G.graph, G.prio1, G.prio2));
        auto sol = std::make_shared<ParitySolution>(solve_as_parity(product->graph, product->prio));
        AsEntry e;
        e.w_as = VertexSet(G.size());
        for (VertexId v = 0; v < G.size(); v++) {
            if (sol->w1.contains(product->root[v])) e.w_as.insert(v);
        }
        e.product = std::move(product);
        e.solution = std::move(sol);
        return memo_.emplace(std::move(key), std::move(e)).first->second;
    }

    void even(TraceNode& t)
    {
        t.kind = TraceNode::Kind::Even;
        const auto& G = t.game;
        const auto n = G.size();
        const auto& as = as_region(G);
        t.w_as = as.w_as;
        t.product = as.product;
        t.product_solution = as.solution;

        auto [work, wmap] = restrict_arena(G, t.w_as);
        t.work = std::move(work);
        t.work_map = std::move(wmap);
        const auto& W = t.work;
        const auto m = W.size();
        auto all = VertexSet::full(m);

        t.Z = VertexSet(m);
        for (VertexId v = 0; v < m; v++) {
            if (W.prio1[v] == t.d) t.Z.insert(v);
        }
        t.a_attr = sure_attractor(W.graph, Player::P1, t.Z);
        t.A = t.a_attr.region;
        t.B = VertexSet(m);

        auto [c1, m1] = close_arena(W, all - t.A);
        t.first_map = std::move(m1);
        t.first = recurse(t, std::move(c1));
        t.first_w1 = t.first_map.lift(t.first->w1, m);
        t.first_w2 = t.first_map.lift(t.first->w2, m);

        VertexSet w1_work(m);
        if (t.first_w2.empty()) {
            w1_work = all;
        } else {
            t.b_attr = pos_attractor(W.graph, Player::P2, t.first_w2);
            t.B = t.b_attr.region;
            auto [c2, m2] = restrict_arena(W, all - t.B);
            t.second_map = std::move(m2);
            t.second = recurse(t, std::move(c2));
            t.second_w1 = t.second_map.lift(t.second->w1, m);
            t.second_w2 = t.second_map.lift(t.second->w2, m);
            w1_work = t.second_w1;
        }
        t.w1 = t.work_map.lift(w1_work, n);
        t.w2 = VertexSet::full(n) - t.w1;
    }

    void odd(TraceNode& t)
    {
        t.kind = TraceNode::Kind::Odd;
        const auto& G = t.game;
        const auto n = G.size();
        auto all = VertexSet::full(n);

        for (VertexId v = 0; v < n; v++) {
            if (G.prio1[v] == t.d) t.Z.insert(v);
        }
        t.a_attr = pos_attractor(G.graph, Player::P2, t.Z);
        t.A = t.a_attr.region;

        auto [c1, m1] = restrict_arena(G, all - t.A);
        t.first_map = std::move(m1);
        t.first = recurse(t, std::move(c1));
        t.first_w1 = t.first_map.lift(t.first->w1, n);
        t.first_w2 = t.first_map.lift(t.first->w2, n);
        if (t.first_w1.empty()) {
            t.w2 = all;
            return;
        }
        t.b_attr = sure_attractor(G.graph, Player::P1, t.first_w1);
        t.B = t.b_attr.region;
        if ((t.B - G.sinks()).empty()) {
            // only sinks won: closing the rest would rebuild this game
            t.w1 = t.B;
            t.w2 = all - t.B;
            return;
        }
        auto [c2, m2] = close_arena(G, all - t.B);
        t.second_map = std::move(m2);
        t.second = recurse(t, std::move(c2));
        t.second_w1 = t.second_map.lift(t.second->w1, n);
        t.second_w2 = t.second_map.lift(t.second->w2, n);
        t.w1 = t.B | t.second_w1;
        t.w2 = t.second_w2;
    }

    std::uint32_t serial_ = 0;
    std::unordered_map<std::string, AsEntry> memo_;
};

nlohmann::json
ids(const Arena& a, const VertexSet& s)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto v : s) {
        if (a.origin[v] == kNoVertex) out.push_back("sink");
        else out.push_back(a.origin[v]);
    }
    return out;
}

} // namespace

SasResult
solve_sas(const Arena& a)
{
    Solver s;
    std::shared_ptr<const TraceNode> root = s.solve(a);
    SasResult r;
    r.w1 = root->w1 - a.sinks();
    r.w2 = root->w2 - a.sinks();
    r.trace = std::move(root);
    return r;
}

SasResult
solve_sas(const StochasticGame& g)
{
    return solve_sas(g.arena());
}

SasResult
solve_sas(const StochasticGame& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2)
{
    if (prio1.size() != g.size() || prio2.size() != g.size()) throw PreconditionError("priority vector size mismatch");
    auto a = g.arena();
    a.prio1 = prio1;
    a.prio2 = prio2;
    return solve_sas(a);
}

std::uint64_t
solve_sas_invocations()
{
    return g_invocations.load();
}

nlohmann::json
trace_to_json(const TraceNode& t)
{
    nlohmann::json j;
    j["kind"] = t.kind == TraceNode::Kind::Base ? "base" : t.kind == TraceNode::Kind::Even ? "even" : "odd";
    j["serial"] = t.serial;
    j["d"] = t.d;
    j["vertices"] = ids(t.game, VertexSet::full(t.game.size()));
    j["w1"] = ids(t.game, t.w1);
    j["w2"] = ids(t.game, t.w2);
    if (t.kind == TraceNode::Kind::Base) return j;
    const auto& L = t.level();
    if (t.kind == TraceNode::Kind::Even) {
        j["w_as"] = ids(t.game, t.w_as);
        j["product_size"] = t.product->graph.size();
        j["orientation"] = t.product->layout.orientation == Orientation::Direct ? "direct" : "swapped";
    }
    j["Z"] = ids(L, t.Z);
    j["A"] = ids(L, t.A);
    j["B"] = ids(L, t.B);
    if (t.first) j["first"] = trace_to_json(*t.first);
    if (t.second) j["second"] = trace_to_json(*t.second);
    return j;
}

std::string
trace_digest(const TraceNode& t)
{
    return sha256_hex(trace_to_json(t).dump());
}

} // namespace sas
