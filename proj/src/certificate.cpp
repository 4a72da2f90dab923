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

#include "sas/certificate.hpp"

#include "sas/attractor.hpp"
#include "sas/game_io.hpp"
#include "sas/product.hpp"
#include "sas/qualitative.hpp"
#include "random_util.hpp"
#include "strategy_internal.hpp"

namespace sas {

using nlohmann::json;

namespace {

json
ids(const VertexSet& s)
{
    return s.to_vector();
}

json build_node(const TraceNode& t);

json
even_node(const TraceNode& t)
{
    const auto& G = t.game;
    const auto n = G.size();
    if (t.w_as.count() != n) throw std::logic_error("winning even node with a smaller almost-sure region");
    const auto& P = *t.product;
    const auto& sol = *t.product_solution;
    json moves = json::array();
    for (auto x : sol.w1) {
        if (P.graph.owner(x) != Owner::P1) continue;
        int i = P.graph.succ_index(x, sol.sigma1[x]);
        if (i < 0) throw std::logic_error("product strategy has no move");
        moves.push_back({x, static_cast<std::uint64_t>(i)});
    }
    json j = {{"kind", "even"},
              {"d", t.d},
              {"vertices", n},
              {"A", ids(t.A)},
              {"product_states", P.graph.size()},
              {"product_region", ids(sol.w1)},
              {"product_moves", std::move(moves)},
              {"child", nullptr}};
    if (t.A.count() != n) j["child"] = build_node(*t.first);
    return j;
}

json
odd_node(const TraceNode& t)
{
    json parts = json::array();
    const TraceNode* T = &t;
    while (T && T->game.non_sink_count() > 0) {
        const auto m = T->game.size();
        if (T->kind == TraceNode::Kind::Odd && T->d == t.d) {
            auto res = detail::resolve_first_winning(*T);
            parts.push_back({{"vertices", m}, {"R", ids(T->first_w1)}, {"U", ids(T->B)}, {"child", build_node(*res.result.trace)}});
            T = T->second.get();
        } else {
            auto all = ids(VertexSet::full(m));
            parts.push_back({{"vertices", m}, {"R", all}, {"U", all}, {"child", build_node(*T)}});
            break;
        }
    }
    return {{"kind", "odd"}, {"d", t.d}, {"vertices", t.game.size()}, {"parts", std::move(parts)}};
}

json
build_node(const TraceNode& t)
{
    detail::require_all_winning(t);
    switch (t.kind) {
    case TraceNode::Kind::Base: return {{"kind", "base"}, {"vertices", t.game.size()}};
    case TraceNode::Kind::Even: return even_node(t);
    default: return odd_node(t);
    }
}

json
content(const json& doc)
{
    json c = doc;
    c.erase("sha256");
    return c;
}

// ---- verification ----

struct Malformed : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Reject
{
    std::string why;
};

const json&
field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) throw Malformed(path + ": missing '" + key + "'");
    return j.at(key);
}

bool
is_natural(const json& x)
{
    return x.is_number_unsigned() || (x.is_number_integer() && x.get<std::int64_t>() >= 0);
}

std::uint64_t
natural(const json& j, const char* key, const std::string& path)
{
    const auto& x = field(j, key, path);
    if (!is_natural(x)) throw Malformed(path + "." + key + ": expected a natural number");
    return x.get<std::uint64_t>();
}

// out-of-range ids are a semantic failure, not a format error
VertexSet
region(const json& j, const char* key, std::size_t universe, const std::string& path)
{
    const auto& a = field(j, key, path);
    if (!a.is_array()) throw Malformed(path + "." + key + ": expected an array");
    VertexSet s(universe);
    for (const auto& x : a) {
        if (!is_natural(x)) throw Malformed(path + "." + key + ": expected natural ids");
        auto v = x.get<std::uint64_t>();
        if (v >= universe) throw Reject{path + "." + key + ": id " + std::to_string(v) + " out of range"};
        s.insert(static_cast<VertexId>(v));
    }
    return s;
}

class Verifier
{
  public:
    void node(const json& j, const Arena& H, const std::string& path)
    {
        const auto n = H.size();
        const auto& kind = field(j, "kind", path);
        if (!kind.is_string()) throw Malformed(path + ".kind: expected a string");
        if (natural(j, "vertices", path) != n) throw Reject{path + ": vertex count does not match the reconstructed game"};
        if (H.non_sink_count() == 0) {
            if (kind != "base") throw Reject{path + ": a game of sinks only needs a base node"};
            return;
        }
        const Priority d = max_priority(H.prio1);
        if (natural(j, "d", path) != d) throw Reject{path + ".d: largest priority is " + std::to_string(d)};
        if (kind == "even") {
            if (d % 2) throw Reject{path + ": even node for an odd largest priority"};
            even(j, H, d, path);
        } else if (kind == "odd") {
            if (d % 2 == 0) throw Reject{path + ": odd node for an even largest priority"};
            odd(j, H, d, path);
        } else if (kind == "base") {
            throw Reject{path + ": base node for a game with non-sink vertices"};
        } else {
            throw Malformed(path + ".kind: unknown node kind");
        }
    }

  private:
    void even(const json& j, const Arena& H, Priority d, const std::string& path)
    {
        const auto n = H.size();
        // almost-sure conjunction: the product strategy is positive-loss free on a closed region
        ProductArena P;
        try {
            P = lift_conjunction(H.graph, H.prio1, H.prio2);
        } catch (const BoundExceeded& e) {
            throw Reject{path + ": product too large to check (" + e.what() + ")"};
        }
        const auto ps = P.graph.size();
        if (natural(j, "product_states", path) != ps) throw Reject{path + ".product_states: product has " + std::to_string(ps)};
        auto region_p = region(j, "product_region", ps, path);
        for (VertexId v = 0; v < n; v++) {
            if (!region_p.contains(P.root[v])) throw Reject{path + ".product_region: misses the root of vertex " + std::to_string(v)};
        }
        std::vector<VertexId> sigma(ps, kNoVertex);
        const auto& mv = field(j, "product_moves", path);
        if (!mv.is_array()) throw Malformed(path + ".product_moves: expected an array");
        for (const auto& e : mv) {
            if (!e.is_array() || e.size() != 2 || !is_natural(e[0]) || !is_natural(e[1])) {
                throw Malformed(path + ".product_moves: expected [state, index] pairs");
            }
            auto x = e[0].get<std::uint64_t>(), i = e[1].get<std::uint64_t>();
            if (x >= ps || P.graph.owner(static_cast<VertexId>(x)) != Owner::P1 || i >= P.graph.out_degree(static_cast<VertexId>(x))) {
                throw Reject{path + ".product_moves: illegal move at state " + std::to_string(x)};
            }
            sigma[x] = P.graph.succ(static_cast<VertexId>(x))[i];
        }
        for (auto x : region_p) {
            if (P.graph.owner(x) == Owner::P1) {
                if (sigma[x] == kNoVertex) throw Reject{path + ".product_moves: no move at state " + std::to_string(x)};
                if (!region_p.contains(sigma[x])) throw Reject{path + ".product_region: the strategy leaves it at state " + std::to_string(x)};
                continue;
            }
            for (auto y : P.graph.succ(x)) {
                if (!region_p.contains(y)) throw Reject{path + ".product_region: not closed at state " + std::to_string(x)};
            }
        }
        auto fixed = fix_strategy(P.graph, Player::P1, sigma);
        SubMap m;
        auto chain = restrict_graph(fixed, region_p, &m);
        if (mdp_pos_parity(chain, shifted(pull_back(P.prio, m))).any()) {
            throw Reject{path + ": the product strategy loses with positive probability"};
        }

        VertexSet Z(n);
        for (VertexId v = 0; v < n; v++) {
            if (H.prio1[v] == d) Z.insert(v);
        }
        auto A = sure_attractor(H.graph, Player::P1, Z).region;
        if (region(j, "A", n, path) != A) throw Reject{path + ".A: not the sure attractor to priority " + std::to_string(d)};
        const auto& child = field(j, "child", path);
        if (A.count() == n) {
            if (!child.is_null()) throw Reject{path + ".child: the attractor covers the game, no child expected"};
            return;
        }
        if (child.is_null()) throw Reject{path + ".child: missing"};
        auto [sub, map] = close_arena(H, VertexSet::full(n) - A);
        node(child, sub, path + ".child");
    }

    void odd(const json& j, const Arena& H, Priority d, const std::string& path)
    {
        const auto& parts = field(j, "parts", path);
        if (!parts.is_array() || parts.empty()) throw Malformed(path + ".parts: expected a nonempty array");
        Arena Hi = H;
        std::vector<VertexId> to_node(H.size());
        for (VertexId v = 0; v < H.size(); v++) to_node[v] = v;
        VertexSet covered(H.size());
        for (std::size_t i = 0; i < parts.size(); i++) {
            const auto p = path + ".parts[" + std::to_string(i) + "]";
            const auto& part = parts[i];
            const auto m = Hi.size();
            if (natural(part, "vertices", p) != m) throw Reject{p + ": vertex count does not match the reconstructed game"};
            auto R = region(part, "R", m, p);
            auto U = region(part, "U", m, p);
            bool fresh = false;
            for (auto v : U) fresh = fresh || to_node[v] != kNoVertex;
            if (!fresh) throw Reject{p + ".U: covers no vertex of the node"};
            for (auto v : R) {
                if (Hi.prio1[v] == d) throw Reject{p + ".R: contains vertex " + std::to_string(v) + " of priority " + std::to_string(d)};
            }
            if (!is_trap(Hi.graph, Player::P2, R)) throw Reject{p + ".R: not a trap for player 2"};
            if (sure_attractor(Hi.graph, Player::P1, R).region != U) throw Reject{p + ".U: not the sure attractor of R"};
            auto [sub, smap] = restrict_arena(Hi, R);
            node(field(part, "child", p), sub, p + ".child");
            for (auto v : U) {
                if (to_node[v] != kNoVertex) covered.insert(to_node[v]);
            }
            auto [next, nmap] = close_arena(Hi, VertexSet::full(m) - U);
            std::vector<VertexId> t(next.size(), kNoVertex);
            for (VertexId c = 0; c < next.size(); c++) {
                if (nmap.to_parent[c] != kNoVertex) t[c] = to_node[nmap.to_parent[c]];
            }
            Hi = std::move(next);
            to_node = std::move(t);
        }
        if (covered.count() != H.size()) throw Reject{path + ".parts: the sets U do not cover the node"};
    }
};

} // namespace

VertexSet
Certificate::w1(std::size_t n) const
{
    return region_from_json(doc.at("w1"), n);
}

Certificate
build_certificate(const StochasticGame& g, const TraceNode& trace)
{
    if (trace.game.size() != g.size()) throw PreconditionError("trace does not belong to this game");
    const auto arena = g.arena();
    auto [sub, map] = restrict_arena(arena, trace.w1);
    auto r = solve_sas(sub);
    Certificate c;
    c.doc = {{"schema", 1},
             {"kind", "sas-certificate"},
             {"game_sha256", sha256_hex(to_spg(g))},
             {"vertices", g.size()},
             {"w1", ids(trace.w1)},
             {"root", build_node(*r.trace)}};
    seal(c);
    return c;
}

void
seal(Certificate& c)
{
    c.doc["sha256"] = sha256_hex(content(c.doc).dump());
}

VerifyResult
verify_certificate(const StochasticGame& g, const Certificate& c)
{
    VerifyResult out;
    try {
        const auto& d = c.doc;
        if (!d.is_object() || d.value("kind", json()) != "sas-certificate" || d.value("schema", json()) != 1) {
            throw Malformed("not a schema 1 certificate");
        }
        const auto& digest = field(d, "sha256", "certificate");
        if (!digest.is_string() || digest.get<std::string>() != sha256_hex(content(d).dump())) {
            throw Malformed("content digest does not match");
        }
        const auto& root = field(d, "root", "certificate");
        if (!root.is_object()) throw Malformed("certificate.root: expected an object");
        const auto& gd = field(d, "game_sha256", "certificate");
        if (!gd.is_string() || gd.get<std::string>() != sha256_hex(to_spg(g))) throw Reject{"certificate is for a different game"};
        if (natural(d, "vertices", "certificate") != g.size()) throw Reject{"certificate.vertices: does not match the game"};
        auto W = region(d, "w1", g.size(), "certificate");
        if (!is_trap(g.graph(), Player::P2, W)) throw Reject{"certificate.w1: not a trap for player 2"};
        auto [sub, map] = restrict_arena(g.arena(), W);
        Verifier().node(root, sub, "root");
    } catch (const Reject& r) {
        out.verdict = Verdict::Rejected;
        out.diagnostic = r.why;
    } catch (const Malformed& e) {
        out.verdict = Verdict::Malformed;
        out.diagnostic = e.what();
    } catch (const json::exception& e) {
        out.verdict = Verdict::Malformed;
        out.diagnostic = e.what();
    }
    return out;
}

namespace {

struct Slot
{
    json::json_pointer where;
    std::size_t universe;
};

void
collect(const json& node, const json::json_pointer& at, std::vector<Slot>& out)
{
    if (!node.is_object()) return;
    const auto n = node.value("vertices", std::size_t{0});
    if (node.value("kind", "") == "even") {
        out.push_back({at / "A", n});
        out.push_back({at / "product_region", node.value("product_states", std::size_t{0})});
        collect(node["child"], at / "child", out);
    } else if (node.value("kind", "") == "odd") {
        for (std::size_t i = 0; i < node["parts"].size(); i++) {
            const auto& part = node["parts"][i];
            auto p = at / "parts" / i;
            const auto m = part.value("vertices", std::size_t{0});
            out.push_back({p / "R", m});
            out.push_back({p / "U", m});
            collect(part["child"], p / "child", out);
        }
    }
}

std::vector<Slot>
slots(const Certificate& c)
{
    std::vector<Slot> out{{json::json_pointer("/w1"), c.doc.value("vertices", std::size_t{0})}};
    collect(c.doc["root"], json::json_pointer("/root"), out);
    // a region over an empty universe cannot be toggled
    std::erase_if(out, [](const Slot& s) { return s.universe == 0; });
    return out;
}

} // namespace

std::size_t
region_slot_count(const Certificate& c)
{
    return slots(c).size();
}

Certificate
mutate_region(const Certificate& c, std::mt19937_64& rng, std::string* what)
{
    auto all = slots(c);
    if (all.empty()) throw PreconditionError("certificate has no region to mutate");
    const auto& s = all[detail::uniform_below(rng, all.size())];
    const auto v = static_cast<VertexId>(detail::uniform_below(rng, s.universe));
    Certificate m = c;
    auto& arr = m.doc[s.where];
    std::vector<VertexId> xs = arr.get<std::vector<VertexId>>();
    auto it = std::find(xs.begin(), xs.end(), v);
    bool removed = it != xs.end();
    if (removed) xs.erase(it);
    else xs.insert(std::upper_bound(xs.begin(), xs.end(), v), v);
    arr = xs;
    seal(m);
    if (what) *what = (removed ? "removed " : "added ") + std::to_string(v) + (removed ? " from " : " to ") + s.where.to_string();
    return m;
}

} // namespace sas
