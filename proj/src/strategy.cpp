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

#include "sas/strategy.hpp"

#include <limits>
#include <stdexcept>

#include "strategy_internal.hpp"
#include "text_util.hpp"

namespace sas {

namespace {

std::string
player_name(Player p)
{
    return p == Player::P1 ? "p1" : "p2";
}

Player
player_from(const nlohmann::json& j)
{
    auto s = j.get<std::string>();
    if (s == "p1") return Player::P1;
    if (s == "p2") return Player::P2;
    throw ParseError("unknown player '" + s + "'", 0);
}

nlohmann::json
vertex_or_null(VertexId v)
{
    return v == kNoVertex ? nlohmann::json(nullptr) : nlohmann::json(v);
}

VertexId
vertex_from(const nlohmann::json& j)
{
    return j.is_null() ? kNoVertex : j.get<VertexId>();
}

class MealyMachine : public Machine
{
  public:
    explicit MealyMachine(MealyStrategy s) : s_(std::move(s)), m_(s_.initial) { }
    void reset() override { m_ = s_.initial; }
    StepInfo step(VertexId v) override
    {
        m_ = s_.update(m_, v);
        StepInfo info;
        info.move = s_.move(m_, v);
        return info;
    }

  private:
    MealyStrategy s_;
    std::uint32_t m_;
};

class MemorylessMachine : public Machine
{
  public:
    explicit MemorylessMachine(MemorylessStrategy s) : s_(std::move(s)) { }
    void reset() override { }
    StepInfo step(VertexId v) override
    {
        StepInfo info;
        info.move = s_.choice.at(v);
        return info;
    }

  private:
    MemorylessStrategy s_;
};

} // namespace

void
MemorylessStrategy::validate(const GameGraph& g) const
{
    if (choice.size() != g.size()) throw PreconditionError("strategy covers " + std::to_string(choice.size()) + " vertices, game has " + std::to_string(g.size()));
    for (VertexId v = 0; v < g.size(); v++) {
        if (choice[v] == kNoVertex) continue;
        if (g.owner(v) != owner_of(player)) throw PreconditionError("strategy moves at a vertex its player does not own", v);
        if (!g.has_edge(v, choice[v])) throw PreconditionError("strategy picks a non-edge", v);
    }
}

MealyStrategy
MealyStrategy::from_memoryless(const MemorylessStrategy& s)
{
    MealyStrategy m(s.player, 1, s.choice.size());
    m.move_table = s.choice;
    return m;
}

void
MealyStrategy::validate(const GameGraph& g) const
{
    if (vertices != g.size()) throw PreconditionError("strategy built for a different game");
    if (memory == 0 || initial >= memory) throw PreconditionError("bad memory size or initial state");
    const std::size_t cells = static_cast<std::size_t>(memory) * vertices;
    if (update_table.size() != cells || move_table.size() != cells) throw PreconditionError("strategy tables have the wrong size");
    for (std::uint32_t m = 0; m < memory; m++) {
        for (VertexId v = 0; v < vertices; v++) {
            if (update(m, v) >= memory) throw PreconditionError("memory update out of range", v);
            auto u = move(m, v);
            if (u == kNoVertex) continue;
            if (g.owner(v) != owner_of(player)) throw PreconditionError("strategy moves at a vertex its player does not own", v);
            if (!g.has_edge(v, u)) throw PreconditionError("strategy picks a non-edge", v);
        }
    }
}

std::uint64_t
Schedule::horizon(const Natural& i) const
{
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    if (kind == Kind::Table) {
        if (table.empty()) throw PreconditionError("empty schedule table");
        if (i >= table.size()) return table.back();
        return table[static_cast<std::size_t>(i)];
    }
    if (base <= 1 || n0 == 0) return n0;
    if (i >= 64) return top;
    std::uint64_t x = n0;
    for (auto k = static_cast<unsigned>(i); k > 0; k--) {
        if (x > top / base) return top;
        x *= base;
    }
    return x;
}

Schedule
Schedule::parse(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("schedule must look like geometric:N0,base or table:a,b,...", 0);
    auto kind = text.substr(0, colon);
    std::vector<std::uint64_t> nums;
    for (auto& part : detail::split(text.substr(colon + 1), ',')) {
        auto x = detail::parse_nat(part, 0);
        if (x == 0) throw ParseError("schedule entries must be positive integers", 0);
        nums.push_back(x);
    }
    if (kind == "geometric") {
        if (nums.size() != 2) throw ParseError("geometric schedule takes N0,base", 0);
        return geometric(nums[0], nums[1]);
    }
    if (kind == "table") {
        if (nums.empty()) throw ParseError("table schedule needs at least one entry", 0);
        return from_table(std::move(nums));
    }
    throw ParseError("unknown schedule kind '" + kind + "'", 0);
}

std::string
Schedule::describe() const
{
    if (kind == Kind::Geometric) return "geometric:" + std::to_string(n0) + "," + std::to_string(base);
    std::string s = "table:";
    for (std::size_t k = 0; k < table.size(); k++) s += (k ? "," : "") + std::to_string(table[k]);
    return s;
}

Schedule
default_schedule(const StochasticGame& g)
{
    return Schedule::geometric(4 * std::max<std::uint64_t>(g.size(), 1), 2);
}

std::unique_ptr<Machine>
make_machine(const MealyStrategy& s)
{
    return std::make_unique<MealyMachine>(s);
}

std::unique_ptr<Machine>
make_machine(const MemorylessStrategy& s)
{
    return std::make_unique<MemorylessMachine>(s);
}

nlohmann::json
strategy_to_json(const MemorylessStrategy& s)
{
    nlohmann::json moves = nlohmann::json::array();
    for (VertexId v = 0; v < s.choice.size(); v++) {
        if (s.choice[v] != kNoVertex) moves.push_back({v, s.choice[v]});
    }
    return {{"schema", 1}, {"kind", "memoryless"}, {"player", player_name(s.player)}, {"vertices", s.choice.size()}, {"moves", moves}};
}

nlohmann::json
strategy_to_json(const MealyStrategy& s)
{
    nlohmann::json upd = nlohmann::json::array(), mv = nlohmann::json::array();
    for (std::uint32_t m = 0; m < s.memory; m++) {
        nlohmann::json u = nlohmann::json::array(), x = nlohmann::json::array();
        for (VertexId v = 0; v < s.vertices; v++) {
            u.push_back(s.update(m, v));
            x.push_back(vertex_or_null(s.move(m, v)));
        }
        upd.push_back(std::move(u));
        mv.push_back(std::move(x));
    }
    return {{"schema", 1},          {"kind", "mealy"},        {"player", player_name(s.player)},
            {"memory", s.memory},   {"initial", s.initial},  {"vertices", s.vertices},
            {"update", upd},        {"move", mv}};
}

MemorylessStrategy
memoryless_from_json(const nlohmann::json& j, std::size_t n)
{
    try {
        if (j.at("kind") != "memoryless") throw ParseError("not a memoryless strategy", 0);
        if (j.contains("vertices") && j.at("vertices").get<std::size_t>() != n) throw ParseError("strategy built for a different game", 0);
        MemorylessStrategy s;
        s.player = player_from(j.at("player"));
        s.choice.assign(n, kNoVertex);
        for (auto& mv : j.at("moves")) {
            auto v = mv.at(0).get<VertexId>();
            if (v >= n) throw ParseError("strategy vertex out of range", 0);
            s.choice[v] = mv.at(1).get<VertexId>();
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed strategy: ") + e.what(), 0);
    }
}

MealyStrategy
mealy_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("kind") != "mealy") throw ParseError("not a Mealy strategy", 0);
        MealyStrategy s(player_from(j.at("player")), j.at("memory").get<std::uint32_t>(), j.at("vertices").get<std::size_t>());
        s.initial = j.at("initial").get<std::uint32_t>();
        auto& upd = j.at("update");
        auto& mv = j.at("move");
        if (upd.size() != s.memory || mv.size() != s.memory) throw ParseError("strategy tables have the wrong size", 0);
        for (std::uint32_t m = 0; m < s.memory; m++) {
            if (upd[m].size() != s.vertices || mv[m].size() != s.vertices) throw ParseError("strategy tables have the wrong size", 0);
            for (VertexId v = 0; v < s.vertices; v++) {
                s.update_table[m * s.vertices + v] = upd[m][v].get<std::uint32_t>();
                s.move_table[m * s.vertices + v] = vertex_from(mv[m][v]);
            }
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed strategy: ") + e.what(), 0);
    }
}

namespace detail {

MealyStrategy
compose_regions(Player p, const GameGraph& g, const std::vector<VertexId>& fallback, const std::vector<RegionBlock>& blocks)
{
    const auto n = g.size();
    std::vector<int> region(n, -1);
    std::vector<std::uint32_t> off;
    std::uint32_t memory = 1;
    for (std::size_t b = 0; b < blocks.size(); b++) {
        for (auto v : blocks[b].region) {
            if (region[v] >= 0) throw std::logic_error("overlapping strategy regions");
            region[v] = static_cast<int>(b);
        }
        off.push_back(memory);
        memory += blocks[b].strategy.memory;
    }
    auto block_of = [&](std::uint32_t m) {
        for (std::size_t b = blocks.size(); b-- > 0;) {
            if (m >= off[b]) return static_cast<int>(b);
        }
        return -1;
    };
    auto own = [&](VertexId v) {
        if (g.owner(v) != owner_of(p)) return kNoVertex;
        return fallback[v] != kNoVertex ? fallback[v] : g.succ(v)[0];
    };

    MealyStrategy s(p, memory, n);
    for (std::uint32_t m = 0; m < memory; m++) {
        int mb = m == 0 ? -1 : block_of(m);
        for (VertexId v = 0; v < n; v++) {
            const auto cell = static_cast<std::size_t>(m) * n + v;
            int r = region[v];
            if (r < 0) {
                s.update_table[cell] = 0;
                s.move_table[cell] = own(v);
                continue;
            }
            const auto& B = blocks[r];
            auto cv = B.of[v];
            auto from = mb == r ? m - off[r] : B.strategy.initial;
            s.update_table[cell] = off[r] + B.strategy.update(from, cv);
            // move for memory m is read after an update that landed in block r
            if (g.owner(v) != owner_of(p)) continue;
            VertexId u = kNoVertex;
            if (mb == r) {
                auto cu = B.strategy.move(m - off[r], cv);
                if (cu != kNoVertex) u = B.to[cu];
            }
            s.move_table[cell] = u != kNoVertex ? u : own(v);
        }
    }
    return s;
}

MealyStrategy
lift_mealy(const MealyStrategy& sub, const SubMap& map, const GameGraph& parent)
{
    const auto n = parent.size();
    MealyStrategy s(sub.player, sub.memory, n);
    s.initial = sub.initial;
    for (std::uint32_t m = 0; m < sub.memory; m++) {
        for (VertexId v = 0; v < n; v++) {
            const auto cell = static_cast<std::size_t>(m) * n + v;
            auto c = map.from_parent[v];
            if (c == kNoVertex) {
                s.update_table[cell] = m;
                if (parent.owner(v) == owner_of(sub.player)) s.move_table[cell] = parent.succ(v)[0];
                continue;
            }
            s.update_table[cell] = sub.update(m, c);
            auto u = sub.move(m, c);
            if (u != kNoVertex) u = map.to_parent[u];
            if (u == kNoVertex && parent.owner(v) == owner_of(sub.player)) u = parent.succ(v)[0];
            s.move_table[cell] = u;
        }
    }
    return s;
}

void
identity_block(RegionBlock& b, std::size_t n)
{
    b.of.resize(n);
    b.to.resize(n);
    for (VertexId v = 0; v < n; v++) b.of[v] = b.to[v] = v;
}

void
child_block(RegionBlock& b, const SubMap& child_to_level, const std::vector<VertexId>& level_to_node, std::size_t n)
{
    b.of.assign(n, kNoVertex);
    b.to.assign(child_to_level.to_parent.size(), kNoVertex);
    for (VertexId c = 0; c < b.to.size(); c++) {
        auto w = child_to_level.to_parent[c];
        if (w == kNoVertex) continue;
        auto v = level_to_node.empty() ? w : level_to_node[w];
        b.to[c] = v;
        b.of[v] = c;
    }
}

void
require_all_winning(const TraceNode& t)
{
    if (t.w1.count() != t.game.size()) throw PreconditionError("trace does not declare every vertex winning");
}

Resolved
resolve_first_winning(const TraceNode& t)
{
    auto [sub, map] = restrict_arena(t.first->game, t.first->w1);
    Resolved r{solve_sas(sub), std::move(map)};
    require_all_winning(*r.result.trace);
    return r;
}

} // namespace detail

} // namespace sas
