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

#include "sas/product.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

#include "text_util.hpp"

namespace sas {

namespace {

template <typename A>
void
validate_table(const A& a)
{
    if (a.delta.empty()) throw ValidationError("automaton has no states", 0);
    if (a.initial >= a.size()) throw ValidationError("initial state out of range", a.initial);
    for (StateId q = 0; q < a.size(); q++) {
        if (a.delta[q].size() != a.alphabet.size()) throw ValidationError("transition table incomplete", q);
        for (auto t : a.delta[q]) {
            if (t >= a.size()) throw ValidationError("transition to unknown state " + std::to_string(t), q);
        }
    }
}

std::string
key_of(VertexId v, std::span<const Priority> r)
{
    std::string k(sizeof(VertexId) * (1 + r.size()), '\0');
    std::memcpy(k.data(), &v, sizeof(VertexId));
    if (!r.empty()) std::memcpy(k.data() + sizeof(VertexId), r.data(), sizeof(Priority) * r.size());
    return k;
}

Priority
even_up(Priority d)
{
    return d % 2 ? d + 1 : d;
}

} // namespace

void
D2pw::validate() const
{
    validate_table(*this);
    if (prio1.size() != size() || prio2.size() != size()) throw ValidationError("priority table incomplete", 0);
}

void
Dpw::validate() const
{
    validate_table(*this);
    if (prio.size() != size()) throw ValidationError("priority table incomplete", 0);
}

boost::multiprecision::cpp_int
RegisterLayout::grid_size() const
{
    return boost::multiprecision::pow(boost::multiprecision::cpp_int(d_reg + 1), static_cast<unsigned>(num_registers()));
}

RegisterLayout
RegisterLayout::fixed(Orientation o, Priority d1, Priority d2)
{
    RegisterLayout l;
    l.orientation = o;
    l.d_index = o == Orientation::Direct ? d1 : d2;
    l.d_reg = even_up(o == Orientation::Direct ? d2 : d1);
    return l;
}

RegisterLayout
RegisterLayout::choose(Priority d1, Priority d2)
{
    auto direct = fixed(Orientation::Direct, d1, d2);
    auto swapped = fixed(Orientation::Swapped, d1, d2);
    return swapped.grid_size() < direct.grid_size() ? swapped : direct;
}

Dpw
build_conjunction_dpw(const D2pw& a, std::optional<Orientation> force)
{
    a.validate();
    Priority d1 = max_priority(a.prio1), d2 = max_priority(a.prio2);
    auto layout = force ? RegisterLayout::fixed(*force, d1, d2) : RegisterLayout::choose(d1, d2);
    const auto& ia = layout.orientation == Orientation::Direct ? a.prio1 : a.prio2;
    const auto& rb = layout.orientation == Orientation::Direct ? a.prio2 : a.prio1;
    const auto k = layout.num_registers();

    Dpw out;
    out.alphabet = a.alphabet;
    std::unordered_map<std::string, StateId> index;
    auto intern = [&](StateId q, const RegisterVector& r) {
        auto key = key_of(q, r);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        auto id = static_cast<StateId>(out.base.size());
        if (id >= kDefaultProductBound) throw BoundExceeded("conjunction automaton exceeds the state bound");
        index.emplace(std::move(key), id);
        out.base.push_back(q);
        out.registers.push_back(r);
        out.prio.push_back(layout.priority(ia[q], r));
        out.delta.emplace_back();
        return id;
    };
    out.initial = intern(a.initial, RegisterVector(k, 0));
    for (StateId x = 0; x < out.base.size(); x++) {
        auto q = out.base[x];
        auto r = out.registers[x];
        layout.update(r, ia[q], rb[q]);
        std::vector<StateId> row;
        for (std::size_t c = 0; c < a.alphabet.size(); c++) row.push_back(intern(a.delta[q][c], r));
        out.delta[x] = std::move(row);
    }
    return out;
}

Dpw
build_disjunction_dpw(const D2pw& a, std::optional<Orientation> force)
{
    D2pw c = a;
    for (auto& p : c.prio1) p++;
    for (auto& p : c.prio2) p++;
    auto out = build_conjunction_dpw(c, force);
    for (auto& p : out.prio) p++;
    return out;
}

VertexId
ProductArena::find(VertexId v, std::span<const Priority> r) const
{
    auto it = index.find(key_of(v, r));
    return it == index.end() ? kNoVertex : it->second;
}

ProductArena
lift_conjunction(const GameGraph& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2,
                 const VertexSet* roots, std::optional<Orientation> force, std::size_t bound)
{
    Priority d1 = max_priority(prio1), d2 = max_priority(prio2);
    ProductArena p;
    p.layout = force ? RegisterLayout::fixed(*force, d1, d2) : RegisterLayout::choose(d1, d2);
    const auto& ia = p.layout.orientation == Orientation::Direct ? prio1 : prio2;
    const auto& rb = p.layout.orientation == Orientation::Direct ? prio2 : prio1;
    const auto k = p.layout.num_registers();

    std::vector<Owner> owners;
    std::vector<std::vector<VertexId>> succ;
    auto intern = [&](VertexId v, std::span<const Priority> r) {
        auto key = key_of(v, r);
        auto it = p.index.find(key);
        if (it != p.index.end()) return it->second;
        auto id = static_cast<VertexId>(p.base.size());
        if (id >= bound) throw BoundExceeded("register product exceeds " + std::to_string(bound) + " vertices");
        p.index.emplace(std::move(key), id);
        p.base.push_back(v);
        p.regs.insert(p.regs.end(), r.begin(), r.end());
        p.prio.push_back(p.layout.priority(ia[v], r));
        owners.push_back(g.owner(v));
        succ.emplace_back();
        return id;
    };
    p.root.assign(g.size(), kNoVertex);
    RegisterVector zero(k, 0);
    for (VertexId v = 0; v < g.size(); v++) {
        if (!roots || roots->contains(v)) p.root[v] = intern(v, zero);
    }
    RegisterVector r(k);
    for (VertexId x = 0; x < p.base.size(); x++) {
        auto v = p.base[x];
        std::copy_n(p.regs.begin() + static_cast<std::ptrdiff_t>(x * k), k, r.begin());
        p.layout.update(r, ia[v], rb[v]);
        std::vector<VertexId> row;
        row.reserve(g.out_degree(v));
        for (auto u : g.succ(v)) row.push_back(intern(u, r));
        succ[x] = std::move(row);
    }
    p.graph = GameGraph(std::move(owners), succ);
    return p;
}

ProductGame
lift_conjunction_game(const StochasticGame& g, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2,
                      std::optional<Orientation> force)
{
    ProductGame out;
    out.arena = lift_conjunction(g.graph(), prio1, prio2, nullptr, force);
    const auto& pa = out.arena;
    GameBuilder b;
    for (VertexId x = 0; x < pa.base.size(); x++) b.add_vertex(g.owner(pa.base[x]), pa.prio[x], 0);
    for (VertexId x = 0; x < pa.base.size(); x++) {
        auto v = pa.base[x];
        auto s = pa.graph.succ(x);
        for (std::size_t i = 0; i < s.size(); i++) b.add_edge(x, s[i], g.owner(v) == Owner::Random ? g.probs(v)[i] : Rational(0));
    }
    out.game = std::move(b).build();
    return out;
}

namespace {

template <typename A>
void
check_run(const A& a, const std::vector<StateId>& stem, const std::vector<StateId>& cycle)
{
    if (cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    auto step_ok = [&](StateId p, StateId q) {
        if (p >= a.size() || q >= a.size()) return false;
        return std::find(a.delta[p].begin(), a.delta[p].end(), q) != a.delta[p].end();
    };
    std::vector<StateId> run(stem);
    run.insert(run.end(), cycle.begin(), cycle.end());
    run.push_back(cycle.front());
    if (!stem.empty() && stem.front() != a.initial) throw PreconditionError("run does not start in the initial state");
    if (stem.empty() && cycle.front() != a.initial) throw PreconditionError("run does not start in the initial state");
    for (std::size_t i = 0; i + 1 < run.size(); i++) {
        if (!step_ok(run[i], run[i + 1])) throw PreconditionError("illegal step in lasso", run[i]);
    }
}

bool
max_even(const std::vector<Priority>& prio, const std::vector<StateId>& cycle)
{
    Priority m = 0;
    for (auto q : cycle) m = std::max(m, prio[q]);
    return m % 2 == 0;
}

template <typename A>
std::vector<StateId>
recurrent_states(const A& a, const std::vector<std::size_t>& stem, const std::vector<std::size_t>& cycle)
{
    if (cycle.empty()) throw PreconditionError("cycle word must be nonempty");
    StateId q = a.initial;
    for (auto c : stem) {
        if (c >= a.alphabet.size()) throw PreconditionError("letter out of range");
        q = a.delta[q][c];
    }
    std::map<StateId, std::size_t> seen;
    std::vector<std::vector<StateId>> visits;
    while (!seen.count(q)) {
        seen[q] = visits.size();
        auto& vis = visits.emplace_back();
        for (auto c : cycle) {
            if (c >= a.alphabet.size()) throw PreconditionError("letter out of range");
            vis.push_back(q);
            q = a.delta[q][c];
        }
    }
    std::vector<StateId> rec;
    for (auto i = seen[q]; i < visits.size(); i++) rec.insert(rec.end(), visits[i].begin(), visits[i].end());
    return rec;
}

} // namespace

bool
lasso_accepts(const D2pw& a, const std::vector<StateId>& stem, const std::vector<StateId>& cycle)
{
    check_run(a, stem, cycle);
    return max_even(a.prio1, cycle) && max_even(a.prio2, cycle);
}

bool
lasso_accepts(const Dpw& a, const std::vector<StateId>& stem, const std::vector<StateId>& cycle)
{
    check_run(a, stem, cycle);
    return max_even(a.prio, cycle);
}

bool
lasso_accepts(const GameGraph& g, const std::vector<Priority>& prio, const std::vector<VertexId>& stem,
              const std::vector<VertexId>& cycle)
{
    if (cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    std::vector<VertexId> run(stem);
    run.insert(run.end(), cycle.begin(), cycle.end());
    run.push_back(cycle.front());
    for (std::size_t i = 0; i + 1 < run.size(); i++) {
        if (run[i] >= g.size() || !g.has_edge(run[i], run[i + 1])) throw PreconditionError("illegal step in lasso", run[i]);
    }
    return max_even(prio, cycle);
}

bool
word_accepts(const D2pw& a, const std::vector<std::size_t>& stem, const std::vector<std::size_t>& cycle)
{
    auto rec = recurrent_states(a, stem, cycle);
    return max_even(a.prio1, rec) && max_even(a.prio2, rec);
}

bool
word_accepts(const Dpw& a, const std::vector<std::size_t>& stem, const std::vector<std::size_t>& cycle)
{
    return max_even(a.prio, recurrent_states(a, stem, cycle));
}

namespace {

struct RawState
{
    std::uint64_t id;
    std::size_t line;
    bool init = false;
    std::optional<Priority> p1, p2;
    std::vector<std::pair<std::string, std::uint64_t>> edges;
};

std::vector<RawState>
parse_states(std::string_view text, const std::string& header, bool single)
{
    auto decls = detail::split_declarations(text);
    if (decls.empty() || decls[0].tokens != std::vector<std::string>{header, "1"}) {
        throw ParseError("expected header '" + header + " 1;'", decls.empty() ? 0 : decls[0].line);
    }
    std::vector<RawState> out;
    for (std::size_t k = 1; k < decls.size(); k++) {
        auto& t = decls[k].tokens;
        auto line = decls[k].line;
        if (t[0] != "state" || t.size() < 2) throw ParseError("expected 'state <id> ...'", line);
        RawState s;
        s.id = detail::parse_nat(t[1], line);
        s.line = line;
        std::size_t i = 2;
        for (; i < t.size() && t[i] != "on"; i++) {
            if (t[i] == "init") {
                s.init = true;
                continue;
            }
            auto eq = t[i].find('=');
            if (eq == std::string::npos) throw ParseError("unexpected token '" + t[i] + "'", line);
            auto key = t[i].substr(0, eq);
            auto val = static_cast<Priority>(detail::parse_nat(t[i].substr(eq + 1), line));
            if (single && key == "p") s.p1 = val;
            else if (!single && key == "p1") s.p1 = val;
            else if (!single && key == "p2") s.p2 = val;
            else throw ParseError("unknown field '" + key + "'", line);
        }
        while (i < t.size()) {
            if (t[i] != "on" || i + 3 >= t.size() || t[i + 2] != "->") throw ParseError("expected 'on <letter> -> <id>'", line);
            if (!detail::is_ident(t[i + 1])) throw ParseError("letters must be identifiers", line);
            s.edges.emplace_back(t[i + 1], detail::parse_nat(t[i + 3], line));
            i += 4;
        }
        if (!s.p1 || (!single && !s.p2)) throw ValidationError("missing priority", static_cast<VertexId>(s.id));
        out.push_back(std::move(s));
    }
    if (out.empty()) throw ParseError("automaton has no states", decls[0].line);
    return out;
}

template <typename A>
void
fill_table(A& a, const std::vector<RawState>& raw, std::vector<Priority>& p1, std::vector<Priority>* p2)
{
    std::map<std::uint64_t, StateId> dense;
    for (auto& s : raw) {
        if (dense.count(s.id)) throw ValidationError("state declared twice", static_cast<VertexId>(s.id));
        dense[s.id] = 0;
    }
    StateId next = 0;
    for (auto& [id, d] : dense) d = next++;
    std::map<std::string, std::size_t> letters;
    for (auto& s : raw) {
        for (auto& [c, t] : s.edges) {
            if (!letters.count(c)) {
                letters[c] = a.alphabet.size();
                a.alphabet.push_back(c);
            }
        }
    }
    a.delta.assign(raw.size(), std::vector<StateId>(a.alphabet.size(), kNoVertex));
    p1.assign(raw.size(), 0);
    if (p2) p2->assign(raw.size(), 0);
    bool have_init = false;
    for (auto& s : raw) {
        auto q = dense[s.id];
        p1[q] = *s.p1;
        if (p2) (*p2)[q] = *s.p2;
        if (s.init) {
            if (have_init) throw ValidationError("second initial state", static_cast<VertexId>(s.id));
            have_init = true;
            a.initial = q;
        }
        for (auto& [c, t] : s.edges) {
            if (!dense.count(t)) throw ValidationError("transition to unknown state " + std::to_string(t), static_cast<VertexId>(s.id));
            auto& slot = a.delta[q][letters[c]];
            if (slot != kNoVertex) throw ValidationError("nondeterministic on letter " + c, static_cast<VertexId>(s.id));
            slot = dense[t];
        }
    }
    if (!have_init) throw ValidationError("no initial state", 0);
    for (auto& s : raw) {
        for (auto t : a.delta[dense[s.id]]) {
            if (t == kNoVertex) throw ValidationError("transition table incomplete", static_cast<VertexId>(s.id));
        }
    }
}

template <typename A, typename F>
std::string
write_states(const A& a, const std::string& header, F&& fields)
{
    std::ostringstream os;
    os << header << " 1;\n";
    for (StateId q = 0; q < a.size(); q++) {
        os << "state " << q;
        if (q == a.initial) os << " init";
        os << fields(q);
        for (std::size_t c = 0; c < a.alphabet.size(); c++) os << " on " << a.alphabet[c] << " -> " << a.delta[q][c];
        os << ";\n";
    }
    return os.str();
}

} // namespace

D2pw
parse_d2pw(std::string_view text)
{
    auto raw = parse_states(text, "d2pw", false);
    D2pw a;
    fill_table(a, raw, a.prio1, &a.prio2);
    a.validate();
    return a;
}

Dpw
parse_dpw(std::string_view text)
{
    auto raw = parse_states(text, "dpw", true);
    Dpw a;
    fill_table(a, raw, a.prio, nullptr);
    a.validate();
    return a;
}

std::string
to_text(const D2pw& a)
{
    return write_states(a, "d2pw", [&](StateId q) {
        return " p1=" + std::to_string(a.prio1[q]) + " p2=" + std::to_string(a.prio2[q]);
    });
}

std::string
to_text(const Dpw& a)
{
    return write_states(a, "dpw", [&](StateId q) { return " p=" + std::to_string(a.prio[q]); });
}

} // namespace sas
