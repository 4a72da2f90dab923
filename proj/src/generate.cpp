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

#include "sas/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "random_util.hpp"

namespace sas {

using detail::uniform_below;

StochasticGame
random_game(const RandomGameParams& p, std::uint64_t seed)
{
    if (p.n == 0 || p.branching == 0) throw PreconditionError("random games need at least one vertex and one successor");
    std::mt19937_64 rng(detail::splitmix64(seed));
    GameBuilder b;
    std::vector<Owner> owners(p.n);
    for (std::size_t v = 0; v < p.n; v++) {
        if (uniform_below(rng, 1000) < p.random_permille) owners[v] = Owner::Random;
        else owners[v] = uniform_below(rng, 2) ? Owner::P2 : Owner::P1;
        b.add_vertex(owners[v], static_cast<Priority>(uniform_below(rng, p.d1 + 1)), static_cast<Priority>(uniform_below(rng, p.d2 + 1)));
    }
    std::vector<VertexId> pool(p.n);
    for (VertexId v = 0; v < p.n; v++) {
        auto k = 1 + uniform_below(rng, std::min<std::uint64_t>(p.branching, p.n));
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < k; i++) std::swap(pool[i], pool[i + uniform_below(rng, p.n - i)]);
        std::vector<std::uint64_t> w(k);
        std::uint64_t total = 0;
        for (auto& x : w) total += x = 1 + uniform_below(rng, 3);
        for (std::size_t i = 0; i < k; i++) {
            if (owners[v] == Owner::Random) b.add_edge(v, pool[i], Rational(w[i], total));
            else b.add_edge(v, pool[i]);
        }
    }
    return std::move(b).build();
}

D2pw
random_d2pw(std::size_t states, std::size_t letters, Priority d1, Priority d2, std::uint64_t seed)
{
    if (states == 0 || letters == 0 || letters > 26) throw PreconditionError("bad automaton dimensions");
    std::mt19937_64 rng(detail::splitmix64(seed));
    D2pw a;
    for (std::size_t c = 0; c < letters; c++) a.alphabet.push_back(std::string(1, static_cast<char>('a' + c)));
    a.delta.assign(states, std::vector<StateId>(letters));
    for (std::size_t q = 0; q < states; q++) {
        a.prio1.push_back(static_cast<Priority>(uniform_below(rng, d1 + 1)));
        a.prio2.push_back(static_cast<Priority>(uniform_below(rng, d2 + 1)));
        for (auto& t : a.delta[q]) t = static_cast<StateId>(uniform_below(rng, states));
    }
    return a;
}

namespace {

struct Option
{
    Owner owner;
    VertexId a, b; // b == kNoVertex for a single successor
};

std::uint32_t
code(const Option& o, const std::vector<VertexId>& perm)
{
    VertexId x = perm[o.a], y = o.b == kNoVertex ? 15 : perm[o.b];
    if (o.b != kNoVertex && y < x) std::swap(x, y);
    return static_cast<std::uint32_t>(o.owner) * 256 + x * 16 + y;
}

} // namespace

void
for_each_shape(std::size_t n, unsigned max_random, const std::function<void(const Shape&)>& f)
{
    if (n == 0 || n > 8) throw PreconditionError("shape enumeration supports 1 to 8 vertices");
    std::vector<Option> opts;
    for (VertexId a = 0; a < n; a++) opts.push_back({Owner::P1, a, kNoVertex});
    for (VertexId a = 0; a < n; a++) {
        for (VertexId b = a + 1; b < n; b++) {
            for (auto o : {Owner::P1, Owner::P2, Owner::Random}) opts.push_back({o, a, b});
        }
    }
    std::vector<std::vector<VertexId>> perms;
    std::vector<VertexId> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<std::size_t> pick(n, 0);
    std::vector<std::uint32_t> base(n), other(n);
    while (true) {
        unsigned randoms = 0;
        for (auto i : pick) randoms += opts[i].owner == Owner::Random;
        if (randoms <= max_random) {
            for (VertexId v = 0; v < n; v++) base[v] = code(opts[pick[v]], perms[0]);
            bool canonical = true;
            for (std::size_t k = 1; k < perms.size() && canonical; k++) {
                const auto& q = perms[k];
                for (VertexId v = 0; v < n; v++) other[q[v]] = code(opts[pick[v]], q);
                if (other < base) canonical = false;
            }
            if (canonical) {
                Shape s;
                for (VertexId v = 0; v < n; v++) {
                    const auto& o = opts[pick[v]];
                    s.owner.push_back(o.owner);
                    s.succ.push_back(o.b == kNoVertex ? std::vector<VertexId>{o.a} : std::vector<VertexId>{o.a, o.b});
                }
                f(s);
            }
        }
        std::size_t i = 0;
        while (i < n && ++pick[i] == opts.size()) pick[i++] = 0;
        if (i == n) break;
    }
}

std::vector<Priority>
compress_priorities(const std::vector<Priority>& prio)
{
    std::set<Priority> used(prio.begin(), prio.end());
    std::vector<std::pair<Priority, Priority>> rename;
    for (auto p : used) {
        Priority q;
        if (rename.empty()) q = p % 2;
        else if (rename.back().first % 2 == p % 2) q = rename.back().second;
        else q = rename.back().second + 1;
        rename.emplace_back(p, q);
    }
    std::vector<Priority> out;
    for (auto p : prio) out.push_back(std::lower_bound(rename.begin(), rename.end(), std::make_pair(p, Priority(0)))->second);
    return out;
}

void
for_each_compressed_priorities(std::size_t n, Priority max_prio, const std::function<void(const std::vector<Priority>&)>& f)
{
    std::vector<Priority> v(n, 0);
    while (true) {
        if (compress_priorities(v) == v) f(v);
        std::size_t i = 0;
        while (i < n && ++v[i] > max_prio) v[i++] = 0;
        if (i == n) break;
    }
}

StochasticGame
game_from_shape(const Shape& s, const std::vector<Priority>& prio1, const std::vector<Priority>& prio2)
{
    GameBuilder b;
    for (VertexId v = 0; v < s.owner.size(); v++) b.add_vertex(s.owner[v], prio1[v], prio2[v]);
    for (VertexId v = 0; v < s.owner.size(); v++) {
        for (auto u : s.succ[v]) {
            if (s.owner[v] == Owner::Random) b.add_edge(v, u, Rational(1, static_cast<int>(s.succ[v].size())));
            else b.add_edge(v, u);
        }
    }
    return std::move(b).build();
}

std::string
to_dot(const StochasticGame& g, const VertexSet* w1, const std::vector<VertexId>* choice)
{
    std::ostringstream os;
    os << "digraph game {\n  node [fontname=\"Helvetica\"];\n";
    for (VertexId v = 0; v < g.size(); v++) {
        const char* shape = g.owner(v) == Owner::P1 ? "circle" : g.owner(v) == Owner::P2 ? "box" : "diamond";
        std::string name = g.label(v).empty() ? std::to_string(v) : g.label(v);
        os << "  v" << v << " [shape=" << shape << ", label=\"" << name << "\\n(" << g.prio1(v) << "," << g.prio2(v) << ")\"";
        if (w1 && w1->contains(v)) os << ", style=filled, fillcolor=lightgray";
        os << "];\n";
    }
    for (VertexId v = 0; v < g.size(); v++) {
        auto s = g.succ(v);
        for (std::size_t i = 0; i < s.size(); i++) {
            os << "  v" << v << " -> v" << s[i];
            std::vector<std::string> attrs;
            if (g.owner(v) == Owner::Random) {
                std::ostringstream p;
                p << "label=\"" << numerator(g.probs(v)[i]) << "/" << denominator(g.probs(v)[i]) << "\"";
                attrs.push_back(p.str());
            }
            if (choice && v < choice->size() && (*choice)[v] == s[i]) attrs.push_back("penwidth=2.5");
            if (!attrs.empty()) {
                os << " [";
                for (std::size_t k = 0; k < attrs.size(); k++) os << (k ? ", " : "") << attrs[k];
                os << "]";
            }
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace sas
