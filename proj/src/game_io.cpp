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

#include "sas/game_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include "text_util.hpp"

namespace sas {

namespace {

struct RawEdge
{
    std::uint64_t to;
    std::optional<Rational> prob;
};

struct RawVertex
{
    std::uint64_t id;
    std::size_t line;
    std::optional<Owner> owner;
    std::optional<Priority> p1, p2;
    bool has_succ = false;
    std::vector<RawEdge> succ;
    std::string label;
};

Rational
parse_prob(std::string_view s, std::size_t line)
{
    auto slash = s.find('/');
    auto num = s.substr(0, slash);
    auto den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw ParseError("malformed probability '" + std::string(s) + "'", line);
    boost::multiprecision::cpp_int n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator", line);
    return Rational(n, d);
}

} // namespace

StochasticGame
parse_game(std::string_view text)
{
    auto decls = detail::split_declarations(text);
    if (decls.empty()) throw ParseError("empty document", 0);
    if (decls[0].tokens != std::vector<std::string>{"spg", "1"}) throw ParseError("expected header 'spg 1;'", decls[0].line);

    std::vector<RawVertex> raw;
    std::map<std::uint64_t, std::size_t> by_id;
    for (std::size_t k = 1; k < decls.size(); k++) {
        auto& d = decls[k];
        auto& t = d.tokens;
        if (t[0] != "vertex") throw ParseError("unknown declaration '" + t[0] + "'", d.line);
        if (t.size() < 2) throw ParseError("missing vertex id", d.line);
        RawVertex rv;
        rv.id = detail::parse_nat(t[1], d.line);
        rv.line = d.line;
        for (std::size_t i = 2; i < t.size(); i++) {
            auto eq = t[i].find('=');
            if (eq == std::string::npos) throw ParseError("expected key=value, got '" + t[i] + "'", d.line);
            auto key = t[i].substr(0, eq);
            auto val = t[i].substr(eq + 1);
            if (key == "owner") {
                if (rv.owner) throw ParseError("duplicate owner", d.line);
                if (val == "p1") rv.owner = Owner::P1;
                else if (val == "p2") rv.owner = Owner::P2;
                else if (val == "rand") rv.owner = Owner::Random;
                else throw ParseError("unknown owner '" + val + "'", d.line);
            } else if (key == "p1" || key == "p2") {
                auto& slot = key == "p1" ? rv.p1 : rv.p2;
                if (slot) throw ParseError("duplicate " + key, d.line);
                auto p = detail::parse_nat(val, d.line);
                if (p > 1000000) throw ParseError("priority too large", d.line);
                slot = static_cast<Priority>(p);
            } else if (key == "succ") {
                if (rv.has_succ) throw ParseError("duplicate succ", d.line);
                rv.has_succ = true;
                for (auto& item : detail::split(val, ',')) {
                    auto colon = item.find(':');
                    RawEdge e;
                    e.to = detail::parse_nat(item.substr(0, colon), d.line);
                    if (colon != std::string::npos) e.prob = parse_prob(item.substr(colon + 1), d.line);
                    rv.succ.push_back(std::move(e));
                }
            } else if (key == "label") {
                if (!detail::is_ident(val)) throw ParseError("label must be an identifier", d.line);
                rv.label = val;
            } else {
                throw ParseError("unknown field '" + key + "'", d.line);
            }
        }
        if (by_id.count(rv.id)) throw ValidationError("declared twice", static_cast<VertexId>(rv.id));
        by_id[rv.id] = raw.size();
        raw.push_back(std::move(rv));
    }
    if (raw.empty()) throw ParseError("game has no vertices", decls[0].line);

    // semantic checks against the file's own ids
    for (auto& rv : raw) {
        auto id = static_cast<VertexId>(rv.id);
        if (!rv.owner) throw ValidationError("missing owner", id);
        if (!rv.p1 || !rv.p2) throw ValidationError("missing priority", id);
        if (!rv.has_succ || rv.succ.empty()) throw ValidationError("no successor", id);
        Rational sum = 0;
        for (auto& e : rv.succ) {
            if (!by_id.count(e.to)) throw ValidationError("dangling successor " + std::to_string(e.to), id);
            if (*rv.owner == Owner::Random) {
                if (!e.prob) throw ValidationError("missing probability on random vertex", id);
                if (*e.prob <= 0) throw ValidationError("probability must be positive", id);
                sum += *e.prob;
            } else if (e.prob) {
                throw ValidationError("probability annotation on a non-random vertex", id);
            }
        }
        if (*rv.owner == Owner::Random && sum != 1) throw ValidationError("probabilities sum to " + sum.str() + ", not 1", id);
    }

    std::map<std::uint64_t, VertexId> dense;
    for (auto& [id, idx] : by_id) dense[id] = static_cast<VertexId>(dense.size());
    std::vector<std::size_t> order;
    for (auto& [id, idx] : by_id) order.push_back(idx);

    GameBuilder b;
    for (auto idx : order) b.add_vertex(*raw[idx].owner, *raw[idx].p1, *raw[idx].p2, raw[idx].label);
    for (auto idx : order) {
        auto v = dense[raw[idx].id];
        for (auto& e : raw[idx].succ) b.add_edge(v, dense[e.to], e.prob.value_or(Rational(0)));
    }
    try {
        return std::move(b).build();
    } catch (const ValidationError& e) {
        // report with the file's id
        throw ValidationError(std::string(e.what()).substr(std::string(e.what()).find(':') + 2),
                              static_cast<VertexId>(raw[order[e.vertex()]].id));
    }
}

namespace {

std::string
prob_text(const Rational& p)
{
    return boost::multiprecision::numerator(p).str() + "/" + boost::multiprecision::denominator(p).str();
}

} // namespace

std::string
to_spg(const StochasticGame& g)
{
    std::ostringstream os;
    os << "spg 1;\n";
    for (VertexId v = 0; v < g.size(); v++) {
        os << "vertex " << v << " owner=" << owner_name(g.owner(v)) << " p1=" << g.prio1(v) << " p2=" << g.prio2(v) << " succ=";
        auto s = g.succ(v);
        for (std::size_t i = 0; i < s.size(); i++) {
            if (i) os << ',';
            os << s[i];
            if (g.owner(v) == Owner::Random) os << ':' << prob_text(g.probs(v)[i]);
        }
        if (!g.label(v).empty()) os << " label=" << g.label(v);
        os << ";\n";
    }
    return os.str();
}

nlohmann::json
game_to_json(const StochasticGame& g)
{
    nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
    for (VertexId v = 0; v < g.size(); v++) {
        nlohmann::json jv = {{"id", v}, {"owner", owner_name(g.owner(v))}, {"prio1", g.prio1(v)}, {"prio2", g.prio2(v)}};
        if (!g.label(v).empty()) jv["label"] = g.label(v);
        if (g.is_sink(v)) jv["sink"] = true;
        vs.push_back(std::move(jv));
        auto s = g.succ(v);
        for (std::size_t i = 0; i < s.size(); i++) {
            nlohmann::json je = {{"from", v}, {"to", s[i]}};
            if (g.owner(v) == Owner::Random) je["prob"] = prob_text(g.probs(v)[i]);
            es.push_back(std::move(je));
        }
    }
    return {{"schema", 1}, {"vertices", vs}, {"edges", es}};
}

StochasticGame
game_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("schema").get<int>() != 1) throw ParseError("unsupported schema", 0);
        GameBuilder b;
        const auto& vs = j.at("vertices");
        for (std::size_t i = 0; i < vs.size(); i++) {
            const auto& jv = vs[i];
            if (jv.at("id").get<std::size_t>() != i) throw ParseError("vertex ids must be dense and ordered", 0);
            auto os = jv.at("owner").get<std::string>();
            Owner o = os == "p1" ? Owner::P1 : os == "p2" ? Owner::P2 : os == "rand" ? Owner::Random
                                                                                       : throw ParseError("unknown owner " + os, 0);
            b.add_vertex(o, jv.at("prio1").get<Priority>(), jv.at("prio2").get<Priority>(), jv.value("label", std::string()));
            if (jv.value("sink", false)) b.mark_sink(static_cast<VertexId>(i));
        }
        for (const auto& je : j.at("edges")) {
            auto from = je.at("from").get<VertexId>();
            auto to = je.at("to").get<VertexId>();
            if (from >= vs.size()) throw ParseError("edge from unknown vertex", 0);
            Rational p = 0;
            if (je.contains("prob")) p = parse_prob(je.at("prob").get<std::string>(), 0);
            b.add_edge(from, to, p);
        }
        return std::move(b).build();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed game JSON: ") + e.what(), 0);
    }
}

nlohmann::json
region_to_json(const VertexSet& s)
{
    return s.to_vector();
}

VertexSet
region_from_json(const nlohmann::json& j, std::size_t universe)
{
    VertexSet s(universe);
    if (!j.is_array()) throw ParseError("region must be an array of ids", 0);
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw ParseError("region ids must be naturals", 0);
        auto v = x.get<std::uint64_t>();
        if (v >= universe) throw ParseError("region id " + std::to_string(v) + " out of range", 0);
        s.insert(static_cast<VertexId>(v));
    }
    return s;
}

std::string
sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; i++) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

} // namespace sas
