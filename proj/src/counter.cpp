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

// Counter-switching strategy: play the almost-sure strategy of the
// conjunction, and switch to the attractor / subgame strategy after seeing
// too long a run of a single odd priority.

#include <set>
#include <stdexcept>

#include "sas/game_io.hpp"
#include "sas/strategy.hpp"
#include "strategy_internal.hpp"

namespace sas {

struct CounterStrategy::Node
{
    TraceNode::Kind kind = TraceNode::Kind::Base;
    GameGraph graph;
    std::vector<Priority> prio1;
    std::vector<VertexId> origin;
    Priority d = 0;

    // even: sigma_AS on the product, sure attractor on A, sub machine on B = V \ A
    std::vector<Priority> odd;
    std::shared_ptr<const ProductArena> product;
    std::shared_ptr<const ParitySolution> product_solution;
    VertexSet A;
    std::vector<VertexId> attr;
    std::vector<std::uint32_t> rank;
    std::shared_ptr<const Node> sub;
    std::vector<VertexId> sub_of, sub_to;

    // odd: c1 on W1', attractor on B \ W1', c2 on V \ B
    VertexSet w1p, mid;
    std::shared_ptr<const Node> c1, c2;
    std::vector<VertexId> c1_of, c1_to, c2_of, c2_to;

    std::size_t size() const { return graph.size(); }
};

namespace {

using Node = CounterStrategy::Node;

void
fill_maps(std::vector<VertexId>& of, std::vector<VertexId>& to, std::size_t n, std::size_t child_n,
          const std::function<VertexId(VertexId)>& child_to_node)
{
    of.assign(n, kNoVertex);
    to.assign(child_n, kNoVertex);
    for (VertexId c = 0; c < child_n; c++) {
        auto v = child_to_node(c);
        to[c] = v;
        if (v != kNoVertex) of[v] = c;
    }
}

std::shared_ptr<const Node>
build(const TraceNode& t)
{
    detail::require_all_winning(t);
    auto node = std::make_shared<Node>();
    node->kind = t.kind;
    node->graph = t.game.graph;
    node->prio1 = t.game.prio1;
    node->origin = t.game.origin;
    node->d = t.d;
    const auto n = t.game.size();
    if (t.kind == TraceNode::Kind::Base) return node;

    if (t.kind == TraceNode::Kind::Even) {
        if (t.w_as.count() != n) throw std::logic_error("winning even node with a smaller almost-sure region");
        const auto& W = t.work_map.to_parent;
        std::set<Priority> odd;
        for (VertexId v = 0; v < n; v++) {
            if (!t.game.is_sink(v) && t.game.prio1[v] % 2 == 1) odd.insert(t.game.prio1[v]);
        }
        node->odd.assign(odd.begin(), odd.end());
        node->product = t.product;
        node->product_solution = t.product_solution;
        node->A = VertexSet(n);
        node->attr.assign(n, kNoVertex);
        node->rank.assign(n, kNoRank);
        for (auto w : t.A) {
            node->A.insert(W[w]);
            node->rank[W[w]] = t.a_attr.rank[w];
            if (t.a_attr.strategy[w] != kNoVertex) node->attr[W[w]] = W[t.a_attr.strategy[w]];
        }
        if (t.first) {
            node->sub = build(*t.first);
            const auto& F = t.first_map.to_parent;
            fill_maps(node->sub_of, node->sub_to, n, F.size(), [&](VertexId c) { return F[c] == kNoVertex ? kNoVertex : W[F[c]]; });
        }
        return node;
    }

    node->w1p = t.first_w1;
    node->mid = t.B - t.first_w1;
    node->attr = t.b_attr.strategy;
    auto res = detail::resolve_first_winning(t);
    node->c1 = build(*res.result.trace);
    const auto& F = t.first_map.to_parent;
    const auto& R = res.map.to_parent;
    fill_maps(node->c1_of, node->c1_to, n, R.size(), [&](VertexId c) { return F[R[c]]; });
    node->c2 = build(*t.second);
    const auto& S = t.second_map.to_parent;
    fill_maps(node->c2_of, node->c2_to, n, S.size(), [&](VertexId c) { return S[c]; });
    return node;
}

class NodeMachine
{
  public:
    virtual ~NodeMachine() = default;
    virtual void reset() = 0;
    virtual StepInfo step(VertexId v) = 0;
};

std::unique_ptr<NodeMachine> instantiate(const Node& node, const Schedule& schedule);

class BaseMachine : public NodeMachine
{
  public:
    void reset() override { }
    StepInfo step(VertexId) override { return {}; }
};

class EvenMachine : public NodeMachine
{
  public:
    EvenMachine(const Node& node, const Schedule& schedule) : n_(node), schedule_(schedule)
    {
        if (n_.sub) sub_ = instantiate(*n_.sub, schedule);
        reset();
    }

    void reset() override
    {
        x_ = kNoVertex;
        unlucky_ = false;
        in_b_ = false;
        count_.assign(n_.odd.size(), 0);
        pure_.assign(n_.odd.size(), true);
        phase_.assign(n_.odd.size(), Natural(0));
        horizon_.assign(n_.odd.size(), schedule_.horizon(0));
        if (sub_) sub_->reset();
    }

    StepInfo step(VertexId v) override
    {
        const auto& P = *n_.product;
        if (x_ == kNoVertex) {
            x_ = P.root[v];
        } else {
            int i = n_.graph.succ_index(P.base[x_], v);
            if (i < 0) throw PreconditionError("illegal transition fed to strategy machine", n_.origin[v]);
            x_ = P.graph.succ(x_)[i];
        }
        if (x_ == kNoVertex) throw std::logic_error("product state missing");

        const Priority pv = n_.prio1[v];
        for (std::size_t k = 0; k < n_.odd.size(); k++) {
            if (pv >= n_.odd[k] && count_[k] < horizon_[k]) {
                count_[k]++;
                pure_[k] = pure_[k] && pv == n_.odd[k];
            }
        }

        // the sub machine sees the longest suffix inside B
        StepInfo sub_info;
        const bool in_b = !n_.A.contains(v);
        if (in_b) {
            if (!in_b_) sub_->reset();
            sub_info = sub_->step(n_.sub_of[v]);
        }
        in_b_ = in_b;

        StepInfo info;
        info.in_a = !in_b;
        info.a_rank = in_b ? 0 : n_.rank[v];
        info.at_top = pv == n_.d;
        if (pv == n_.d) {
            unlucky_ = false;
        } else if (!unlucky_) {
            for (std::size_t k = 0; k < n_.odd.size(); k++) {
                if (count_[k] < horizon_[k]) continue;
                if (pure_[k]) {
                    unlucky_ = true;
                    info.unlucky_set = true;
                }
                phase_[k] += 1;
                horizon_[k] = schedule_.horizon(phase_[k]);
                count_[k] = 0;
                pure_[k] = true;
            }
        }
        info.unlucky = unlucky_;

        if (n_.graph.owner(v) != Owner::P1) return info;
        if (!unlucky_) {
            auto y = n_.product_solution->sigma1[x_];
            if (y == kNoVertex) throw std::logic_error("almost-sure product strategy undefined on a reached state");
            info.move = P.base[y];
        } else if (in_b) {
            auto c = sub_info.move;
            info.move = c == kNoVertex ? kNoVertex : n_.sub_to[c];
        } else {
            info.move = n_.attr[v];
        }
        if (info.move == kNoVertex) throw std::logic_error("counter strategy has no move");
        return info;
    }

  private:
    const Node& n_;
    const Schedule& schedule_;
    std::unique_ptr<NodeMachine> sub_;
    VertexId x_ = kNoVertex;
    bool unlucky_ = false;
    bool in_b_ = false;
    std::vector<std::uint64_t> count_;
    std::vector<bool> pure_;
    std::vector<Natural> phase_;
    std::vector<std::uint64_t> horizon_;
};

class OddMachine : public NodeMachine
{
  public:
    OddMachine(const Node& node, const Schedule& schedule)
        : n_(node), c1_(instantiate(*node.c1, schedule)), c2_(instantiate(*node.c2, schedule))
    {
        reset();
    }

    void reset() override
    {
        last_ = 0;
        c1_->reset();
        c2_->reset();
    }

    StepInfo step(VertexId v) override
    {
        StepInfo info;
        int region = n_.w1p.contains(v) ? 1 : n_.mid.contains(v) ? 2 : 3;
        if (region == 1) {
            if (last_ != 1) c1_->reset();
            info = c1_->step(n_.c1_of[v]);
            if (info.move != kNoVertex) info.move = n_.c1_to[info.move];
        } else if (region == 3) {
            if (last_ != 3) c2_->reset();
            info = c2_->step(n_.c2_of[v]);
            if (info.move != kNoVertex) info.move = n_.c2_to[info.move];
        } else if (n_.graph.owner(v) == Owner::P1) {
            info.move = n_.attr[v];
        }
        last_ = region;
        info.in_a = false;
        info.at_top = false;
        info.a_rank = 0;
        if (n_.graph.owner(v) == Owner::P1 && info.move == kNoVertex) throw std::logic_error("counter strategy has no move");
        return info;
    }

  private:
    const Node& n_;
    std::unique_ptr<NodeMachine> c1_, c2_;
    int last_ = 0;
};

std::unique_ptr<NodeMachine>
instantiate(const Node& node, const Schedule& schedule)
{
    switch (node.kind) {
    case TraceNode::Kind::Even: return std::make_unique<EvenMachine>(node, schedule);
    case TraceNode::Kind::Odd: return std::make_unique<OddMachine>(node, schedule);
    default: return std::make_unique<BaseMachine>();
    }
}

class TopMachine : public Machine
{
  public:
    TopMachine(std::shared_ptr<const Node> root, Schedule schedule, std::size_t n)
        : root_(std::move(root)), schedule_(std::move(schedule)), n_(n), m_(instantiate(*root_, schedule_))
    {
    }
    void reset() override { m_->reset(); }
    StepInfo step(VertexId v) override
    {
        if (v >= n_) throw PreconditionError("vertex out of range", v);
        return m_->step(v);
    }

  private:
    std::shared_ptr<const Node> root_;
    Schedule schedule_;
    std::size_t n_;
    std::unique_ptr<NodeMachine> m_;
};

nlohmann::json
ids(const Node& node, const VertexSet& s)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto v : s) {
        if (node.origin[v] == kNoVertex) out.push_back("sink");
        else out.push_back(node.origin[v]);
    }
    return out;
}

nlohmann::json
moves(const Node& node, const std::vector<VertexId>& choice)
{
    nlohmann::json out = nlohmann::json::array();
    for (VertexId v = 0; v < choice.size(); v++) {
        if (choice[v] != kNoVertex && node.graph.owner(v) == Owner::P1) out.push_back({node.origin[v], node.origin[choice[v]]});
    }
    return out;
}

nlohmann::json
node_json(const Node& node)
{
    nlohmann::json j;
    j["d"] = node.d;
    if (node.kind == TraceNode::Kind::Base) {
        j["kind"] = "base";
        return j;
    }
    if (node.kind == TraceNode::Kind::Even) {
        j["kind"] = "even";
        j["odd_priorities"] = node.odd;
        j["A"] = ids(node, node.A);
        j["attractor"] = moves(node, node.attr);
        const auto& P = *node.product;
        nlohmann::json as = nlohmann::json::array();
        for (VertexId x = 0; x < P.graph.size(); x++) {
            auto y = node.product_solution->sigma1[x];
            if (P.graph.owner(x) != Owner::P1 || y == kNoVertex) continue;
            auto r = P.registers(x);
            as.push_back({{"vertex", node.origin[P.base[x]]}, {"registers", std::vector<Priority>(r.begin(), r.end())},
                          {"move", node.origin[P.base[y]]}});
        }
        j["product_states"] = P.graph.size();
        j["sigma_as"] = std::move(as);
        if (node.sub) j["sub"] = node_json(*node.sub);
        return j;
    }
    j["kind"] = "odd";
    j["w1_first"] = ids(node, node.w1p);
    j["attractor_region"] = ids(node, node.mid);
    j["attractor"] = moves(node, node.attr);
    j["first"] = node_json(*node.c1);
    j["second"] = node_json(*node.c2);
    return j;
}

} // namespace

CounterStrategy::CounterStrategy(std::shared_ptr<const Node> root, Schedule schedule, std::size_t n)
    : root_(std::move(root)), schedule_(std::move(schedule)), n_(n)
{
}

std::unique_ptr<Machine>
CounterStrategy::make_machine() const
{
    return std::make_unique<TopMachine>(root_, schedule_, n_);
}

nlohmann::json
CounterStrategy::to_json() const
{
    return {{"schema", 1}, {"kind", "counter"}, {"player", "p1"}, {"vertices", n_}, {"schedule", schedule_.describe()}, {"root", node_json(*root_)}};
}

CounterStrategy
synth_counter_strategy(const StochasticGame& g, const TraceNode& trace, const Schedule& schedule)
{
    if (trace.game.size() != g.size() || trace.game.graph != g.graph() || trace.game.prio1 != g.prio1() ||
        trace.game.prio2 != g.prio2()) {
        throw PreconditionError("trace was computed for a different game");
    }
    if (trace.w1.count() != g.size()) {
        throw PreconditionError("counter strategy needs a game that is winning everywhere; restrict to the winning region first");
    }
    return CounterStrategy(build(trace), schedule, g.size());
}

} // namespace sas
