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

#include <limits>
#include <random>
#include <thread>

#include <openssl/evp.h>

#include "random_util.hpp"
#include "sas/strategy.hpp"

namespace sas {

namespace {

using detail::splitmix64;
using detail::uniform_below;

// Random vertex: successors with cumulative weights over a common denominator.
struct Sampler
{
    std::uint64_t total = 0;
    std::vector<std::uint64_t> cumulative;
};

std::vector<Sampler>
build_samplers(const StochasticGame& g)
{
    std::vector<Sampler> out(g.size());
    for (VertexId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Owner::Random) continue;
        Natural l = 1;
        for (auto& p : g.probs(v)) l = boost::multiprecision::lcm(l, Natural(denominator(p)));
        if (l > std::numeric_limits<std::uint64_t>::max()) throw PreconditionError("probability denominators too large to sample", v);
        auto& s = out[v];
        s.total = static_cast<std::uint64_t>(l);
        Natural acc = 0;
        for (auto& p : g.probs(v)) {
            acc += numerator(p) * (l / denominator(p));
            s.cumulative.push_back(static_cast<std::uint64_t>(acc));
        }
    }
    return out;
}

class Digest
{
  public:
    Digest() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
    ~Digest() { EVP_MD_CTX_free(ctx_); }
    Digest(const Digest&) = delete;
    Digest& operator=(const Digest&) = delete;

    void add(VertexId v)
    {
        for (int k = 0; k < 4; k++) buf_[len_++] = static_cast<unsigned char>(v >> (8 * k));
        if (len_ == sizeof buf_) flush();
    }
    std::string hex()
    {
        flush();
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int n = 0;
        EVP_DigestFinal_ex(ctx_, md, &n);
        static const char* digits = "0123456789abcdef";
        std::string s;
        for (unsigned i = 0; i < n; i++) {
            s += digits[md[i] >> 4];
            s += digits[md[i] & 15];
        }
        return s;
    }

  private:
    void flush()
    {
        EVP_DigestUpdate(ctx_, buf_, len_);
        len_ = 0;
    }
    EVP_MD_CTX* ctx_;
    unsigned char buf_[4096];
    std::size_t len_ = 0;
};

struct Partial
{
    RunStats run;
    std::vector<std::uint64_t> visits1, visits2;
};

Partial
one_run(const StochasticGame& g, const std::vector<Sampler>& samplers, Machine& m,
        const std::optional<MemorylessStrategy>& adversary, const SimulationOptions& opt, std::uint64_t seed)
{
    Partial out;
    out.run.seed = seed;
    out.visits1.assign(max_priority(g.prio1()) + 1, 0);
    out.visits2.assign(max_priority(g.prio2()) + 1, 0);
    std::mt19937_64 rng(seed);
    Digest digest;
    m.reset();

    const auto n = g.size();
    VertexId v = opt.start;
    std::uint32_t prev_rank = 0;
    bool prev_tracked = false;
    std::uint64_t streak = 0;
    for (std::uint64_t t = 0; t < opt.steps; t++) {
        digest.add(v);
        out.visits1[g.prio1(v)]++;
        out.visits2[g.prio2(v)]++;
        auto info = m.step(v);
        if (info.unlucky_set) {
            out.run.unlucky++;
            if (opt.late_after == 0 || t > opt.late_after) out.run.unlucky_events.push_back(t);
            if (t > opt.late_after) out.run.late_unlucky++;
        }
        // after a switch, the attractor must bring the play down to the top priority
        bool tracked = info.unlucky && info.in_a && !info.at_top;
        if (tracked) {
            streak++;
            if ((prev_tracked && info.a_rank >= prev_rank) || streak > n) out.run.structural_violations++;
            prev_rank = info.a_rank;
        } else {
            streak = 0;
        }
        prev_tracked = tracked;

        VertexId next;
        auto succ = g.succ(v);
        switch (g.owner(v)) {
        case Owner::P1:
            next = info.move;
            if (next == kNoVertex || !g.graph().has_edge(v, next)) throw PreconditionError("strategy gives no legal move", v);
            break;
        case Owner::P2:
            if (adversary && adversary->choice[v] != kNoVertex) next = adversary->choice[v];
            else next = succ[uniform_below(rng, succ.size())];
            break;
        default: {
            const auto& s = samplers[v];
            auto r = uniform_below(rng, s.total);
            std::size_t i = 0;
            while (s.cumulative[i] <= r) i++;
            next = succ[i];
        }
        }
        v = next;
    }
    out.run.digest = digest.hex();
    return out;
}

} // namespace

SimulationStats
simulate(const StochasticGame& g, const std::function<std::unique_ptr<Machine>()>& player1,
         const std::optional<MemorylessStrategy>& adversary, const SimulationOptions& opt)
{
    if (opt.start >= g.size()) throw PreconditionError("start vertex out of range", opt.start);
    if (adversary) adversary->validate(g.graph());
    const auto samplers = build_samplers(g);

    std::vector<Partial> parts(opt.runs);
    auto worker = [&](unsigned id, unsigned jobs) {
        auto m = player1();
        for (std::uint64_t r = id; r < opt.runs; r += jobs) {
            parts[r] = one_run(g, samplers, *m, adversary, opt, splitmix64(opt.seed + r * 0x632BE59BD9B4E019ull));
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::uint64_t>(opt.runs, 1))));
    if (jobs == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(jobs);
        for (unsigned k = 0; k < jobs; k++) {
            pool.emplace_back([&, k] {
                try {
                    worker(k, jobs);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    SimulationStats st;
    st.seed = opt.seed;
    st.visits1.assign(max_priority(g.prio1()) + 1, 0);
    st.visits2.assign(max_priority(g.prio2()) + 1, 0);
    for (auto& p : parts) {
        for (std::size_t k = 0; k < p.visits1.size(); k++) st.visits1[k] += p.visits1[k];
        for (std::size_t k = 0; k < p.visits2.size(); k++) st.visits2[k] += p.visits2[k];
        st.total_unlucky += p.run.unlucky;
        st.runs_with_late_unlucky += p.run.late_unlucky > 0;
        st.structural_violations += p.run.structural_violations;
        st.runs.push_back(std::move(p.run));
    }
    return st;
}

nlohmann::json
SimulationStats::to_json(bool per_run) const
{
    nlohmann::json j = {{"schema", 1},
                        {"seed", seed},
                        {"runs", runs.size()},
                        {"visits_omega1", visits1},
                        {"visits_omega2", visits2},
                        {"unlucky_events", total_unlucky},
                        {"runs_with_late_unlucky", runs_with_late_unlucky},
                        {"structural_violations", structural_violations}};
    if (per_run) {
        nlohmann::json rs = nlohmann::json::array();
        for (auto& r : runs) {
            rs.push_back({{"seed", r.seed},
                          {"digest", r.digest},
                          {"unlucky", r.unlucky},
                          {"unlucky_at", r.unlucky_events},
                          {"late_unlucky", r.late_unlucky},
                          {"structural_violations", r.structural_violations}});
        }
        j["per_run"] = std::move(rs);
    }
    return j;
}

} // namespace sas
