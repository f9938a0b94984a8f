/**************************************************************************
 * sumnet/schemes.hpp
 *
 * Copyright 2026 The sumnet Authors
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
 **************************************************************************/

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sumnet/algebra.hpp"
#include "sumnet/codec.hpp"
#include "sumnet/duality.hpp"
#include "sumnet/error.hpp"
#include "sumnet/network.hpp"
#include "sumnet/search.hpp"

/*
 * Constructive schemes. Each builds a fractional linear code by time-sharing
 * scalar "slot" codes, and verifies the assembled code before returning it.
 *
 * Slot codes come from seeded random linear coding (with an exhaustive
 * linear search as fallback for scalar slots). A failure at the requested
 * field is an error unless escalation is enabled, in which case the whole
 * construction is retried over GF(p^2), GF(p^3), ... up to order 256.
 */

namespace sumnet {

struct SchemeOptions {
    Alphabet field = Alphabet::field(2);
    std::uint64_t seed = 1;
    bool escalate = false;
    std::uint64_t trials = 4096;
    std::uint64_t fallback_budget = 10'000'000;
};

/// One time slot: a scalar code delivering w . (Sum_1, ..., Sum_k) to the recipients.
struct Slot {
    std::vector<Elem> weight;
    std::vector<std::string> recipients;
    LinearCode code;
};

/**
 * Time-sharing plan. Terminal t collects the slots it receives, z_t = Sum W_t,
 * and outputs Sum = z_t P_t where W_t P_t = I_k. P_t is stored in `post`.
 */
struct SlotPlan {
    int k = 2;
    Alphabet field = Alphabet::field(2);
    std::vector<Slot> slots;
    std::map<std::string, FMatrix> post;

    std::string summary() const {
        std::ostringstream os;
        os << "slot  target            recipients\n";
        for (std::size_t j = 0; j < slots.size(); ++j) {
            std::string target;
            for (std::size_t c = 0; c < slots[j].weight.size(); ++c) {
                const Elem w = slots[j].weight[c];
                if (w == 0) continue;
                if (!target.empty()) target += " + ";
                if (w != 1) target += std::to_string(w) + "*";
                target += "Sum" + std::to_string(c + 1);
            }
            std::string who;
            for (const auto& r : slots[j].recipients) who += (who.empty() ? "" : ",") + r;
            os << std::left;
            os.width(6);
            os << (j + 1);
            os.width(18);
            os << target << who << "\n";
        }
        os << "post-combination over " << field.name() << "\n";
        for (const auto& [t, p] : post) {
            os << "  " << t << ":";
            for (std::size_t r = 0; r < p.rows(); ++r) {
                os << " [";
                for (std::size_t c = 0; c < p.cols(); ++c) os << (c ? " " : "") << p(r, c);
                os << "]";
            }
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::optional<Alphabet> next_field(const Alphabet& f) {
    const unsigned p = f.characteristic();
    const unsigned r = f.degree() + 1;
    unsigned q = 1;
    for (unsigned i = 0; i < r; ++i) q *= p;
    if (q > Alphabet::max_field_order) return std::nullopt;
    return Alphabet::field(p, r);
}

/// Runs build(field) at the requested field, then escalates if allowed.
template <class Build>
auto with_escalation(const SchemeOptions& opt, Build build) -> decltype(build(opt.field)) {
    Alphabet f = opt.field;
    std::string last;
    for (;;) {
        try {
            return build(f);
        } catch (const budget_exceeded& e) {
            last = e.what();
        }
        if (!opt.escalate) throw budget_exceeded("construction failed over " + f.name() + ": " + last);
        auto nf = next_field(f);
        if (!nf) throw budget_exceeded("construction failed up to " + f.name() + ": " + last);
        f = *nf;
    }
}

/// Same network, with only `keep` as terminals; other terminals become internal sinks.
inline SumNetwork with_terminals(const SumNetwork& net, const std::vector<std::string>& keep) {
    SumNetwork out = net;
    out.terminals = keep;
    return out;
}

/// Same network, with only `keep` as sources; other sources become internal nodes with no inputs.
inline SumNetwork with_sources(const SumNetwork& net, const std::vector<std::string>& keep) {
    SumNetwork out = net;
    out.sources = keep;
    return out;
}

/// Drops edges that reach no terminal; a code on the result is valid on net unchanged.
inline SumNetwork prune(const SumNetwork& net) {
    const Topology t(net);
    std::vector<bool> useful(t.node_count(), false);
    for (std::size_t v : t.terminals()) {
        auto a = t.ancestors(v);
        for (std::size_t u = 0; u < a.size(); ++u)
            if (a[u]) useful[u] = true;
        useful[v] = true;
    }
    SumNetwork out;
    out.name = net.name;
    out.sources = net.sources;
    out.terminals = net.terminals;
    for (const auto& e : net.edges)
        if (useful[t.node(e.head)]) out.edges.push_back(e);
    for (const auto& v : net.nodes) {
        const bool touched = std::any_of(out.edges.begin(), out.edges.end(), [&](const Edge& e) { return e.tail == v || e.head == v; });
        if (touched || t.is_source(t.node(v)) || t.is_terminal(t.node(v))) out.nodes.push_back(v);
    }
    return out;
}

inline void require_connected(const SumNetwork& net, const std::vector<std::string>& terminals) {
    for (const auto& s : net.sources)
        for (const auto& t : terminals)
            if (min_cut(net, s, t) == 0) throw error("source " + s + " does not reach terminal " + t);
}

/**
 * Scalar code delivering the sum of all sources to `recipients` over field f.
 * Verified on with_terminals(net, recipients). Throws budget_exceeded when
 * neither random coding nor the bounded exhaustive search finds one.
 */
inline LinearCode sum_slot(const SumNetwork& net, const std::vector<std::string>& recipients, const Alphabet& f,
                           const SchemeOptions& opt, std::uint64_t salt) {
    const SumNetwork sub = with_terminals(net, recipients);
    const SumNetwork pruned = prune(sub);
    auto r = search_random_linear(pruned, f, 1, 1, opt.trials, derive_seed(opt.seed, salt));
    if (r.status != SearchStatus::found) r = search_linear(pruned, f, 1, 1, {opt.fallback_budget, 1});
    if (r.status != SearchStatus::found) throw budget_exceeded("no scalar sum code for the recipient set");
    LinearCode code = *r.linear_witness;
    if (!verify_linear(sub, code)) throw error("internal: slot code does not verify on the restricted network");
    return code;
}

/// Multicast of `source` at rate eta over f, other sources silenced.
inline LinearCode multicast_at(const SumNetwork& net, const std::string& source, int eta, const Alphabet& f,
                               const SchemeOptions& opt, std::uint64_t salt) {
    const SumNetwork single = with_sources(net, {source});
    const SumNetwork pruned = prune(single);
    auto r = search_random_linear(pruned, f, eta, 1, opt.trials, derive_seed(opt.seed, salt));
    if (r.status != SearchStatus::found) throw budget_exceeded("random multicast coding failed");
    LinearCode code = *r.linear_witness;
    if (!verify_linear(single, code)) throw error("internal: multicast code does not verify");
    return code;
}

inline Elem scalar(const std::map<KeyPair, FMatrix>& m, const KeyPair& key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second(0, 0);
}

/// Computes post-combination matrices; throws if a terminal's slot weights do not span all k sums.
inline void plan_post(const SumNetwork& net, SlotPlan& plan) {
    const auto uk = static_cast<std::size_t>(plan.k);
    plan.post.clear();
    for (const auto& t : net.terminals) {
        std::vector<std::size_t> mine;
        for (std::size_t j = 0; j < plan.slots.size(); ++j) {
            const auto& r = plan.slots[j].recipients;
            if (std::find(r.begin(), r.end(), t) != r.end()) mine.push_back(j);
        }
        FMatrix w(plan.field, uk, mine.size());
        for (std::size_t c = 0; c < mine.size(); ++c)
            for (std::size_t i = 0; i < uk; ++i) w.set(i, c, plan.slots[mine[c]].weight[i]);
        auto p = mat_solve_right(w, FMatrix::identity(plan.field, uk));
        if (!p) throw error("slot plan does not let terminal " + t + " recover every sum");
        plan.post.emplace(t, *p);
    }
}

}  // namespace detail

/**
 * Block code from a slot plan: slot j occupies coordinate j of every edge
 * symbol. Injection column j is c_j w_j, transitions are diagonal, and a
 * terminal's decoding row j is d_j times row j of its post-combination.
 */
inline LinearCode assemble(const SumNetwork& net, const SlotPlan& plan) {
    const Topology topo(net);
    const auto uk = static_cast<std::size_t>(plan.k);
    const std::size_t l = plan.slots.size();
    const Alphabet& f = plan.field;
    LinearCode out;
    out.k = plan.k;
    out.l = static_cast<int>(l);
    out.field = f;
    for (const auto& s : net.sources)
        for (std::size_t e : topo.out_edges(topo.node(s))) {
            const KeyPair key{s, topo.edge_id(e)};
            FMatrix m(f, uk, l);
            for (std::size_t j = 0; j < l; ++j) {
                const Elem c = detail::scalar(plan.slots[j].code.injection, key);
                for (std::size_t i = 0; i < uk; ++i) m.set(i, j, f.mul(c, plan.slots[j].weight[i]));
            }
            if (!m.is_zero()) out.injection.emplace(key, std::move(m));
        }
    for (const auto& e : net.edges) {
        const std::size_t v = topo.node(e.tail);
        if (topo.is_source(v)) continue;
        for (std::size_t in : topo.in_edges(v)) {
            const KeyPair key{topo.edge_id(in), e.id};
            FMatrix m(f, l, l);
            for (std::size_t j = 0; j < l; ++j) m.set(j, j, detail::scalar(plan.slots[j].code.transition, key));
            if (!m.is_zero()) out.transition.emplace(key, std::move(m));
        }
    }
    for (const auto& t : net.terminals) {
        const FMatrix& p = plan.post.at(t);
        for (std::size_t e : topo.in_edges(topo.node(t))) {
            const KeyPair key{t, topo.edge_id(e)};
            FMatrix m(f, l, uk);
            std::size_t row = 0;
            for (std::size_t j = 0; j < l; ++j) {
                const auto& r = plan.slots[j].recipients;
                if (std::find(r.begin(), r.end(), t) == r.end()) continue;
                const Elem d = detail::scalar(plan.slots[j].code.decoding, key);
                for (std::size_t i = 0; i < uk; ++i) m.set(j, i, f.mul(d, p(row, i)));
                ++row;
            }
            if (!m.is_zero()) out.decoding.emplace(key, std::move(m));
        }
    }
    return out;
}

/// Rate-1 scalar code delivering the sum to terminals t_a and t_b (verified on that sub-problem).
inline LinearCode scheme_two_terminal(const SumNetwork& net, const std::string& t_a, const std::string& t_b,
                                      const SchemeOptions& opt = {}) {
    require_valid(net);
    for (const auto& t : {t_a, t_b})
        if (std::find(net.terminals.begin(), net.terminals.end(), t) == net.terminals.end())
            throw error("'" + t + "' is not a terminal of " + net.name);
    if (t_a == t_b) throw error("scheme_two_terminal needs two distinct terminals");
    detail::require_connected(net, {t_a, t_b});
    return detail::with_escalation(opt, [&](const Alphabet& f) { return detail::sum_slot(net, {t_a, t_b}, f, opt, 0); });
}

namespace detail {

/// Pairs (and for odd counts one triple) of the network's terminals, per the pairing schedule.
inline SlotPlan plan_pairing(const SumNetwork& net, const Alphabet& f, const SchemeOptions& opt) {
    const auto& ts = net.terminals;
    const std::size_t n = ts.size();
    SlotPlan plan;
    plan.k = 2;
    plan.field = f;
    const std::vector<Elem> e1{1, 0}, e2{0, 1}, both{1, 1};
    std::uint64_t salt = 0;
    auto add = [&](std::vector<Elem> w, std::vector<std::string> who) {
        LinearCode c = sum_slot(net, who, f, opt, salt++);
        plan.slots.push_back({std::move(w), std::move(who), std::move(c)});
    };
    const std::size_t pairs = n % 2 == 0 ? n / 2 : (n - 3) / 2;
    for (std::size_t p = 0; p < pairs; ++p) {
        add(e1, {ts[2 * p], ts[2 * p + 1]});
        add(e2, {ts[2 * p], ts[2 * p + 1]});
    }
    if (n % 2 == 1) {
        const std::string& t1 = ts[n - 3];
        const std::string& t2 = ts[n - 2];
        const std::string& t3 = ts[n - 1];
        add(e1, {t1, t2});
        add(e2, {t2, t3});
        add(both, {t1, t3});
    }
    plan_post(net, plan);
    return plan;
}

/// Builds on net directly, or on its reverse and maps back with dual_code.
inline LinearCode oriented(const SumNetwork& net, bool reverse, const SchemeOptions& opt, SlotPlan* plan_out) {
    const SumNetwork work = reverse ? reverse_network(net) : net;
    detail::require_connected(work, work.terminals);
    return with_escalation(opt, [&](const Alphabet& f) {
        SlotPlan plan = plan_pairing(work, f, opt);
        LinearCode code = assemble(work, plan);
        if (!verify_linear(work, code)) throw error("internal: assembled code does not verify");
        if (reverse) code = dual_code(work, code);
        if (plan_out) *plan_out = plan;
        return code;
    });
}

}  // namespace detail

/**
 * (2,3) code for a network with three terminals: Sum1 to {t1,t2}, Sum2 to
 * {t2,t3}, Sum1+Sum2 to {t1,t3}. With three sources and another terminal
 * count, the construction runs on the reverse network and is dualized back.
 * If `plan` is given it receives the slot plan (of the network actually used).
 */
inline LinearCode scheme_three_terminal(const SumNetwork& net, const SchemeOptions& opt = {}, SlotPlan* plan = nullptr) {
    require_valid(net);
    bool reverse = false;
    if (net.n() != 3) {
        if (net.m() != 3) throw error("scheme_three_terminal needs three terminals or three sources");
        reverse = true;
    }
    return detail::oriented(net, reverse, opt, plan);
}

/// (2, min{m,n}) code by pairing terminals (or sources, via the reverse network when m < n).
inline LinearCode scheme_pairing(const SumNetwork& net, const SchemeOptions& opt = {}, SlotPlan* plan = nullptr) {
    require_valid(net);
    if (std::min(net.m(), net.n()) < 2) throw error("scheme_pairing needs at least two sources and two terminals");
    return detail::oriented(net, net.m() < net.n(), opt, plan);
}

/**
 * (eta,1) code multicasting `source` to every terminal, other sources silent.
 * Verified on the network with `source` as its only source.
 */
inline LinearCode scheme_multicast(const SumNetwork& net, const std::string& source, int eta, const SchemeOptions& opt = {}) {
    require_valid(net);
    if (std::find(net.sources.begin(), net.sources.end(), source) == net.sources.end())
        throw error("'" + source + "' is not a source of " + net.name);
    if (eta < 1) throw error("multicast rate must be positive");
    for (const auto& t : net.terminals)
        if (min_cut(net, source, t) < static_cast<std::size_t>(eta))
            throw error("min-cut from " + source + " to " + t + " is below " + std::to_string(eta));
    return detail::with_escalation(opt, [&](const Alphabet& f) { return detail::multicast_at(net, source, eta, f, opt, 0); });
}

/// (eta,1) code for a network with one terminal: multicast on the reverse network, then dualize.
inline LinearCode scheme_one_terminal(const SumNetwork& net, const SchemeOptions& opt = {}) {
    require_valid(net);
    if (net.n() != 1) throw error("scheme_one_terminal needs exactly one terminal");
    const std::size_t eta = min_cut_bound(net);
    if (eta == 0) throw error("min-cut bound is 0: some source does not reach the terminal");
    const SumNetwork rev = reverse_network(net);
    const LinearCode mc = scheme_multicast(rev, rev.sources.front(), static_cast<int>(eta), opt);
    return dual_code(rev, mc);
}

namespace detail {

inline LinearCode halfmincut_direct(const SumNetwork& net, const SchemeOptions& opt) {
    const std::size_t eta = min_cut_bound(net);
    if (eta == 0) throw error("min-cut bound is 0");
    const int k = static_cast<int>(eta);
    return with_escalation(opt, [&](const Alphabet& f) {
        // Slot j is an (eta,1) multicast from source j; it owns coordinate j of each edge symbol.
        const LinearCode slot[2] = {multicast_at(net, net.sources[0], k, f, opt, 0),
                                    multicast_at(net, net.sources[1], k, f, opt, 1)};
        LinearCode out;
        out.k = k;
        out.l = 2;
        out.field = f;
        auto place = [](const FMatrix& m, std::size_t r0, std::size_t c0, FMatrix& into) {
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) into.set(r0 + r, c0 + c, m(r, c));
        };
        for (std::size_t j = 0; j < 2; ++j) {
            for (const auto& [key, m] : slot[j].injection)
                place(m, 0, j, out.injection.try_emplace(key, FMatrix(f, eta, 2)).first->second);
            for (const auto& [key, m] : slot[j].transition)
                place(m, j, j, out.transition.try_emplace(key, FMatrix(f, 2, 2)).first->second);
            for (const auto& [key, m] : slot[j].decoding)
                place(m, j, 0, out.decoding.try_emplace(key, FMatrix(f, 2, eta)).first->second);
        }
        if (!verify_linear(net, out)) throw error("internal: half-min-cut code does not verify");
        return out;
    });
}

}  // namespace detail

/**
 * (eta,2) code for two sources, eta = min-cut bound: each source multicasts
 * its eta symbols in its own slot and terminals add the two slot outputs. For
 * two terminals (and another source count) it runs on the reverse network
 * and dualizes.
 */
inline LinearCode scheme_two_source_halfmincut(const SumNetwork& net, const SchemeOptions& opt = {}) {
    require_valid(net);
    if (net.m() == 2) return detail::halfmincut_direct(net, opt);
    if (net.n() == 2) {
        const SumNetwork rev = reverse_network(net);
        return dual_code(rev, detail::halfmincut_direct(rev, opt));
    }
    throw error("scheme_two_source_halfmincut needs two sources (or two terminals)");
}

}  // namespace sumnet
