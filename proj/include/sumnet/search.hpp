/**************************************************************************
 * sumnet/search.hpp
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
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "sumnet/algebra.hpp"
#include "sumnet/codec.hpp"
#include "sumnet/error.hpp"
#include "sumnet/io.hpp"
#include "sumnet/network.hpp"
#include "sumnet/random.hpp"

/*
 * Existence search for (k,l) codes.
 *
 * Every search enumerates "free slots" (matrices or function tables that are
 * not fixed by a reduction) in a mixed-radix order: slot 0 is the most
 * significant digit and slots are ordered by the topological position of the
 * edge they drive. Terminal decoders are never enumerated; they are derived
 * from the encoders (a linear solve, or the fibers of the received symbols).
 *
 * A terminal's decodability depends only on the slots upstream of it, so it
 * is checked as soon as the last of those slots is assigned. This prunes
 * whole subtrees without discarding any candidate that could succeed.
 *
 * Sound reductions (each keeps at least one solution whenever one exists):
 *
 *  (a) Forwarding normalization. An edge out of a source (when k == l) or out
 *      of an internal node with a single in-edge is fixed to the identity.
 *      The head node can apply any function of that single input itself, so
 *      carrying the raw input loses nothing. An edge out of an internal node
 *      with no in-edges carries a constant, fixed to zero for the same reason.
 *      For linear codes the pushed-down map is again linear.
 *
 *  (b) Decodability prefilter (table search). Let f drive edge e and take raw
 *      source messages from the set U as input. If a terminal t receives only
 *      copies of e's symbol plus raw messages from the set R, and U and R
 *      together cover every source, then f(x) == f(x') is only allowed when x
 *      and x' agree on U and R's common sources and have the same partial sum
 *      over the sources in U but not in R. Otherwise t sees identical inputs
 *      for two tuples with different sums. The surviving functions are
 *      exactly the proper colorings of this conflict graph, enumerated
 *      directly.
 *
 *  (c) Joint check. Surviving combinations are verified by enumerating every
 *      source tuple (table search) or by the transfer-matrix identity (linear
 *      search).
 */

namespace sumnet {

enum class SearchStatus { found, exhausted_none, budget_exceeded };

inline std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted_none: return "exhausted-none";
        case SearchStatus::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

struct SearchOutcome {
    SearchStatus status = SearchStatus::budget_exceeded;
    std::string method;
    std::optional<LinearCode> linear_witness;
    std::optional<TableCode> table_witness;
    /// Search-tree nodes visited (slot assignments), or trials for random search.
    std::uint64_t candidates_examined = 0;
    /// Size of the reduced search space, saturated at 2^64 - 1.
    std::uint64_t space = 0;
    std::uint64_t budget = 0;
    std::optional<std::uint64_t> seed;
    std::string note;
};

inline constexpr std::uint64_t default_linear_search_budget = 1'000'000'000;
inline constexpr std::uint64_t default_table_search_budget = 10'000'000;

struct SearchOptions {
    std::optional<std::uint64_t> budget;
    unsigned jobs = 1;
};

namespace detail {

inline constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > saturated / b) return saturated;
    return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e && r != saturated; ++i) r = sat_mul(r, b);
    return r;
}

struct RangeResult {
    bool found = false;
    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> assignment;
};

template <class State>
bool descend(State& st, const std::vector<std::uint64_t>& radix, const std::vector<std::vector<std::size_t>>& checks_at,
             std::size_t depth, std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& cur, std::uint64_t& nodes,
             const std::atomic<std::size_t>* best, std::size_t me) {
    if (depth == radix.size()) return true;
    const std::uint64_t from = depth == 0 ? lo : 0;
    const std::uint64_t to = depth == 0 ? hi : radix[depth];
    for (std::uint64_t c = from; c < to; ++c) {
        if (depth == 0 && best && best->load(std::memory_order_relaxed) < me) return false;
        st.assign(depth, c);
        cur[depth] = c;
        ++nodes;
        bool ok = true;
        for (std::size_t ti : checks_at[depth + 1])
            if (!st.check(ti)) {
                ok = false;
                break;
            }
        if (ok && descend(st, radix, checks_at, depth + 1, lo, hi, cur, nodes, best, me)) return true;
    }
    return false;
}

struct DriveResult {
    bool found = false;
    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> assignment;
};

/**
 * Runs the backtracking search, splitting slot 0's range into `jobs`
 * contiguous pieces. The lowest-index witness wins and only nodes in pieces
 * up to the winner are counted, so the result does not depend on `jobs`.
 */
template <class MakeState>
DriveResult drive(const std::vector<std::uint64_t>& radix, const std::vector<std::vector<std::size_t>>& checks_at,
                  unsigned jobs, const MakeState& make_state) {
    DriveResult out;
    {
        auto root = make_state();
        for (std::size_t ti : checks_at[0])
            if (!root.check(ti)) return out;
    }
    if (radix.empty()) {
        out.found = true;
        return out;
    }
    const std::uint64_t top = radix[0];
    const std::size_t pieces = static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, top)));
    std::vector<RangeResult> results(pieces);
    std::atomic<std::size_t> best{pieces};
    auto work = [&](std::size_t w) {
        const std::uint64_t lo = top / pieces * w + std::min<std::uint64_t>(w, top % pieces);
        const std::uint64_t hi = lo + top / pieces + (w < top % pieces ? 1 : 0);
        auto st = make_state();
        std::vector<std::uint64_t> cur(radix.size(), 0);
        RangeResult& r = results[w];
        r.found = descend(st, radix, checks_at, 0, lo, hi, cur, r.nodes, pieces > 1 ? &best : nullptr, w);
        if (r.found) {
            r.assignment = cur;
            std::size_t b = best.load();
            while (w < b && !best.compare_exchange_weak(b, w)) {
            }
        }
    };
    if (pieces == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < pieces; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }
    for (std::size_t w = 0; w < pieces; ++w) {
        out.nodes += results[w].nodes;
        if (results[w].found) {
            out.found = true;
            out.assignment = results[w].assignment;
            break;
        }
    }
    return out;
}

/// Slot order and per-terminal check depth, shared by linear and table search.
inline std::vector<std::vector<std::size_t>> check_schedule(const Topology& t, const std::vector<std::size_t>& slot_edge,
                                                            std::vector<std::vector<bool>>& upstream) {
    std::vector<std::vector<std::size_t>> checks_at(slot_edge.size() + 1);
    upstream.clear();
    for (std::size_t ti = 0; ti < t.terminals().size(); ++ti) {
        upstream.push_back(upstream_edges(t, ti));
        std::size_t depth = 0;
        for (std::size_t s = 0; s < slot_edge.size(); ++s)
            if (upstream.back()[slot_edge[s]]) depth = s + 1;
        checks_at[depth].push_back(ti);
    }
    return checks_at;
}

inline std::vector<std::size_t> topo_rank(const Topology& t) {
    std::vector<std::size_t> rank(t.edge_count());
    for (std::size_t i = 0; i < t.edge_order().size(); ++i) rank[t.edge_order()[i]] = i;
    return rank;
}

// ---- linear ------------------------------------------------------------

struct LinearSlot {
    bool injection = false;
    std::size_t edge = 0;
    std::size_t pos = 0;
    std::size_t rows = 0, cols = 0;
};

/// Network, fixed identities from reduction (a), and the free slots.
struct LinearProblem {
    const Topology* topo;
    BoundLinear base;
    std::vector<LinearSlot> slots;
    std::vector<std::uint64_t> radix;
    std::vector<std::vector<bool>> upstream;
    std::vector<std::vector<std::size_t>> checks_at;
    std::uint64_t space = 1;

    LinearProblem(const Topology& t, const Alphabet& f, int k, int l) : topo(&t), base(t, k, l, f) {
        if (!f.is_field()) throw error("linear search needs a field alphabet");
        if (k < 1 || l < 1) throw error("code parameters k, l must be positive");
        const auto uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l);
        for (std::size_t e : t.edge_order()) {
            const std::size_t v = t.tail(e);
            if (t.is_source(v)) {
                if (k == l)
                    base.inj[e] = FMatrix::identity(f, uk);
                else
                    slots.push_back({true, e, 0, uk, ul});
                continue;
            }
            const std::size_t d = t.in_edges(v).size();
            if (d == 1)
                base.trans[e][0] = FMatrix::identity(f, ul);
            else
                for (std::size_t p = 0; p < d; ++p) slots.push_back({false, e, p, ul, ul});
        }
        std::vector<std::size_t> slot_edge;
        for (const auto& s : slots) {
            radix.push_back(sat_pow(f.order(), s.rows * s.cols));
            space = sat_mul(space, radix.back());
            slot_edge.push_back(s.edge);
        }
        checks_at = check_schedule(t, slot_edge, upstream);
    }

    FMatrix matrix(const LinearSlot& s, std::uint64_t c) const {
        const unsigned q = base.field.order();
        std::vector<Elem> data(s.rows * s.cols);
        for (auto& x : data) {
            x = static_cast<Elem>(c % q);
            c /= q;
        }
        return FMatrix(base.field, s.rows, s.cols, std::move(data));
    }

    void set(BoundLinear& b, std::size_t slot, FMatrix m) const {
        const LinearSlot& s = slots[slot];
        if (s.injection)
            b.inj[s.edge] = std::move(m);
        else
            b.trans[s.edge][s.pos] = std::move(m);
    }
};

class LinearState {
public:
    explicit LinearState(const LinearProblem& p) : p_(&p), b_(p.base) {}

    void assign(std::size_t slot, std::uint64_t c) { p_->set(b_, slot, p_->matrix(p_->slots[slot], c)); }

    bool check(std::size_t ti) {
        const auto a = transfer(b_, p_->upstream[ti]);
        return solve_decoder(b_, a, ti);
    }

    BoundLinear& bound() { return b_; }

private:
    const LinearProblem* p_;
    BoundLinear b_;
};

/// Solves every decoder and re-verifies; throws on a verification fault.
inline LinearCode finish_linear(const SumNetwork& net, BoundLinear& b) {
    const auto a = transfer(b);
    for (std::size_t ti = 0; ti < b.topo->terminals().size(); ++ti)
        if (!solve_decoder(b, a, ti)) throw error("internal: witness lost decodability");
    LinearCode code = unbind(b);
    if (!verify_linear(net, code)) throw error("internal: search witness failed re-verification");
    return code;
}

// ---- tables ------------------------------------------------------------

enum class EdgeRule { identity_source, identity_forward, zero, free };

struct TableSlot {
    std::size_t edge = 0;
    std::uint64_t domain = 0;
    bool constrained = false;
    std::vector<std::vector<std::uint32_t>> candidates;
};

struct TableProblem {
    const Topology* topo;
    Alphabet g;
    int k, l;
    TableShape shape;
    std::vector<EdgeRule> rule;
    std::vector<std::size_t> slot_of;
    std::vector<TableSlot> slots;
    std::vector<std::uint64_t> radix;
    std::vector<std::vector<bool>> upstream;
    std::vector<std::vector<std::size_t>> checks_at;
    std::uint64_t space = 1;
    bool too_big = false;
    std::uint64_t tuples = 0;
    std::vector<std::uint64_t> x;       // x[tuple * m + i]
    std::vector<std::uint64_t> target;  // componentwise sum per tuple

    TableProblem(const Topology& t, Alphabet alphabet, int k_, int l_, std::uint64_t budget)
        : topo(&t), g(std::move(alphabet)), k(k_), l(l_),
          shape(table_shape(t, g, k_, l_, default_table_budget)) {
        const std::size_t m = t.sources().size();
        auto tp = checked_pow(shape.msg, m, default_enumeration_budget);
        if (!tp) throw budget_exceeded("source tuple enumeration exceeds budget");
        tuples = *tp;
        x.resize(tuples * m);
        target.resize(tuples);
        for (std::uint64_t tup = 0; tup < tuples; ++tup) {
            std::uint64_t rest = tup, sum = 0;
            for (std::size_t i = 0; i < m; ++i) {
                x[tup * m + i] = rest % shape.msg;
                rest /= shape.msg;
                sum = packed_add(g, sum, x[tup * m + i], static_cast<std::size_t>(k));
            }
            target[tup] = sum;
        }

        rule.assign(t.edge_count(), EdgeRule::free);
        slot_of.assign(t.edge_count(), Topology::none);
        std::vector<std::size_t> slot_edge;
        for (std::size_t e : t.edge_order()) {
            const std::size_t v = t.tail(e);
            const std::size_t d = t.in_edges(v).size();
            if (t.is_source(v) && k == l)
                rule[e] = EdgeRule::identity_source;
            else if (!t.is_source(v) && d == 1)
                rule[e] = EdgeRule::identity_forward;
            else if (!t.is_source(v) && d == 0)
                rule[e] = EdgeRule::zero;
            else {
                slot_of[e] = slots.size();
                slots.push_back({e, shape.edge_domain[e], false, {}});
                slot_edge.push_back(e);
            }
        }
        checks_at = check_schedule(t, slot_edge, upstream);
        prefilter(budget);
        for (const auto& s : slots) {
            radix.push_back(s.constrained ? s.candidates.size() : sat_pow(shape.sym, s.domain));
            space = sat_mul(space, radix.back());
        }
        if (too_big) space = saturated;
    }

private:
    enum class Carry { raw, constant, forward };
    struct Carried {
        Carry kind;
        std::size_t index;  // source index for raw, slot index for forward
    };

    std::vector<Carried> carried() const {
        const Topology& t = *topo;
        std::vector<Carried> c(t.edge_count(), {Carry::constant, 0});
        for (std::size_t e : t.edge_order()) {
            switch (rule[e]) {
                case EdgeRule::identity_source: c[e] = {Carry::raw, t.source_of(t.tail(e))}; break;
                case EdgeRule::identity_forward: c[e] = c[t.in_edges(t.tail(e))[0]]; break;
                case EdgeRule::zero: c[e] = {Carry::constant, 0}; break;
                case EdgeRule::free: c[e] = {Carry::forward, slot_of[e]}; break;
            }
        }
        return c;
    }

    /// Reduction (b): restricts each slot to the proper colorings of its conflict graph.
    void prefilter(std::uint64_t budget) {
        const Topology& t = *topo;
        const std::size_t m = t.sources().size();
        const auto carry = carried();
        const auto uk = static_cast<std::size_t>(k);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            TableSlot& slot = slots[s];
            const std::size_t v = t.tail(slot.edge);
            // Per domain point: realizable?, and the source values it fixes.
            std::vector<std::size_t> in_src;  // source per input position, none for constants
            if (t.is_source(v)) {
                in_src.push_back(t.source_of(v));
            } else {
                bool raw_inputs = true;
                for (std::size_t e : t.in_edges(v)) {
                    if (carry[e].kind == Carry::raw)
                        in_src.push_back(carry[e].index);
                    else if (carry[e].kind == Carry::constant)
                        in_src.push_back(Topology::none);
                    else
                        raw_inputs = false;
                }
                if (!raw_inputs) continue;
            }
            const std::uint64_t width = t.is_source(v) ? shape.msg : shape.sym;
            const std::uint64_t dsize = slot.domain;
            if (dsize > 4096) continue;
            std::vector<bool> in_u(m, false);
            for (std::size_t src : in_src)
                if (src != Topology::none) in_u[src] = true;
            std::vector<bool> realizable(dsize, true);
            std::vector<std::vector<std::uint64_t>> value(dsize, std::vector<std::uint64_t>(m, 0));
            for (std::uint64_t pt = 0; pt < dsize; ++pt) {
                std::uint64_t rest = pt;
                std::vector<bool> set(m, false);
                for (std::size_t src : in_src) {
                    const std::uint64_t y = rest % width;
                    rest /= width;
                    if (src == Topology::none) {
                        if (y != 0) realizable[pt] = false;
                        continue;
                    }
                    if (set[src] && value[pt][src] != y) realizable[pt] = false;
                    set[src] = true;
                    value[pt][src] = y;
                }
            }
            std::vector<std::vector<std::uint64_t>> earlier(dsize);  // conflicts with lower-index points
            bool any = false;
            for (std::size_t ti = 0; ti < t.terminals().size(); ++ti) {
                std::vector<bool> in_r(m, false);
                bool applies = true, sees_slot = false;
                for (std::size_t e : t.in_edges(t.terminals()[ti])) {
                    if (carry[e].kind == Carry::raw)
                        in_r[carry[e].index] = true;
                    else if (carry[e].kind == Carry::forward) {
                        if (carry[e].index == s)
                            sees_slot = true;
                        else
                            applies = false;
                    }
                }
                if (!applies || !sees_slot) continue;
                for (std::size_t i = 0; i < m; ++i)
                    if (!in_u[i] && !in_r[i]) applies = false;
                if (!applies) continue;
                std::vector<std::uint64_t> partial(dsize, 0);
                for (std::uint64_t pt = 0; pt < dsize; ++pt)
                    for (std::size_t i = 0; i < m; ++i)
                        if (in_u[i] && !in_r[i]) partial[pt] = packed_add(g, partial[pt], value[pt][i], uk);
                for (std::uint64_t b = 0; b < dsize; ++b) {
                    if (!realizable[b]) continue;
                    for (std::uint64_t a = 0; a < b; ++a) {
                        if (!realizable[a] || partial[a] == partial[b]) continue;
                        bool agree = true;
                        for (std::size_t i = 0; i < m && agree; ++i)
                            if (in_u[i] && in_r[i] && value[a][i] != value[b][i]) agree = false;
                        if (agree) {
                            earlier[b].push_back(a);
                            any = true;
                        }
                    }
                }
            }
            if (!any) continue;
            for (auto& v2 : earlier) {
                std::sort(v2.begin(), v2.end());
                v2.erase(std::unique(v2.begin(), v2.end()), v2.end());
            }
            slot.constrained = true;
            // Memory cap: never hold more than ~64M table entries per slot.
            const std::uint64_t cap = std::min<std::uint64_t>(budget, (std::uint64_t{1} << 26) / std::max<std::uint64_t>(1, dsize));
            std::vector<std::uint32_t> color(dsize, 0);
            if (!colorings(earlier, color, 0, cap, slot.candidates)) too_big = true;
        }
    }

    /// Appends proper colorings in lexicographic order; false once more than cap exist.
    bool colorings(const std::vector<std::vector<std::uint64_t>>& earlier, std::vector<std::uint32_t>& color,
                   std::uint64_t pt, std::uint64_t cap, std::vector<std::vector<std::uint32_t>>& out) const {
        if (pt == color.size()) {
            if (out.size() >= cap) return false;
            out.push_back(color);
            return true;
        }
        for (std::uint64_t c = 0; c < shape.sym; ++c) {
            bool ok = true;
            for (std::uint64_t a : earlier[pt])
                if (color[a] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[pt] = static_cast<std::uint32_t>(c);
            if (!colorings(earlier, color, pt + 1, cap, out)) return false;
        }
        return true;
    }
};

class TableState {
public:
    explicit TableState(const TableProblem& p) : p_(&p), tables_(p.slots.size()), scratch_(p.slots.size()), val_(p.topo->edge_count()) {
        std::uint64_t biggest = 1;
        for (auto d : p.shape.decoder_domain) biggest = std::max(biggest, d);
        fiber_.assign(biggest, -1);
        for (std::size_t s = 0; s < p.slots.size(); ++s)
            if (!p.slots[s].constrained) scratch_[s].assign(p.slots[s].domain, 0);
    }

    void assign(std::size_t slot, std::uint64_t c) {
        const TableSlot& s = p_->slots[slot];
        if (s.constrained) {
            tables_[slot] = &s.candidates[c];
            return;
        }
        // Unconstrained: c is a base-|G|^l numeral, domain point 0 most significant.
        for (std::uint64_t pt = s.domain; pt-- > 0;) {
            scratch_[slot][pt] = static_cast<std::uint32_t>(c % p_->shape.sym);
            c /= p_->shape.sym;
        }
        tables_[slot] = &scratch_[slot];
    }

    /// Fiber test: no two source tuples with different sums may produce the same input at the terminal.
    bool check(std::size_t ti) { return decode(ti, nullptr); }

    /// Fills the decoder table from the fibers; unseen inputs decode to 0.
    bool decode(std::size_t ti, std::vector<std::uint32_t>* table) {
        const Topology& t = *p_->topo;
        const std::size_t m = t.sources().size();
        const auto& up = p_->upstream[ti];
        const std::size_t node = t.terminals()[ti];
        touched_.clear();
        bool ok = true;
        for (std::uint64_t tup = 0; tup < p_->tuples && ok; ++tup) {
            const std::uint64_t* x = &p_->x[tup * m];
            for (std::size_t e : t.edge_order()) {
                if (!up[e]) continue;
                const std::size_t v = t.tail(e);
                switch (p_->rule[e]) {
                    case EdgeRule::identity_source: val_[e] = x[t.source_of(v)]; break;
                    case EdgeRule::identity_forward: val_[e] = val_[t.in_edges(v)[0]]; break;
                    case EdgeRule::zero: val_[e] = 0; break;
                    case EdgeRule::free: {
                        const std::uint64_t in = t.is_source(v) ? x[t.source_of(v)] : input_index(t, v, val_, p_->shape.sym);
                        val_[e] = (*tables_[p_->slot_of[e]])[in];
                        break;
                    }
                }
            }
            const std::uint64_t in = input_index(t, node, val_, p_->shape.sym);
            const auto want = static_cast<std::int64_t>(p_->target[tup]);
            if (fiber_[in] < 0) {
                fiber_[in] = want;
                touched_.push_back(in);
            } else if (fiber_[in] != want) {
                ok = false;
            }
        }
        if (ok && table) {
            table->assign(p_->shape.decoder_domain[ti], 0);
            for (auto in : touched_) (*table)[in] = static_cast<std::uint32_t>(fiber_[in]);
        }
        for (auto in : touched_) fiber_[in] = -1;
        return ok;
    }

    const std::vector<std::uint32_t>& table(std::size_t slot) const { return *tables_[slot]; }

private:
    const TableProblem* p_;
    std::vector<const std::vector<std::uint32_t>*> tables_;
    std::vector<std::vector<std::uint32_t>> scratch_;
    std::vector<std::uint64_t> val_;
    std::vector<std::int64_t> fiber_;
    std::vector<std::uint64_t> touched_;
};

inline TableCode finish_table(const SumNetwork& net, const TableProblem& p, TableState& st) {
    const Topology& t = *p.topo;
    TableCode code;
    code.k = p.k;
    code.l = p.l;
    code.alphabet = p.g;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        std::vector<std::uint32_t> tab(p.shape.edge_domain[e], 0);
        switch (p.rule[e]) {
            case EdgeRule::identity_source:
            case EdgeRule::identity_forward:
                for (std::uint64_t i = 0; i < tab.size(); ++i) tab[i] = static_cast<std::uint32_t>(i);
                break;
            case EdgeRule::zero: break;
            case EdgeRule::free: tab = st.table(p.slot_of[e]); break;
        }
        code.edges.emplace(t.edge_id(e), std::move(tab));
    }
    for (std::size_t ti = 0; ti < t.terminals().size(); ++ti) {
        std::vector<std::uint32_t> tab;
        if (!st.decode(ti, &tab)) throw error("internal: witness lost decodability");
        code.decoders.emplace(t.node_name(t.terminals()[ti]), std::move(tab));
    }
    if (!verify_table(net, code)) throw error("internal: search witness failed re-verification");
    return code;
}

}  // namespace detail

/**
 * Exhaustive search for a (k,l) table code over a group alphabet of order
 * at most 8, under reductions (a), (b), (c). For k = l = 1, exhausted-none is
 * a proof that no scalar code exists over this alphabet. For other (k,l) an
 * empty search reports budget-exceeded: non-existence is only certified for
 * scalar codes.
 */
inline SearchOutcome search_table(const SumNetwork& net, const Alphabet& alphabet, int k, int l, SearchOptions opt = {}) {
    if (alphabet.order() > 8) throw error("search_table supports alphabets of order <= 8");
    const Topology topo(net);
    SearchOutcome out;
    out.method = "table";
    out.budget = opt.budget.value_or(default_table_search_budget);
    std::optional<detail::TableProblem> problem;
    try {
        problem.emplace(topo, alphabet, k, l, out.budget);
    } catch (const budget_exceeded& e) {
        out.status = SearchStatus::budget_exceeded;
        out.space = detail::saturated;
        out.note = e.what();
        return out;
    }
    out.space = problem->space;
    if (problem->space > out.budget) {
        out.status = SearchStatus::budget_exceeded;
        out.note = "reduced search space exceeds budget";
        return out;
    }
    auto res = detail::drive(problem->radix, problem->checks_at, opt.jobs, [&] { return detail::TableState(*problem); });
    out.candidates_examined = res.nodes;
    if (res.found) {
        detail::TableState st(*problem);
        for (std::size_t s = 0; s < res.assignment.size(); ++s) st.assign(s, res.assignment[s]);
        out.table_witness = detail::finish_table(net, *problem, st);
        out.status = SearchStatus::found;
    } else if (k == 1 && l == 1) {
        out.status = SearchStatus::exhausted_none;
    } else {
        out.status = SearchStatus::budget_exceeded;
        out.note = "search space exhausted, but non-existence is only certified for k = l = 1";
    }
    return out;
}

/**
 * Exhaustive search for a (k,l) linear code over a field. Encoders are
 * enumerated after reduction (a); decoders come from a linear solve.
 * exhausted-none proves no (k,l) linear solution exists over this field.
 */
inline SearchOutcome search_linear(const SumNetwork& net, const Alphabet& field, int k, int l, SearchOptions opt = {}) {
    const Topology topo(net);
    SearchOutcome out;
    out.method = "linear";
    out.budget = opt.budget.value_or(default_linear_search_budget);
    const detail::LinearProblem problem(topo, field, k, l);
    out.space = problem.space;
    if (problem.space > out.budget) {
        out.status = SearchStatus::budget_exceeded;
        out.note = "encoder space exceeds budget";
        return out;
    }
    auto res = detail::drive(problem.radix, problem.checks_at, opt.jobs, [&] { return detail::LinearState(problem); });
    out.candidates_examined = res.nodes;
    if (!res.found) {
        out.status = SearchStatus::exhausted_none;
        return out;
    }
    detail::LinearState st(problem);
    for (std::size_t s = 0; s < res.assignment.size(); ++s) st.assign(s, res.assignment[s]);
    out.linear_witness = detail::finish_linear(net, st.bound());
    out.status = SearchStatus::found;
    return out;
}

/**
 * Random linear coding: each trial draws every free encoder matrix uniformly
 * (after reduction (a)), solves for decoders and returns the first code that
 * verifies. Deterministic per seed. Never claims non-existence: failure is
 * reported as budget-exceeded.
 */
inline SearchOutcome search_random_linear(const SumNetwork& net, const Alphabet& field, int k, int l, std::uint64_t trials,
                                          std::uint64_t seed) {
    if (trials < 1) throw error("search_random_linear needs at least one trial");
    const Topology topo(net);
    const detail::LinearProblem problem(topo, field, k, l);
    SearchOutcome out;
    out.method = "random-linear";
    out.budget = trials;
    out.seed = seed;
    out.space = problem.space;
    Rng rng(seed);
    const unsigned q = field.order();
    for (std::uint64_t trial = 1; trial <= trials; ++trial) {
        detail::BoundLinear b = problem.base;
        for (std::size_t s = 0; s < problem.slots.size(); ++s) {
            const auto& slot = problem.slots[s];
            std::vector<Elem> data(slot.rows * slot.cols);
            for (auto& x : data) x = static_cast<Elem>(rng.below(q));
            problem.set(b, s, FMatrix(field, slot.rows, slot.cols, std::move(data)));
        }
        const auto a = detail::transfer(b);
        bool ok = true;
        for (std::size_t ti = 0; ti < topo.terminals().size() && ok; ++ti) ok = detail::solve_decoder(b, a, ti);
        if (!ok) continue;
        out.candidates_examined = trial;
        out.linear_witness = detail::finish_linear(net, b);
        out.status = SearchStatus::found;
        return out;
    }
    out.candidates_examined = trials;
    out.status = SearchStatus::budget_exceeded;
    out.note = "no verified code within the trial budget";
    return out;
}

inline io::json outcome_to_json(const SearchOutcome& o) {
    io::json j;
    j["status"] = to_string(o.status);
    j["method"] = o.method;
    j["candidates_examined"] = o.candidates_examined;
    j["space"] = o.space == detail::saturated ? io::json("overflow") : io::json(o.space);
    j["budget"] = o.budget;
    j["seed"] = o.seed ? io::json(*o.seed) : io::json(nullptr);
    j["note"] = o.note;
    if (o.linear_witness)
        j["witness"] = io::linear_code_to_json(*o.linear_witness);
    else if (o.table_witness)
        j["witness"] = io::table_code_to_json(*o.table_witness);
    else
        j["witness"] = nullptr;
    return j;
}

}  // namespace sumnet
