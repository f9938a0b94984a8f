/**************************************************************************
 * sumnet/codec.hpp
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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumnet/algebra.hpp"
#include "sumnet/error.hpp"
#include "sumnet/network.hpp"
#include "sumnet/rate.hpp"

namespace sumnet {

using KeyPair = std::pair<std::string, std::string>;

/**
 * A (k,l) fractional linear network code over a field.
 *
 * Messages and edge symbols are row vectors. A source edge carries X_i * M
 * with M = injection[(source, edge)] (k x l). An edge e out of an internal
 * node carries sum over e' in In(tail e) of y_e' * transition[(e', e)]
 * (l x l). Terminal t outputs sum over e in In(t) of y_e * decoding[(t, e)]
 * (l x k). Absent entries are zero matrices.
 */
struct LinearCode {
    int k = 1;
    int l = 1;
    Alphabet field = Alphabet::field(2);
    std::map<KeyPair, FMatrix> injection;   // (source, edge)
    std::map<KeyPair, FMatrix> transition;  // (in-edge, out-edge)
    std::map<KeyPair, FMatrix> decoding;    // (terminal, in-edge)

    Rate rate() const { return Rate(k, l); }

    friend bool operator==(const LinearCode&, const LinearCode&) = default;
};

/**
 * A (k,l) fractional code given by explicit function tables over an abelian
 * group alphabet G of order q.
 *
 * A vector (g_0, ..., g_{d-1}) in G^d is indexed by sum g_j q^j. The input of
 * a node function is the concatenation of its in-edge symbols in in-edge order
 * (ascending edge id), so its index is sum_pos y_pos (q^l)^pos. Source edges
 * map G^k to G^l, internal edges G^{l|In|} to G^l, terminal decoders
 * G^{l|In|} to G^k. Absent tables are the constant-zero function.
 */
struct TableCode {
    int k = 1;
    int l = 1;
    Alphabet alphabet = Alphabet::group({2});
    std::map<std::string, std::vector<std::uint32_t>> edges;      // edge id -> table
    std::map<std::string, std::vector<std::uint32_t>> decoders;   // terminal id -> table

    Rate rate() const { return Rate(k, l); }

    friend bool operator==(const TableCode&, const TableCode&) = default;
};

inline constexpr std::uint64_t default_table_budget = std::uint64_t{1} << 20;
inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 24;

namespace detail {

/// q^e, or nullopt past the cap.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > cap / q) return std::nullopt;
        r *= q;
    }
    if (r > cap) return std::nullopt;
    return r;
}

inline std::vector<Elem> unpack(std::uint64_t idx, unsigned q, std::size_t len) {
    std::vector<Elem> v(len);
    for (std::size_t i = 0; i < len; ++i) {
        v[i] = static_cast<Elem>(idx % q);
        idx /= q;
    }
    return v;
}

inline std::uint64_t pack(const std::vector<Elem>& v, unsigned q) {
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
    return idx;
}

/// Componentwise group sum of two packed vectors of length len.
inline std::uint64_t packed_add(const Alphabet& g, std::uint64_t a, std::uint64_t b, std::size_t len) {
    const unsigned q = g.order();
    std::uint64_t out = 0, place = 1;
    for (std::size_t i = 0; i < len; ++i) {
        out += g.add(static_cast<Elem>(a % q), static_cast<Elem>(b % q)) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    return out;
}

/**
 * A LinearCode resolved against a Topology: matrices addressed by edge and
 * in-edge position. trans[e][p] multiplies the p-th in-edge of tail(e);
 * dec[t][p] the p-th in-edge of terminal t.
 */
struct BoundLinear {
    const Topology* topo = nullptr;
    int k = 1, l = 1;
    Alphabet field = Alphabet::field(2);
    std::vector<std::optional<FMatrix>> inj;
    std::vector<std::vector<std::optional<FMatrix>>> trans;
    std::vector<std::vector<std::optional<FMatrix>>> dec;

    BoundLinear(const Topology& t, int k_, int l_, Alphabet f) : topo(&t), k(k_), l(l_), field(std::move(f)) {
        inj.resize(t.edge_count());
        trans.resize(t.edge_count());
        for (std::size_t e = 0; e < t.edge_count(); ++e) trans[e].resize(t.in_edges(t.tail(e)).size());
        dec.resize(t.terminals().size());
        for (std::size_t i = 0; i < t.terminals().size(); ++i) dec[i].resize(t.in_edges(t.terminals()[i]).size());
    }
};

inline void check_shape(const FMatrix& m, const Alphabet& f, std::size_t r, std::size_t c, const std::string& what) {
    if (!(m.field() == f)) throw error(what + ": matrix over " + m.field().name() + ", code over " + f.name());
    if (m.rows() != r || m.cols() != c)
        throw error(what + ": expected " + std::to_string(r) + "x" + std::to_string(c) + " matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline BoundLinear bind(const Topology& topo, const LinearCode& code) {
    if (code.k < 1 || code.l < 1) throw error("code parameters k, l must be positive");
    if (!code.field.is_field()) throw error("linear code alphabet must be a field");
    const auto k = static_cast<std::size_t>(code.k), l = static_cast<std::size_t>(code.l);
    BoundLinear b(topo, code.k, code.l, code.field);
    for (const auto& [key, m] : code.injection) {
        const std::string what = "injection (" + key.first + ", " + key.second + ")";
        const std::size_t v = topo.node(key.first);
        const std::size_t e = topo.edge(key.second);
        if (!topo.is_source(v) || topo.tail(e) != v) throw error(what + " is not an edge out of a source");
        check_shape(m, code.field, k, l, what);
        b.inj[e] = m;
    }
    for (const auto& [key, m] : code.transition) {
        const std::string what = "transition (" + key.first + ", " + key.second + ")";
        const std::size_t ein = topo.edge(key.first);
        const std::size_t eout = topo.edge(key.second);
        if (topo.head(ein) != topo.tail(eout)) throw error(what + " does not meet at a node");
        check_shape(m, code.field, l, l, what);
        b.trans[eout][topo.in_position(ein)] = m;
    }
    for (const auto& [key, m] : code.decoding) {
        const std::string what = "decoding (" + key.first + ", " + key.second + ")";
        const std::size_t v = topo.node(key.first);
        const std::size_t e = topo.edge(key.second);
        if (!topo.is_terminal(v) || topo.head(e) != v) throw error(what + " is not an edge into a terminal");
        check_shape(m, code.field, l, k, what);
        b.dec[topo.terminal_of(v)][topo.in_position(e)] = m;
    }
    return b;
}

inline LinearCode unbind(const BoundLinear& b) {
    const Topology& t = *b.topo;
    LinearCode c;
    c.k = b.k;
    c.l = b.l;
    c.field = b.field;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        if (b.inj[e] && !b.inj[e]->is_zero())
            c.injection.emplace(KeyPair{t.node_name(t.tail(e)), t.edge_id(e)}, *b.inj[e]);
        const auto& ins = t.in_edges(t.tail(e));
        for (std::size_t p = 0; p < ins.size(); ++p)
            if (b.trans[e][p] && !b.trans[e][p]->is_zero())
                c.transition.emplace(KeyPair{t.edge_id(ins[p]), t.edge_id(e)}, *b.trans[e][p]);
    }
    for (std::size_t i = 0; i < t.terminals().size(); ++i) {
        const auto& ins = t.in_edges(t.terminals()[i]);
        for (std::size_t p = 0; p < ins.size(); ++p)
            if (b.dec[i][p] && !b.dec[i][p]->is_zero())
                c.decoding.emplace(KeyPair{t.node_name(t.terminals()[i]), t.edge_id(ins[p])}, *b.dec[i][p]);
    }
    return c;
}

/// transfer[i][e]: the k x l global coefficient matrix from source i to edge e.
using Transfer = std::vector<std::vector<FMatrix>>;

/**
 * Global coefficients along topological order. When only is non-empty, edges
 * with only[e] == false are skipped and left zero.
 */
inline Transfer transfer(const BoundLinear& b, const std::vector<bool>& only = {}) {
    const Topology& t = *b.topo;
    const auto k = static_cast<std::size_t>(b.k), l = static_cast<std::size_t>(b.l);
    Transfer a(t.sources().size(), std::vector<FMatrix>(t.edge_count(), FMatrix(b.field, k, l)));
    for (std::size_t e : t.edge_order()) {
        if (!only.empty() && !only[e]) continue;
        const std::size_t v = t.tail(e);
        if (t.is_source(v)) {
            if (b.inj[e]) a[t.source_of(v)][e] = *b.inj[e];
            continue;
        }
        const auto& ins = t.in_edges(v);
        for (std::size_t p = 0; p < ins.size(); ++p) {
            if (!b.trans[e][p]) continue;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const FMatrix& up = a[i][ins[p]];
                if (up.is_zero()) continue;
                a[i][e] = mat_add(a[i][e], mat_mul(up, *b.trans[e][p]));
            }
        }
    }
    return a;
}

/// Edges from which terminal index ti is reachable (its upstream cone).
inline std::vector<bool> upstream_edges(const Topology& t, std::size_t ti) {
    const auto anc = t.ancestors(t.terminals()[ti]);
    std::vector<bool> out(t.edge_count(), false);
    for (std::size_t e = 0; e < t.edge_count(); ++e) out[e] = anc[t.head(e)];
    return out;
}

inline bool terminal_decodes(const BoundLinear& b, const Transfer& a, std::size_t ti) {
    const Topology& t = *b.topo;
    const auto k = static_cast<std::size_t>(b.k);
    const auto& ins = t.in_edges(t.terminals()[ti]);
    const FMatrix id = FMatrix::identity(b.field, k);
    for (std::size_t i = 0; i < a.size(); ++i) {
        FMatrix acc(b.field, k, k);
        for (std::size_t p = 0; p < ins.size(); ++p)
            if (b.dec[ti][p]) acc = mat_add(acc, mat_mul(a[i][ins[p]], *b.dec[ti][p]));
        if (!(acc == id)) return false;
    }
    return true;
}

/**
 * Solves for decoding matrices of terminal ti given the encoders' transfer.
 * Returns false (and leaves dec untouched) when no decoder exists.
 */
inline bool solve_decoder(BoundLinear& b, const Transfer& a, std::size_t ti) {
    const Topology& t = *b.topo;
    const auto k = static_cast<std::size_t>(b.k), l = static_cast<std::size_t>(b.l);
    const auto& ins = t.in_edges(t.terminals()[ti]);
    const std::size_t m = a.size();
    if (m == 0) {
        for (auto& d : b.dec[ti]) d.reset();
        return true;
    }
    if (ins.empty()) return false;
    FMatrix lhs(b.field, m * k, l * ins.size());
    FMatrix rhs(b.field, m * k, k);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < ins.size(); ++p) {
            const FMatrix& g = a[i][ins[p]];
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < l; ++c) lhs.set(i * k + r, p * l + c, g(r, c));
        }
        for (std::size_t r = 0; r < k; ++r) rhs.set(i * k + r, r, 1);
    }
    auto x = mat_solve_right(lhs, rhs);
    if (!x) return false;
    for (std::size_t p = 0; p < ins.size(); ++p) {
        FMatrix d(b.field, l, k);
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t c = 0; c < k; ++c) d.set(r, c, (*x)(p * l + r, c));
        b.dec[ti][p] = std::move(d);
    }
    return true;
}

}  // namespace detail

/// Global transfer matrices keyed by (source id, edge id); every pair is present.
inline std::map<KeyPair, FMatrix> global_transfer(const SumNetwork& net, const LinearCode& code) {
    const Topology topo(net);
    const auto b = detail::bind(topo, code);
    const auto a = detail::transfer(b);
    std::map<KeyPair, FMatrix> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t e = 0; e < topo.edge_count(); ++e)
            out.emplace(KeyPair{net.sources[i], topo.edge_id(e)}, a[i][e]);
    return out;
}

/// True iff every terminal's output equals the sum of all source blocks.
/// Checked algebraically: sum_e A[i,e] D[t,e] = I_k for every source i and terminal t.
inline bool verify_linear(const SumNetwork& net, const LinearCode& code) {
    const Topology topo(net);
    const auto b = detail::bind(topo, code);
    const auto a = detail::transfer(b);
    for (std::size_t ti = 0; ti < topo.terminals().size(); ++ti)
        if (!detail::terminal_decodes(b, a, ti)) return false;
    return true;
}

namespace detail {

/// Domain sizes of a table code on a topology, checked against the budget.
struct TableShape {
    std::uint64_t q = 0, sym = 0, msg = 0;  // |G|, |G|^l, |G|^k
    std::vector<std::uint64_t> edge_domain;
    std::vector<std::uint64_t> decoder_domain;
};

inline TableShape table_shape(const Topology& t, const Alphabet& g, int k, int l, std::uint64_t table_budget) {
    if (k < 1 || l < 1) throw error("code parameters k, l must be positive");
    TableShape s;
    s.q = g.order();
    auto sym = checked_pow(s.q, static_cast<std::uint64_t>(l), table_budget);
    auto msg = checked_pow(s.q, static_cast<std::uint64_t>(k), table_budget);
    if (!sym || !msg) throw budget_exceeded("symbol space exceeds table budget");
    s.sym = *sym;
    s.msg = *msg;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const std::size_t v = t.tail(e);
        const std::uint64_t exp = t.is_source(v) ? static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(l) * t.in_edges(v).size();
        auto d = checked_pow(s.q, exp, table_budget);
        if (!d) throw budget_exceeded("table for edge '" + t.edge_id(e) + "' exceeds budget");
        s.edge_domain.push_back(*d);
    }
    for (std::size_t v : t.terminals()) {
        auto d = checked_pow(s.q, static_cast<std::uint64_t>(l) * t.in_edges(v).size(), table_budget);
        if (!d) throw budget_exceeded("decoder table for terminal '" + t.node_name(v) + "' exceeds budget");
        s.decoder_domain.push_back(*d);
    }
    return s;
}

/// Domain index of node v's input given per-edge symbol indices.
inline std::uint64_t input_index(const Topology& t, std::size_t v, const std::vector<std::uint64_t>& val, std::uint64_t sym) {
    std::uint64_t idx = 0, place = 1;
    for (std::size_t e : t.in_edges(v)) {
        idx += val[e] * place;
        place *= sym;
    }
    return idx;
}

}  // namespace detail

/**
 * Exhaustive check over all (G^k)^m source tuples: evaluates every edge in
 * topological order and compares each decoder's output to the componentwise
 * sum of the source blocks.
 */
inline bool verify_table(const SumNetwork& net, const TableCode& code,
                         std::uint64_t enumeration_budget = default_enumeration_budget,
                         std::uint64_t table_budget = default_table_budget) {
    const Topology t(net);
    const auto shape = detail::table_shape(t, code.alphabet, code.k, code.l, table_budget);
    std::vector<const std::vector<std::uint32_t>*> etab(t.edge_count(), nullptr), dtab(t.terminals().size(), nullptr);
    for (const auto& [id, tab] : code.edges) {
        const std::size_t e = t.edge(id);
        if (tab.size() != shape.edge_domain[e])
            throw error("table for edge '" + id + "' has " + std::to_string(tab.size()) + " entries, expected " +
                        std::to_string(shape.edge_domain[e]));
        for (auto x : tab)
            if (x >= shape.sym) throw error("table for edge '" + id + "' has an out-of-range value");
        etab[e] = &tab;
    }
    for (const auto& [id, tab] : code.decoders) {
        const std::size_t v = t.node(id);
        if (!t.is_terminal(v)) throw error("decoder for non-terminal '" + id + "'");
        const std::size_t ti = t.terminal_of(v);
        if (tab.size() != shape.decoder_domain[ti])
            throw error("decoder table for '" + id + "' has wrong size");
        for (auto x : tab)
            if (x >= shape.msg) throw error("decoder table for '" + id + "' has an out-of-range value");
        dtab[ti] = &tab;
    }
    const std::size_t m = t.sources().size();
    auto tuples = detail::checked_pow(shape.msg, m, enumeration_budget);
    if (!tuples) throw budget_exceeded("source tuple enumeration exceeds budget");
    const auto k = static_cast<std::size_t>(code.k);
    std::vector<std::uint64_t> x(m), val(t.edge_count());
    for (std::uint64_t tup = 0; tup < *tuples; ++tup) {
        std::uint64_t rest = tup, target = 0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = rest % shape.msg;
            rest /= shape.msg;
            target = detail::packed_add(code.alphabet, target, x[i], k);
        }
        for (std::size_t e : t.edge_order()) {
            const std::size_t v = t.tail(e);
            const std::uint64_t in = t.is_source(v) ? x[t.source_of(v)] : detail::input_index(t, v, val, shape.sym);
            val[e] = etab[e] ? (*etab[e])[in] : 0;
        }
        for (std::size_t ti = 0; ti < t.terminals().size(); ++ti) {
            const std::uint64_t in = detail::input_index(t, t.terminals()[ti], val, shape.sym);
            const std::uint64_t out = dtab[ti] ? (*dtab[ti])[in] : 0;
            if (out != target) return false;
        }
    }
    return true;
}

/// Tabulates a linear code; verify_table(linearize(c)) == verify_linear(c).
inline TableCode linearize(const SumNetwork& net, const LinearCode& code,
                           std::uint64_t table_budget = default_table_budget) {
    const Topology t(net);
    const auto b = detail::bind(t, code);
    const auto shape = detail::table_shape(t, code.field, code.k, code.l, table_budget);
    const auto k = static_cast<std::size_t>(code.k), l = static_cast<std::size_t>(code.l);
    const unsigned q = code.field.order();
    TableCode out;
    out.k = code.k;
    out.l = code.l;
    out.alphabet = code.field;
    // y (1 x len) * M, with y and the result packed.
    auto apply = [&](std::uint64_t packed, const FMatrix& mat) {
        const auto row = detail::unpack(packed, q, mat.rows());
        return detail::pack(mat_mul(FMatrix(code.field, 1, mat.rows(), row), mat).entries(), q);
    };
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        std::vector<std::uint32_t> tab(shape.edge_domain[e], 0);
        const std::size_t v = t.tail(e);
        if (t.is_source(v)) {
            if (b.inj[e])
                for (std::uint64_t xi = 0; xi < tab.size(); ++xi) tab[xi] = static_cast<std::uint32_t>(apply(xi, *b.inj[e]));
        } else {
            const std::size_t d = t.in_edges(v).size();
            for (std::uint64_t in = 0; in < tab.size(); ++in) {
                std::uint64_t acc = 0, rest = in;
                for (std::size_t p = 0; p < d; ++p) {
                    const std::uint64_t y = rest % shape.sym;
                    rest /= shape.sym;
                    if (b.trans[e][p]) acc = detail::packed_add(code.field, acc, apply(y, *b.trans[e][p]), l);
                }
                tab[in] = static_cast<std::uint32_t>(acc);
            }
        }
        out.edges.emplace(t.edge_id(e), std::move(tab));
    }
    for (std::size_t ti = 0; ti < t.terminals().size(); ++ti) {
        std::vector<std::uint32_t> tab(shape.decoder_domain[ti], 0);
        const std::size_t d = t.in_edges(t.terminals()[ti]).size();
        for (std::uint64_t in = 0; in < tab.size(); ++in) {
            std::uint64_t acc = 0, rest = in;
            for (std::size_t p = 0; p < d; ++p) {
                const std::uint64_t y = rest % shape.sym;
                rest /= shape.sym;
                if (b.dec[ti][p]) acc = detail::packed_add(code.field, acc, apply(y, *b.dec[ti][p]), k);
            }
            tab[in] = static_cast<std::uint32_t>(acc);
        }
        out.decoders.emplace(t.node_name(t.terminals()[ti]), std::move(tab));
    }
    return out;
}

}  // namespace sumnet
