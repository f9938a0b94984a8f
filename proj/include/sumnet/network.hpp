/**************************************************************************
 * sumnet/network.hpp
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
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sumnet/error.hpp"

namespace sumnet {

struct Edge {
    std::string id;
    std::string tail;
    std::string head;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * A directed acyclic multigraph with ordered source and terminal lists.
 *
 * Sources have in-degree 0 and terminals out-degree 0. Every edge carries one
 * alphabet symbol per use; larger capacities are parallel edges.
 */
struct SumNetwork {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::vector<std::string> sources;
    std::vector<std::string> terminals;

    std::size_t m() const { return sources.size(); }
    std::size_t n() const { return terminals.size(); }

    bool has_node(std::string_view v) const { return std::find(nodes.begin(), nodes.end(), v) != nodes.end(); }

    const Edge* find_edge(std::string_view id) const {
        auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
        return it == edges.end() ? nullptr : &*it;
    }

    friend bool operator==(const SumNetwork&, const SumNetwork&) = default;
};

struct Violation {
    enum class Kind {
        duplicate_node,
        duplicate_edge_id,
        dangling_endpoint,
        unknown_role_node,
        duplicate_role,
        source_is_terminal,
        source_has_in_edge,
        terminal_has_out_edge,
        cycle,
    };
    Kind kind;
    std::string detail;
};

/// All invariant violations of net; empty means the network is well formed.
inline std::vector<Violation> validate(const SumNetwork& net) {
    using K = Violation::Kind;
    std::vector<Violation> out;
    std::set<std::string> node_set;
    for (const auto& v : net.nodes)
        if (!node_set.insert(v).second) out.push_back({K::duplicate_node, "node '" + v + "' listed twice"});
    std::set<std::string> ids;
    for (const auto& e : net.edges) {
        if (!ids.insert(e.id).second) out.push_back({K::duplicate_edge_id, "edge id '" + e.id + "' used twice"});
        if (!node_set.count(e.tail)) out.push_back({K::dangling_endpoint, "edge '" + e.id + "' has unknown tail '" + e.tail + "'"});
        if (!node_set.count(e.head)) out.push_back({K::dangling_endpoint, "edge '" + e.id + "' has unknown head '" + e.head + "'"});
    }
    std::set<std::string> srcs, terms;
    for (const auto& s : net.sources) {
        if (!node_set.count(s)) out.push_back({K::unknown_role_node, "source '" + s + "' is not a node"});
        if (!srcs.insert(s).second) out.push_back({K::duplicate_role, "source '" + s + "' listed twice"});
    }
    for (const auto& t : net.terminals) {
        if (!node_set.count(t)) out.push_back({K::unknown_role_node, "terminal '" + t + "' is not a node"});
        if (!terms.insert(t).second) out.push_back({K::duplicate_role, "terminal '" + t + "' listed twice"});
        if (srcs.count(t)) out.push_back({K::source_is_terminal, "node '" + t + "' is both source and terminal"});
    }
    for (const auto& e : net.edges) {
        if (srcs.count(e.head)) out.push_back({K::source_has_in_edge, "source '" + e.head + "' has in-edge '" + e.id + "'"});
        if (terms.count(e.tail)) out.push_back({K::terminal_has_out_edge, "terminal '" + e.tail + "' has out-edge '" + e.id + "'"});
    }
    // Kahn's algorithm over nodes; whatever remains lies on or behind a cycle.
    std::map<std::string, std::size_t> indeg;
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& v : node_set) indeg[v] = 0;
    for (const auto& e : net.edges) {
        if (!node_set.count(e.tail) || !node_set.count(e.head)) continue;
        ++indeg[e.head];
        succ[e.tail].push_back(e.head);
    }
    std::deque<std::string> ready;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        const std::string v = ready.front();
        ready.pop_front();
        ++seen;
        for (const auto& w : succ[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (seen != node_set.size()) {
        std::string stuck;
        for (const auto& [v, d] : indeg)
            if (d > 0) stuck += (stuck.empty() ? "" : ", ") + v;
        out.push_back({K::cycle, "directed cycle among nodes {" + stuck + "}"});
    }
    return out;
}

inline void require_valid(const SumNetwork& net) {
    const auto v = validate(net);
    if (v.empty()) return;
    std::string msg = "invalid network '" + net.name + "':";
    for (const auto& x : v) msg += " " + x.detail + ";";
    throw error(msg);
}

/**
 * Index view of a validated network.
 *
 * In-edge and out-edge lists are sorted by edge id, which fixes the input
 * order of every node function independently of the edge list order.
 */
class Topology {
public:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    explicit Topology(SumNetwork net) : net_(std::move(net)) {
        require_valid(net_);
        for (std::size_t i = 0; i < net_.nodes.size(); ++i) node_index_.emplace(net_.nodes[i], i);
        for (std::size_t i = 0; i < net_.edges.size(); ++i) edge_index_.emplace(net_.edges[i].id, i);
        const std::size_t nv = net_.nodes.size();
        in_.resize(nv);
        out_.resize(nv);
        source_of_.assign(nv, none);
        terminal_of_.assign(nv, none);
        for (std::size_t i = 0; i < net_.edges.size(); ++i) {
            tail_.push_back(node_index_.at(net_.edges[i].tail));
            head_.push_back(node_index_.at(net_.edges[i].head));
            out_[tail_.back()].push_back(i);
            in_[head_.back()].push_back(i);
        }
        auto by_id = [this](std::size_t a, std::size_t b) { return net_.edges[a].id < net_.edges[b].id; };
        for (auto& v : in_) std::sort(v.begin(), v.end(), by_id);
        for (auto& v : out_) std::sort(v.begin(), v.end(), by_id);
        for (std::size_t i = 0; i < net_.sources.size(); ++i) {
            sources_.push_back(node_index_.at(net_.sources[i]));
            source_of_[sources_.back()] = i;
        }
        for (std::size_t i = 0; i < net_.terminals.size(); ++i) {
            terminals_.push_back(node_index_.at(net_.terminals[i]));
            terminal_of_[terminals_.back()] = i;
        }
        build_edge_order();
    }

    const SumNetwork& network() const { return net_; }
    std::size_t node_count() const { return net_.nodes.size(); }
    std::size_t edge_count() const { return net_.edges.size(); }

    std::size_t node(std::string_view name) const {
        auto it = node_index_.find(std::string(name));
        if (it == node_index_.end()) throw error("unknown node '" + std::string(name) + "'");
        return it->second;
    }
    std::size_t edge(std::string_view id) const {
        auto it = edge_index_.find(std::string(id));
        if (it == edge_index_.end()) throw error("unknown edge '" + std::string(id) + "'");
        return it->second;
    }
    std::optional<std::size_t> find_edge(std::string_view id) const {
        auto it = edge_index_.find(std::string(id));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }
    const std::string& node_name(std::size_t v) const { return net_.nodes[v]; }
    const std::string& edge_id(std::size_t e) const { return net_.edges[e].id; }

    std::size_t tail(std::size_t e) const { return tail_[e]; }
    std::size_t head(std::size_t e) const { return head_[e]; }
    const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }

    /// Position of edge e in in_edges(head(e)).
    std::size_t in_position(std::size_t e) const {
        const auto& v = in_[head_[e]];
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), e) - v.begin());
    }

    const std::vector<std::size_t>& sources() const { return sources_; }
    const std::vector<std::size_t>& terminals() const { return terminals_; }
    /// Index into sources(), or none.
    std::size_t source_of(std::size_t v) const { return source_of_[v]; }
    std::size_t terminal_of(std::size_t v) const { return terminal_of_[v]; }
    bool is_source(std::size_t v) const { return source_of_[v] != none; }
    bool is_terminal(std::size_t v) const { return terminal_of_[v] != none; }

    /// Edges in topological order: each edge follows every edge into its tail.
    const std::vector<std::size_t>& edge_order() const { return order_; }

    /// Nodes from which v is reachable, v included.
    std::vector<bool> ancestors(std::size_t v) const {
        std::vector<bool> seen(node_count(), false);
        std::vector<std::size_t> stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t e : in_[x])
                if (!seen[tail_[e]]) {
                    seen[tail_[e]] = true;
                    stack.push_back(tail_[e]);
                }
        }
        return seen;
    }

    /// Nodes reachable from v, v included.
    std::vector<bool> descendants(std::size_t v) const {
        std::vector<bool> seen(node_count(), false);
        std::vector<std::size_t> stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t e : out_[x])
                if (!seen[head_[e]]) {
                    seen[head_[e]] = true;
                    stack.push_back(head_[e]);
                }
        }
        return seen;
    }

private:
    void build_edge_order() {
        // An edge becomes ready once every edge into its tail is placed; ties
        // are broken by smallest edge id.
        std::vector<std::size_t> pending(node_count());
        for (std::size_t v = 0; v < node_count(); ++v) pending[v] = in_[v].size();
        auto cmp = [this](std::size_t a, std::size_t b) { return net_.edges[a].id > net_.edges[b].id; };
        std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
        for (std::size_t v = 0; v < node_count(); ++v)
            if (pending[v] == 0)
                for (std::size_t e : out_[v]) ready.push(e);
        while (!ready.empty()) {
            const std::size_t e = ready.top();
            ready.pop();
            order_.push_back(e);
            if (--pending[head_[e]] == 0)
                for (std::size_t f : out_[head_[e]]) ready.push(f);
        }
        if (order_.size() != edge_count()) throw error("network '" + net_.name + "' is cyclic");
#ifdef SUMNET_CHECKED
        std::vector<bool> placed(edge_count(), false);
        for (std::size_t e : order_) {
            for (std::size_t f : in_[tail_[e]])
                if (!placed[f]) throw error("topological order violated");
            placed[e] = true;
        }
#endif
    }

    SumNetwork net_;
    std::unordered_map<std::string, std::size_t> node_index_, edge_index_;
    std::vector<std::size_t> tail_, head_;
    std::vector<std::vector<std::size_t>> in_, out_;
    std::vector<std::size_t> sources_, terminals_, source_of_, terminal_of_;
    std::vector<std::size_t> order_;
};

/// Edge ids in topological order, ties broken by edge id.
inline std::vector<std::string> topo_order(const SumNetwork& net) {
    const Topology topo(net);
    std::vector<std::string> out;
    for (std::size_t e : topo.edge_order()) out.push_back(topo.edge_id(e));
    return out;
}

/**
 * Unit-capacity max-flow from s to t, i.e. the number of edge-disjoint
 * s-t paths. BFS augmenting paths, arcs scanned in edge-list order.
 */
inline std::size_t min_cut(const SumNetwork& net, std::string_view s, std::string_view t) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) idx.emplace(net.nodes[i], i);
    auto at = [&](std::string_view v) {
        auto it = idx.find(std::string(v));
        if (it == idx.end()) throw error("unknown node '" + std::string(v) + "'");
        return it->second;
    };
    const std::size_t src = at(s), dst = at(t);
    if (src == dst) throw error("min_cut needs distinct endpoints");

    struct Arc {
        std::size_t to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::size_t>> adj(net.nodes.size());
    for (const auto& e : net.edges) {
        const std::size_t a = at(e.tail), b = at(e.head);
        adj[a].push_back(arcs.size());
        arcs.push_back({b, 1});
        adj[b].push_back(arcs.size());
        arcs.push_back({a, 0});
    }
    std::size_t flow = 0;
    for (;;) {
        std::vector<std::size_t> via(net.nodes.size(), Topology::none);
        std::vector<bool> seen(net.nodes.size(), false);
        std::deque<std::size_t> q{src};
        seen[src] = true;
        while (!q.empty() && !seen[dst]) {
            const std::size_t v = q.front();
            q.pop_front();
            for (std::size_t a : adj[v]) {
                if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
                    seen[arcs[a].to] = true;
                    via[arcs[a].to] = a;
                    q.push_back(arcs[a].to);
                }
            }
        }
        if (!seen[dst]) return flow;
        for (std::size_t v = dst; v != src;) {
            const std::size_t a = via[v];
            arcs[a].cap -= 1;
            arcs[a ^ 1].cap += 1;
            v = arcs[a ^ 1].to;
        }
        ++flow;
    }
}

/// Minimum of min_cut over all source-terminal pairs. Zero when either list is empty.
inline std::size_t min_cut_bound(const SumNetwork& net) {
    require_valid(net);
    if (net.sources.empty() || net.terminals.empty()) return 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& s : net.sources)
        for (const auto& t : net.terminals) best = std::min(best, min_cut(net, s, t));
    return best;
}

namespace detail {
inline constexpr std::string_view reversed_suffix = "-reversed";
}

/// Reverses every edge (ids kept) and swaps sources with terminals.
/// Applying it twice gives back the original network exactly.
inline SumNetwork reverse_network(const SumNetwork& net) {
    require_valid(net);
    SumNetwork out;
    if (net.name.ends_with(detail::reversed_suffix))
        out.name = net.name.substr(0, net.name.size() - detail::reversed_suffix.size());
    else
        out.name = net.name + std::string(detail::reversed_suffix);
    out.nodes = net.nodes;
    for (const auto& e : net.edges) out.edges.push_back({e.id, e.head, e.tail});
    out.sources = net.terminals;
    out.terminals = net.sources;
    return out;
}

/// "tail-head", suffixed with "~2", "~3", ... when that id is taken.
inline std::string fresh_edge_id(const SumNetwork& net, std::string_view tail, std::string_view head) {
    const std::string base = std::string(tail) + "-" + std::string(head);
    if (!net.find_edge(base)) return base;
    for (int i = 2;; ++i) {
        std::string id = base + "~" + std::to_string(i);
        if (!net.find_edge(id)) return id;
    }
}

inline SumNetwork add_edge(const SumNetwork& net, std::string_view tail, std::string_view head,
                           std::optional<std::string> id = std::nullopt) {
    if (!net.has_node(tail)) throw error("add_edge: unknown node '" + std::string(tail) + "'");
    if (!net.has_node(head)) throw error("add_edge: unknown node '" + std::string(head) + "'");
    SumNetwork out = net;
    std::string eid = id ? *id : fresh_edge_id(net, tail, head);
    if (net.find_edge(eid)) throw error("add_edge: edge id '" + eid + "' already exists");
    out.edges.push_back({std::move(eid), std::string(tail), std::string(head)});
    require_valid(out);
    return out;
}

/// Replaces edge (a, b) by a path a -> new_node -> b, at the same list position.
inline SumNetwork subdivide_edge(const SumNetwork& net, std::string_view edge_id, std::string_view new_node) {
    const Edge* old = net.find_edge(edge_id);
    if (!old) throw error("subdivide_edge: unknown edge '" + std::string(edge_id) + "'");
    if (net.has_node(new_node)) throw error("subdivide_edge: node '" + std::string(new_node) + "' already exists");
    SumNetwork out = net;
    out.nodes.emplace_back(new_node);
    const Edge e = *old;
    auto pos = std::find(out.edges.begin(), out.edges.end(), e);
    pos = out.edges.erase(pos);
    Edge first{"", e.tail, std::string(new_node)};
    first.id = fresh_edge_id(out, first.tail, first.head);
    pos = out.edges.insert(pos, first);
    Edge second{"", std::string(new_node), e.head};
    second.id = fresh_edge_id(out, second.tail, second.head);
    out.edges.insert(pos + 1, second);
    require_valid(out);
    return out;
}

}  // namespace sumnet
