/**************************************************************************
 * sumnet/catalog.hpp
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

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumnet/error.hpp"
#include "sumnet/network.hpp"
#include "sumnet/random.hpp"
#include "sumnet/rate.hpp"

namespace sumnet::catalog {

namespace detail {

inline SumNetwork build(std::string name, std::vector<std::string> nodes,
                        const std::vector<std::pair<std::string, std::string>>& arcs, std::vector<std::string> sources,
                        std::vector<std::string> terminals) {
    SumNetwork net;
    net.name = std::move(name);
    net.nodes = std::move(nodes);
    net.sources = std::move(sources);
    net.terminals = std::move(terminals);
    for (const auto& [a, b] : arcs) net.edges.push_back({fresh_edge_id(net, a, b), a, b});
    require_valid(net);
    return net;
}

}  // namespace detail

/// Three sources, three terminals, every pair connected, min-cut 1, yet no
/// rate-1 solution. Merge nodes u1 (s1, s3) and u2 (s2, s3) feed relays v1
/// and v2; t3 sees only v1 and v2.
inline SumNetwork s3() {
    return detail::build("s3", {"s1", "s2", "s3", "u1", "u2", "v1", "v2", "t1", "t2", "t3"},
                         {{"s1", "u1"},
                          {"s1", "t2"},
                          {"s2", "u2"},
                          {"s2", "t1"},
                          {"s3", "u1"},
                          {"s3", "u2"},
                          {"u1", "v1"},
                          {"u2", "v2"},
                          {"v1", "t1"},
                          {"v1", "t3"},
                          {"v2", "t2"},
                          {"v2", "t3"}},
                         {"s1", "s2", "s3"}, {"t1", "t2", "t3"});
}

/// s3 with (s2, t1) subdivided at u3, plus edges s1 -> u3 and s1 -> t1.
inline SumNetwork s3_prime() {
    SumNetwork net = subdivide_edge(s3(), "s2-t1", "u3");
    net = add_edge(net, "s1", "u3");
    net = add_edge(net, "s1", "t1");
    net.name = "s3-prime";
    return net;
}

/// Classic single-source butterfly: min-cut 2 to each of two terminals.
inline SumNetwork butterfly() {
    return detail::build("butterfly", {"s", "a", "b", "c", "d", "t1", "t2"},
                         {{"s", "a"}, {"s", "b"}, {"a", "t1"}, {"a", "c"}, {"b", "c"}, {"b", "t2"}, {"c", "d"}, {"d", "t1"}, {"d", "t2"}},
                         {"s"}, {"t1", "t2"});
}

inline SumNetwork reverse_butterfly() { return reverse_network(butterfly()); }

inline SumNetwork chain() { return detail::build("chain", {"s", "a", "t"}, {{"s", "a"}, {"a", "t"}}, {"s"}, {"t"}); }

inline SumNetwork one_edge() { return detail::build("one-edge", {"s", "t"}, {{"s", "t"}}, {"s"}, {"t"}); }

/// Two sources meeting at u, which feeds two terminals. Min-cut 1.
inline SumNetwork diamond() {
    return detail::build("diamond", {"s1", "s2", "u", "t1", "t2"}, {{"s1", "u"}, {"s2", "u"}, {"u", "t1"}, {"u", "t2"}},
                         {"s1", "s2"}, {"t1", "t2"});
}

/// diamond with every edge doubled: per-source min-cut 2.
inline SumNetwork doubled_diamond() {
    return detail::build("doubled-diamond", {"s1", "s2", "u", "t1", "t2"},
                         {{"s1", "u"}, {"s1", "u"}, {"s2", "u"}, {"s2", "u"}, {"u", "t1"}, {"u", "t1"}, {"u", "t2"}, {"u", "t2"}},
                         {"s1", "s2"}, {"t1", "t2"});
}

/// Complete bipartite sources x terminals with direct edges.
inline SumNetwork bipartite(std::size_t m, std::size_t n) {
    std::vector<std::string> nodes, sources, terminals;
    for (std::size_t i = 1; i <= m; ++i) sources.push_back("s" + std::to_string(i));
    for (std::size_t j = 1; j <= n; ++j) terminals.push_back("t" + std::to_string(j));
    nodes = sources;
    nodes.insert(nodes.end(), terminals.begin(), terminals.end());
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const auto& s : sources)
        for (const auto& t : terminals) arcs.emplace_back(s, t);
    return detail::build("bipartite-" + std::to_string(m) + "x" + std::to_string(n), nodes, arcs, sources, terminals);
}

/**
 * Random layered network with m sources and n terminals in which every
 * source-terminal pair is connected. Relay r_j takes two inputs among the
 * sources and earlier relays; each terminal listens to one or two relays;
 * a few direct source-terminal edges are sprinkled in; finally each
 * disconnected pair gets a direct edge. Deterministic per seed.
 */
inline SumNetwork random_connected(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw error("random_connected needs m, n >= 1");
    Rng rng(seed);
    SumNetwork net;
    net.name = "random-" + std::to_string(m) + "x" + std::to_string(n) + "-s" + std::to_string(seed);
    const std::size_t relays = std::max<std::size_t>(2, (m + n) / 2);
    for (std::size_t i = 1; i <= m; ++i) net.sources.push_back("s" + std::to_string(i));
    for (std::size_t j = 1; j <= n; ++j) net.terminals.push_back("t" + std::to_string(j));
    std::vector<std::string> relay_names;
    for (std::size_t r = 1; r <= relays; ++r) relay_names.push_back("r" + std::to_string(r));
    net.nodes = net.sources;
    net.nodes.insert(net.nodes.end(), relay_names.begin(), relay_names.end());
    net.nodes.insert(net.nodes.end(), net.terminals.begin(), net.terminals.end());
    auto link = [&](const std::string& a, const std::string& b) { net.edges.push_back({fresh_edge_id(net, a, b), a, b}); };

    for (std::size_t r = 0; r < relays; ++r) {
        std::vector<std::string> pool = net.sources;
        pool.insert(pool.end(), relay_names.begin(), relay_names.begin() + static_cast<std::ptrdiff_t>(r));
        const std::size_t first = rng.below(pool.size());
        link(pool[first], relay_names[r]);
        if (pool.size() > 1) {
            std::size_t second = rng.below(pool.size() - 1);
            if (second >= first) ++second;
            link(pool[second], relay_names[r]);
        }
    }
    for (const auto& t : net.terminals) {
        const std::size_t first = rng.below(relays);
        link(relay_names[first], t);
        if (rng.chance(1, 2)) {
            std::size_t second = rng.below(relays - 1);
            if (second >= first) ++second;
            link(relay_names[second], t);
        }
    }
    for (const auto& s : net.sources)
        if (rng.chance(1, 4)) link(s, net.terminals[rng.below(n)]);
    for (const auto& s : net.sources)
        for (const auto& t : net.terminals)
            if (min_cut(net, s, t) == 0) link(s, t);
    require_valid(net);
    return net;
}

struct Fact {
    std::string statement;
    std::string provenance;
};

struct CatalogEntry {
    enum class Confidence { textual, derived };

    std::string name;
    SumNetwork network;
    std::optional<Rate> exact_capacity;
    std::vector<Fact> facts;
    Confidence confidence = Confidence::derived;
};

inline std::string to_string(CatalogEntry::Confidence c) {
    return c == CatalogEntry::Confidence::textual ? "textual" : "derived";
}

/// Named fixed entries, in listing order.
inline std::vector<std::string> names() {
    return {"s3",      "s3-prime",        "butterfly",     "reverse-butterfly", "chain",      "one-edge",
            "diamond", "doubled-diamond", "bipartite-3x3", "random-4x4",        "random-5x4", "random-5x5"};
}

inline std::optional<std::size_t> parse_size(std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

/**
 * Looks up a catalog entry. Besides names(), accepts the parametric forms
 * "bipartite-MxN" and "random-MxN" / "random-MxN-sSEED" (seed defaults to 1).
 */
inline std::optional<CatalogEntry> find(std::string_view name) {
    using C = CatalogEntry::Confidence;
    const std::string converse = "three-slot time-sharing achieves 2/3; a terminal behind a two-edge cut "
                                 "recovers all three source blocks, so |G|^{2l} >= |G|^{3k}";
    if (name == "s3")
        return CatalogEntry{"s3", s3(), Rate(2, 3),
                            {{"capacity and linear coding capacity equal 2/3", converse},
                             {"no rate-1 solution over any alphabet", "exhaustive search over Z_2..Z_5 and GF(2..4) in this library"},
                             {"topology reconstructed from the edges used in the converse argument", "textual reconstruction"}},
                            C::textual};
    if (name == "s3-prime")
        return CatalogEntry{"s3-prime", s3_prime(), Rate(2, 3),
                            {{"capacity and linear coding capacity equal 2/3", converse},
                             {"obtained from s3 by subdividing (s2,t1) at u3 and adding s1->u3, s1->t1", "textual reconstruction"}},
                            C::textual};
    if (name == "butterfly")
        return CatalogEntry{"butterfly", butterfly(), Rate(2, 1),
                            {{"single-source multicast: capacity equals the min-cut 2", "multicast min-cut theorem"}},
                            C::derived};
    if (name == "reverse-butterfly")
        return CatalogEntry{"reverse-butterfly", reverse_butterfly(), Rate(2, 1),
                            {{"one terminal: capacity equals the min-cut 2", "dual of the butterfly multicast code"}},
                            C::derived};
    if (name == "chain")
        return CatalogEntry{"chain", chain(), Rate(1, 1), {{"forwarding achieves the min-cut 1", "trivial"}}, C::derived};
    if (name == "one-edge")
        return CatalogEntry{"one-edge", one_edge(), Rate(1, 1), {{"forwarding achieves the min-cut 1", "trivial"}}, C::derived};
    if (name == "diamond")
        return CatalogEntry{"diamond", diamond(), Rate(1, 1),
                            {{"u forwards s1+s2: rate 1 equals the min-cut", "direct construction"}}, C::derived};
    if (name == "doubled-diamond")
        return CatalogEntry{"doubled-diamond", doubled_diamond(), Rate(2, 1),
                            {{"per-source min-cut 2; u forwards both coordinate sums", "direct construction"}}, C::derived};
    if (name.starts_with("bipartite-")) {
        auto dims = name.substr(10);
        auto x = dims.find('x');
        if (x == std::string_view::npos) return std::nullopt;
        auto m = parse_size(dims.substr(0, x)), n = parse_size(dims.substr(x + 1));
        if (!m || !n || *m < 1 || *n < 1 || *m > 16 || *n > 16) return std::nullopt;
        return CatalogEntry{std::string(name), bipartite(*m, *n), Rate(1, 1),
                            {{"each terminal sums its direct in-edges: rate 1 equals the min-cut", "direct construction"}},
                            C::derived};
    }
    if (name.starts_with("random-")) {
        auto rest = name.substr(7);
        std::uint64_t seed = 1;
        if (auto dash = rest.find("-s"); dash != std::string_view::npos) {
            auto s = parse_size(rest.substr(dash + 2));
            if (!s) return std::nullopt;
            seed = *s;
            rest = rest.substr(0, dash);
        }
        auto x = rest.find('x');
        if (x == std::string_view::npos) return std::nullopt;
        auto m = parse_size(rest.substr(0, x)), n = parse_size(rest.substr(x + 1));
        if (!m || !n || *m < 1 || *n < 1 || *m > 12 || *n > 12) return std::nullopt;
        return CatalogEntry{std::string(name), random_connected(*m, *n, seed), std::nullopt,
                            {{"every source-terminal pair is connected", "generator post-condition"}}, C::derived};
    }
    return std::nullopt;
}

inline CatalogEntry get(std::string_view name) {
    auto e = find(name);
    if (!e) throw error("unknown catalog network '" + std::string(name) + "'");
    return *e;
}

}  // namespace sumnet::catalog
