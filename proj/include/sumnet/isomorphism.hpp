/**************************************************************************
 * sumnet/isomorphism.hpp
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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumnet/network.hpp"

namespace sumnet {

namespace detail {

struct RoleGraph {
    std::size_t n = 0;
    std::vector<int> role;                   // 0 internal, 1 source, 2 terminal
    std::vector<std::vector<int>> mult;      // mult[a][b] = number of parallel a->b edges
    std::vector<int> indeg, outdeg;

    explicit RoleGraph(const SumNetwork& net) : n(net.nodes.size()) {
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) idx[net.nodes[i]] = i;
        role.assign(n, 0);
        for (const auto& s : net.sources) role[idx.at(s)] = 1;
        for (const auto& t : net.terminals) role[idx.at(t)] = 2;
        mult.assign(n, std::vector<int>(n, 0));
        indeg.assign(n, 0);
        outdeg.assign(n, 0);
        for (const auto& e : net.edges) {
            const std::size_t a = idx.at(e.tail), b = idx.at(e.head);
            ++mult[a][b];
            ++outdeg[a];
            ++indeg[b];
        }
    }

    bool compatible(std::size_t a, const RoleGraph& o, std::size_t b) const {
        return role[a] == o.role[b] && indeg[a] == o.indeg[b] && outdeg[a] == o.outdeg[b];
    }
};

inline bool extend(const RoleGraph& g, const RoleGraph& h, std::vector<std::size_t>& map, std::vector<bool>& used,
                   std::size_t next) {
    if (next == g.n) return true;
    for (std::size_t cand = 0; cand < h.n; ++cand) {
        if (used[cand] || !g.compatible(next, h, cand)) continue;
        bool ok = g.mult[next][next] == h.mult[cand][cand];
        for (std::size_t prev = 0; ok && prev < next; ++prev)
            ok = g.mult[next][prev] == h.mult[cand][map[prev]] && g.mult[prev][next] == h.mult[map[prev]][cand];
        if (!ok) continue;
        map[next] = cand;
        used[cand] = true;
        if (extend(g, h, map, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace detail

/**
 * Node bijection a -> b preserving edge multiplicities and node roles
 * (sources map to sources, terminals to terminals, in any order), or
 * nullopt. Plain backtracking with degree filtering; fine for the
 * few-dozen-node networks handled here.
 */
inline std::optional<std::map<std::string, std::string>> find_isomorphism(const SumNetwork& a, const SumNetwork& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size() || a.m() != b.m() || a.n() != b.n())
        return std::nullopt;
    const detail::RoleGraph g(a), h(b);
    std::vector<std::size_t> map(g.n, 0);
    std::vector<bool> used(h.n, false);
    if (!detail::extend(g, h, map, used, 0)) return std::nullopt;
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < g.n; ++i) out[a.nodes[i]] = b.nodes[map[i]];
    return out;
}

inline bool isomorphic(const SumNetwork& a, const SumNetwork& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace sumnet
