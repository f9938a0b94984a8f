/**************************************************************************
 * tests/test_netgraph.cpp
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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sumnet/catalog.hpp"
#include "sumnet/io.hpp"
#include "sumnet/isomorphism.hpp"
#include "sumnet/network.hpp"

using namespace sumnet;

namespace {

bool has(const std::vector<Violation>& v, Violation::Kind k) {
    for (const auto& x : v)
        if (x.kind == k) return true;
    return false;
}

SumNetwork tiny() {
    SumNetwork n;
    n.name = "tiny";
    n.nodes = {"s", "a", "t"};
    n.edges = {{"e1", "s", "a"}, {"e2", "a", "t"}};
    n.sources = {"s"};
    n.terminals = {"t"};
    return n;
}

}  // namespace

TEST(Validate, AcceptsCatalog) {
    for (const auto& name : catalog::names()) EXPECT_TRUE(validate(catalog::get(name).network).empty()) << name;
}

TEST(Validate, ReportsEachViolation) {
    using K = Violation::Kind;
    auto n = tiny();
    n.nodes.push_back("a");
    EXPECT_TRUE(has(validate(n), K::duplicate_node));
    n = tiny();
    n.edges.push_back({"e1", "s", "t"});
    EXPECT_TRUE(has(validate(n), K::duplicate_edge_id));
    n = tiny();
    n.edges.push_back({"e3", "s", "x"});
    EXPECT_TRUE(has(validate(n), K::dangling_endpoint));
    n = tiny();
    n.terminals.push_back("zz");
    EXPECT_TRUE(has(validate(n), K::unknown_role_node));
    n = tiny();
    n.sources.push_back("s");
    EXPECT_TRUE(has(validate(n), K::duplicate_role));
    n = tiny();
    n.terminals.push_back("s");
    EXPECT_TRUE(has(validate(n), K::source_is_terminal));
    n = tiny();
    n.edges.push_back({"e3", "a", "s"});
    EXPECT_TRUE(has(validate(n), K::source_has_in_edge));
    n = tiny();
    n.nodes.push_back("b");
    n.edges.push_back({"e3", "t", "b"});
    EXPECT_TRUE(has(validate(n), K::terminal_has_out_edge));
    n = tiny();
    n.nodes.push_back("b");
    n.edges.push_back({"e3", "a", "b"});
    n.edges.push_back({"e4", "b", "a"});
    EXPECT_TRUE(has(validate(n), K::cycle));
    EXPECT_THROW(require_valid(n), error);
}

TEST(Topology, OrderRespectsPrecedenceAndTiesByEdgeId) {
    const auto order = topo_order(catalog::s3());
    const std::vector<std::string> expect{"s1-t2", "s1-u1", "s2-t1", "s2-u2", "s3-u1", "s3-u2",
                                          "u1-v1", "u2-v2", "v1-t1", "v1-t3", "v2-t2", "v2-t3"};
    EXPECT_EQ(order, expect);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto net = oracle::random_dag(seed, 6, 10);
        const auto ord = topo_order(net);
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < ord.size(); ++i) pos[ord[i]] = i;
        for (const auto& a : net.edges)
            for (const auto& b : net.edges)
                if (a.head == b.tail) { EXPECT_LT(pos[a.id], pos[b.id]); }
    }
}

TEST(MinCut, MatchesBruteForceOnRandomDags) {
    int nontrivial = 0;
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        const auto net = oracle::random_dag(seed, 5, 10);
        ASSERT_LE(net.edges.size(), 10u);
        for (const auto& s : net.nodes)
            for (const auto& t : net.nodes) {
                if (s == t) continue;
                const std::size_t c = min_cut(net, s, t);
                ASSERT_EQ(c, oracle::brute_min_cut(net, s, t)) << net.name << " " << s << "->" << t;
                if (c >= 2) ++nontrivial;
            }
    }
    EXPECT_GT(nontrivial, 20);
}

TEST(MinCut, CatalogValues) {
    EXPECT_EQ(min_cut_bound(catalog::s3()), 1u);
    EXPECT_EQ(min_cut_bound(catalog::s3_prime()), 1u);
    EXPECT_EQ(min_cut_bound(catalog::butterfly()), 2u);
    EXPECT_EQ(min_cut(catalog::butterfly(), "s", "t1"), 2u);
    EXPECT_EQ(min_cut(catalog::doubled_diamond(), "s1", "t2"), 2u);
    EXPECT_THROW(min_cut(catalog::s3(), "s1", "nope"), error);
    EXPECT_THROW(min_cut(catalog::s3(), "s1", "s1"), error);
}

TEST(Reverse, InvolutionAndMinCutPreserved) {
    for (const auto& name : catalog::names()) {
        const auto net = catalog::get(name).network;
        const auto rev = reverse_network(net);
        EXPECT_EQ(rev.sources, net.terminals);
        EXPECT_EQ(rev.terminals, net.sources);
        EXPECT_EQ(reverse_network(rev), net) << name;
        EXPECT_EQ(min_cut_bound(rev), min_cut_bound(net)) << name;
        for (const auto& s : net.sources)
            for (const auto& t : net.terminals) EXPECT_EQ(min_cut(rev, t, s), min_cut(net, s, t));
    }
}

TEST(Surgery, AddAndSubdivide) {
    auto n = add_edge(tiny(), "s", "t");
    EXPECT_EQ(n.edges.back().id, "s-t");
    n = add_edge(n, "s", "t");
    EXPECT_EQ(n.edges.back().id, "s-t~2");
    EXPECT_THROW(add_edge(tiny(), "t", "s"), error);
    EXPECT_THROW(add_edge(tiny(), "s", "zz"), error);
    const auto d = subdivide_edge(tiny(), "e2", "m");
    EXPECT_EQ(d.edges.size(), 3u);
    EXPECT_EQ(min_cut(d, "s", "t"), 1u);
    EXPECT_TRUE(validate(d).empty());
    EXPECT_THROW(subdivide_edge(tiny(), "nope", "m"), error);
    EXPECT_THROW(subdivide_edge(tiny(), "e2", "a"), error);
}

TEST(Format, RoundTripIsByteStable) {
    for (const auto& name : catalog::names()) {
        const auto net = catalog::get(name).network;
        const std::string text = io::emit_network(net);
        const auto back = io::parse_network(text);
        EXPECT_EQ(back, net);
        EXPECT_EQ(io::emit_network(back), text);
    }
}

TEST(Format, RejectsMalformedDocuments) {
    EXPECT_THROW(io::parse_network("{"), format_error);
    EXPECT_THROW(io::parse_network("[]"), format_error);
    EXPECT_THROW(io::parse_network(R"({"name":"x","nodes":["a"],"edges":[{"id":"e"}],"sources":[],"terminals":[]})"), format_error);
    EXPECT_THROW(io::parse_network(R"({"name":"x","nodes":[1],"edges":[],"sources":[],"terminals":[]})"), format_error);
}

TEST(Isomorphism, FindsRelabelledS3) {
    auto net = catalog::s3();
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) rename[net.nodes[i]] = "x" + std::to_string(net.nodes.size() - i);
    SumNetwork r;
    r.name = "relabelled";
    for (auto it = net.nodes.rbegin(); it != net.nodes.rend(); ++it) r.nodes.push_back(rename[*it]);
    for (auto it = net.edges.rbegin(); it != net.edges.rend(); ++it) r.edges.push_back({"q" + it->id, rename[it->tail], rename[it->head]});
    for (const auto& s : {"s2", "s3", "s1"}) r.sources.push_back(rename[s]);
    for (const auto& t : {"t3", "t1", "t2"}) r.terminals.push_back(rename[t]);
    EXPECT_TRUE(isomorphic(net, r));
    const auto map = find_isomorphism(net, r);
    ASSERT_TRUE(map);
    // S3 has nontrivial automorphisms, so check the map is structure-preserving.
    std::multiset<std::pair<std::string, std::string>> mapped, target;
    for (const auto& e : net.edges) mapped.insert({map->at(e.tail), map->at(e.head)});
    for (const auto& e : r.edges) target.insert({e.tail, e.head});
    EXPECT_EQ(mapped, target);
    for (const auto& s : net.sources) EXPECT_NE(std::find(r.sources.begin(), r.sources.end(), map->at(s)), r.sources.end());
    for (const auto& t : net.terminals) EXPECT_NE(std::find(r.terminals.begin(), r.terminals.end(), map->at(t)), r.terminals.end());
    EXPECT_FALSE(isomorphic(net, catalog::s3_prime()));
    auto broken = r;
    broken.edges.pop_back();
    EXPECT_FALSE(isomorphic(net, broken));
}
