/**************************************************************************
 * tests/test_codec.cpp
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

#include "oracles.hpp"
#include "sumnet/sumnet.hpp"

using namespace sumnet;

namespace {

FMatrix one(const Alphabet& f, Elem v) { return FMatrix(f, 1, 1, {v}); }

// Scalar code from (a, b, value) triples.
LinearCode scalar(const Alphabet& f, std::vector<std::tuple<std::string, std::string, Elem>> inj,
                  std::vector<std::tuple<std::string, std::string, Elem>> trans,
                  std::vector<std::tuple<std::string, std::string, Elem>> dec) {
    LinearCode c;
    c.field = f;
    for (auto& [a, b, v] : inj) c.injection.emplace(KeyPair{a, b}, one(f, v));
    for (auto& [a, b, v] : trans) c.transition.emplace(KeyPair{a, b}, one(f, v));
    for (auto& [a, b, v] : dec) c.decoding.emplace(KeyPair{a, b}, one(f, v));
    return c;
}

SumNetwork only_terminals(SumNetwork net, std::vector<std::string> ts) {
    net.terminals = std::move(ts);
    return net;
}

}  // namespace

TEST(VerifyLinear, DiamondSum) {
    const auto f = Alphabet::field(3);
    auto c = scalar(f, {{"s1", "s1-u", 1}, {"s2", "s2-u", 1}},
                    {{"s1-u", "u-t1", 1}, {"s2-u", "u-t1", 1}, {"s1-u", "u-t2", 1}, {"s2-u", "u-t2", 1}},
                    {{"t1", "u-t1", 1}, {"t2", "u-t2", 1}});
    EXPECT_TRUE(verify_linear(catalog::diamond(), c));
    c.transition.at({"s2-u", "u-t2"}) = one(f, 2);
    EXPECT_FALSE(verify_linear(catalog::diamond(), c));
}

// Two-terminal slot codes on S3 given by explicit coefficients.
TEST(VerifyLinear, S3TwoTerminalSubproblems) {
    const auto f = Alphabet::field(2);
    const auto s3 = catalog::s3();
    std::vector<std::tuple<std::string, std::string, Elem>> inj;
    for (const auto& e : s3.edges)
        if (e.tail[0] == 's') inj.emplace_back(e.tail, e.id, 1);
    std::vector<std::tuple<std::string, std::string, Elem>> sum_both{{"s1-u1", "u1-v1", 1}, {"s3-u1", "u1-v1", 1},
                                                                     {"s2-u2", "u2-v2", 1}, {"s3-u2", "u2-v2", 1},
                                                                     {"u1-v1", "v1-t1", 1}, {"u1-v1", "v1-t3", 1},
                                                                     {"u2-v2", "v2-t2", 1}, {"u2-v2", "v2-t3", 1}};
    const auto c12 = scalar(f, inj, sum_both, {{"t1", "s2-t1", 1}, {"t1", "v1-t1", 1}, {"t2", "s1-t2", 1}, {"t2", "v2-t2", 1}});
    EXPECT_TRUE(verify_linear(only_terminals(s3, {"t1", "t2"}), c12));
    EXPECT_FALSE(verify_linear(s3, c12));

    auto f2_is_x2 = sum_both;
    std::erase_if(f2_is_x2, [](const auto& t) { return std::get<0>(t) == "s3-u2"; });
    const auto c13 = scalar(f, inj, f2_is_x2, {{"t1", "s2-t1", 1}, {"t1", "v1-t1", 1}, {"t3", "v1-t3", 1}, {"t3", "v2-t3", 1}});
    EXPECT_TRUE(verify_linear(only_terminals(s3, {"t1", "t3"}), c13));
}

TEST(VerifyLinear, ButterflyMulticast) {
    const auto f = Alphabet::field(2);
    LinearCode c;
    c.k = 2;
    c.l = 1;
    c.field = f;
    auto col = [&](Elem a, Elem b) { return FMatrix(f, 2, 1, {a, b}); };
    auto row = [&](Elem a, Elem b) { return FMatrix(f, 1, 2, {a, b}); };
    c.injection.emplace(KeyPair{"s", "s-a"}, col(1, 0));
    c.injection.emplace(KeyPair{"s", "s-b"}, col(0, 1));
    c.transition.emplace(KeyPair{"s-a", "a-t1"}, one(f, 1));
    c.transition.emplace(KeyPair{"s-a", "a-c"}, one(f, 1));
    c.transition.emplace(KeyPair{"s-b", "b-c"}, one(f, 1));
    c.transition.emplace(KeyPair{"s-b", "b-t2"}, one(f, 1));
    c.transition.emplace(KeyPair{"a-c", "c-d"}, one(f, 1));
    c.transition.emplace(KeyPair{"b-c", "c-d"}, one(f, 1));
    c.transition.emplace(KeyPair{"c-d", "d-t1"}, one(f, 1));
    c.transition.emplace(KeyPair{"c-d", "d-t2"}, one(f, 1));
    c.decoding.emplace(KeyPair{"t1", "a-t1"}, row(1, 1));
    c.decoding.emplace(KeyPair{"t1", "d-t1"}, row(0, 1));
    c.decoding.emplace(KeyPair{"t2", "b-t2"}, row(1, 1));
    c.decoding.emplace(KeyPair{"t2", "d-t2"}, row(1, 0));
    EXPECT_TRUE(verify_linear(catalog::butterfly(), c));
    const auto a = global_transfer(catalog::butterfly(), c);
    EXPECT_EQ(a.at({"s", "c-d"}), col(1, 1));
    EXPECT_EQ(a.at({"s", "d-t2"}), col(1, 1));
}

TEST(VerifyLinear, BindingErrors) {
    const auto f = Alphabet::field(2);
    const auto chain = catalog::chain();
    auto good = scalar(f, {{"s", "s-a", 1}}, {{"s-a", "a-t", 1}}, {{"t", "a-t", 1}});
    EXPECT_TRUE(verify_linear(chain, good));
    auto c = good;
    c.transition.emplace(KeyPair{"a-t", "s-a"}, one(f, 1));
    EXPECT_THROW(verify_linear(chain, c), error);
    c = good;
    c.injection.emplace(KeyPair{"a", "a-t"}, one(f, 1));
    EXPECT_THROW(verify_linear(chain, c), error);
    c = good;
    c.decoding.at({"t", "a-t"}) = FMatrix(f, 2, 1);
    EXPECT_THROW(verify_linear(chain, c), error);
    c = good;
    c.decoding.at({"t", "a-t"}) = FMatrix(Alphabet::field(3), 1, 1, {1});
    EXPECT_THROW(verify_linear(chain, c), error);
    c = good;
    c.decoding.clear();
    EXPECT_FALSE(verify_linear(chain, c));
}

TEST(VerifyTable, BipartiteSumTables) {
    const auto net = catalog::bipartite(3, 3);
    const auto g = Alphabet::group({2});
    TableCode c;
    c.alphabet = g;
    for (const auto& e : net.edges) c.edges[e.id] = {0, 1};
    for (const auto& t : net.terminals) {
        std::vector<std::uint32_t> tab(8);
        for (unsigned i = 0; i < 8; ++i) tab[i] = __builtin_popcount(i) & 1;
        c.decoders[t] = tab;
    }
    EXPECT_TRUE(verify_table(net, c));
    c.decoders["t2"][7] = 0;
    EXPECT_FALSE(verify_table(net, c));
    c.decoders["t2"].pop_back();
    EXPECT_THROW(verify_table(net, c), error);
}

TEST(VerifyTable, EnumerationBudget) {
    const auto net = catalog::bipartite(3, 3);
    TableCode c;
    c.alphabet = Alphabet::group({8});
    EXPECT_THROW(verify_table(net, c, 100), budget_exceeded);
    EXPECT_THROW(verify_table(net, c, default_enumeration_budget, 100), budget_exceeded);
}

// Oracle equivalence: a linear code verifies iff its table expansion does.
TEST(VerifyLinear, AgreesWithTableExpansion) {
    struct Case {
        SumNetwork net;
        Alphabet f;
        int k, l;
    };
    const std::vector<Case> cases{
        {catalog::one_edge(), Alphabet::field(3), 1, 1},   {catalog::chain(), Alphabet::field(2), 2, 2},
        {catalog::diamond(), Alphabet::field(2), 1, 1},    {catalog::diamond(), Alphabet::field(3), 1, 1},
        {catalog::butterfly(), Alphabet::field(2), 2, 1},  {catalog::reverse_butterfly(), Alphabet::field(2), 2, 1},
        {catalog::s3(), Alphabet::field(2), 1, 1},         {catalog::bipartite(2, 2), Alphabet::field(2, 2), 1, 1},
        {catalog::doubled_diamond(), Alphabet::field(2), 2, 2},
    };
    Rng rng(2024);
    int agree = 0, positives = 0;
    for (int i = 0; i < 200; ++i) {
        const Case& cs = cases[static_cast<std::size_t>(i) % cases.size()];
        LinearCode c;
        if (i % 2 == 0) {
            c = oracle::random_code(cs.net, cs.f, cs.k, cs.l, rng);
        } else {
            auto found = search_random_linear(cs.net, cs.f, cs.k, cs.l, 200, rng.below(1000));
            if (found.status != SearchStatus::found) {
                c = oracle::random_code(cs.net, cs.f, cs.k, cs.l, rng);
            } else {
                c = *found.linear_witness;
                // Perturb one decoding entry half of the time.
                if (rng.chance(1, 2) && !c.decoding.empty()) {
                    auto it = c.decoding.begin();
                    std::advance(it, static_cast<long>(rng.below(c.decoding.size())));
                    it->second.set(0, 0, cs.f.add(it->second(0, 0), 1));
                }
            }
        }
        const bool lin = verify_linear(cs.net, c);
        const bool tab = verify_table(cs.net, linearize(cs.net, c));
        EXPECT_EQ(lin, tab) << "case " << i << " on " << cs.net.name;
        agree += lin == tab;
        positives += lin;
    }
    EXPECT_EQ(agree, 200);
    EXPECT_GT(positives, 20);
    EXPECT_LT(positives, 180);
}

TEST(CodeFormat, RoundTrips) {
    Rng rng(9);
    const auto net = catalog::butterfly();
    const auto c = oracle::random_code(net, Alphabet::field(2, 2), 2, 1, rng);
    const auto text = io::emit_code(c);
    const auto back = io::parse_code(text);
    ASSERT_TRUE(back.linear);
    EXPECT_EQ(*back.linear, c);
    EXPECT_EQ(io::emit_code(*back.linear), text);
    const auto t = linearize(net, c);
    const auto tt = io::parse_code(io::emit_code(t));
    ASSERT_TRUE(tt.table);
    EXPECT_EQ(*tt.table, t);
}

TEST(CodeFormat, RejectsMalformed) {
    EXPECT_THROW(io::parse_code(R"({"kind":"linear"})"), format_error);
    EXPECT_THROW(io::parse_code(R"({"kind":"other","alphabet":"gf2","k":1,"l":1})"), format_error);
    EXPECT_THROW(io::parse_code(R"({"kind":"linear","alphabet":"gf2","k":1,"l":1,"injection":[{"source":"s","edge":"e","matrix":[[2]]}],"transition":[],"decoding":[]})"),
                 std::exception);
    EXPECT_THROW(io::parse_code(R"({"kind":"linear","alphabet":"gf2","k":1,"l":1,"injection":[{"source":"s","edge":"e","matrix":[[1,0]]}],"transition":[],"decoding":[]})"),
                 format_error);
}
