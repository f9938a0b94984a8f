/**************************************************************************
 * tests/acceptance.cpp
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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "sumnet/sumnet.hpp"

#ifndef SUMNET_CLI_PATH
#error "SUMNET_CLI_PATH must name the CLI binary"
#endif

using namespace sumnet;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
    bool ok = true;
    std::ostringstream log;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
};

// Every verified code produced below, for the duality sweep.
std::vector<std::pair<SumNetwork, LinearCode>> pool;

void keep(Check& c, const SumNetwork& net, const LinearCode& code, const std::string& what) {
    const bool v = verify_linear(net, code);
    c.expect(v, what + " verifies");
    if (v) pool.emplace_back(net, code);
}

SchemeOptions over(const char* field, std::uint64_t seed = 1) {
    SchemeOptions o;
    o.field = Alphabet::parse(field);
    o.seed = seed;
    return o;
}

void criterion1(Check& c) {
    const auto s3 = catalog::s3();
    for (unsigned q = 2; q <= 5; ++q) {
        const auto t0 = Clock::now();
        const auto o = search_table(s3, Alphabet::group({q}), 1, 1);
        const double dt = since(t0);
        c.log << "    table z" << q << ": " << to_string(o.status) << ", " << o.candidates_examined << " nodes, " << dt << " s\n";
        c.expect(o.status == SearchStatus::exhausted_none, "table search over z" + std::to_string(q) + " exhausts");
        c.expect(dt < 10, "table search over z" + std::to_string(q) + " under 10 s");
    }
    for (const char* f : {"gf2", "gf3", "gf4"}) {
        const auto t0 = Clock::now();
        const auto o = search_linear(s3, Alphabet::parse(f), 1, 1);
        const double dt = since(t0);
        c.log << "    linear " << f << ": " << to_string(o.status) << ", " << dt << " s\n";
        c.expect(o.status == SearchStatus::exhausted_none, std::string("linear search over ") + f + " exhausts");
        c.expect(dt < 10, std::string("linear search over ") + f + " under 10 s");
    }
    const auto t0 = Clock::now();
    oracle::NaiveZ2 naive(s3);
    const bool solvable = naive.solvable();
    const double dt = since(t0);
    c.log << "    unreduced z2 oracle over " << naive.space() << " assignments: " << (solvable ? "found" : "none") << ", " << dt << " s\n";
    c.expect(!solvable, "unreduced oracle agrees for z2");
    c.expect(dt < 60, "unreduced oracle under 60 s");
}

void criterion2(Check& c) {
    for (const auto& net : {catalog::s3(), catalog::s3_prime()}) {
        for (const char* f : {"gf2", "gf3"}) {
            const auto code = scheme_three_terminal(net, over(f));
            keep(c, net, code, net.name + " three-slot code over " + f);
            c.expect(code.k == 2 && code.l == 3, "(2,3) parameters");
            const auto o = search_linear(net, Alphabet::parse(f), 1, 1);
            c.expect(o.status == SearchStatus::exhausted_none, net.name + " has no (1,1) linear code over " + f);
        }
        const auto r = report(net);
        c.expect(r.exact && r.capacity && *r.capacity == Rate(2, 3), net.name + " report is exact 2/3");
        c.log << "    " << net.name << ": upper " << r.upper << ", lower " << r.lower << ", capacity "
              << (r.capacity ? r.capacity->str() : "?") << "\n";
    }
    const auto t0 = Clock::now();
    const auto o = search_linear(catalog::s3_prime(), Alphabet::field(2), 2, 2);
    const double dt = since(t0);
    c.log << "    s3-prime (2,2) gf2: " << to_string(o.status) << " over " << o.space << " encoders, " << dt << " s\n";
    c.expect(o.status == SearchStatus::exhausted_none, "s3-prime has no (2,2) linear code over gf2");
    c.expect(dt < 300, "(2,2) search under 5 min");
    c.expect(cut_counting_bound(2, 3) == Rate(2, 3), "cut-counting bound is 2/3");
}

// All codes we can build for a network, each verified.
std::vector<LinearCode> codes_for(Check& c, const SumNetwork& net, std::uint64_t seed) {
    std::vector<LinearCode> out;
    const std::size_t eta = min_cut_bound(net);
    const SchemeOptions opt = over("gf2", seed);
    if (std::min(net.m(), net.n()) >= 2) out.push_back(scheme_pairing(net, opt));
    if ((net.m() == 2 || net.n() == 2) && eta >= 1) out.push_back(scheme_two_source_halfmincut(net, opt));
    if (net.n() == 1) out.push_back(scheme_one_terminal(net, opt));
    if (net.m() == 1) out.push_back(scheme_multicast(net, net.sources[0], static_cast<int>(eta), opt));
    if (net.m() == 3 || net.n() == 3) out.push_back(scheme_three_terminal(net, opt));
    const auto r = search_random_linear(net, Alphabet::field(2), 1, 1, 50, seed);
    if (r.status == SearchStatus::found) out.push_back(*r.linear_witness);
    for (const auto& code : out) keep(c, net, code, net.name + " code");
    return out;
}

void criterion3(Check& c) {
    std::vector<SumNetwork> nets;
    for (const auto& n : catalog::names()) nets.push_back(catalog::get(n).network);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) nets.push_back(catalog::random_connected(2 + seed % 5, 2 + (seed / 5) % 4, seed));
    std::size_t count = 0;
    for (const auto& net : nets)
        for (const auto& code : codes_for(c, net, 17)) {
            ++count;
            c.expect(code.rate() <= upper_bound(net), net.name + ": rate " + code.rate().str() + " within the min-cut bound");
        }
    c.log << "    " << count << " verified codes over " << nets.size() << " networks\n";
    c.expect(upper_bound(catalog::s3()) == Rate(1, 1) && upper_bound(catalog::s3_prime()) == Rate(1, 1), "upper bound of s3 and s3-prime is 1");
}

void criterion4(Check& c) {
    const auto rb = catalog::reverse_butterfly();
    const auto b = catalog::butterfly();
    const SchemeOptions opt = over("gf2");
    const auto code = scheme_one_terminal(rb, opt);
    keep(c, rb, code, "reverse-butterfly one-terminal code");
    c.expect(code.k == 2 && code.l == 1, "(2,1) parameters");
    c.expect(code.rate() == Rate(static_cast<std::int64_t>(min_cut_bound(rb)), 1), "rate equals the min-cut bound 2");
    const auto mc = scheme_multicast(b, "s", 2, opt);
    c.expect(verify_linear(b, mc), "butterfly multicast verifies");
    c.expect(dual_code(b, mc) == code, "code is the dual of the butterfly multicast code");
}

void criterion6(Check& c) {
    const auto dd = catalog::doubled_diamond();
    const auto code = scheme_two_source_halfmincut(dd, over("gf2"));
    keep(c, dd, code, "doubled-diamond half-min-cut code");
    c.expect(code.k == 2 && code.l == 2, "(2,2) parameters, rate 1 = min-cut/2");
    std::vector<SumNetwork> nets{catalog::diamond()};
    for (std::uint64_t seed = 1; nets.size() < 8; ++seed) {
        auto n = catalog::random_connected(2 + seed % 4, 2, seed);
        if (min_cut_bound(n) == 1) nets.push_back(n);
    }
    for (const auto& net : nets) {
        const auto t = scheme_two_terminal(net, net.terminals[0], net.terminals[1], over("gf2", 3));
        keep(c, net, t, net.name + " two-terminal code");
        c.expect(t.rate() == Rate(1, 1), "rate 1");
    }
    c.log << "    two-terminal codes on " << nets.size() << " min-cut-1 networks\n";
}

void criterion7(Check& c) {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 4}, {5, 4}, {5, 5}})
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const auto net = catalog::random_connected(m, n, seed);
            const auto t0 = Clock::now();
            const auto code = scheme_pairing(net, over("gf2", seed));
            const double dt = since(t0);
            keep(c, net, code, net.name + " pairing code");
            c.expect(code.rate() == Rate(2, static_cast<std::int64_t>(std::min(m, n))), net.name + " rate 2/min{m,n}");
            c.expect(dt < 60, net.name + " under 60 s");
            c.log << "    " << net.name << ": (" << code.k << "," << code.l << ") in " << dt << " s\n";
        }
}

void criterion5(Check& c) {
    for (std::uint64_t seed = 100; pool.size() < 120; ++seed) {
        const auto net = catalog::random_connected(2 + seed % 4, 2 + (seed / 3) % 4, seed);
        keep(c, net, scheme_pairing(net, over(seed % 2 ? "gf3" : "gf2", seed)), net.name + " pairing code");
    }
    std::size_t ok = 0;
    for (const auto& [net, code] : pool) {
        const auto rev = reverse_network(net);
        const auto d = dual_code(net, code);
        const bool good = verify_linear(rev, d) && d.k == code.k && d.l == code.l && verify_linear(net, dual_code(rev, d));
        c.expect(good, net.name + " dual and double dual verify");
        ok += good;
    }
    c.log << "    " << ok << " of " << pool.size() << " codes: dual and double dual verify\n";
    c.expect(pool.size() >= 100, "at least 100 codes");
}

void criterion8(Check& c) {
    struct Case {
        SumNetwork net;
        Alphabet f;
        int k, l;
    };
    const std::vector<Case> cases{{catalog::diamond(), Alphabet::field(2), 1, 1},     {catalog::butterfly(), Alphabet::field(2), 2, 1},
                                  {catalog::s3(), Alphabet::field(3), 1, 1},          {catalog::chain(), Alphabet::field(2, 2), 2, 2},
                                  {catalog::bipartite(2, 3), Alphabet::field(2), 1, 1}, {catalog::reverse_butterfly(), Alphabet::field(3), 2, 1}};
    Rng rng(8);
    int agree = 0, positive = 0;
    for (int i = 0; i < 200; ++i) {
        const auto& cs = cases[static_cast<std::size_t>(i) % cases.size()];
        LinearCode code = oracle::random_code(cs.net, cs.f, cs.k, cs.l, rng);
        if (i % 2) {
            const auto r = search_random_linear(cs.net, cs.f, cs.k, cs.l, 100, rng.below(1u << 20));
            if (r.status == SearchStatus::found) code = *r.linear_witness;
        }
        const bool a = verify_linear(cs.net, code), b = verify_table(cs.net, linearize(cs.net, code));
        agree += a == b;
        positive += a;
    }
    c.log << "    linear vs table: " << agree << "/200 agree (" << positive << " verify)\n";
    c.expect(agree == 200, "verify_linear matches the table expansion on 200 codes");

    int cuts = 0, cut_agree = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto net = oracle::random_dag(1000 + seed, 6, 10);
        for (const auto& s : net.nodes)
            for (const auto& t : net.nodes)
                if (s != t) {
                    ++cuts;
                    cut_agree += min_cut(net, s, t) == oracle::brute_min_cut(net, s, t);
                }
    }
    c.log << "    min-cut vs brute force: " << cut_agree << "/" << cuts << " pairs on 50 DAGs\n";
    c.expect(cut_agree == cuts, "min_cut matches brute-force enumeration");

    auto family = oracle::two_merge_family(45, 8);
    for (auto& net : oracle::two_merge_family(15, 9, false)) family.push_back(std::move(net));
    family.push_back(catalog::s3());
    int same = 0, solvable = 0;
    for (const auto& net : family) {
        const bool naive = oracle::NaiveZ2(net).solvable();
        const auto o = search_table(net, Alphabet::group({2}), 1, 1);
        same += (o.status == SearchStatus::found) == naive && o.status != SearchStatus::budget_exceeded;
        solvable += naive;
    }
    c.log << "    pruned vs unreduced search: " << same << "/" << family.size() << " agree (" << solvable << " solvable)\n";
    c.expect(same == static_cast<int>(family.size()), "pruned search matches the unreduced oracle on the two-merge family");
}

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(SUMNET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void criterion9(Check& c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("sumnet-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto save = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    struct Cmd {
        std::string args;
        int expect;
    };
    std::vector<Cmd> cmds{
        {"bound s3", 0},
        {"bound random-4x4", 0},
        {"mincut s3", 0},
        {"mincut butterfly --pair s t1", 0},
        {"catalog list", 0},
        {"catalog show s3-prime", 0},
        {"reverse s3", 0},
        {"search s3 --alphabet z2 --k 1 --l 1", 1},
        {"search bipartite-3x3 --alphabet z2 --k 1 --l 1", 0},
        {"search butterfly --alphabet gf2 --k 2 --l 1 --random --trials 256 --seed 7", 0},
        {"search s3 --alphabet gf5 --k 1 --l 1 --random --trials 500 --seed 2", 3},
        {"search s3 --alphabet z5 --k 1 --l 1 --budget 10", 3},
        {"scheme s3 --name three-terminal --field gf2", 0},
        {"scheme s3-prime --name three-terminal --field gf3 --seed 4", 0},
        {"scheme random-5x5 --name pairing --field gf2 --seed 3", 0},
        {"scheme doubled-diamond --name half-mincut --field gf2", 0},
        {"scheme reverse-butterfly --name one-terminal --field gf2 --seed 9", 0},
        {"search s3", 2},
        {"bound no-such-network", 2},
        {"scheme s3 --name nonsense", 2},
    };
    for (unsigned jobs : {1u, 2u, 4u}) {
        cmds.push_back({"search s3 --alphabet z4 --k 1 --l 1 --jobs " + std::to_string(jobs), 1});
        cmds.push_back({"search s3-prime --alphabet gf2 --k 2 --l 2 --linear --jobs " + std::to_string(jobs), 1});
        cmds.push_back({"search bipartite-3x3 --alphabet z3 --k 1 --l 1 --jobs " + std::to_string(jobs), 0});
    }
    std::map<std::string, std::string> by_search;
    for (const auto& cmd : cmds) {
        const Run a = run(cmd.args), b = run(cmd.args);
        c.expect(a.code == cmd.expect, "'" + cmd.args + "' exits " + std::to_string(cmd.expect) + " (got " + std::to_string(a.code) + ")");
        c.expect(a.out == b.out && a.code == b.code, "'" + cmd.args + "' is byte-identical across runs");
        const auto at = cmd.args.find(" --jobs ");
        if (at != std::string::npos) {
            const std::string key = cmd.args.substr(0, at);
            if (!by_search.count(key))
                by_search[key] = a.out;
            else
                c.expect(by_search[key] == a.out, "'" + key + "' output independent of --jobs");
        }
    }
    // Emitted codes re-verify when fed back.
    const auto three = run("scheme s3 --name three-terminal --field gf2");
    const std::string code_file = save("s3-code.json", three.out);
    const auto v = run("verify s3 " + code_file);
    c.expect(v.code == 0 && v.out.find("\"verified\": true") != std::string::npos, "scheme output re-verifies through verify");
    const std::string rev_file = save("s3-rev.json", run("reverse s3").out);
    const std::string dual_file = save("s3-dual.json", run("dual s3 " + code_file).out);
    c.expect(run("verify " + rev_file + " " + dual_file).code == 0, "dual output verifies on the reversed network");
    c.expect(run("verify s3-prime " + code_file).code == 2, "code for another network is a format error");
    const auto bound = run("bound s3");
    c.expect(bound.out.find("\"capacity\": \"2/3\"") != std::string::npos, "bound s3 reports exact 2/3");
    fs::remove_all(dir);
    c.log << "    " << cmds.size() << " invocations, each run twice\n";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        void (*fn)(Check&);
    };
    // 5 runs after 6 and 7 so the duality sweep covers their codes.
    const std::vector<Criterion> order{
        {1, "S3 has no rate-1 code over Z2..Z5 or GF(2..4); unreduced oracle agrees", criterion1},
        {2, "S3 and S3' have exact capacity 2/3", criterion2},
        {3, "every verified rate is within the min-cut bound", criterion3},
        {4, "one-terminal capacity on reverse-butterfly via the dual multicast", criterion4},
        {6, "two-source half-min-cut and two-terminal rate-1 schemes", criterion6},
        {7, "pairing reaches 2/min{m,n} on random networks", criterion7},
        {5, "dual codes re-verify on the reverse network", criterion5},
        {8, "oracle equivalences", criterion8},
        {9, "CLI output is deterministic across runs and --jobs", criterion9},
    };
    std::map<int, std::string> lines;
    bool all = true;
    for (const auto& cr : order) {
        Check c;
        const auto t0 = Clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.log << "    exception: " << e.what() << "\n";
        }
        std::ostringstream line;
        line << (c.ok ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.title << " (" << since(t0) << " s)\n" << c.log.str();
        lines[cr.id] = line.str();
        std::cerr << "criterion " << cr.id << " done\n";
        all &= c.ok;
    }
    for (const auto& [id, text] : lines) std::cout << text;
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 1;
}
