/**************************************************************************
 * tools/sumnet.cpp
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

// sumnet: command-line front end. One JSON document on stdout, a short
// human summary on stderr.
//
// exit codes: 0 success / found, 1 verified negative, 2 usage or format
// error, 3 budget exceeded.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sumnet/sumnet.hpp"

namespace {

using namespace sumnet;
using io::json;

enum Exit { ok = 0, negative = 1, usage = 2, gave_up = 3 };

SumNetwork load_network(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) {
        SumNetwork net = io::parse_network(io::read_file(arg));
        require_valid(net);
        return net;
    }
    if (auto entry = catalog::find(arg)) return entry->network;
    throw format_error("'" + arg + "' is neither a readable file nor a catalog name");
}

io::AnyCode load_code(const std::string& path) {
    if (!std::filesystem::is_regular_file(path)) throw format_error("cannot read code file '" + path + "'");
    return io::parse_code(io::read_file(path));
}

void emit(const json& doc) { std::cout << io::dump(doc); }

int cmd_bound(const std::string& net_arg) {
    const CapacityReport r = report(load_network(net_arg));
    emit(report_to_json(r));
    std::cerr << report_table({r});
    if (r.conjecture) std::cerr << *r.conjecture << "\n";
    return ok;
}

int cmd_mincut(const std::string& net_arg, const std::vector<std::string>& pair) {
    const SumNetwork net = load_network(net_arg);
    json doc;
    doc["network"] = net.name;
    if (!pair.empty()) {
        const std::size_t c = min_cut(net, pair[0], pair[1]);
        doc["source"] = pair[0];
        doc["terminal"] = pair[1];
        doc["min_cut"] = c;
        std::cerr << "min-cut(" << pair[0] << ", " << pair[1] << ") = " << c << "\n";
    } else {
        json pairs = json::array();
        for (const auto& s : net.sources)
            for (const auto& t : net.terminals) pairs.push_back({{"source", s}, {"terminal", t}, {"min_cut", min_cut(net, s, t)}});
        doc["pairs"] = pairs;
        doc["min_cut_bound"] = min_cut_bound(net);
        std::cerr << "min-cut bound of " << net.name << " = " << min_cut_bound(net) << "\n";
    }
    emit(doc);
    return ok;
}

int cmd_verify(const std::string& net_arg, const std::string& code_path) {
    const SumNetwork net = load_network(net_arg);
    const io::AnyCode code = load_code(code_path);
    const bool good = code.linear ? verify_linear(net, *code.linear) : verify_table(net, *code.table);
    const Rate rate = code.linear ? code.linear->rate() : code.table->rate();
    json doc;
    doc["network"] = net.name;
    doc["kind"] = code.linear ? "linear" : "table";
    doc["k"] = code.linear ? code.linear->k : code.table->k;
    doc["l"] = code.linear ? code.linear->l : code.table->l;
    doc["rate"] = rate.str();
    doc["verified"] = good;
    emit(doc);
    std::cerr << (good ? "verified" : "NOT verified") << ": rate " << rate << " on " << net.name << "\n";
    return good ? ok : negative;
}

struct SearchArgs {
    std::string alphabet;
    int k = 1, l = 1;
    bool linear = false, random = false;
    std::optional<std::uint64_t> budget;
    std::uint64_t seed = 1, trials = 1000;
    unsigned jobs = 1;
};

int cmd_search(const std::string& net_arg, const SearchArgs& a) {
    const SumNetwork net = load_network(net_arg);
    const Alphabet alph = Alphabet::parse(a.alphabet);
    SearchOutcome o;
    if (a.random)
        o = search_random_linear(net, alph, a.k, a.l, a.budget.value_or(a.trials), a.seed);
    else if (a.linear)
        o = search_linear(net, alph, a.k, a.l, {a.budget, a.jobs});
    else
        o = search_table(net, alph, a.k, a.l, {a.budget, a.jobs});
    json doc;
    doc["network"] = net.name;
    doc["alphabet"] = alph.name();
    doc["k"] = a.k;
    doc["l"] = a.l;
    const json body = outcome_to_json(o);
    for (const auto& [key, val] : body.items()) doc[key] = val;
    emit(doc);
    std::cerr << o.method << " search on " << net.name << " over " << alph.name() << " (" << a.k << "," << a.l
              << "): " << to_string(o.status) << " after " << o.candidates_examined << " candidates";
    if (!o.note.empty()) std::cerr << " (" << o.note << ")";
    std::cerr << "\n";
    switch (o.status) {
        case SearchStatus::found: return ok;
        case SearchStatus::exhausted_none: return negative;
        case SearchStatus::budget_exceeded: return gave_up;
    }
    return gave_up;
}

int cmd_scheme(const std::string& net_arg, const std::string& name, const std::string& field, std::uint64_t seed, bool escalate) {
    const SumNetwork net = load_network(net_arg);
    SchemeOptions opt;
    opt.field = Alphabet::parse(field);
    opt.seed = seed;
    opt.escalate = escalate;
    SlotPlan plan;
    bool has_plan = false;
    LinearCode code;
    if (name == "three-terminal") {
        code = scheme_three_terminal(net, opt, &plan);
        has_plan = true;
    } else if (name == "pairing") {
        code = scheme_pairing(net, opt, &plan);
        has_plan = true;
    } else if (name == "half-mincut") {
        code = scheme_two_source_halfmincut(net, opt);
    } else if (name == "one-terminal") {
        code = scheme_one_terminal(net, opt);
    } else {
        throw CLI::ValidationError("--name", "unknown scheme '" + name + "'");
    }
    emit(io::linear_code_to_json(code));
    std::cerr << name << " scheme on " << net.name << ": verified (" << code.k << "," << code.l << ") code over "
              << code.field.name() << ", rate " << code.rate() << "\n";
    if (has_plan) std::cerr << plan.summary();
    return ok;
}

int cmd_reverse(const std::string& net_arg) {
    const SumNetwork rev = reverse_network(load_network(net_arg));
    emit(io::network_to_json(rev));
    std::cerr << "reversed: " << rev.m() << " sources, " << rev.n() << " terminals\n";
    return ok;
}

int cmd_dual(const std::string& net_arg, const std::string& code_path) {
    const SumNetwork net = load_network(net_arg);
    const io::AnyCode code = load_code(code_path);
    if (!code.linear) throw format_error("dual needs a linear code");
    if (!verify_linear(net, *code.linear)) {
        std::cerr << "input code does not verify on " << net.name << "\n";
        return negative;
    }
    const LinearCode d = dual_code(net, *code.linear);
    emit(io::linear_code_to_json(d));
    std::cerr << "dual code verified on " << reverse_network(net).name << ", rate " << d.rate() << "\n";
    return ok;
}

int cmd_catalog(const std::string& action, const std::string& name) {
    if (action == "list") {
        json arr = json::array();
        for (const auto& n : catalog::names()) {
            const auto e = catalog::get(n);
            arr.push_back({{"name", e.name},
                           {"m", e.network.m()},
                           {"n", e.network.n()},
                           {"edges", e.network.edges.size()},
                           {"exact_capacity", e.exact_capacity ? json(e.exact_capacity->str()) : json(nullptr)},
                           {"confidence", catalog::to_string(e.confidence)}});
            std::cerr << e.name << "\n";
        }
        emit(arr);
        return ok;
    }
    if (action == "show") {
        if (name.empty()) throw CLI::ValidationError("catalog show", "needs a name");
        const auto e = catalog::find(name);
        if (!e) throw format_error("unknown catalog entry '" + name + "'");
        emit(io::network_to_json(e->network));
        for (const auto& f : e->facts) std::cerr << "- " << f.statement << " [" << f.provenance << "]\n";
        return ok;
    }
    throw CLI::ValidationError("catalog", "action must be list or show");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-network capacity toolkit"};
    app.require_subcommand(1);
    std::string net_arg, code_path, name, field = "gf2", action, entry;
    std::vector<std::string> pair;
    SearchArgs sa;
    std::uint64_t seed = 1;
    bool escalate = false;

    auto* bound = app.add_subcommand("bound", "capacity bounds report");
    bound->add_option("net", net_arg, "network file or catalog name")->required();

    auto* mincut = app.add_subcommand("mincut", "min-cuts of all source-terminal pairs");
    mincut->add_option("net", net_arg, "network file or catalog name")->required();
    mincut->add_option("--pair", pair, "source and terminal")->expected(2);

    auto* verify = app.add_subcommand("verify", "check a code on a network");
    verify->add_option("net", net_arg, "network file or catalog name")->required();
    verify->add_option("code", code_path, "code file")->required();

    auto* search = app.add_subcommand("search", "exhaustive or random code search");
    search->add_option("net", net_arg, "network file or catalog name")->required();
    search->add_option("--alphabet", sa.alphabet, "z2, z2xz4, gf4, gf2^3, ...")->required();
    search->add_option("--k", sa.k, "source block length")->check(CLI::PositiveNumber);
    search->add_option("--l", sa.l, "edge block length")->check(CLI::PositiveNumber);
    search->add_flag("--linear", sa.linear, "linear search over a field");
    search->add_flag("--random", sa.random, "random linear coding");
    search->add_option("--trials", sa.trials, "random trials (default 1000)")->check(CLI::PositiveNumber);
    search->add_option("--budget", sa.budget, "candidate budget");
    search->add_option("--seed", sa.seed, "random seed");
    search->add_option("--jobs", sa.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* scheme = app.add_subcommand("scheme", "construct a verified code");
    scheme->add_option("net", net_arg, "network file or catalog name")->required();
    scheme->add_option("--name", name, "three-terminal | pairing | half-mincut | one-terminal")->required();
    scheme->add_option("--field", field, "gf2, gf3, gf4, ...");
    scheme->add_option("--seed", seed, "random seed");
    scheme->add_flag("--escalate", escalate, "allow larger fields if the requested one fails");

    auto* reverse = app.add_subcommand("reverse", "reverse network");
    reverse->add_option("net", net_arg, "network file or catalog name")->required();

    auto* dual = app.add_subcommand("dual", "dual code on the reverse network");
    dual->add_option("net", net_arg, "network file or catalog name")->required();
    dual->add_option("code", code_path, "linear code file")->required();

    auto* cat = app.add_subcommand("catalog", "built-in networks");
    cat->add_option("action", action, "list | show")->required();
    cat->add_option("name", entry, "entry name (for show)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*bound) return cmd_bound(net_arg);
        if (*mincut) return cmd_mincut(net_arg, pair);
        if (*verify) return cmd_verify(net_arg, code_path);
        if (*search) return cmd_search(net_arg, sa);
        if (*scheme) return cmd_scheme(net_arg, name, field, seed, escalate);
        if (*reverse) return cmd_reverse(net_arg);
        if (*dual) return cmd_dual(net_arg, code_path);
        if (*cat) return cmd_catalog(action, entry);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return gave_up;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
