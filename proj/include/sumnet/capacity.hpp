/**************************************************************************
 * sumnet/capacity.hpp
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
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sumnet/catalog.hpp"
#include "sumnet/error.hpp"
#include "sumnet/io.hpp"
#include "sumnet/isomorphism.hpp"
#include "sumnet/network.hpp"
#include "sumnet/rate.hpp"

namespace sumnet {

/// Min-cut upper bound on the capacity: Rate(min over source-terminal pairs of min-cut, 1).
inline Rate upper_bound(const SumNetwork& net) {
    require_valid(net);
    return Rate(static_cast<std::int64_t>(min_cut_bound(net)), 1);
}

/// Case tags, dispatched on min{m,n}.
inline std::string case_tag(const SumNetwork& net) {
    const std::size_t mn = std::min(net.m(), net.n());
    if (mn <= 1) return "one-source-or-terminal";
    if (mn == 2) return "min2";
    if (net.m() == 3 && net.n() == 3) return "m=n=3";
    if (mn == 3) return "min3";
    return "general";
}

/**
 * Best lower bound for the network's case:
 *   min{m,n} = 1           eta
 *   min{m,n} = 2           max(min(1, eta), eta/2)
 *   m = n = 3, eta >= 2    max(1, eta/3)
 *   min{m,n} = 3           max(2/3, eta/3)
 *   min{m,n} = r > 3       max(2/r, eta/r)
 * with eta the min-cut bound; 0 when eta = 0.
 */
inline std::pair<Rate, std::string> lower_bound(const SumNetwork& net) {
    require_valid(net);
    const auto eta = static_cast<std::int64_t>(min_cut_bound(net));
    const auto r = static_cast<std::int64_t>(std::min(net.m(), net.n()));
    std::string tag = case_tag(net);
    if (eta == 0) return {Rate(0, 1), tag};
    if (r == 1) return {Rate(eta, 1), tag};
    if (r == 2) return {max(min(Rate(1, 1), Rate(eta, 1)), Rate(eta, 2)), tag};
    if (net.m() == 3 && net.n() == 3 && eta >= 2) return {max(Rate(1, 1), Rate(eta, 3)), tag};
    if (r == 3) return {max(Rate(2, 3), Rate(eta, 3)), tag};
    return {max(Rate(2, r), Rate(eta, r)), tag};
}

/// A terminal that reconstructs all m source blocks through a c-edge cut forces k/l <= c/m.
inline Rate cut_counting_bound(std::int64_t c, std::int64_t m) {
    if (c < 1 || m < 1) throw error("cut_counting_bound needs positive cut size and source count");
    return Rate(c, m);
}

struct CapacityReport {
    std::string network;
    std::size_t m = 0, n = 0;
    std::size_t min_cut = 0;
    Rate upper{0, 1};
    Rate lower{0, 1};
    std::string case_tag;
    bool exact = false;
    std::optional<Rate> capacity;
    std::vector<std::string> notes;
    std::optional<std::string> conjecture;
};

namespace detail {

inline std::string lower_note(const SumNetwork& net, std::size_t eta) {
    const std::size_t r = std::min(net.m(), net.n());
    if (eta == 0) return "some source does not reach some terminal: nothing is achievable";
    if (r == 1) return "one source or one terminal: capacity equals the min-cut (multicast on the network or its reverse)";
    if (r == 2) return "two sources or two terminals: rate 1 by scalar coding, and min-cut/2 by two multicast slots";
    if (net.m() == 3 && net.n() == 3 && eta >= 2) return "m = n = 3 with min-cut at least 2: rate 1 is achievable (construction not included here)";
    if (r == 3) return "three sources or terminals: rate 2/3 by three-slot time-sharing";
    return "pairing time-sharing achieves 2/min{m,n}";
}

}  // namespace detail

inline CapacityReport report(const SumNetwork& net) {
    require_valid(net);
    CapacityReport r;
    r.network = net.name;
    r.m = net.m();
    r.n = net.n();
    r.min_cut = min_cut_bound(net);
    r.upper = upper_bound(net);
    auto [lo, tag] = lower_bound(net);
    r.lower = lo;
    r.case_tag = tag;
    r.notes.push_back("upper bound: min-cut over all source-terminal pairs");
    r.notes.push_back("lower bound: " + detail::lower_note(net, r.min_cut));
    if (r.upper == r.lower) {
        r.exact = true;
        r.capacity = r.upper;
        r.notes.push_back("bounds meet: capacity is exact");
    }
    for (const char* name : {"s3", "s3-prime"}) {
        const SumNetwork ref = name == std::string("s3") ? catalog::s3() : catalog::s3_prime();
        if (ref.edges.size() == net.edges.size() && isomorphic(ref, net)) {
            r.exact = true;
            r.capacity = cut_counting_bound(2, 3);
            r.notes.push_back(std::string("isomorphic to ") + name +
                              ": capacity and linear coding capacity are exactly 2/3 (three-slot achievability, cut-counting converse)");
        }
    }
    if (!r.exact && r.min_cut > 0)
        r.notes.push_back("bounds only: whether the min-cut bound can be approached in the limit is open");
    if (r.m == 3 && r.n == 3)
        r.conjecture = "conjecture (unproved): the capacity of an m = n = 3 sum-network is either 0, 2/3 or at least 1";
    return r;
}

inline io::json report_to_json(const CapacityReport& r) {
    io::json j;
    j["network"] = r.network;
    j["m"] = r.m;
    j["n"] = r.n;
    j["min_cut"] = r.min_cut;
    j["upper"] = r.upper.str();
    j["lower"] = r.lower.str();
    j["case"] = r.case_tag;
    j["exactness"] = r.exact ? "exact" : "bounds-only";
    j["capacity"] = r.capacity ? io::json(r.capacity->str()) : io::json(nullptr);
    j["notes"] = r.notes;
    j["conjecture"] = r.conjecture ? io::json(*r.conjecture) : io::json(nullptr);
    return j;
}

/// Aligned plain-text table: case, min-cut, then the capacity columns.
inline std::string report_table(const std::vector<CapacityReport>& rows) {
    std::vector<std::vector<std::string>> cells{{"network", "m", "n", "case", "min-cut", "upper", "lower", "capacity"}};
    for (const auto& r : rows)
        cells.push_back({r.network, std::to_string(r.m), std::to_string(r.n), r.case_tag, std::to_string(r.min_cut),
                         r.upper.str(), r.lower.str(), r.capacity ? "= " + r.capacity->str() : ">= " + r.lower.str()});
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace sumnet
