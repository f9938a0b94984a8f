/**************************************************************************
 * sumnet/duality.hpp
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

#include <string>
#include <vector>

#include "sumnet/codec.hpp"
#include "sumnet/error.hpp"
#include "sumnet/network.hpp"
#include "sumnet/rate.hpp"

namespace sumnet {

/**
 * Maps a verified linear code on net to a code of the same (k,l) on
 * reverse_network(net), by transposing every local coefficient:
 *
 *   injection of reversed source t on edge e  = decoding (t, e)^T
 *   transition (e', e) in the reverse         = transition (e, e')^T
 *   decoding of reversed terminal s on edge e = injection (s, e)^T
 *
 * Each source-terminal path product is transposed as a whole, so every
 * identity block stays an identity. The result is re-verified; a failure
 * there is an internal fault and throws.
 */
inline LinearCode dual_code(const SumNetwork& net, const LinearCode& code) {
    if (!verify_linear(net, code)) throw error("dual_code: input code does not verify on " + net.name);
    LinearCode out;
    out.k = code.k;
    out.l = code.l;
    out.field = code.field;
    for (const auto& [key, m] : code.decoding) out.injection.emplace(key, m.transpose());
    for (const auto& [key, m] : code.transition) out.transition.emplace(KeyPair{key.second, key.first}, m.transpose());
    for (const auto& [key, m] : code.injection) out.decoding.emplace(key, m.transpose());
    const SumNetwork rev = reverse_network(net);
    if (!verify_linear(rev, out)) throw error("internal: dual code failed re-verification on " + rev.name);
    return out;
}

struct TransferCheckEntry {
    Rate rate;
    bool confirmed = false;
    std::string detail;
};

struct TransferCheck {
    std::string network;
    std::string reverse_network;
    std::vector<TransferCheckEntry> entries;

    bool all_confirmed() const {
        for (const auto& e : entries)
            if (!e.confirmed) return false;
        return true;
    }
};

/// For each verified code on net, confirms that its rate is achieved on the reverse network by the dual.
inline TransferCheck linear_capacity_transfer_check(const SumNetwork& net, const std::vector<LinearCode>& codes) {
    TransferCheck report;
    report.network = net.name;
    const SumNetwork rev = reverse_network(net);
    report.reverse_network = rev.name;
    for (const auto& c : codes) {
        const LinearCode d = dual_code(net, c);
        TransferCheckEntry e{c.rate(), verify_linear(rev, d) && d.rate() == c.rate(), {}};
        e.detail = "(" + std::to_string(d.k) + "," + std::to_string(d.l) + ") dual code on " + rev.name;
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace sumnet
