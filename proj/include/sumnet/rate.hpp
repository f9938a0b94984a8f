/**************************************************************************
 * sumnet/rate.hpp
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

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "sumnet/error.hpp"

namespace sumnet {

/// Exact nonnegative rational k/l, always stored reduced. A zero rate is 0/1.
class Rate {
public:
    constexpr Rate() = default;
    Rate(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den <= 0) throw error("rate denominator must be positive");
        if (num < 0) throw error("rate numerator must be nonnegative");
        const std::int64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rate& a, const Rate& b) = default;
    friend std::strong_ordering operator<=>(const Rate& a, const Rate& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rate& r) { return os << r.str(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rate max(const Rate& a, const Rate& b) { return a < b ? b : a; }
inline Rate min(const Rate& a, const Rate& b) { return b < a ? b : a; }

}  // namespace sumnet
