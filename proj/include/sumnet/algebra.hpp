/**************************************************************************
 * sumnet/algebra.hpp
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
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumnet/error.hpp"

namespace sumnet {

/// An alphabet element: its canonical index in [0, order).
using Elem = std::uint32_t;

namespace detail {

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<unsigned>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    poly_trim(a);
    const std::size_t dm = m.size() - 1;
    // m is monic, so no inverse of the leading coefficient is needed.
    while (a.size() > dm) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
        poly_trim(a);
    }
    return a;
}

inline Poly poly_from_index(unsigned idx, unsigned p, unsigned len) {
    Poly out(len);
    for (unsigned i = 0; i < len; ++i) {
        out[i] = idx % p;
        idx /= p;
    }
    return out;
}

inline unsigned poly_to_index(const Poly& a, unsigned p) {
    unsigned idx = 0;
    for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return idx;
}

inline unsigned ipow(unsigned b, unsigned e) {
    unsigned r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Monic x^r + c(x) with no monic factor of degree 1..r/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
    const unsigned r = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= r / 2; ++d) {
        for (unsigned low = 0; low < ipow(p, d); ++low) {
            Poly g = poly_from_index(low, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

/// The lexicographically least monic irreducible polynomial of degree r over
/// GF(p), where "least" orders the lower coefficients by their base-p index.
inline Poly least_irreducible(unsigned p, unsigned r) {
    for (unsigned low = 0; low < ipow(p, r); ++low) {
        Poly f = poly_from_index(low, p, r);
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
    }
    throw error("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace detail

/**
 * A finite field GF(p^r) (p^r <= 256) or a finite abelian group
 * Z_{n_1} x ... x Z_{n_d} (order <= 4096).
 *
 * Field elements are polynomials over GF(p) modulo a fixed irreducible
 * polynomial, indexed by their base-p coefficient digits (constant term least
 * significant). Group elements are mixed-radix digit strings over the cyclic
 * factors, first factor least significant. In both cases 0 is the additive
 * identity. Instances are immutable and cheap to copy.
 */
class Alphabet {
public:
    enum class Kind { field, group };

    static constexpr unsigned max_field_order = 256;
    static constexpr unsigned max_group_order = 4096;

    static Alphabet field(unsigned p, unsigned r = 1) {
        if (!detail::is_prime(p)) throw error("field characteristic " + std::to_string(p) + " is not prime");
        if (r < 1) throw error("field extension degree must be >= 1");
        unsigned q = 1;
        for (unsigned i = 0; i < r; ++i) {
            q *= p;
            if (q > max_field_order) throw error("field order exceeds 256");
        }
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::field;
        impl->p = p;
        impl->r = r;
        impl->q = q;
        impl->factors.assign(r, p);
        impl->modulus = detail::least_irreducible(p, r);
        impl->build_field_tables();
        return Alphabet(std::move(impl));
    }

    static Alphabet group(std::vector<unsigned> factors) {
        if (factors.empty()) throw error("group needs at least one cyclic factor");
        unsigned q = 1;
        for (unsigned n : factors) {
            if (n < 2) throw error("cyclic factor must be >= 2");
            q *= n;
            if (q > max_group_order) throw error("group order exceeds 4096");
        }
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::group;
        impl->q = q;
        impl->factors = std::move(factors);
        impl->build_group_tables();
        return Alphabet(std::move(impl));
    }

    /// Parses "gf<q>", "gf<p>^<r>", "z<n>" or "z<a>xz<b>x...". Case-insensitive.
    static Alphabet parse(std::string_view text) {
        std::string s;
        for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        auto number = [&](std::string_view part) {
            unsigned v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
                throw format_error("bad alphabet spec '" + std::string(text) + "'");
            return v;
        };
        std::string_view sv(s);
        if (sv.starts_with("gf")) {
            sv.remove_prefix(2);
            if (auto caret = sv.find('^'); caret != std::string_view::npos)
                return field(number(sv.substr(0, caret)), number(sv.substr(caret + 1)));
            const unsigned q = number(sv);
            if (q < 2) throw format_error("bad field order in '" + std::string(text) + "'");
            unsigned p = 2;
            while (q % p != 0) ++p;
            unsigned r = 0;
            unsigned rest = q;
            while (rest % p == 0) {
                rest /= p;
                ++r;
            }
            if (rest != 1) throw format_error("field order " + std::to_string(q) + " is not a prime power");
            return field(p, r);
        }
        if (sv.starts_with("z")) {
            std::vector<unsigned> factors;
            std::size_t pos = 0;
            while (pos <= sv.size()) {
                const std::size_t next = std::min(sv.find('x', pos), sv.size());
                std::string_view part = sv.substr(pos, next - pos);
                if (!part.starts_with("z")) throw format_error("bad group spec '" + std::string(text) + "'");
                factors.push_back(number(part.substr(1)));
                pos = next + 1;
            }
            return group(std::move(factors));
        }
        throw format_error("bad alphabet spec '" + std::string(text) + "'");
    }

    Kind kind() const { return impl_->kind; }
    bool is_field() const { return impl_->kind == Kind::field; }
    unsigned order() const { return impl_->q; }
    unsigned characteristic() const { return impl_->p; }
    unsigned degree() const { return impl_->r; }
    const std::vector<unsigned>& factors() const { return impl_->factors; }
    /// Irreducible modulus, lowest coefficient first (fields only).
    const std::vector<unsigned>& modulus() const { return impl_->modulus; }

    Elem add(Elem a, Elem b) const {
        if (!impl_->add.empty()) return impl_->add[a * impl_->q + b];
        return impl_->digit_add(a, b);
    }
    Elem neg(Elem a) const { return impl_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        require_field();
        return impl_->mul[a * impl_->q + b];
    }
    Elem inv(Elem a) const {
        require_field();
        if (a == 0) throw error("inverse of zero");
        return impl_->inv[a];
    }

    /// Canonical spec string, accepted by parse().
    std::string name() const {
        if (is_field()) return "gf" + std::to_string(impl_->q);
        std::string out;
        for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
            if (i) out += "x";
            out += "z" + std::to_string(impl_->factors[i]);
        }
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.impl_ == b.impl_ || (a.impl_->kind == b.impl_->kind && a.impl_->q == b.impl_->q &&
                                      a.impl_->factors == b.impl_->factors);
    }

private:
    struct Impl {
        Kind kind = Kind::field;
        unsigned p = 0, r = 0, q = 0;
        std::vector<unsigned> factors;
        std::vector<unsigned> modulus;
        std::vector<Elem> add, neg, mul, inv;

        void build_field_tables() {
            add.resize(std::size_t{q} * q);
            mul.resize(std::size_t{q} * q);
            neg.resize(q);
            inv.assign(q, 0);
            for (unsigned a = 0; a < q; ++a) {
                const auto pa = detail::poly_from_index(a, p, r);
                for (unsigned b = 0; b < q; ++b) {
                    const auto pb = detail::poly_from_index(b, p, r);
                    detail::Poly sum(r), prod(2 * r, 0);
                    for (unsigned i = 0; i < r; ++i) sum[i] = (pa[i] + pb[i]) % p;
                    for (unsigned i = 0; i < r; ++i)
                        for (unsigned j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
                    add[a * q + b] = detail::poly_to_index(sum, p);
                    mul[a * q + b] = detail::poly_to_index(detail::poly_mod(prod, modulus, p), p);
                }
            }
            for (unsigned a = 0; a < q; ++a) {
                for (unsigned b = 0; b < q; ++b) {
                    if (add[a * q + b] == 0) neg[a] = b;
                    if (mul[a * q + b] == 1) inv[a] = b;
                }
            }
        }

        Elem digit_add(Elem a, Elem b) const {
            Elem out = 0, place = 1;
            for (unsigned n : factors) {
                out += ((a % n + b % n) % n) * place;
                a /= n;
                b /= n;
                place *= n;
            }
            return out;
        }

        void build_group_tables() {
            neg.resize(q);
            for (Elem a = 0; a < q; ++a) {
                Elem out = 0, place = 1, rest = a;
                for (unsigned n : factors) {
                    out += ((n - rest % n) % n) * place;
                    rest /= n;
                    place *= n;
                }
                neg[a] = out;
            }
            if (q <= max_field_order) {
                add.resize(std::size_t{q} * q);
                for (Elem a = 0; a < q; ++a)
                    for (Elem b = 0; b < q; ++b) add[a * q + b] = digit_add(a, b);
            }
        }
    };

    explicit Alphabet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    void require_field() const {
        if (!is_field()) throw error("multiplication requires a field alphabet, got " + name());
    }

    std::shared_ptr<const Impl> impl_;
};

/// Dense matrix over a field Alphabet, row-major.
class FMatrix {
public:
    FMatrix(Alphabet field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
        if (!field_.is_field()) throw error("FMatrix requires a field alphabet");
    }

    FMatrix(Alphabet field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (!field_.is_field()) throw error("FMatrix requires a field alphabet");
        if (data_.size() != rows * cols) throw error("FMatrix entry count does not match shape");
        for (Elem e : data_)
            if (e >= field_.order()) throw error("FMatrix entry out of range for " + field_.name());
    }

    static FMatrix identity(const Alphabet& field, std::size_t n) {
        FMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static FMatrix from_rows(const Alphabet& field, const std::vector<std::vector<Elem>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        std::vector<Elem> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw error("ragged matrix rows");
            data.insert(data.end(), row.begin(), row.end());
        }
        return FMatrix(field, r, c, std::move(data));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Alphabet& field() const { return field_; }
    const std::vector<Elem>& entries() const { return data_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = v; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
    }

    FMatrix transpose() const {
        FMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
        return t;
    }

    /// Scales every entry by s.
    FMatrix scaled(Elem s) const {
        FMatrix out = *this;
        for (auto& e : out.data_) e = field_.mul(e, s);
        return out;
    }

    friend bool operator==(const FMatrix& a, const FMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
    }

private:
    Alphabet field_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

namespace detail {
inline void require_same_field(const FMatrix& a, const FMatrix& b) {
    if (!(a.field() == b.field()))
        throw error("field mismatch: " + a.field().name() + " vs " + b.field().name());
}
}  // namespace detail

inline FMatrix mat_mul(const FMatrix& a, const FMatrix& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.rows())
        throw error("dimension mismatch in mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Alphabet& f = a.field();
    FMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Elem x = a(i, t);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, j, f.add(out(i, j), f.mul(x, b(t, j))));
        }
    }
    return out;
}

inline FMatrix mat_add(const FMatrix& a, const FMatrix& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw error("dimension mismatch in mat_add");
    FMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.field().add(a(i, j), b(i, j)));
    return out;
}

/// Stacks blocks top to bottom; all blocks share a column count.
inline FMatrix vstack(const std::vector<FMatrix>& blocks) {
    if (blocks.empty()) throw error("vstack of nothing");
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        detail::require_same_field(blocks.front(), b);
        if (b.cols() != blocks.front().cols()) throw error("dimension mismatch in vstack");
        rows += b.rows();
    }
    std::vector<Elem> data;
    data.reserve(rows * blocks.front().cols());
    for (const auto& b : blocks) data.insert(data.end(), b.entries().begin(), b.entries().end());
    return FMatrix(blocks.front().field(), rows, blocks.front().cols(), std::move(data));
}

/// Places blocks side by side; all blocks share a row count.
inline FMatrix hstack(const std::vector<FMatrix>& blocks) {
    if (blocks.empty()) throw error("hstack of nothing");
    std::vector<FMatrix> cols;
    cols.reserve(blocks.size());
    for (const auto& b : blocks) cols.push_back(b.transpose());
    return vstack(cols).transpose();
}

/**
 * Finds some X with A * X = B, or nullopt when the system is inconsistent.
 *
 * Gauss-Jordan elimination on [A | B]: columns are scanned left to right and
 * the pivot is the lowest-index row with a nonzero entry. Free variables are
 * set to zero, so the result is a deterministic function of (A, B).
 */
inline std::optional<FMatrix> mat_solve_right(const FMatrix& a, const FMatrix& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows()) throw error("dimension mismatch in mat_solve_right");
    const Alphabet& f = a.field();
    const std::size_t n = a.rows(), p = a.cols(), c = b.cols(), w = p + c;
    std::vector<Elem> m(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) m[i * w + j] = a(i, j);
        for (std::size_t j = 0; j < c; ++j) m[i * w + p + j] = b(i, j);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < p && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && m[piv * w + col] == 0) ++piv;
        if (piv == n) continue;
        if (piv != row)
            for (std::size_t j = 0; j < w; ++j) std::swap(m[piv * w + j], m[row * w + j]);
        const Elem s = f.inv(m[row * w + col]);
        for (std::size_t j = 0; j < w; ++j) m[row * w + j] = f.mul(m[row * w + j], s);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || m[i * w + col] == 0) continue;
            const Elem factor = f.neg(m[i * w + col]);
            for (std::size_t j = 0; j < w; ++j) m[i * w + j] = f.add(m[i * w + j], f.mul(factor, m[row * w + j]));
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        for (std::size_t j = p; j < w; ++j)
            if (m[i * w + j] != 0) return std::nullopt;
    FMatrix x(f, p, c);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) x.set(pivot_col[i], j, m[i * w + p + j]);
#ifdef SUMNET_CHECKED
    if (!(mat_mul(a, x) == b)) throw error("mat_solve_right produced a non-solution");
#endif
    return x;
}

inline std::size_t rank(const FMatrix& a) {
    const Alphabet& f = a.field();
    std::vector<Elem> m = a.entries();
    const std::size_t n = a.rows(), w = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < w && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && m[piv * w + col] == 0) ++piv;
        if (piv == n) continue;
        if (piv != row)
            for (std::size_t j = 0; j < w; ++j) std::swap(m[piv * w + j], m[row * w + j]);
        const Elem s = f.inv(m[row * w + col]);
        for (std::size_t i = row + 1; i < n; ++i) {
            if (m[i * w + col] == 0) continue;
            const Elem factor = f.neg(f.mul(m[i * w + col], s));
            for (std::size_t j = 0; j < w; ++j) m[i * w + j] = f.add(m[i * w + j], f.mul(factor, m[row * w + j]));
        }
        ++row;
    }
    return row;
}

}  // namespace sumnet
