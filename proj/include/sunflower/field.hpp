#pragma once

// Finite fields for the desk-scale tower GF(p) -> GF(q = p^t) -> GF(q^e).
//
// Elements are integer codes. A code is the base-p (for GF(q)) or base-q (for
// GF(q^e)) positional encoding of the coefficient vector over the next lower
// field, constant term in the least significant digit. Polynomials are
// coefficient vectors with the constant term first.

#include "sunflower/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sunflower {

inline constexpr unsigned kMaxBaseOrder = 16;
inline constexpr std::uint32_t kMaxExtOrder = 1u << 20;
inline constexpr std::uint32_t kLogTableOrder = 1u << 16;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

/// GF(q) with q = p^t <= 16, backed by full addition/multiplication tables.
class Field {
public:
    using Elem = std::uint8_t;
    using Poly = std::vector<Elem>;

    /// GF(p). The stored modulus is the polynomial x.
    static FieldPtr prime(unsigned p) {
        detail::require(detail::is_prime(p), "field characteristic must be prime");
        detail::require(p <= kMaxBaseOrder, "field order exceeds desk-scale cap q <= 16");
        return FieldPtr(new Field(p, 1, Poly{0, 1}));
    }

    /// GF(p^t) with an explicit monic irreducible modulus over GF(p).
    static FieldPtr make(unsigned p, unsigned t, Poly modulus);

    /// GF(q) for a prime power q, modulus chosen as the smallest irreducible.
    static FieldPtr of_order(unsigned q);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return t_; }
    unsigned order() const { return q_; }
    const Poly& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }

    Elem inv(Elem a) const {
        if (a == 0) throw DomainError("inverse of zero");
        return inv_[a];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Coefficients of a over GF(p) in the polynomial basis.
    std::vector<Elem> expand(Elem a) const {
        std::vector<Elem> out(t_);
        for (unsigned i = 0; i < t_; ++i, a /= p_) out[i] = a % p_;
        return out;
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.t_ == b.t_ && a.modulus_ == b.modulus_;
    }

private:
    Field(unsigned p, unsigned t, Poly modulus) : p_(p), t_(t), modulus_(std::move(modulus)) {
        q_ = 1;
        for (unsigned i = 0; i < t_; ++i) q_ *= p_;
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        neg_.resize(q_);
        inv_.resize(q_);
        auto digits = [&](unsigned a) {
            std::vector<unsigned> d(t_);
            for (unsigned i = 0; i < t_; ++i, a /= p_) d[i] = a % p_;
            return d;
        };
        auto code = [&](const std::vector<unsigned>& d) {
            unsigned c = 0;
            for (unsigned i = t_; i-- > 0;) c = c * p_ + d[i];
            return c;
        };
        for (unsigned a = 0; a < q_; ++a) {
            auto da = digits(a);
            std::vector<unsigned> dn(t_);
            for (unsigned i = 0; i < t_; ++i) dn[i] = (p_ - da[i]) % p_;
            neg_[a] = static_cast<Elem>(code(dn));
            for (unsigned b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<unsigned> ds(t_);
                for (unsigned i = 0; i < t_; ++i) ds[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = static_cast<Elem>(code(ds));
                // schoolbook product, then reduce by the monic modulus
                std::vector<unsigned> prod(2 * t_, 0);
                for (unsigned i = 0; i < t_; ++i)
                    for (unsigned j = 0; j < t_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                if (t_ > 1) {
                    for (unsigned deg = 2 * t_ - 1; deg >= t_; --deg) {
                        unsigned c = prod[deg];
                        if (c == 0) continue;
                        prod[deg] = 0;
                        for (unsigned i = 0; i < t_; ++i)
                            prod[deg - t_ + i] = (prod[deg - t_ + i] + (p_ - c) * modulus_[i]) % p_;
                    }
                }
                prod.resize(t_);
                mul_[a * q_ + b] = static_cast<Elem>(code(prod));
            }
        }
        for (unsigned a = 1; a < q_; ++a)
            for (unsigned b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
    }

    unsigned p_;
    unsigned t_;
    unsigned q_ = 0;
    Poly modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_;
};

// ---------------------------------------------------------------------------
// Polynomials over GF(q)

namespace poly {

using Poly = Field::Poly;

inline std::size_t degree(const Poly& f) {
    std::size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

/// Remainder of f modulo a monic g.
inline Poly rem_monic(const Field& F, Poly f, const Poly& g) {
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        Field::Elem c = f.back();
        if (c != 0) {
            const std::size_t shift = f.size() - 1 - dg;
            for (std::size_t i = 0; i <= dg; ++i)
                f[shift + i] = F.sub(f[shift + i], F.mul(c, g[i]));
        }
        f.pop_back();
    }
    return f;
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree 1..deg/2.
inline bool is_irreducible(const Field& F, const Poly& f) {
    const std::size_t d = f.size() - 1;
    if (d == 0) return false;
    const unsigned q = F.order();
    for (std::size_t dg = 1; 2 * dg <= d; ++dg) {
        Poly g(dg + 1, 0);
        g[dg] = 1;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dg; ++i) count *= q;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::uint64_t x = c;
            for (std::size_t i = 0; i < dg; ++i, x /= q) g[i] = static_cast<Field::Elem>(x % q);
            auto r = rem_monic(F, f, g);
            if (std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; })) return false;
        }
    }
    return true;
}

/// Smallest monic irreducible polynomial of the given degree. Candidates are
/// ordered lexicographically on (c_0, c_1, ..., c_{d-1}) by integer code.
inline Poly find_irreducible(const Field& F, unsigned deg) {
    detail::require(deg >= 1, "irreducible polynomial degree must be >= 1");
    const unsigned q = F.order();
    Poly f(deg + 1, 0);
    f[deg] = 1;
    // odometer with c_{d-1} as the fastest digit
    while (true) {
        if (is_irreducible(F, f)) return f;
        std::size_t i = deg;
        while (i-- > 0) {
            if (++f[i] < q) break;
            f[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    throw DomainError("no irreducible polynomial found");  // unreachable over a field
}

}  // namespace poly

inline FieldPtr Field::make(unsigned p, unsigned t, Poly modulus) {
    detail::require(detail::is_prime(p), "field characteristic must be prime");
    detail::require(t >= 1, "field degree must be >= 1");
    unsigned q = 1;
    for (unsigned i = 0; i < t; ++i) {
        q *= p;
        detail::require(q <= kMaxBaseOrder, "field order exceeds desk-scale cap q <= 16");
    }
    if (t == 1) return prime(p);
    detail::require(modulus.size() == t + 1 && modulus.back() == 1, "modulus must be monic of degree t");
    for (auto c : modulus) detail::require(c < p, "modulus coefficient out of range");
    auto gfp = prime(p);
    detail::require(poly::is_irreducible(*gfp, modulus), "modulus is reducible");
    return FieldPtr(new Field(p, t, std::move(modulus)));
}

inline FieldPtr Field::of_order(unsigned q) {
    detail::require(q >= 2 && q <= kMaxBaseOrder, "field order must be in [2, 16]");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned t = 0;
    for (unsigned r = q; r > 1; r /= p) {
        detail::require(r % p == 0, "field order must be a prime power");
        ++t;
    }
    if (t == 1) return prime(p);
    auto gfp = prime(p);
    return make(p, t, poly::find_irreducible(*gfp, t));
}

/// GF(q^e) as an extension of a base field GF(q). Multiplication uses
/// log/antilog tables when q^e <= 2^16, schoolbook reduction otherwise.
class ExtField {
public:
    using Elem = std::uint32_t;
    using BaseElem = Field::Elem;

    ExtField(FieldPtr base, unsigned e) : ExtField(base, e, poly::find_irreducible(*base, e)) {}

    ExtField(FieldPtr base, unsigned e, Field::Poly modulus)
        : base_(std::move(base)), e_(e), modulus_(std::move(modulus)) {
        detail::require(e_ >= 1, "extension degree must be >= 1");
        const unsigned q = base_->order();
        std::uint64_t order = 1;
        for (unsigned i = 0; i < e_; ++i) {
            order *= q;
            detail::require(order <= kMaxExtOrder, "extension order exceeds desk-scale cap 2^20");
        }
        order_ = static_cast<Elem>(order);
        detail::require(modulus_.size() == e_ + 1 && modulus_.back() == 1, "extension modulus must be monic");
        for (auto c : modulus_) detail::require(c < q, "extension modulus coefficient out of range");
        detail::require(poly::is_irreducible(*base_, modulus_), "extension modulus is reducible");
        binary_ = base_->characteristic() == 2;
        if (order_ <= kLogTableOrder) build_tables();
    }

    const Field& base() const { return *base_; }
    const FieldPtr& base_ptr() const { return base_; }
    unsigned degree() const { return e_; }
    Elem order() const { return order_; }
    const Field::Poly& modulus() const { return modulus_; }

    /// Residue class of x (the polynomial-basis generator).
    Elem alpha() const { return e_ == 1 ? base_->neg(modulus_[0]) : base_->order(); }

    std::vector<BaseElem> expand(Elem a) const {
        const unsigned q = base_->order();
        std::vector<BaseElem> out(e_);
        for (unsigned i = 0; i < e_; ++i, a /= q) out[i] = static_cast<BaseElem>(a % q);
        return out;
    }

    Elem compose(const std::vector<BaseElem>& c) const {
        detail::require(c.size() <= e_, "coefficient vector too long");
        const unsigned q = base_->order();
        Elem x = 0;
        for (std::size_t i = c.size(); i-- > 0;) x = x * q + c[i];
        return x;
    }

    /// Embedding of the base field as constants.
    Elem embed(BaseElem c) const { return c; }

    Elem add(Elem a, Elem b) const {
        if (binary_) return a ^ b;
        const unsigned q = base_->order();
        Elem r = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i, a /= q, b /= q, scale *= q)
            r += scale * base_->add(static_cast<BaseElem>(a % q), static_cast<BaseElem>(b % q));
        return r;
    }

    Elem neg(Elem a) const {
        if (binary_) return a;
        const unsigned q = base_->order();
        Elem r = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i, a /= q, scale *= q) r += scale * base_->neg(static_cast<BaseElem>(a % q));
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) return exp_[log_[a] + log_[b]];
        return mul_schoolbook(a, b);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw DomainError("inverse of zero");
        if (!log_.empty()) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
        return pow(a, order_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t n) const {
        if (a == 0) return n == 0 ? 1 : 0;
        if (!log_.empty()) return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (order_ - 1))) % (order_ - 1)];
        Elem r = 1;
        while (n) {
            if (n & 1) r = mul_schoolbook(r, a);
            a = mul_schoolbook(a, a);
            n >>= 1;
        }
        return r;
    }

    /// a^(q^i).
    Elem frobenius(Elem a, unsigned i) const {
        for (unsigned j = 0; j < i % e_; ++j) a = pow(a, base_->order());
        return a;
    }

    friend bool operator==(const ExtField& a, const ExtField& b) {
        return *a.base_ == *b.base_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
    }

private:
    Elem mul_schoolbook(Elem a, Elem b) const {
        const Field& F = *base_;
        auto da = expand(a), db = expand(b);
        Field::Poly prod(2 * e_ - 1, 0);
        for (unsigned i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < e_; ++j) prod[i + j] = F.add(prod[i + j], F.mul(da[i], db[j]));
        }
        auto r = poly::rem_monic(F, std::move(prod), modulus_);
        r.resize(e_, 0);
        return compose(r);
    }

    void build_tables() {
        const Elem n = order_ - 1;
        const auto factors = detail::prime_factors(n);
        Elem gen = 0;
        for (Elem g = 1; g < order_ && gen == 0; ++g) {
            bool primitive = true;
            for (auto r : factors) {
                if (pow(g, n / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) gen = g;
        }
        exp_.assign(2 * static_cast<std::size_t>(n), 0);
        log_.assign(order_, 0);
        Elem x = 1;
        for (Elem i = 0; i < n; ++i) {
            exp_[i] = x;
            exp_[i + n] = x;
            log_[x] = i;
            x = mul_schoolbook(x, gen);
        }
    }

    FieldPtr base_;
    unsigned e_;
    Field::Poly modulus_;
    Elem order_ = 0;
    bool binary_ = false;
    std::vector<Elem> exp_;
    std::vector<Elem> log_;
};

}  // namespace sunflower
