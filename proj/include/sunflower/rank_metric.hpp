#pragma once

// Gabidulin codes over GF(q^e) and lifted MRD subspace codes.

#include "sunflower/subspace.hpp"

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

namespace sunflower {

inline constexpr std::uint64_t kDefaultCodeCap = 1ull << 22;

/// Gabidulin code: evaluations of f(x) = sum_{i<dim} a_i x^{q^i} at the
/// polynomial-basis points 1, alpha, ..., alpha^{length-1}.
class GabidulinCode {
public:
    using Elem = ExtField::Elem;

    GabidulinCode(std::shared_ptr<const ExtField> ext, std::size_t length, std::size_t dimension)
        : ext_(std::move(ext)), length_(length), dimension_(dimension) {
        detail::require(length_ <= ext_->degree(), "Gabidulin length must not exceed the extension degree");
        detail::require(dimension_ <= length_, "Gabidulin dimension must not exceed its length");
        points_.resize(length_);
        Elem x = 1;
        for (std::size_t j = 0; j < length_; ++j) {
            points_[j] = x;
            x = ext_->mul(x, ext_->alpha());
        }
        // frob_[i][j] = g_j^{q^i}
        frob_.resize(dimension_);
        for (std::size_t i = 0; i < dimension_; ++i) {
            frob_[i].resize(length_);
            for (std::size_t j = 0; j < length_; ++j) frob_[i][j] = ext_->frobenius(points_[j], static_cast<unsigned>(i));
        }
    }

    const ExtField& ext() const { return *ext_; }
    const Field& base() const { return ext_->base(); }
    std::size_t length() const { return length_; }
    std::size_t dimension() const { return dimension_; }
    const std::vector<Elem>& points() const { return points_; }

    /// q^{e·dimension}.
    BigNat size() const { return ipow(BigNat(ext_->order()), dimension_); }

    std::size_t designed_distance() const { return length_ - dimension_ + 1; }

    std::vector<Elem> encode(std::span<const Elem> message) const {
        detail::require(message.size() == dimension_, "message length must equal the code dimension");
        std::vector<Elem> word(length_, 0);
        for (std::size_t i = 0; i < dimension_; ++i) {
            if (message[i] == 0) continue;
            for (std::size_t j = 0; j < length_; ++j) word[j] = ext_->add(word[j], ext_->mul(message[i], frob_[i][j]));
        }
        return word;
    }

    /// length x e matrix over GF(q); row j is the expansion of symbol j.
    Matrix to_matrix(std::span<const Elem> codeword) const {
        detail::require(codeword.size() == length_, "codeword length mismatch");
        Matrix m(length_, ext_->degree());
        for (std::size_t j = 0; j < length_; ++j) {
            auto c = ext_->expand(codeword[j]);
            std::copy(c.begin(), c.end(), m.row(j).begin());
        }
        return m;
    }

    /// Calls fn(message, codeword) for every message, in integer-code order
    /// with message[0] least significant.
    template <class Fn>
    void for_each_codeword(Fn&& fn, std::uint64_t cap = kDefaultCodeCap) const {
        if (size() > cap) throw BudgetError("Gabidulin code exceeds enumeration budget");
        std::vector<Elem> msg(dimension_, 0);
        const Elem order = ext_->order();
        while (true) {
            fn(std::as_const(msg), encode(msg));
            std::size_t i = 0;
            for (; i < dimension_; ++i) {
                if (++msg[i] < order) break;
                msg[i] = 0;
            }
            if (i == dimension_) break;
        }
    }

private:
    std::shared_ptr<const ExtField> ext_;
    std::size_t length_;
    std::size_t dimension_;
    std::vector<Elem> points_;
    std::vector<std::vector<Elem>> frob_;
};

inline std::vector<GabidulinCode::Elem> gabidulin_encode(const GabidulinCode& code,
                                                        std::span<const GabidulinCode::Elem> message) {
    return code.encode(message);
}

inline Matrix codeword_to_matrix(const GabidulinCode& code, std::span<const GabidulinCode::Elem> word) {
    return code.to_matrix(word);
}

/// Minimum rank of a nonzero codeword matrix, by full enumeration.
inline std::size_t min_rank_distance(const GabidulinCode& code, std::uint64_t cap = kDefaultCodeCap) {
    detail::require(code.dimension() >= 1, "minimum distance needs a nonzero code");
    std::size_t best = code.length() + 1;
    code.for_each_codeword(
        [&](const auto& msg, const auto& word) {
            if (std::all_of(msg.begin(), msg.end(), [](auto v) { return v == 0; })) return;
            best = std::min(best, rank(code.base(), code.to_matrix(word)));
        },
        cap);
    return best;
}

/// Subspace code {rowspace [I_m | A]} avoiding W = span(e_{m+1}, ..., e_n).
struct LiftedMrdCode {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t min_distance = 0;  ///< subspace distance D
    bool tall = true;              ///< n >= 2m
    Subspace avoided;              ///< W
    std::vector<Subspace> members; ///< canonically sorted
};

namespace detail {

inline Subspace lift(const FieldPtr& field, const Matrix& a) {
    const std::size_t m = a.rows(), n = m + a.cols();
    Matrix rows(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        rows(i, i) = 1;
        std::copy(a.row(i).begin(), a.row(i).end(), rows.row(i).begin() + m);
    }
    return Subspace::from_rows(field, n, rows);
}

/// Lift of a Gabidulin code of the given message dimension (possibly zero).
inline LiftedMrdCode lift_code(const FieldPtr& field, std::size_t n, std::size_t m, std::size_t rank_dimension,
                               std::uint64_t cap) {
    LiftedMrdCode out;
    out.n = n;
    out.m = m;
    out.tall = n >= 2 * m;
    out.avoided = Subspace::coordinate(field, n, m, n - m);
    const std::size_t small = std::min(m, n - m), large = std::max(m, n - m);
    out.min_distance = 2 * (small + 1 - rank_dimension);
    if (small == 0) {
        out.members.push_back(lift(field, Matrix(m, n - m)));
        return out;
    }
    auto ext = std::make_shared<const ExtField>(field, static_cast<unsigned>(large));
    GabidulinCode code(ext, small, rank_dimension);
    if (code.size() > cap) throw BudgetError("lifted MRD code exceeds enumeration budget");
    code.for_each_codeword(
        [&](const auto&, const auto& word) {
            Matrix a = code.to_matrix(word);  // small x large
            out.members.push_back(lift(field, out.tall ? a : a.transpose()));
        },
        cap);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace detail

/// (n, D; m) subspace code of size q^{max(m,n-m)(min(m,n-m) - D/2 + 1)}.
inline LiftedMrdCode lifted_mrd(const FieldPtr& field, std::size_t n, std::size_t D, std::size_t m,
                                std::uint64_t cap = kDefaultCodeCap) {
    detail::require(n >= m, "lifted MRD code requires n >= m");
    detail::require(D % 2 == 0, "subspace distance must be even");
    const std::size_t small = std::min(m, n - m);
    detail::require(D >= 2 && D <= 2 * small, "subspace distance must satisfy 2 <= D <= 2 min(m, n-m)");
    auto out = detail::lift_code(field, n, m, small - D / 2 + 1, cap);
    out.min_distance = D;
    return out;
}

/// m-spaces avoiding W such that every d-space lies in at most one member,
/// i.e. pairwise intersections have dimension <= d - 1.
inline LiftedMrdCode cover_free_code(const FieldPtr& field, std::size_t n, std::size_t m, std::size_t d,
                                     std::uint64_t cap = kDefaultCodeCap) {
    detail::require(n >= m && m >= d, "cover-free code requires n >= m >= d");
    detail::require(n >= 2 * m || n + d >= 2 * m, "cover-free code requires n - 2m + d >= 0 when n < 2m");
    const std::size_t small = std::min(m, n - m);
    // message dimension of the underlying Gabidulin code
    const std::size_t rank_dimension = n >= 2 * m ? d : n + d - 2 * m;
    detail::require(rank_dimension <= small, "cover-free parameters out of range");
    auto out = detail::lift_code(field, n, m, rank_dimension, cap);
    out.min_distance = 2 * (m - d + 1);
    return out;
}

/// Member count of cover_free_code without materializing it, as a power of q.
inline std::size_t cover_free_exponent(std::size_t n, std::size_t m, std::size_t d) {
    return n >= 2 * m ? d * (n - m) : m * (n + d - 2 * m);
}

}  // namespace sunflower
