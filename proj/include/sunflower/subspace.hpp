#pragma once

// Subspaces of V(n, q) in canonical RREF form, lattice operations, the
// subspace metric, quotient maps and exhaustive enumeration.

#include "sunflower/bignum.hpp"
#include "sunflower/matrix.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sunflower {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// A subspace of V(n, q). The basis is always the unique RREF matrix of the
/// row space with zero rows removed, so equality is matrix equality.
class Subspace {
public:
    Subspace() = default;

    static Subspace from_rows(FieldPtr field, std::size_t n, const Matrix& rows) {
        detail::require(field != nullptr, "subspace requires a field");
        detail::require(rows.cols() == n, "row length does not match ambient dimension");
        auto r = rref(*field, rows);
        return Subspace(std::move(field), n, std::move(r.reduced));
    }

    static Subspace zero(FieldPtr field, std::size_t n) { return Subspace(std::move(field), n, Matrix(0, n)); }

    static Subspace full(FieldPtr field, std::size_t n) { return Subspace(std::move(field), n, Matrix::identity(n)); }

    /// Span of the standard vectors e_first, ..., e_{first+count-1}.
    static Subspace coordinate(FieldPtr field, std::size_t n, std::size_t first, std::size_t count) {
        detail::require(first + count <= n, "coordinate span out of range");
        Matrix b(count, n);
        for (std::size_t i = 0; i < count; ++i) b(i, first + i) = 1;
        return Subspace(std::move(field), n, std::move(b));
    }

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    bool is_zero() const { return basis_.rows() == 0; }

    bool contains_vector(std::span<const Matrix::Elem> v) const {
        detail::require(v.size() == n_, "vector length does not match ambient dimension");
        Matrix m = basis_;
        m.append_row(v);
        return rank(*field_, std::move(m)) == dim();
    }

    bool contains(const Subspace& other) const;

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull ^ n_;
        for (auto v : basis_.data()) h = (h ^ v) * 1099511628211ull;
        return static_cast<std::size_t>(h ^ (basis_.rows() << 1));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.basis_ <=> b.basis_;
    }

private:
    Subspace(FieldPtr field, std::size_t n, Matrix basis) : field_(std::move(field)), n_(n), basis_(std::move(basis)) {}

    friend class QuotientMap;
    friend Subspace meet(const Subspace&, const Subspace&);

    FieldPtr field_;
    std::size_t n_ = 0;
    Matrix basis_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

namespace detail {

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim() == b.ambient_dim(), "subspaces live in different ambient spaces");
    require(a.field_ptr() == b.field_ptr() || a.field() == b.field(), "subspaces live over different fields");
}

}  // namespace detail

inline Subspace join(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b);
    return Subspace::from_rows(a.field_ptr(), a.ambient_dim(), vstack(a.basis(), b.basis()));
}

inline std::size_t join_dim(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b);
    return rank(a.field(), vstack(a.basis(), b.basis()));
}

/// dim(a ∩ b) via the modular law; no basis is formed.
inline std::size_t meet_dim(const Subspace& a, const Subspace& b) { return a.dim() + b.dim() - join_dim(a, b); }

/// Intersection by the Zassenhaus scheme: reduce [[A, A], [B, 0]]; rows with
/// vanishing left half carry a basis of A ∩ B in their right half.
inline Subspace meet(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b);
    const std::size_t n = a.ambient_dim();
    const Field& F = a.field();
    Matrix z(a.dim() + b.dim(), 2 * n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = a.basis()(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = b.basis()(i, j);
    auto r = rref(F, std::move(z));
    Matrix out(0, n);
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivots[i] < n) continue;
        auto row = r.reduced.row(i);
        out.append_row(row.subspan(n));
    }
    // right halves of these rows are already reduced against each other
    return Subspace(a.field_ptr(), n, std::move(out));
}

inline bool Subspace::contains(const Subspace& other) const {
    detail::require_same_ambient(*this, other);
    return other.dim() <= dim() && join_dim(*this, other) == dim();
}

inline std::size_t subspace_distance(const Subspace& a, const Subspace& b) {
    const auto j = join_dim(a, b);
    return 2 * j - a.dim() - b.dim();
}

inline Subspace span_of(std::span<const Subspace> list) {
    detail::require(!list.empty(), "span of an empty list needs an ambient space");
    Matrix rows(0, list.front().ambient_dim());
    for (const auto& s : list) {
        detail::require_same_ambient(list.front(), s);
        rows = vstack(rows, s.basis());
    }
    return Subspace::from_rows(list.front().field_ptr(), list.front().ambient_dim(), rows);
}

inline bool in_general_position(std::span<const Subspace> list) {
    if (list.empty()) return true;
    std::size_t total = 0;
    Matrix rows(0, list.front().ambient_dim());
    for (const auto& s : list) {
        detail::require_same_ambient(list.front(), s);
        total += s.dim();
        rows = vstack(rows, s.basis());
    }
    return rank(list.front().field(), std::move(rows)) == total;
}

/// A complement C of S inside V: S ∩ C = 0 and S + C = V. Rows of V's RREF
/// basis are added greedily in order whenever they leave the current span;
/// for V the full space these are the standard coordinates in index order.
inline Subspace complement(const Subspace& v, const Subspace& s) {
    detail::require_same_ambient(v, s);
    detail::require(v.contains(s), "complement requires S inside V");
    const Field& F = v.field();
    Matrix acc = s.basis();
    Matrix chosen(0, v.ambient_dim());
    std::size_t r = s.dim();
    for (std::size_t i = 0; i < v.dim() && r < v.dim(); ++i) {
        Matrix trial = acc;
        trial.append_row(v.basis().row(i));
        if (rank(F, trial) > r) {
            acc = std::move(trial);
            chosen.append_row(v.basis().row(i));
            ++r;
        }
    }
    return Subspace::from_rows(v.field_ptr(), v.ambient_dim(), chosen);
}

/// Extends S inside V to a subspace of the requested dimension using the same
/// greedy rule as complement().
inline Subspace extend_within(const Subspace& v, const Subspace& s, std::size_t target_dim) {
    detail::require(target_dim >= s.dim() && target_dim <= v.dim(), "extension target out of range");
    const Field& F = v.field();
    Matrix acc = s.basis();
    std::size_t r = s.dim();
    for (std::size_t i = 0; i < v.dim() && r < target_dim; ++i) {
        Matrix trial = acc;
        trial.append_row(v.basis().row(i));
        if (rank(F, trial) > r) {
            acc = std::move(trial);
            ++r;
        }
    }
    return Subspace::from_rows(v.field_ptr(), v.ambient_dim(), acc);
}

/// Image of a subspace of V(frame.rows()) under the coordinate map x -> x·frame.
inline Subspace map_through(const Subspace& local, const Matrix& frame, const FieldPtr& field) {
    detail::require(local.ambient_dim() == frame.rows(), "frame does not match local ambient dimension");
    return Subspace::from_rows(field, frame.cols(), multiply(*field, local.basis(), frame));
}

/// Pads every basis vector with zero coordinates up to a larger ambient.
inline Subspace embed(const Subspace& s, std::size_t new_n) {
    detail::require(new_n >= s.ambient_dim(), "embedding must not shrink the ambient");
    Matrix b(s.dim(), new_n);
    for (std::size_t i = 0; i < s.dim(); ++i)
        std::copy(s.basis().row(i).begin(), s.basis().row(i).end(), b.row(i).begin());
    return Subspace::from_rows(s.field_ptr(), new_n, b);
}

/// Linear isomorphism V/T -> V(dim V - dim T) together with a section back
/// into V. The section spans the non-pivot coordinates of T that lie in V,
/// extended greedily by V's basis rows.
class QuotientMap {
public:
    QuotientMap(Subspace ambient, Subspace modulus)
        : ambient_(std::move(ambient)), modulus_(std::move(modulus)) {
        detail::require_same_ambient(ambient_, modulus_);
        detail::require(ambient_.contains(modulus_), "quotient modulus must lie in the ambient subspace");
        const Field& F = ambient_.field();
        section_ = section_rows(ambient_, modulus_);
        // coordinates w.r.t. [T; C] are read off at the pivot columns of V
        const Matrix frame = vstack(modulus_.basis(), section_);
        pivots_.clear();
        {
            auto r = rref(F, ambient_.basis());
            pivots_ = r.pivots;
        }
        const Matrix inv = inverse(F, frame.columns(pivots_));
        const std::size_t tau = modulus_.dim(), w = quotient_dim();
        coords_ = Matrix(inv.rows(), w);
        for (std::size_t i = 0; i < inv.rows(); ++i)
            for (std::size_t j = 0; j < w; ++j) coords_(i, j) = inv(i, tau + j);
    }

    const Subspace& ambient() const { return ambient_; }
    const Subspace& modulus() const { return modulus_; }
    std::size_t quotient_dim() const { return ambient_.dim() - modulus_.dim(); }
    /// Rows: images of the quotient's standard basis under the section.
    const Matrix& section() const { return section_; }

    /// (A + T)/T in quotient coordinates.
    Subspace push(const Subspace& a) const {
        detail::require_same_ambient(a, ambient_);
        detail::require(ambient_.contains(a), "pushed subspace must lie in the quotient ambient");
        const Field& F = ambient_.field();
        Matrix img = multiply(F, a.basis().columns(pivots_), coords_);
        return Subspace::from_rows(ambient_.field_ptr(), quotient_dim(), img);
    }

    /// Full preimage of B; always contains T.
    Subspace pull(const Subspace& b) const {
        detail::require(b.ambient_dim() == quotient_dim(), "pulled subspace must live in the quotient");
        const Field& F = ambient_.field();
        Matrix rows = vstack(modulus_.basis(), multiply(F, b.basis(), section_));
        return Subspace::from_rows(ambient_.field_ptr(), ambient_.ambient_dim(), rows);
    }

private:
    // Unit vectors at the non-pivot columns of T that lie in V, then the
    // rows of V's basis, each kept when it enlarges T + (rows so far).
    static Matrix section_rows(const Subspace& v, const Subspace& t) {
        const Field& F = v.field();
        const std::size_t n = v.ambient_dim();
        const auto t_pivots = rref(F, t.basis()).pivots;
        std::vector<bool> is_pivot(n, false);
        for (auto p : t_pivots) is_pivot[p] = true;
        Matrix candidates(0, n);
        for (std::size_t j = 0; j < n; ++j) {
            if (is_pivot[j]) continue;
            std::vector<Matrix::Elem> e(n, 0);
            e[j] = 1;
            if (v.contains_vector(e)) candidates.append_row(e);
        }
        candidates = vstack(candidates, v.basis());
        Matrix acc = t.basis(), chosen(0, n);
        std::size_t r = t.dim();
        for (std::size_t i = 0; i < candidates.rows() && r < v.dim(); ++i) {
            Matrix trial = acc;
            trial.append_row(candidates.row(i));
            if (rank(F, trial) > r) {
                acc = std::move(trial);
                chosen.append_row(candidates.row(i));
                ++r;
            }
        }
        return chosen;
    }

    Subspace ambient_;
    Subspace modulus_;
    Matrix section_;
    std::vector<std::size_t> pivots_;
    Matrix coords_;
};

inline QuotientMap quotient(const Subspace& v, const Subspace& t) { return QuotientMap(v, t); }

/// Streams every m-subspace of V(n, q) exactly once as a canonical RREF
/// matrix. Pivot sets advance in colexicographic order; for a fixed pivot set
/// the free entries, read row-major as base-q digits with the last one least
/// significant, count upward.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr field, std::size_t n, std::size_t m, std::uint64_t cap = kDefaultEnumerationCap)
        : field_(std::move(field)), n_(n), m_(m) {
        detail::require(m_ <= n_, "subspace dimension exceeds ambient dimension");
        if (gaussian(n_, m_, field_->order()) > cap) throw BudgetError("subspace enumeration exceeds budget");
        pivots_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) pivots_[i] = i;
        reset_free();
    }

    /// Next subspace, or nullopt once exhausted.
    std::optional<Subspace> next() {
        if (done_) return std::nullopt;
        Matrix b(m_, n_);
        for (std::size_t r = 0; r < m_; ++r) b(r, pivots_[r]) = 1;
        for (std::size_t i = 0; i < free_.size(); ++i) b(free_[i].first, free_[i].second) = digits_[i];
        advance();
        return Subspace::from_rows(field_, n_, b);
    }

private:
    void reset_free() {
        free_.clear();
        std::vector<bool> piv(n_, false);
        for (auto p : pivots_) piv[p] = true;
        for (std::size_t r = 0; r < m_; ++r)
            for (std::size_t c = pivots_[r] + 1; c < n_; ++c)
                if (!piv[c]) free_.emplace_back(r, c);
        digits_.assign(free_.size(), 0);
    }

    void advance() {
        const unsigned q = field_->order();
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (++digits_[i] < q) return;
            digits_[i] = 0;
        }
        // next pivot set in colex order
        std::size_t j = 0;
        while (j < m_) {
            const std::size_t limit = (j + 1 < m_) ? pivots_[j + 1] : n_;
            if (pivots_[j] + 1 < limit) break;
            ++j;
        }
        if (j == m_) {
            done_ = true;
            return;
        }
        ++pivots_[j];
        for (std::size_t i = 0; i < j; ++i) pivots_[i] = i;
        reset_free();
    }

    FieldPtr field_;
    std::size_t n_, m_;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_;
    std::vector<Matrix::Elem> digits_;
    bool done_ = false;
};

inline SubspaceEnumerator enumerate_subspaces(FieldPtr field, std::size_t n, std::size_t m,
                                              std::uint64_t cap = kDefaultEnumerationCap) {
    return SubspaceEnumerator(std::move(field), n, m, cap);
}

template <class Fn>
void for_each_subspace(const FieldPtr& field, std::size_t n, std::size_t m, Fn&& fn,
                       std::uint64_t cap = kDefaultEnumerationCap) {
    SubspaceEnumerator it(field, n, m, cap);
    while (auto s = it.next()) fn(*s);
}

/// Every m-subspace contained in V, through V's basis.
inline std::vector<Subspace> subspaces_within(const Subspace& v, std::size_t m,
                                              std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<Subspace> out;
    for_each_subspace(
        v.field_ptr(), v.dim(), m, [&](const Subspace& local) { out.push_back(map_through(local, v.basis(), v.field_ptr())); },
        cap);
    return out;
}

}  // namespace sunflower

template <>
struct std::hash<sunflower::Subspace> {
    std::size_t operator()(const sunflower::Subspace& s) const { return s.hash(); }
};
