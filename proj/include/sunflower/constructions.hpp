#pragma once

// Sunflower-free families of k-spaces: the nested lifted-MRD constructions
// A(s, k) and B(s, k), the partite family, the cover-free family G and the
// spread-based family in V(5, q).

#include "sunflower/parallel.hpp"
#include "sunflower/rank_metric.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunflower {

inline constexpr std::uint64_t kDefaultLeafCap = 1ull << 22;

/// Parameters of an (m, d; V, Sigma, T)-family: m-spaces C of V with
/// Sigma ∩ C = T, no d-space disjoint from T in two members.
struct FamilySpec {
    std::size_t m = 0;
    std::size_t d = 0;
    Subspace ambient;  ///< V
    Subspace sigma;    ///< Sigma
    Subspace t;        ///< T

    std::size_t n() const { return ambient.dim(); }
    std::size_t tau() const { return t.dim(); }
    std::size_t sigma_dim() const { return sigma.dim(); }
};

/// Size exponent of the realized family: |C| = q^exponent.
inline std::size_t family_exponent(std::size_t n, std::size_t m, std::size_t d, std::size_t tau) {
    return cover_free_exponent(n - tau, m - tau, d);
}

/// Checks the quotient-level conditions under which build_family applies.
inline void validate(const FamilySpec& spec) {
    const auto& V = spec.ambient;
    detail::require_same_ambient(V, spec.sigma);
    detail::require_same_ambient(V, spec.t);
    detail::require(V.contains(spec.sigma), "family parameters: Sigma must lie in V");
    detail::require(spec.sigma.contains(spec.t), "family parameters: T must lie in Sigma");
    const std::size_t n = spec.n(), m = spec.m, d = spec.d, tau = spec.tau(), sigma = spec.sigma_dim();
    detail::require(m <= n, "family parameters: m must not exceed dim V");
    detail::require(tau <= m && d <= m - tau, "family parameters: d <= m - tau violated");
    detail::require(sigma - tau <= n - m, "family parameters: sigma - tau <= n - m violated");
    detail::require(n - tau >= 2 * (m - tau) || n + tau + d >= 2 * m,
                    "family parameters: n - 2m + tau + d >= 0 violated in the wide case");
}

/// Realizes an (m, d; V, Sigma, T)-family: a cover-free lifted MRD code in
/// V/T whose avoided space contains Sigma/T, pulled back into V.
inline std::vector<Subspace> build_family(const FamilySpec& spec, std::uint64_t cap = kDefaultCodeCap) {
    validate(spec);
    const FieldPtr& field = spec.ambient.field_ptr();
    const std::size_t n = spec.n(), m = spec.m, tau = spec.tau();
    const QuotientMap qm(spec.ambient, spec.t);
    const std::size_t w = qm.quotient_dim();

    // frame of V/T: complement block first, then an (n-m)-space containing Sigma/T
    const Subspace whole = Subspace::full(field, w);
    const Subspace avoided = extend_within(whole, qm.push(spec.sigma), n - m);
    const Matrix frame = vstack(complement(whole, avoided).basis(), avoided.basis());

    const auto code = cover_free_code(field, w, m - tau, spec.d, cap);
    std::vector<Subspace> out;
    out.reserve(code.members.size());
    for (const auto& member : code.members) out.push_back(qm.pull(map_through(member, frame, field)));
    return out;
}

enum class Construction { A, B };

inline const char* to_string(Construction c) { return c == Construction::A ? "a" : "b"; }

/// One level of the nesting: the family C_label of m-spaces built inside a
/// parent member of dimension n, with Sigma and T spanned by the first
/// sigma_dim and tau_dim coordinates.
struct NestingLevel {
    std::size_t label = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;
    std::size_t sigma_dim = 0;
    std::size_t tau_dim = 0;

    std::size_t exponent() const { return family_exponent(n, m, d, tau_dim); }
};

struct NestingParams {
    Construction tag = Construction::A;
    std::size_t s = 0;
    std::size_t k = 0;
    std::size_t ambient = 0;              ///< sk - 1
    std::vector<std::size_t> m_values;    ///< m_0 .. m_top (A) or m_1 .. m_s (B), see m_offset
    std::size_t m_offset = 0;             ///< index of m_values[0]
    std::vector<std::size_t> d_values;    ///< d_i aligned with m_values (top entry unused)
    std::vector<std::size_t> tower_dims;  ///< dim T_i, in increasing i
    std::size_t tower_offset = 0;         ///< index of tower_dims[0]
    std::vector<NestingLevel> levels;     ///< top family first, leaf family last

    std::size_t m_at(std::size_t i) const { return m_values.at(i - m_offset); }
    std::size_t d_at(std::size_t i) const { return d_values.at(i - m_offset); }
    std::size_t tower_dim(std::size_t i) const { return tower_dims.at(i - tower_offset); }
};

/// (m_i, d_i) = (k-1+i(s-1), k-i), i = 1..k-1, in V(sk-1).
inline NestingParams params_A(std::size_t s, std::size_t k) {
    detail::require(k >= 2 && s >= k + 1, "construction A requires s >= k+1 >= 3");
    NestingParams p;
    p.tag = Construction::A;
    p.s = s;
    p.k = k;
    p.ambient = s * k - 1;
    p.m_offset = 0;
    for (std::size_t i = 0; i <= k; ++i) {
        p.m_values.push_back(k - 1 + i * (s - 1));
        p.d_values.push_back(k - i);
    }
    p.tower_offset = 1;
    for (std::size_t i = 1; i <= k - 1; ++i) {
        const std::size_t dim_t = 2 * p.m_at(i) - p.m_at(i + 1);
        if (dim_t != p.m_at(i - 1)) throw std::logic_error("construction A tower dimension mismatch");
        p.tower_dims.push_back(dim_t);
    }
    // top family C_{k-1}: (m_{k-1}, d_{k-1}; V, T_{k-1}, T_{k-1})
    for (std::size_t i = k - 1; i >= 1; --i) {
        NestingLevel lv;
        lv.label = i;
        lv.n = p.m_at(i + 1);
        lv.m = p.m_at(i);
        lv.d = p.d_at(i);
        lv.tau_dim = p.tower_dim(i);
        lv.sigma_dim = i == k - 1 ? p.tower_dim(i) : p.tower_dim(i + 1);
        p.levels.push_back(lv);
    }
    // leaf family C_0: (k, k; C_1, T_1, {0})
    p.levels.push_back({0, p.m_at(1), k, k, p.tower_dim(1), 0});
    return p;
}

/// (m_i, d_i) = (ik-1, floor((s-1-i)k/(s-1)) + 1), i = 1..s-1, in V(sk-1).
inline NestingParams params_B(std::size_t s, std::size_t k) {
    detail::require(s >= 3 && s <= k, "construction B requires 3 <= s <= k");
    NestingParams p;
    p.tag = Construction::B;
    p.s = s;
    p.k = k;
    p.ambient = s * k - 1;
    p.m_offset = 1;
    for (std::size_t i = 1; i <= s; ++i) {
        p.m_values.push_back(i * k - 1);
        p.d_values.push_back(i < s ? (s - 1 - i) * k / (s - 1) + 1 : 0);
    }
    p.tower_offset = 2;
    for (std::size_t i = 2; i <= s - 1; ++i) {
        const std::size_t dim_t = 2 * p.m_at(i) - p.m_at(i + 1);
        if (dim_t != p.m_at(i - 1)) throw std::logic_error("construction B tower dimension mismatch");
        p.tower_dims.push_back(dim_t);
    }
    for (std::size_t i = s - 1; i >= 2; --i) {
        NestingLevel lv;
        lv.label = i;
        lv.n = p.m_at(i + 1);
        lv.m = p.m_at(i);
        lv.d = p.d_at(i);
        lv.tau_dim = p.tower_dim(i);
        lv.sigma_dim = i == s - 1 ? p.tower_dim(i) : p.tower_dim(i + 1);
        p.levels.push_back(lv);
    }
    // leaf family C_1: (k, d_1; C_2, T_2, {0})
    p.levels.push_back({1, p.m_at(2), k, p.d_at(1), p.tower_dim(2), 0});
    return p;
}

inline std::int64_t binom2(std::int64_t k) { return k * (k + 1) / 2; }

/// Exponent of the guaranteed lower bound: (s-1)C(k+1,2) - k for s >= k+1,
/// otherwise (s-2)C(k+1,2) + k(gcd(k, s-1) - 3)/2.
inline std::int64_t lower_bound_exponent(std::int64_t s, std::int64_t k) {
    if (s >= k + 1) return (s - 1) * binom2(k) - k;
    const std::int64_t g = std::gcd(k, s - 1);
    return (s - 2) * binom2(k) + k * (g - 3) / 2;
}

struct PredictedSizes {
    std::vector<std::size_t> exponents;  ///< leaf family first, top family last
    std::size_t total_exponent = 0;
    std::int64_t bound_exponent = 0;
    BigNat total;
    BigNat bound;
};

inline PredictedSizes predicted_sizes(const NestingParams& p, std::uint64_t q) {
    PredictedSizes out;
    for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
        out.exponents.push_back(it->exponent());
        out.total_exponent += it->exponent();
    }
    out.bound_exponent = lower_bound_exponent(static_cast<std::int64_t>(p.s), static_cast<std::int64_t>(p.k));
    if (static_cast<std::int64_t>(out.total_exponent) < out.bound_exponent)
        throw std::logic_error("realized family falls below the guaranteed lower bound");
    out.total = ipow(BigNat(q), out.total_exponent);
    out.bound = ipow(BigNat(q), static_cast<std::uint64_t>(out.bound_exponent));
    return out;
}

struct TreeNode {
    Subspace member;
    std::vector<TreeNode> children;
};

struct Leaf {
    Subspace space;
    std::vector<std::uint32_t> path;  ///< child index at each level, from the root
};

/// The materialized nesting. The root's member is the ambient V(sk-1, q);
/// nodes at depth j+1 form the family of params.levels[j] inside their parent.
struct FamilyTree {
    NestingParams params;
    FieldPtr field;
    std::vector<Subspace> tower;  ///< T_i, increasing i
    TreeNode root;
    std::vector<Leaf> leaves;
    std::vector<std::size_t> level_sizes;  ///< family size per level, top first

    Subspace level_sigma(std::size_t depth) const {
        return Subspace::coordinate(field, params.ambient, 0, params.levels.at(depth).sigma_dim);
    }
    Subspace level_t(std::size_t depth) const {
        return Subspace::coordinate(field, params.ambient, 0, params.levels.at(depth).tau_dim);
    }
    FamilySpec level_spec(std::size_t depth, const Subspace& parent) const {
        const auto& lv = params.levels.at(depth);
        return {lv.m, lv.d, parent, level_sigma(depth), level_t(depth)};
    }
};

struct BuildOptions {
    unsigned workers = 1;
    std::uint64_t leaf_cap = kDefaultLeafCap;
    std::uint64_t code_cap = kDefaultCodeCap;
};

namespace detail {

inline void grow(const FamilyTree& tree, TreeNode& node, std::size_t depth, std::uint64_t code_cap) {
    if (depth == tree.params.levels.size()) return;
    auto members = build_family(tree.level_spec(depth, node.member), code_cap);
    node.children.reserve(members.size());
    for (auto& c : members) node.children.push_back({std::move(c), {}});
    for (auto& child : node.children) grow(tree, child, depth + 1, code_cap);
}

inline void collect(const TreeNode& node, std::vector<std::uint32_t>& path, std::vector<Leaf>& out) {
    if (node.children.empty()) {
        out.push_back({node.member, path});
        return;
    }
    for (std::uint32_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        collect(node.children[i], path, out);
        path.pop_back();
    }
}

inline FamilyTree build_tree(NestingParams params, const FieldPtr& field, const BuildOptions& opt) {
    const auto pred = predicted_sizes(params, field->order());
    if (pred.total > opt.leaf_cap) throw BudgetError("family tree exceeds leaf budget");
    FamilyTree tree;
    tree.params = std::move(params);
    tree.field = field;
    const std::size_t N = tree.params.ambient;
    for (auto dim : tree.params.tower_dims) tree.tower.push_back(Subspace::coordinate(field, N, 0, dim));
    tree.root.member = Subspace::full(field, N);

    // top family serially, subtrees in parallel
    auto top = build_family(tree.level_spec(0, tree.root.member), opt.code_cap);
    tree.root.children.resize(top.size());
    for (std::size_t i = 0; i < top.size(); ++i) tree.root.children[i].member = std::move(top[i]);
    parallel_for(tree.root.children.size(), opt.workers,
                 [&](std::size_t i) { grow(tree, tree.root.children[i], 1, opt.code_cap); });

    std::vector<std::uint32_t> path;
    collect(tree.root, path, tree.leaves);
    const TreeNode* node = &tree.root;
    for (std::size_t depth = 0; depth < tree.params.levels.size() && !node->children.empty(); ++depth) {
        tree.level_sizes.push_back(node->children.size());
        node = &node->children.front();
    }
    return tree;
}

}  // namespace detail

/// Construction A(s, k) for s >= k+1 >= 3.
inline FamilyTree construct_A(std::size_t s, std::size_t k, const FieldPtr& field, const BuildOptions& opt = {}) {
    return detail::build_tree(params_A(s, k), field, opt);
}

/// Construction B(s, k) for 3 <= s <= k.
inline FamilyTree construct_B(std::size_t s, std::size_t k, const FieldPtr& field, const BuildOptions& opt = {}) {
    return detail::build_tree(params_B(s, k), field, opt);
}

/// All k-spaces of V(k(s-1), q) meeting each coordinate block W_i of
/// dimension s-1 in a 1-space; ([s-1]_q)^k members.
inline std::vector<Subspace> construct_partite(std::size_t s, std::size_t k, const FieldPtr& field,
                                               std::uint64_t cap = kDefaultLeafCap) {
    detail::require(s >= 3 && k >= 1, "partite family requires s >= 3 and k >= 1");
    const std::size_t block = s - 1, n = k * block;
    if (ipow(gauss_bracket(static_cast<std::int64_t>(block), field->order()), k) > cap)
        throw BudgetError("partite family exceeds budget");
    std::vector<Subspace> points;
    for_each_subspace(field, block, 1, [&](const Subspace& p) { points.push_back(p); });
    std::vector<Subspace> out;
    std::vector<std::size_t> choice(k, 0);
    while (true) {
        Matrix rows(k, n);
        for (std::size_t i = 0; i < k; ++i) {
            auto v = points[choice[i]].basis().row(0);
            std::copy(v.begin(), v.end(), rows.row(i).begin() + i * block);
        }
        out.push_back(Subspace::from_rows(field, n, rows));
        std::size_t i = k;
        while (i-- > 0) {
            if (++choice[i] < points.size()) break;
            choice[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

/// k-spaces of V((s+1)k/2 - 1, q) no (k/2+1)-space of which lies in two members.
inline std::vector<Subspace> construct_G(std::size_t s, std::size_t k, const FieldPtr& field,
                                         std::uint64_t cap = kDefaultCodeCap) {
    detail::require(k >= 2 && k % 2 == 0, "family G requires even k >= 2");
    detail::require(s >= 4, "family G requires s >= 4");
    const std::size_t n = (s + 1) * k / 2 - 1;
    return cover_free_code(field, n, k, k / 2 + 1, cap).members;
}

inline std::int64_t family_G_bound_exponent(std::int64_t s, std::int64_t k) {
    return (s - 1) * k * k / 4 + (s - 2) * k / 2 - 1;
}

/// The q^2+1 2-spaces of V(4, q) given by the 1-spaces of V(2, q^2):
/// <(1, x)> for x in code order, then <(0, 1)>.
inline std::vector<Subspace> line_spread_v4(const FieldPtr& field) {
    const ExtField ext(field, 2);
    const auto a = ext.alpha();
    auto block = [&](ExtField::Elem u, ExtField::Elem v) {
        Matrix rows(2, 4);
        const ExtField::Elem scal[2] = {1, a};
        for (std::size_t r = 0; r < 2; ++r) {
            auto eu = ext.expand(ext.mul(scal[r], u)), ev = ext.expand(ext.mul(scal[r], v));
            rows(r, 0) = eu[0];
            rows(r, 1) = eu[1];
            rows(r, 2) = ev[0];
            rows(r, 3) = ev[1];
        }
        return Subspace::from_rows(field, 4, rows);
    };
    std::vector<Subspace> out;
    for (ExtField::Elem x = 0; x < ext.order(); ++x) out.push_back(block(1, x));
    out.push_back(block(0, 1));
    return out;
}

/// 3-spaces of V(5, q) through T = <e_1> pairwise meeting in T.
inline std::vector<Subspace> example1_blocks(const FieldPtr& field) {
    const QuotientMap qm(Subspace::full(field, 5), Subspace::coordinate(field, 5, 0, 1));
    std::vector<Subspace> out;
    for (const auto& line : line_spread_v4(field)) out.push_back(qm.pull(line));
    return out;
}

/// All 2-spaces of the first block plus the 2-spaces of every other block
/// disjoint from T; q^4 + q^2 + q + 1 members.
inline std::vector<Subspace> construct_example1(const FieldPtr& field) {
    const Subspace t = Subspace::coordinate(field, 5, 0, 1);
    const auto blocks = example1_blocks(field);
    std::vector<Subspace> out = subspaces_within(blocks.front(), 2);
    for (std::size_t i = 1; i < blocks.size(); ++i)
        for (auto& x : subspaces_within(blocks[i], 2))
            if (meet_dim(x, t) == 0) out.push_back(std::move(x));
    return out;
}

}  // namespace sunflower
