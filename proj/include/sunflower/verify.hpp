#pragma once

// Sunflower detection, family-condition checks, nesting verification,
// maximality testing and the exact size bounds.

#include "sunflower/constructions.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sunflower {

enum class SunflowerMode { general, set_like };
enum class SearchStatus { exhaustive, budgeted };
enum class SearchStrategy { automatic, subsets, cliques };

enum class Outcome { sunflower_free, witness_found, conditions_hold, violation, maximal, extendable };

inline const char* to_string(SunflowerMode m) { return m == SunflowerMode::general ? "general" : "setlike"; }
inline const char* to_string(SearchStatus s) { return s == SearchStatus::exhaustive ? "exhaustive" : "budgeted"; }
inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::sunflower_free: return "sunflower-free";
        case Outcome::witness_found: return "witness";
        case Outcome::conditions_hold: return "conditions-hold";
        case Outcome::violation: return "violation";
        case Outcome::maximal: return "maximal";
        case Outcome::extendable: return "extendable";
    }
    return "?";
}

struct SunflowerWitness {
    std::vector<std::size_t> members;  ///< indices into the family
    Subspace kernel;
    std::size_t kernel_dim = 0;
    std::size_t span_dim = 0;
};

/// A candidate k-space together with the s-1 family members it completes
/// to a sunflower.
struct ExtensionWitness {
    Subspace candidate;
    SunflowerWitness sunflower;  ///< member indices exclude the candidate
};

struct BoundReport {
    BigNat lower;
    BigNat actual;
    BigNat upper;
};

struct Certificate {
    std::string kind;  ///< sunflower-search | family-conditions | nesting | maximality
    std::string family_id;
    std::size_t family_size = 0;
    std::size_t s = 0;
    SunflowerMode mode = SunflowerMode::general;
    SearchStatus status = SearchStatus::exhaustive;
    Outcome outcome = Outcome::sunflower_free;
    std::uint64_t pairs_examined = 0;
    std::uint64_t subsets_examined = 0;
    std::uint64_t checks = 0;
    std::optional<SunflowerWitness> witness;
    std::vector<ExtensionWitness> extensions;
    std::vector<std::string> violations;
    std::optional<BoundReport> bounds;

    bool proven_free() const { return outcome == Outcome::sunflower_free && status == SearchStatus::exhaustive; }
};

struct SearchBudget {
    std::uint64_t pairs = 50'000'000;
    std::uint64_t subsets = 200'000'000;
};

/// FNV-1a over the canonical member encodings, as 16 hex digits.
inline std::string family_id(std::span<const Subspace> family) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ull; };
    mix(family.size());
    for (const auto& s : family) {
        mix(s.ambient_dim());
        mix(s.dim());
        for (auto v : s.basis().data()) mix(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline void require_uniform(std::span<const Subspace> members) {
    for (const auto& m : members) {
        require_same_ambient(members.front(), m);
        require(m.dim() == members.front().dim(), "family members must have equal dimension");
    }
}

}  // namespace detail

/// Common pairwise meet K of the members if they form a sunflower: all
/// pairwise meets equal K and dim(S_1 + ... + S_s) = d + s(k - d).
inline std::optional<std::pair<Subspace, std::size_t>> sunflower_kernel(std::span<const Subspace> members) {
    detail::require(members.size() >= 2, "a sunflower needs at least two members");
    detail::require_uniform(members);
    Subspace k0 = meet(members[0], members[1]);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            detail::require(members[i] != members[j], "sunflower members must be distinct");
            if (meet(members[i], members[j]) != k0) return std::nullopt;
        }
    const std::size_t d = k0.dim(), k = members.front().dim(), s = members.size();
    if (rank(members.front().field(), span_of(members).basis()) != d + s * (k - d)) return std::nullopt;
    return std::pair{std::move(k0), d};
}

/// Common pairwise meet K if all pairwise meets coincide (quotients only
/// pairwise disjoint).
inline std::optional<std::pair<Subspace, std::size_t>> set_like_kernel(std::span<const Subspace> members) {
    detail::require(members.size() >= 2, "a sunflower needs at least two members");
    detail::require_uniform(members);
    Subspace k0 = meet(members[0], members[1]);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            detail::require(members[i] != members[j], "sunflower members must be distinct");
            if (meet(members[i], members[j]) != k0) return std::nullopt;
        }
    const std::size_t d = k0.dim();
    return std::pair{std::move(k0), d};
}

namespace detail {

/// Pairwise meets of a family, interned to kernel ids.
struct MeetTable {
    std::size_t size = 0;
    std::vector<Subspace> kernels;       ///< by id
    std::vector<std::uint32_t> pair_id;  ///< row-major upper triangle
    std::uint64_t pairs_done = 0;
    bool complete = true;

    std::uint32_t id(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return pair_id[i * size - i * (i + 1) / 2 + (j - i - 1)];
    }
};

inline MeetTable build_meet_table(std::span<const Subspace> family, std::uint64_t pair_budget, unsigned workers) {
    MeetTable t;
    const std::size_t n = family.size();
    t.size = n;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - (n ? 1 : 0)) / 2;
    std::size_t rows = n;
    if (total > pair_budget) {
        t.complete = false;
        // largest prefix of rows fitting the budget
        std::uint64_t acc = 0;
        rows = 0;
        while (rows < n && acc + (n - rows - 1) <= pair_budget) acc += n - 1 - rows++;
    }
    t.pair_id.assign(total, UINT32_MAX);
    std::unordered_map<Subspace, std::uint32_t, SubspaceHash> ids;
    constexpr std::size_t kBlock = 64;
    for (std::size_t lo = 0; lo < rows; lo += kBlock) {
        const std::size_t hi = std::min(rows, lo + kBlock);
        std::vector<std::vector<Subspace>> row_meets(hi - lo);
        parallel_for(hi - lo, workers, [&](std::size_t r) {
            const std::size_t i = lo + r;
            auto& out = row_meets[r];
            out.reserve(n - i - 1);
            for (std::size_t j = i + 1; j < n; ++j) out.push_back(meet(family[i], family[j]));
        });
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                auto& k = row_meets[i - lo][j - i - 1];
                auto [it, inserted] = ids.try_emplace(k, static_cast<std::uint32_t>(t.kernels.size()));
                if (inserted) t.kernels.push_back(std::move(k));
                t.pair_id[i * n - i * (i + 1) / 2 + (j - i - 1)] = it->second;
                ++t.pairs_done;
            }
        }
    }
    return t;
}

/// Backtracking over cliques of a kernel bucket. In general mode a partial
/// clique is kept only while its span has dimension d + size·(k - d).
class CliqueSearch {
public:
    CliqueSearch(std::span<const Subspace> family, std::size_t s, std::size_t kernel_dim, SunflowerMode mode,
                 std::uint64_t& budget_left, std::uint64_t& visited)
        : family_(family), s_(s), d_(kernel_dim), mode_(mode), budget_left_(budget_left), visited_(visited) {
        k_ = family.front().dim();
    }

    /// Vertices and sorted neighbor lists (neighbors greater than the vertex).
    std::optional<std::vector<std::size_t>> run(const std::vector<std::size_t>& verts,
                                                const std::unordered_map<std::size_t, std::vector<std::size_t>>& adj,
                                                const Matrix* seed_span, std::size_t seed_count) {
        adj_ = &adj;
        clique_.clear();
        exhausted_ = false;
        Matrix span = seed_span ? *seed_span : Matrix(0, family_.front().ambient_dim());
        std::size_t span_rank = seed_span ? rank(family_.front().field(), span) : 0;
        need_ = s_ - seed_count;
        if (rec(verts, span, span_rank, seed_count)) return clique_;
        return std::nullopt;
    }

    bool exhausted() const { return exhausted_; }

private:
    bool rec(const std::vector<std::size_t>& cand, const Matrix& span, std::size_t span_rank, std::size_t members) {
        if (clique_.size() == need_) return true;
        if (cand.size() + clique_.size() < need_) return false;
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            if (budget_left_ == 0) {
                exhausted_ = true;
                return false;
            }
            --budget_left_;
            ++visited_;
            const std::size_t v = cand[idx];
            Matrix next_span;
            std::size_t next_rank = 0;
            if (mode_ == SunflowerMode::general) {
                next_span = vstack(span, family_[v].basis());
                next_rank = rank(family_[v].field(), next_span);
                const std::size_t want = members == 0 ? k_ : span_rank + (k_ - d_);
                if (next_rank != want) continue;
            }
            std::vector<std::size_t> next;
            const auto it = adj_->find(v);
            if (it != adj_->end()) {
                const auto& nb = it->second;
                std::set_intersection(cand.begin() + idx + 1, cand.end(), nb.begin(), nb.end(),
                                      std::back_inserter(next));
            }
            clique_.push_back(v);
            if (rec(next, next_span, next_rank, members + 1)) return true;
            clique_.pop_back();
            if (exhausted_) return false;
        }
        return false;
    }

    std::span<const Subspace> family_;
    std::size_t s_, d_, k_ = 0, need_ = 0;
    SunflowerMode mode_;
    std::uint64_t& budget_left_;
    std::uint64_t& visited_;
    const std::unordered_map<std::size_t, std::vector<std::size_t>>* adj_ = nullptr;
    std::vector<std::size_t> clique_;
    bool exhausted_ = false;
};

inline SunflowerWitness make_witness(std::span<const Subspace> family, std::vector<std::size_t> idx) {
    std::sort(idx.begin(), idx.end());
    std::vector<Subspace> sel;
    for (auto i : idx) sel.push_back(family[i]);
    SunflowerWitness w;
    w.members = std::move(idx);
    w.kernel = meet(sel[0], sel[1]);
    w.kernel_dim = w.kernel.dim();
    w.span_dim = rank(sel.front().field(), span_of(sel).basis());
    return w;
}

inline bool sunflower_dims_ok(std::size_t n, std::size_t s, std::size_t k, std::size_t d) {
    return d + s * (k - d) <= n;
}

}  // namespace detail

struct SearchOptions {
    SunflowerMode mode = SunflowerMode::general;
    SearchBudget budget;
    SearchStrategy strategy = SearchStrategy::automatic;
    std::size_t subset_threshold = 30;  ///< automatic: plain enumeration below this size
    unsigned workers = 1;
};

/// Searches the family for an s-sunflower. Pairwise meets are bucketed by
/// kernel and s-cliques are searched per bucket; small families (or the
/// subsets strategy) enumerate all s-subsets instead.
inline Certificate find_sunflower(std::span<const Subspace> family, std::size_t s, const SearchOptions& opt = {}) {
    detail::require(s >= 2, "sunflower search needs s >= 2");
    Certificate cert;
    cert.kind = "sunflower-search";
    cert.family_id = family_id(family);
    cert.family_size = family.size();
    cert.s = s;
    cert.mode = opt.mode;
    cert.status = SearchStatus::exhaustive;
    cert.outcome = Outcome::sunflower_free;
    if (family.size() < s) return cert;
    detail::require_uniform(family);
    {
        std::unordered_set<Subspace, SubspaceHash> seen(family.begin(), family.end());
        detail::require(seen.size() == family.size(), "family contains duplicate members");
    }
    const std::size_t k = family.front().dim(), n = family.front().ambient_dim();
    const bool use_subsets = opt.strategy == SearchStrategy::subsets ||
                             (opt.strategy == SearchStrategy::automatic && family.size() < opt.subset_threshold);

    auto table = detail::build_meet_table(family, opt.budget.pairs, opt.workers);
    cert.pairs_examined = table.pairs_done;
    if (!table.complete) cert.status = SearchStatus::budgeted;

    if (use_subsets && table.complete) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        const std::size_t N = family.size();
        while (true) {
            if (cert.subsets_examined >= opt.budget.subsets) {
                cert.status = SearchStatus::budgeted;
                break;
            }
            ++cert.subsets_examined;
            const auto kid = table.id(idx[0], idx[1]);
            bool same = true;
            for (std::size_t a = 0; a < s && same; ++a)
                for (std::size_t b = a + 1; b < s && same; ++b) same = table.id(idx[a], idx[b]) == kid;
            if (same) {
                bool ok = true;
                if (opt.mode == SunflowerMode::general) {
                    const std::size_t d = table.kernels[kid].dim();
                    Matrix rows(0, n);
                    for (auto i : idx) rows = vstack(rows, family[i].basis());
                    ok = rank(family.front().field(), std::move(rows)) == d + s * (k - d);
                }
                if (ok) {
                    cert.outcome = Outcome::witness_found;
                    cert.witness = detail::make_witness(family, idx);
                    return cert;
                }
            }
            // next combination in lexicographic order
            std::size_t i = s;
            while (i-- > 0) {
                if (idx[i] < N - s + i) break;
            }
            if (i == static_cast<std::size_t>(-1)) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        return cert;
    }

    // bucket pairs by kernel, kernels visited in canonical order
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges(table.kernels.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const auto id = table.id(i, j);
            if (id != UINT32_MAX) edges[id].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    std::vector<std::uint32_t> order(table.kernels.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return table.kernels[a] < table.kernels[b]; });

    std::uint64_t budget_left = opt.budget.subsets;
    for (auto kid : order) {
        const std::size_t d = table.kernels[kid].dim();
        if (opt.mode == SunflowerMode::general && !detail::sunflower_dims_ok(n, s, k, d)) continue;
        const auto& es = edges[kid];
        if (es.size() < s * (s - 1) / 2) continue;
        std::unordered_map<std::size_t, std::vector<std::size_t>> adj;
        std::vector<std::size_t> verts;
        for (auto [a, b] : es) {
            adj[a].push_back(b);
            verts.push_back(a);
            verts.push_back(b);
        }
        for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        detail::CliqueSearch search(family, s, d, opt.mode, budget_left, cert.subsets_examined);
        if (auto clique = search.run(verts, adj, nullptr, 0)) {
            cert.outcome = Outcome::witness_found;
            cert.witness = detail::make_witness(family, *clique);
            return cert;
        }
        if (search.exhausted()) {
            cert.status = SearchStatus::budgeted;
            return cert;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Family and nesting conditions

struct ConditionOptions {
    /// Cross-check condition (2) by enumerating d-spaces when their number is
    /// at most this many; zero disables it.
    std::uint64_t enumeration_budget = 0;
};

/// Checks Sigma ∩ C = T for every member and dim(C ∩ C') <= tau + d - 1 for
/// every pair.
inline Certificate verify_family_conditions(std::span<const Subspace> members, const FamilySpec& spec,
                                            const ConditionOptions& opt = {}) {
    Certificate cert;
    cert.kind = "family-conditions";
    cert.family_id = family_id(members);
    cert.family_size = members.size();
    cert.outcome = Outcome::conditions_hold;
    const auto fail = [&](std::string msg) {
        cert.outcome = Outcome::violation;
        cert.violations.push_back(std::move(msg));
        return cert;
    };
    const std::int64_t pair_cap = static_cast<std::int64_t>(spec.tau() + spec.d) - 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& c = members[i];
        ++cert.checks;
        if (c.dim() != spec.m) return fail("member " + std::to_string(i) + " has wrong dimension");
        if (!spec.ambient.contains(c)) return fail("member " + std::to_string(i) + " is not contained in V");
        if (meet(spec.sigma, c) != spec.t) return fail("member " + std::to_string(i) + " violates Sigma ∩ C = T");
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            ++cert.pairs_examined;
            if (static_cast<std::int64_t>(meet_dim(members[i], members[j])) > pair_cap)
                return fail("members " + std::to_string(i) + " and " + std::to_string(j) +
                            " meet in more than tau + d - 1 dimensions");
        }
    if (opt.enumeration_budget > 0 &&
        gaussian(static_cast<std::int64_t>(spec.n()), static_cast<std::int64_t>(spec.d), spec.ambient.field().order()) <=
            opt.enumeration_budget) {
        for (const auto& x : subspaces_within(spec.ambient, spec.d, opt.enumeration_budget)) {
            if (meet_dim(x, spec.t) != 0) continue;
            ++cert.subsets_examined;
            std::size_t hits = 0;
            for (const auto& c : members) hits += c.contains(x) ? 1 : 0;
            if (hits > 1) return fail("a d-space disjoint from T lies in " + std::to_string(hits) + " members");
        }
    }
    return cert;
}

struct NestingOptions {
    std::uint64_t sample_pairs = 100'000;
    std::uint64_t exhaustive_pair_limit = 200'000;  ///< below this, all leaf pairs are checked
    std::uint64_t seed = 0x5eed5eedULL;
    unsigned workers = 1;
};

namespace detail {

inline std::string path_string(const std::vector<std::uint32_t>& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "," : "") + std::to_string(path[i]);
    return out + "]";
}

}  // namespace detail

/// Level-by-level verification of a nesting tree: per-node family conditions,
/// cross-branch leaf intersections and the span-dimension inequality that
/// rules out sunflowers straddling distinct members of a level.
inline Certificate verify_nesting(const FamilyTree& tree, const NestingOptions& opt = {}) {
    Certificate cert;
    cert.kind = "nesting";
    std::vector<Subspace> leaf_spaces;
    leaf_spaces.reserve(tree.leaves.size());
    for (const auto& l : tree.leaves) leaf_spaces.push_back(l.space);
    cert.family_id = family_id(leaf_spaces);
    cert.family_size = leaf_spaces.size();
    cert.s = tree.params.s;
    cert.outcome = Outcome::conditions_hold;
    const auto& levels = tree.params.levels;
    const std::size_t s = tree.params.s, k = tree.params.k;

    // no sunflower can straddle two members of a level family
    for (const auto& lv : levels) {
        ++cert.checks;
        if ((lv.d - 1) + s * (k - lv.d + 1) <= lv.n)
            cert.violations.push_back("span inequality fails at level C_" + std::to_string(lv.label));
    }

    // per-node conditions, collected in tree order
    struct Job {
        const TreeNode* node;
        std::size_t depth;
        std::vector<std::uint32_t> path;
    };
    std::vector<Job> jobs;
    std::vector<Job> stack{{&tree.root, 0, {}}};
    while (!stack.empty()) {
        auto job = std::move(stack.back());
        stack.pop_back();
        if (job.depth < levels.size()) {
            for (std::size_t i = job.node->children.size(); i-- > 0;) {
                auto p = job.path;
                p.push_back(static_cast<std::uint32_t>(i));
                stack.push_back({&job.node->children[i], job.depth + 1, std::move(p)});
            }
            jobs.push_back(std::move(job));
        }
    }
    std::vector<std::vector<std::string>> job_violations(jobs.size());
    std::vector<std::uint64_t> job_pairs(jobs.size(), 0);
    parallel_for(jobs.size(), opt.workers, [&](std::size_t j) {
        const auto& job = jobs[j];
        const auto& lv = levels[job.depth];
        const auto& kids = job.node->children;
        const Subspace sigma = tree.level_sigma(job.depth), t = tree.level_t(job.depth);
        const std::int64_t cap = static_cast<std::int64_t>(lv.tau_dim + lv.d) - 1;
        const std::string where = "node " + detail::path_string(job.path);
        if (kids.empty()) job_violations[j].push_back(where + ": missing child family");
        for (std::size_t a = 0; a < kids.size(); ++a) {
            const auto& c = kids[a].member;
            if (c.dim() != lv.m) job_violations[j].push_back(where + ": child " + std::to_string(a) + " has wrong dimension");
            if (!job.node->member.contains(c))
                job_violations[j].push_back(where + ": child " + std::to_string(a) + " not contained in parent");
            if (meet(sigma, c) != t)
                job_violations[j].push_back(where + ": child " + std::to_string(a) + " violates Sigma ∩ C = T");
        }
        for (std::size_t a = 0; a < kids.size(); ++a)
            for (std::size_t b = a + 1; b < kids.size(); ++b) {
                ++job_pairs[j];
                if (static_cast<std::int64_t>(meet_dim(kids[a].member, kids[b].member)) > cap)
                    job_violations[j].push_back(where + ": children " + std::to_string(a) + "," + std::to_string(b) +
                                                " meet in more than tau + d - 1 dimensions");
            }
    });
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        cert.pairs_examined += job_pairs[j];
        cert.checks += jobs[j].node->children.size();
        for (auto& v : job_violations[j]) cert.violations.push_back(std::move(v));
    }

    // cross-branch leaf pairs: below distinct members of the level-j family
    // two leaves meet in at most d_j - 1 dimensions
    const auto& leaves = tree.leaves;
    const std::uint64_t L = leaves.size();
    auto check_pair = [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
        const auto& pa = leaves[a].path;
        const auto& pb = leaves[b].path;
        std::size_t depth = 0;
        while (depth < pa.size() && depth < pb.size() && pa[depth] == pb[depth]) ++depth;
        if (depth >= levels.size()) return "leaves " + detail::path_string(pa) + " and " + detail::path_string(pb) + " share a path";
        const std::size_t bound = levels[depth].d - 1;
        if (leaves[a].space.dim() != k) return "leaf " + detail::path_string(pa) + " is not a k-space";
        if (meet_dim(leaves[a].space, leaves[b].space) > bound)
            return "leaves " + detail::path_string(pa) + " and " + detail::path_string(pb) +
                   " meet in more than " + std::to_string(bound) + " dimensions";
        return std::nullopt;
    };
    if (L >= 2) {
        const std::uint64_t all_pairs = L * (L - 1) / 2;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (all_pairs <= opt.exhaustive_pair_limit) {
            for (std::size_t a = 0; a < L; ++a)
                for (std::size_t b = a + 1; b < L; ++b) pairs.emplace_back(a, b);
        } else {
            std::mt19937_64 rng(opt.seed);
            std::uniform_int_distribution<std::size_t> pick(0, L - 1);
            while (pairs.size() < opt.sample_pairs) {
                const auto a = pick(rng), b = pick(rng);
                if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
            }
            cert.status = SearchStatus::budgeted;
        }
        std::vector<std::optional<std::string>> results(pairs.size());
        const std::size_t chunk = 4096, chunks = (pairs.size() + chunk - 1) / chunk;
        parallel_for(chunks, opt.workers, [&](std::size_t c) {
            for (std::size_t i = c * chunk; i < std::min(pairs.size(), (c + 1) * chunk); ++i)
                results[i] = check_pair(pairs[i].first, pairs[i].second);
        });
        cert.subsets_examined = pairs.size();
        for (auto& r : results)
            if (r) cert.violations.push_back(std::move(*r));
    }
    if (!cert.violations.empty()) cert.outcome = Outcome::violation;
    return cert;
}

// ---------------------------------------------------------------------------
// Bounds

/// prod_{i=1}^k [i(s-1)]_q.
inline BigNat upper_bound(std::size_t s, std::size_t k, std::uint64_t q) {
    detail::require(s >= 3 && k >= 1, "upper bound requires s >= 3 and k >= 1");
    BigNat r = 1;
    for (std::size_t i = 1; i <= k; ++i) r *= gauss_bracket(static_cast<std::int64_t>(i * (s - 1)), q);
    return r;
}

struct BoundSandwich {
    BigNat lower;
    BigNat product;
    Rational cap;  ///< (q/(q-1))^k q^{(s-1)C(k+1,2) - k}
    bool holds = false;
};

inline BoundSandwich bound_sandwich(std::size_t s, std::size_t k, std::uint64_t q) {
    detail::require(s >= 3 && k >= 2, "bound sandwich requires s >= 3 and k >= 2");
    detail::require(q >= 2, "bound sandwich requires q >= 2");
    BoundSandwich b;
    const auto si = static_cast<std::int64_t>(s), ki = static_cast<std::int64_t>(k);
    b.lower = ipow(BigNat(q), static_cast<std::uint64_t>(lower_bound_exponent(si, ki)));
    b.product = upper_bound(s, k, q);
    b.cap = rpow(Rational(BigNat(q), BigNat(q - 1)), k) *
            Rational(ipow(BigNat(q), static_cast<std::uint64_t>((si - 1) * binom2(ki) - ki)));
    b.holds = b.lower <= b.product && Rational(b.product) <= b.cap;
    return b;
}

/// (1 + 1/q) q^{m-1} <= [m]_q < (1 + 1/(q-1)) q^{m-1}, exactly.
inline bool bracket_sandwich_holds(std::size_t m, std::uint64_t q) {
    detail::require(m >= 2 && q >= 2, "bracket sandwich requires m >= 2 and q >= 2");
    const Rational qm1(ipow(BigNat(q), m - 1));
    const Rational lo = (Rational(1) + Rational(BigNat(1), BigNat(q))) * qm1;
    const Rational hi = (Rational(1) + Rational(BigNat(1), BigNat(q - 1))) * qm1;
    const Rational x(gauss_bracket(static_cast<std::int64_t>(m), q));
    return lo <= x && x < hi;
}

struct FloorSum {
    std::int64_t direct = 0;
    std::int64_t closed = 0;
};

/// sum_{kappa=1}^{nu-1} floor(kappa mu / nu) against
/// ((mu-1)(nu-1) + gcd(mu, nu) - 1)/2.
inline FloorSum floor_sum(std::int64_t mu, std::int64_t nu) {
    detail::require(mu >= 1 && nu >= 1, "floor sum requires positive arguments");
    FloorSum f;
    for (std::int64_t kappa = 1; kappa < nu; ++kappa) f.direct += kappa * mu / nu;
    f.closed = ((mu - 1) * (nu - 1) + std::gcd(mu, nu) - 1) / 2;
    if (f.direct != f.closed) throw std::logic_error("floor-sum identity failed");
    return f;
}

// ---------------------------------------------------------------------------
// Maximality

inline constexpr std::uint64_t kMaximalityCap = 100'000;

struct MaximalityOptions {
    SunflowerMode mode = SunflowerMode::general;
    SearchBudget budget;
    bool keep_witnesses = true;
};

/// Every k-space of V(n, q) outside the family must complete s-1 members to
/// an s-sunflower. Refuses ambients with more than 10^5 k-spaces.
inline Certificate is_maximal(std::span<const Subspace> family, std::size_t s, std::size_t n, std::size_t k,
                              const FieldPtr& field, const MaximalityOptions& opt = {}) {
    detail::require(s >= 2, "maximality needs s >= 2");
    if (gaussian(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), field->order()) > kMaximalityCap)
        throw BudgetError("maximality check refuses ambients with more than 1e5 candidate k-spaces");
    for (const auto& m : family)
        detail::require(m.ambient_dim() == n && m.dim() == k, "family members must be k-spaces of V(n, q)");
    Certificate cert;
    cert.kind = "maximality";
    cert.family_id = family_id(family);
    cert.family_size = family.size();
    cert.s = s;
    cert.mode = opt.mode;
    cert.outcome = Outcome::maximal;
    const std::unordered_set<Subspace, SubspaceHash> members(family.begin(), family.end());
    auto table = detail::build_meet_table(family, opt.budget.pairs, 1);
    cert.pairs_examined = table.pairs_done;
    if (!table.complete) {
        cert.status = SearchStatus::budgeted;
        return cert;
    }
    std::unordered_map<Subspace, std::uint32_t, SubspaceHash> kernel_ids;
    for (std::uint32_t id = 0; id < table.kernels.size(); ++id) kernel_ids.emplace(table.kernels[id], id);
    std::uint64_t budget_left = opt.budget.subsets;
    bool refuted = false;
    for_each_subspace(field, n, k, [&](const Subspace& x) {
        if (refuted || cert.status == SearchStatus::budgeted || members.count(x)) return;
        ++cert.checks;
        // bucket family members by their meet with the candidate
        std::map<Subspace, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < family.size(); ++i) buckets[meet(x, family[i])].push_back(i);
        std::optional<SunflowerWitness> found;
        for (const auto& [kernel, verts] : buckets) {
            const std::size_t d = kernel.dim();
            if (verts.size() + 1 < s) continue;
            if (opt.mode == SunflowerMode::general && !detail::sunflower_dims_ok(n, s, k, d)) continue;
            std::unordered_map<std::size_t, std::vector<std::size_t>> adj;
            const auto kit = kernel_ids.find(kernel);
            const std::uint32_t kid = kit == kernel_ids.end() ? UINT32_MAX : kit->second;
            if (kid == UINT32_MAX && s > 2) continue;
            for (std::size_t a = 0; a < verts.size(); ++a)
                for (std::size_t b = a + 1; b < verts.size(); ++b)
                    if (table.id(verts[a], verts[b]) == kid) adj[verts[a]].push_back(verts[b]);
            detail::CliqueSearch search(family, s, d, opt.mode, budget_left, cert.subsets_examined);
            const Matrix seed = x.basis();
            if (auto clique = search.run(verts, adj, &seed, 1)) {
                SunflowerWitness w;
                w.members = *clique;
                w.kernel = kernel;
                w.kernel_dim = d;
                std::vector<Subspace> sel{x};
                for (auto i : *clique) sel.push_back(family[i]);
                w.span_dim = rank(*field, span_of(sel).basis());
                found = std::move(w);
                break;
            }
            if (search.exhausted()) {
                cert.status = SearchStatus::budgeted;
                return;
            }
        }
        if (found) {
            if (opt.keep_witnesses) cert.extensions.push_back({x, std::move(*found)});
        } else {
            refuted = true;
            cert.outcome = Outcome::extendable;
            cert.violations.push_back("candidate can be added without creating a sunflower");
            cert.witness = std::nullopt;
            cert.extensions.push_back({x, SunflowerWitness{}});
        }
    });
    return cert;
}

}  // namespace sunflower
