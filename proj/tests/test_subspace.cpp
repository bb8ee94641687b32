#include "sunflower/subspace.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

using namespace sunflower;

namespace {

// Subspaces as explicit vector sets; vectors are encoded base q.
using VecSet = std::set<std::uint64_t>;

std::uint64_t encode(const std::vector<unsigned>& v, unsigned q) {
    std::uint64_t c = 0;
    for (auto x : v) c = c * q + x;
    return c;
}

std::vector<unsigned> decode(std::uint64_t c, unsigned q, std::size_t n) {
    std::vector<unsigned> v(n);
    for (std::size_t i = n; i-- > 0; c /= q) v[i] = static_cast<unsigned>(c % q);
    return v;
}

VecSet points_of(const Subspace& s) {
    const Field& F = s.field();
    const unsigned q = F.order();
    const std::size_t n = s.ambient_dim(), d = s.dim();
    VecSet out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= q;
    for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<unsigned> v(n, 0);
        std::uint64_t x = c;
        for (std::size_t r = 0; r < d; ++r, x /= q) {
            const auto coef = static_cast<Field::Elem>(x % q);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = F.add(static_cast<Field::Elem>(v[j]), F.mul(coef, s.basis()(r, j)));
        }
        out.insert(encode(v, q));
    }
    return out;
}

std::size_t log_q(std::size_t size, unsigned q) {
    std::size_t d = 0;
    while (size > 1) {
        size /= q;
        ++d;
    }
    return d;
}

VecSet sum_set(const VecSet& a, const VecSet& b, const Field& F, std::size_t n) {
    const unsigned q = F.order();
    VecSet out;
    for (auto x : a)
        for (auto y : b) {
            auto vx = decode(x, q, n), vy = decode(y, q, n);
            for (std::size_t i = 0; i < n; ++i)
                vx[i] = F.add(static_cast<Field::Elem>(vx[i]), static_cast<Field::Elem>(vy[i]));
            out.insert(encode(vx, q));
        }
    return out;
}

// Pascal-type recurrence [n, m] = [n-1, m-1] + q^m [n-1, m] in 64 bits.
std::uint64_t gaussian_by_recurrence(unsigned n, unsigned m, std::uint64_t q) {
    if (m > n) return 0;
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (unsigned i = 0; i <= n; ++i) {
        t[i][0] = 1;
        std::uint64_t qj = 1;
        for (unsigned j = 1; j <= i; ++j) {
            qj *= q;
            t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? qj * t[i - 1][j] : 0);
        }
    }
    return t[n][m];
}

Subspace random_subspace(const FieldPtr& f, std::size_t n, std::size_t rows, std::mt19937& rng) {
    Matrix m(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<Matrix::Elem>(rng() % f->order());
    return Subspace::from_rows(f, n, m);
}

}  // namespace

TEST(Gaussian, Brackets) {
    EXPECT_EQ(gauss_bracket(1, 7), 1);
    EXPECT_EQ(gauss_bracket(4, 2), 15);
    EXPECT_EQ(gauss_bracket(0, 3), 0);
}

TEST(Gaussian, MatchesBasisCount) {
    for (std::uint64_t q : {2u, 3u, 4u, 5u})
        for (unsigned n = 0; n <= 7; ++n)
            for (unsigned m = 0; m <= n; ++m) EXPECT_EQ(gaussian(n, m, q), gaussian_by_recurrence(n, m, q));
    EXPECT_EQ(gaussian(4, 2, 2), 35);
    EXPECT_EQ(gaussian(3, 4, 2), 0);
    EXPECT_EQ(gaussian(3, -1, 2), 0);
}

TEST(Gaussian, BigValuesStayExact) {
    // symmetric and Pascal-type recurrence at sizes beyond 64 bits
    const std::uint64_t q = 9;
    for (std::int64_t n = 1; n <= 30; ++n)
        for (std::int64_t m = 1; m < n; ++m) {
            EXPECT_EQ(gaussian(n, m, q), gaussian(n, n - m, q));
            EXPECT_EQ(gaussian(n, m, q), gaussian(n - 1, m - 1, q) + ipow(BigNat(q), m) * gaussian(n - 1, m, q));
        }
}

TEST(SubspaceBasics, FromStandardRows) {
    auto f = Field::prime(2);
    auto s = Subspace::from_rows(f, 4, Matrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}}, 4));
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_EQ(s.basis(), Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4));
    EXPECT_EQ(s, Subspace::coordinate(f, 4, 0, 2));
}

TEST(SubspaceBasics, DependentRowsDropDimension) {
    auto f = Field::prime(3);
    auto s = Subspace::from_rows(f, 3, Matrix::from_rows({{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}, 3));
    EXPECT_EQ(s.dim(), 2u);
}

TEST(SubspaceBasics, EmptyRowsGiveZero) {
    auto f = Field::prime(2);
    auto s = Subspace::from_rows(f, 5, Matrix(0, 5));
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s, Subspace::zero(f, 5));
}

TEST(SubspaceBasics, ColumnMismatchThrows) {
    auto f = Field::prime(2);
    EXPECT_THROW(Subspace::from_rows(f, 4, Matrix(1, 3)), ParameterError);
    EXPECT_THROW(meet(Subspace::full(f, 3), Subspace::full(f, 4)), ParameterError);
}

TEST(Lattice, MeetJoinWithSelf) {
    auto f = Field::prime(2);
    std::mt19937 rng(1);
    auto s = random_subspace(f, 5, 3, rng);
    EXPECT_EQ(meet(s, s), s);
    EXPECT_EQ(join(s, s), s);
}

TEST(Lattice, TwoPlanesOfV3) {
    auto f = Field::prime(2);
    auto a = Subspace::from_rows(f, 3, Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3));
    auto b = Subspace::from_rows(f, 3, Matrix::from_rows({{1, 1, 0}, {0, 0, 1}}, 3));
    EXPECT_EQ(meet(a, b).dim(), 1u);
    EXPECT_EQ(join(a, b), Subspace::full(f, 3));
}

TEST(Lattice, Complementary) {
    auto f = Field::prime(3);
    auto a = Subspace::coordinate(f, 4, 0, 2), b = Subspace::coordinate(f, 4, 2, 2);
    EXPECT_TRUE(meet(a, b).is_zero());
    EXPECT_EQ(join(a, b), Subspace::full(f, 4));
}

TEST(Lattice, AgreesWithPointSets) {
    for (unsigned q : {2u, 3u, 4u}) {
        auto f = Field::of_order(q);
        std::mt19937 rng(q);
        const std::size_t n = q == 2 ? 6 : 4;
        for (int trial = 0; trial < 60; ++trial) {
            auto a = random_subspace(f, n, rng() % (n + 1), rng);
            auto b = random_subspace(f, n, rng() % (n + 1), rng);
            auto pa = points_of(a), pb = points_of(b);
            VecSet inter;
            std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(inter, inter.begin()));
            ASSERT_EQ(points_of(meet(a, b)), inter);
            ASSERT_EQ(meet_dim(a, b), log_q(inter.size(), q));
            ASSERT_EQ(points_of(join(a, b)), sum_set(pa, pb, *f, n));
            ASSERT_EQ(a.contains(b), std::includes(pa.begin(), pa.end(), pb.begin(), pb.end()));
        }
    }
}

TEST(Lattice, ModularLaw) {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto f = Field::of_order(q);
        std::mt19937 rng(100 + q);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + rng() % 8;
            auto a = random_subspace(f, n, rng() % (n + 1), rng);
            auto b = random_subspace(f, n, rng() % (n + 1), rng);
            ASSERT_EQ(a.dim() + b.dim(), meet(a, b).dim() + join(a, b).dim());
        }
    }
}

TEST(Metric, Examples) {
    auto f = Field::prime(2);
    auto a = Subspace::coordinate(f, 4, 0, 2), b = Subspace::coordinate(f, 4, 2, 2), c = Subspace::coordinate(f, 4, 1, 2);
    EXPECT_EQ(subspace_distance(a, a), 0u);
    EXPECT_EQ(subspace_distance(a, b), 4u);
    EXPECT_EQ(subspace_distance(a, c), 2u);
}

TEST(Metric, TriangleInequalityOnAllPlanesOfV4) {
    auto f = Field::prime(2);
    auto planes = enumerate_subspaces(f, 4, 2);
    std::vector<Subspace> all;
    while (auto s = planes.next()) all.push_back(*s);
    ASSERT_EQ(all.size(), 35u);
    const std::size_t N = all.size();
    std::vector<std::size_t> dist(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            dist[i * N + j] = subspace_distance(all[i], all[j]);
            ASSERT_EQ(dist[i * N + j] == 0, i == j);
        }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            ASSERT_EQ(dist[i * N + j], dist[j * N + i]);
            for (std::size_t l = 0; l < N; ++l) ASSERT_LE(dist[i * N + l], dist[i * N + j] + dist[j * N + l]);
        }
}

TEST(GeneralPosition, Examples) {
    auto f = Field::prime(2);
    std::vector<Subspace> one{Subspace::coordinate(f, 4, 1, 2)};
    EXPECT_TRUE(in_general_position(one));
    std::vector<Subspace> two{Subspace::coordinate(f, 4, 0, 2), Subspace::coordinate(f, 4, 2, 2)};
    EXPECT_TRUE(in_general_position(two));
    // three pairwise disjoint planes of V(4,2)
    auto third = Subspace::from_rows(f, 4, Matrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}}, 4));
    std::vector<Subspace> three{two[0], two[1], third};
    EXPECT_TRUE(meet(two[0], third).is_zero());
    EXPECT_TRUE(meet(two[1], third).is_zero());
    EXPECT_FALSE(in_general_position(three));
}

TEST(Complement, Extremes) {
    auto f = Field::prime(3);
    auto v = Subspace::full(f, 4);
    EXPECT_TRUE(complement(v, v).is_zero());
    EXPECT_EQ(complement(v, Subspace::zero(f, 4)), v);
}

TEST(Complement, GreedyStandardCoordinates) {
    auto f = Field::prime(2);
    auto s = Subspace::from_rows(f, 3, Matrix::from_rows({{1, 1, 0}}, 3));
    // e1 leaves span(s); e2 then falls into s + e1; e3 is added
    EXPECT_EQ(complement(Subspace::full(f, 3), s), Subspace::from_rows(f, 3, Matrix::from_rows({{1, 0, 0}, {0, 0, 1}}, 3)));
}

TEST(Complement, RandomInsideSubspace) {
    auto f = Field::of_order(4);
    std::mt19937 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        auto v = random_subspace(f, 6, 1 + rng() % 4, rng);
        auto inside = subspaces_within(v, rng() % (v.dim() + 1));
        const auto& s = inside[rng() % inside.size()];
        auto c = complement(v, s);
        ASSERT_TRUE(meet(s, c).is_zero());
        ASSERT_EQ(join(s, c), v);
        auto e = extend_within(v, s, v.dim());
        ASSERT_EQ(e, v);
    }
}

TEST(Quotient, TrivialModulusIsIdentity) {
    auto f = Field::prime(2);
    auto v = Subspace::full(f, 4);
    QuotientMap qm(v, Subspace::zero(f, 4));
    EXPECT_EQ(qm.quotient_dim(), 4u);
    std::mt19937 rng(2);
    for (int i = 0; i < 20; ++i) {
        auto a = random_subspace(f, 4, rng() % 5, rng);
        EXPECT_EQ(qm.push(a), a);
        EXPECT_EQ(qm.pull(a), a);
    }
}

TEST(Quotient, FivesSpaceByPoint) {
    auto f = Field::prime(3);
    auto t = Subspace::coordinate(f, 5, 0, 1);
    auto qm = quotient(Subspace::full(f, 5), t);
    EXPECT_EQ(qm.quotient_dim(), 4u);
    EXPECT_TRUE(qm.push(t).is_zero());
    EXPECT_EQ(qm.pull(Subspace::zero(f, 4)), t);
}

TEST(Quotient, SectionUsesNonPivotCoordinates) {
    auto f = Field::prime(2);
    auto t = Subspace::from_rows(f, 4, Matrix::from_rows({{1, 1, 0, 0}}, 4));
    QuotientMap qm(Subspace::full(f, 4), t);
    EXPECT_EQ(qm.section(), Matrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4));
}

TEST(Quotient, RoundTripExhaustive) {
    // every ambient of dimension 3 in V(4,2), every modulus inside it
    auto f = Field::prime(2);
    for_each_subspace(f, 4, 3, [&](const Subspace& v) {
        for (std::size_t tdim = 0; tdim <= 3; ++tdim)
            for (const auto& t : subspaces_within(v, tdim)) {
                QuotientMap qm(v, t);
                for (std::size_t bdim = 0; bdim <= qm.quotient_dim(); ++bdim)
                    for_each_subspace(f, qm.quotient_dim(), bdim, [&](const Subspace& b) {
                        auto up = qm.pull(b);
                        ASSERT_EQ(up.dim(), b.dim() + t.dim());
                        ASSERT_TRUE(up.contains(t));
                        ASSERT_TRUE(v.contains(up));
                        ASSERT_EQ(qm.push(up), b);
                    });
                for (std::size_t adim = 0; adim <= 3; ++adim)
                    for (const auto& a : subspaces_within(v, adim)) {
                        auto down = qm.push(a);
                        ASSERT_EQ(down.dim(), a.dim() - meet_dim(a, t));
                        ASSERT_EQ(qm.pull(down), join(a, t));
                    }
            }
    });
}

TEST(Quotient, RejectsModulusOutsideAmbient) {
    auto f = Field::prime(2);
    EXPECT_THROW(QuotientMap(Subspace::coordinate(f, 4, 0, 2), Subspace::coordinate(f, 4, 2, 1)), ParameterError);
}

TEST(Enumeration, CountsAgreeWithGaussian) {
    for (unsigned q : {2u, 3u}) {
        auto f = Field::prime(q);
        for (std::size_t n = 0; n <= 6; ++n)
            for (std::size_t m = 0; m <= n; ++m) {
                std::unordered_set<Subspace, SubspaceHash> seen;
                std::uint64_t count = 0;
                for_each_subspace(f, n, m, [&](const Subspace& s) {
                    ++count;
                    ASSERT_EQ(s.dim(), m);
                    seen.insert(s);
                });
                ASSERT_EQ(count, gaussian_by_recurrence(static_cast<unsigned>(n), static_cast<unsigned>(m), q));
                ASSERT_EQ(seen.size(), count);
            }
    }
}

TEST(Enumeration, Examples) {
    auto f = Field::prime(2);
    std::uint64_t c42 = 0, c32 = 0, c50 = 0;
    for_each_subspace(f, 4, 2, [&](const Subspace&) { ++c42; });
    for_each_subspace(f, 3, 2, [&](const Subspace&) { ++c32; });
    for_each_subspace(f, 5, 0, [&](const Subspace& s) {
        ++c50;
        EXPECT_TRUE(s.is_zero());
    });
    EXPECT_EQ(c42, 35u);
    EXPECT_EQ(c32, 7u);
    EXPECT_EQ(c50, 1u);
}

TEST(Enumeration, StreamOrder) {
    auto f = Field::prime(2);
    std::vector<Matrix> got;
    for_each_subspace(f, 3, 1, [&](const Subspace& s) { got.push_back(s.basis()); });
    const std::vector<std::vector<Matrix::Elem>> expected = {{1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1},
                                                             {0, 1, 0}, {0, 1, 1}, {0, 0, 1}};
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], Matrix::from_rows({expected[i]}, 3));

    // pivot sets of 2-spaces of V(4,q) in colex order: {0,1},{0,2},{1,2},{0,3},...
    std::vector<std::vector<std::size_t>> pivots;
    for_each_subspace(f, 4, 2, [&](const Subspace& s) {
        auto p = rref(*f, s.basis()).pivots;
        if (pivots.empty() || pivots.back() != p) pivots.push_back(p);
    });
    EXPECT_EQ(pivots, (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}));
}

TEST(Enumeration, BudgetExceeded) {
    auto f = Field::prime(2);
    EXPECT_THROW(SubspaceEnumerator(f, 10, 5, 1000), BudgetError);
    EXPECT_THROW(SubspaceEnumerator(f, 3, 4), ParameterError);
}

TEST(Enumeration, WithinSubspace) {
    auto f = Field::prime(3);
    auto v = Subspace::coordinate(f, 6, 1, 3);
    auto lines = subspaces_within(v, 1);
    EXPECT_EQ(lines.size(), 13u);
    for (const auto& l : lines) EXPECT_TRUE(v.contains(l));
}

TEST(Embedding, PadsWithZeros) {
    auto f = Field::prime(2);
    auto s = Subspace::from_rows(f, 3, Matrix::from_rows({{1, 1, 1}}, 3));
    auto e = embed(s, 5);
    EXPECT_EQ(e.ambient_dim(), 5u);
    EXPECT_EQ(e.basis(), Matrix::from_rows({{1, 1, 1, 0, 0}}, 5));
}
