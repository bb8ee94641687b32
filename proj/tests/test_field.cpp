#include "sunflower/field.hpp"
#include "sunflower/matrix.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace sunflower;

namespace {

// Reference arithmetic on coefficient vectors over Z/p, independent of the
// library tables.
std::vector<unsigned> digits_of(unsigned code, unsigned p, unsigned t) {
    std::vector<unsigned> d(t);
    for (unsigned i = 0; i < t; ++i, code /= p) d[i] = code % p;
    return d;
}

unsigned code_of(const std::vector<unsigned>& d, unsigned p) {
    unsigned c = 0;
    for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
    return c;
}

unsigned ref_mul(unsigned a, unsigned b, unsigned p, const std::vector<unsigned>& modulus) {
    const unsigned t = static_cast<unsigned>(modulus.size() - 1);
    auto da = digits_of(a, p, t), db = digits_of(b, p, t);
    std::vector<unsigned> prod(2 * t, 0);
    for (unsigned i = 0; i < t; ++i)
        for (unsigned j = 0; j < t; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (unsigned deg = 2 * t - 1; deg >= t; --deg) {
        const unsigned c = prod[deg];
        if (c == 0) continue;
        for (unsigned i = 0; i <= t; ++i) prod[deg - t + i] = (prod[deg - t + i] + p * p - c * modulus[i] % p) % p;
    }
    prod.resize(t);
    return code_of(prod, p);
}

bool has_root_free_factorization(const std::vector<unsigned>& f, unsigned p) {
    // degree 2 or 3 over a prime field: irreducible iff no root
    for (unsigned x = 0; x < p; ++x) {
        unsigned v = 0, pw = 1;
        for (auto c : f) {
            v = (v + c * pw) % p;
            pw = pw * x % p;
        }
        if (v == 0) return false;
    }
    return true;
}

}  // namespace

TEST(FieldCore, SmallestIrreducibleDegreeOneIsX) {
    auto f = poly::find_irreducible(*Field::prime(2), 1);
    EXPECT_EQ(f, (Field::Poly{0, 1}));
}

TEST(FieldCore, SmallestIrreducibleQuadraticOverTwo) {
    EXPECT_EQ(poly::find_irreducible(*Field::prime(2), 2), (Field::Poly{1, 1, 1}));
}

TEST(FieldCore, SmallestIrreducibleQuadraticOverThree) {
    EXPECT_EQ(poly::find_irreducible(*Field::prime(3), 2), (Field::Poly{1, 0, 1}));
}

TEST(FieldCore, SmallestIrreducibleMatchesRootSearch) {
    // first root-free monic polynomial in (c0, c1, ...) order
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (unsigned deg : {2u, 3u}) {
            std::vector<unsigned> expected;
            const unsigned count = deg == 2 ? p * p : p * p * p;
            for (unsigned c = 0; c < count && expected.empty(); ++c) {
                std::vector<unsigned> f(deg + 1, 0);
                f[deg] = 1;
                unsigned x = c;
                for (unsigned i = deg; i-- > 0; x /= p) f[i] = x % p;
                if (has_root_free_factorization(f, p)) expected = f;
            }
            auto got = poly::find_irreducible(*Field::prime(p), deg);
            ASSERT_EQ(got.size(), expected.size());
            for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], expected[i]) << "p=" << p << " deg=" << deg;
        }
    }
}

TEST(FieldCore, OneplusOneInGF2) { EXPECT_EQ(Field::prime(2)->add(1, 1), 0); }

TEST(FieldCore, AlphaSquaredInGF4) {
    auto f = Field::of_order(4);
    EXPECT_EQ(f->modulus(), (Field::Poly{1, 1, 1}));
    EXPECT_EQ(f->mul(2, 2), 3);
}

TEST(FieldCore, InverseOfTwoInGF3) { EXPECT_EQ(Field::prime(3)->inv(2), 2); }

TEST(FieldCore, InverseOfZeroIsDomainError) {
    EXPECT_THROW(Field::prime(5)->inv(0), DomainError);
    EXPECT_THROW(Field::of_order(8)->inv(0), DomainError);
}

TEST(FieldCore, OrderValidation) {
    EXPECT_THROW(Field::of_order(6), ParameterError);
    EXPECT_THROW(Field::of_order(1), ParameterError);
    EXPECT_THROW(Field::of_order(32), ParameterError);
    EXPECT_THROW(Field::make(4, 1, {}), ParameterError);
    EXPECT_THROW(Field::make(2, 2, {1, 0, 1}), ParameterError);  // (x+1)^2
    EXPECT_NO_THROW(Field::make(2, 2, {1, 1, 1}));
}

TEST(FieldCore, TablesMatchReferenceArithmetic) {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        auto f = Field::of_order(q);
        const unsigned p = f->characteristic(), t = f->degree();
        std::vector<unsigned> modulus(f->modulus().begin(), f->modulus().end());
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b) {
                auto da = digits_of(a, p, t), db = digits_of(b, p, t);
                std::vector<unsigned> sum(t);
                for (unsigned i = 0; i < t; ++i) sum[i] = (da[i] + db[i]) % p;
                ASSERT_EQ(f->add(a, b), code_of(sum, p)) << "q=" << q;
                if (t == 1)
                    ASSERT_EQ(f->mul(a, b), a * b % p);
                else
                    ASSERT_EQ(f->mul(a, b), ref_mul(a, b, p, modulus)) << "q=" << q << " a=" << a << " b=" << b;
            }
    }
}

TEST(FieldCore, FieldAxioms) {
    for (unsigned q : {2u, 3u, 4u, 8u, 9u, 16u}) {
        auto f = Field::of_order(q);
        for (unsigned a = 0; a < q; ++a) {
            EXPECT_EQ(f->add(a, f->neg(a)), 0);
            EXPECT_EQ(f->sub(a, a), 0);
            if (a) {
                EXPECT_EQ(f->mul(a, f->inv(a)), 1);
            }
            EXPECT_EQ(f->pow(a, q), a);
            for (unsigned b = 0; b < q; ++b) {
                EXPECT_EQ(f->mul(a, b), f->mul(b, a));
                for (unsigned c = 0; c < q; ++c) {
                    ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
                    ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
                }
            }
        }
    }
}

TEST(FieldCore, ExpandUsesBasePDigits) {
    auto f = Field::of_order(9);
    EXPECT_EQ(f->expand(7), (std::vector<Field::Elem>{1, 2}));
}

TEST(ExtensionField, FrobeniusOfAlphaInGF4) {
    ExtField e(Field::prime(2), 2);
    EXPECT_EQ(e.alpha(), 2u);
    EXPECT_EQ(e.frobenius(e.alpha(), 1), 3u);
    EXPECT_EQ(e.frobenius(e.alpha(), 0), e.alpha());
}

TEST(ExtensionField, ExpandPolynomialBasis) {
    ExtField e(Field::prime(2), 2);
    EXPECT_EQ(e.expand(0), (std::vector<Field::Elem>{0, 0}));
    EXPECT_EQ(e.expand(3), (std::vector<Field::Elem>{1, 1}));
}

TEST(ExtensionField, FrobeniusProperties) {
    for (auto [q, deg] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {3, 3}, {4, 3}, {2, 8}}) {
        auto base = Field::of_order(q);
        ExtField e(base, deg);
        for (ExtField::Elem a = 0; a < e.order(); ++a) {
            ASSERT_EQ(e.frobenius(a, deg), a);
            for (ExtField::Elem b : {1u, 2u, e.order() - 1}) {
                ASSERT_EQ(e.frobenius(e.add(a, b), 1), e.add(e.frobenius(a, 1), e.frobenius(b, 1)));
            }
            // base scalars are fixed, so the map is GF(q)-linear
            for (Field::Elem c = 0; c < q; ++c)
                ASSERT_EQ(e.frobenius(e.mul(e.embed(c), a), 1), e.mul(e.embed(c), e.frobenius(a, 1)));
        }
    }
}

TEST(ExtensionField, ExpandIsLinearBijection) {
    ExtField e(Field::of_order(3), 4);
    std::vector<bool> seen(e.order(), false);
    for (ExtField::Elem a = 0; a < e.order(); ++a) {
        auto v = e.expand(a);
        ASSERT_EQ(v.size(), 4u);
        const auto back = e.compose(v);
        ASSERT_EQ(back, a);
        ASSERT_FALSE(seen[back]);
        seen[back] = true;
    }
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        ExtField::Elem a = rng() % e.order(), b = rng() % e.order();
        auto va = e.expand(a), vb = e.expand(b), vs = e.expand(e.add(a, b));
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(vs[j], e.base().add(va[j], vb[j]));
    }
}

TEST(ExtensionField, MultiplicationMatchesReference) {
    // GF(2^6) with table arithmetic against coefficient arithmetic
    auto base = Field::prime(2);
    ExtField e(base, 6);
    std::vector<unsigned> modulus(e.modulus().begin(), e.modulus().end());
    for (ExtField::Elem a = 0; a < e.order(); a += 3)
        for (ExtField::Elem b = 0; b < e.order(); ++b) ASSERT_EQ(e.mul(a, b), ref_mul(a, b, 2, modulus));
}

TEST(ExtensionField, LargeExtensionWithoutTables) {
    ExtField e(Field::prime(2), 20);
    EXPECT_EQ(e.order(), 1u << 20);
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        ExtField::Elem a = 1 + rng() % (e.order() - 1);
        EXPECT_EQ(e.mul(a, e.inv(a)), 1u);
        EXPECT_EQ(e.frobenius(a, 20), a);
    }
    EXPECT_EQ(e.pow(e.alpha(), e.order() - 1), 1u);
}

TEST(ExtensionField, OrderCap) {
    EXPECT_THROW(ExtField(Field::prime(2), 21), ParameterError);
    EXPECT_THROW(ExtField(Field::of_order(16), 6), ParameterError);
    EXPECT_NO_THROW(ExtField(Field::of_order(16), 5));
}

TEST(ExtensionField, InverseOfZero) {
    ExtField e(Field::prime(3), 2);
    EXPECT_THROW(e.inv(0), DomainError);
}

TEST(Matrix, RrefOfIdentity) {
    auto f = Field::prime(2);
    auto r = rref(*f, Matrix::identity(4));
    EXPECT_EQ(r.rank, 4u);
    EXPECT_EQ(r.reduced, Matrix::identity(4));
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Matrix, RrefDependentRows) {
    auto f = Field::prime(2);
    auto m = Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 3);
    auto r = rref(*f, m);
    EXPECT_EQ(r.rank, 2u);
    EXPECT_EQ(r.reduced.rows(), 2u);
    EXPECT_EQ(r.reduced, Matrix::from_rows({{1, 0, 1}, {0, 1, 1}}, 3));
}

TEST(Matrix, RrefOfZero) {
    auto f = Field::prime(3);
    auto r = rref(*f, Matrix(3, 4));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_EQ(r.reduced.rows(), 0u);
}

TEST(Matrix, RrefIsCanonical) {
    // row operations do not change the reduced form
    auto f = Field::of_order(5);
    auto m = Matrix::from_rows({{1, 2, 3, 4}, {0, 1, 1, 2}}, 4);
    Matrix combo(2, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        combo(0, c) = f->add(f->mul(2, m(0, c)), f->mul(3, m(1, c)));
        combo(1, c) = f->add(m(0, c), m(1, c));
    }
    EXPECT_EQ(rref(*f, m).reduced, rref(*f, combo).reduced);
}

TEST(Matrix, KernelOfIdentityIsEmpty) {
    auto f = Field::prime(2);
    EXPECT_EQ(kernel(*f, Matrix::identity(3)).rows(), 0u);
}

TEST(Matrix, KernelOfZeroIsFull) {
    auto f = Field::prime(3);
    auto k = kernel(*f, Matrix(2, 3));
    EXPECT_EQ(k.rows(), 3u);
    EXPECT_EQ(rank(*f, k), 3u);
}

TEST(Matrix, KernelOfAllOnesRow) {
    auto f = Field::prime(2);
    auto m = Matrix::from_rows({{1, 1, 1}}, 3);
    auto k = kernel(*f, m);
    ASSERT_EQ(k.rows(), 2u);
    auto prod = multiply(*f, m, k.transpose());
    for (auto v : prod.data()) EXPECT_EQ(v, 0);
}

TEST(Matrix, KernelDimensionAndAnnihilation) {
    auto f = Field::of_order(4);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % 4;
        auto k = kernel(*f, m);
        ASSERT_EQ(k.rows(), c - rank(*f, m));
        const auto prod = multiply(*f, m, k.transpose());
        for (auto v : prod.data()) ASSERT_EQ(v, 0);
        ASSERT_EQ(rref(*f, k).reduced, k);
    }
}

TEST(Matrix, InverseRoundTrip) {
    auto f = Field::of_order(7);
    auto m = Matrix::from_rows({{1, 2, 0}, {0, 1, 3}, {4, 0, 1}}, 3);
    auto inv = inverse(*f, m);
    EXPECT_EQ(multiply(*f, m, inv), Matrix::identity(3));
    EXPECT_THROW(inverse(*f, Matrix::from_rows({{1, 2}, {2, 4}}, 2)), DomainError);
}
