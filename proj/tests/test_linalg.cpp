#include <catch2/catch_amalgamated.hpp>

#include "cohesive/matrix.hpp"

using namespace cohesive;

namespace {

MatrixK make(const Field& f, std::size_t r, std::size_t c,
             std::vector<long long> entries) {
    MatrixK m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, entries[i * c + j]);
    return m;
}

// Deterministic xorshift-style generator for property tests.
struct Rng {
    uint64_t s;
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long long small() { return static_cast<long long>(next() % 11) - 5; }
};

}  // namespace

TEST_CASE("scalar arithmetic over rationals and prime fields") {
    Field q = Field::rationals();
    Scalar a(q, Rational(2, 3));
    Scalar b(q, Rational(1, 6));
    REQUIRE((a + b).rational() == Rational(5, 6));
    REQUIRE((a * b).rational() == Rational(1, 9));
    REQUIRE(a.inverse().rational() == Rational(3, 2));
    REQUIRE((a - a).is_zero());

    Field f5 = Field::prime(5);
    Scalar x(f5, 7);  // = 2 mod 5
    REQUIRE(x.residue() == 2);
    REQUIRE((x * x * x).residue() == 3);
    REQUIRE((x * x.inverse()).is_one());
    REQUIRE_THROWS_AS(Scalar(f5, 0).inverse(), std::domain_error);
    REQUIRE_THROWS_AS(a + x, std::invalid_argument);
}

TEST_CASE("kernel of the identity is empty") {
    for (Field f : {Field::rationals(), Field::prime(5)}) {
        MatrixK id = MatrixK::identity(f, 2);
        REQUIRE(id.kernel_basis().cols() == 0);
        REQUIRE(id.rank() == 2);
    }
}

TEST_CASE("kernel of a rank-one 2x2 matrix") {
    for (Field f : {Field::rationals(), Field::prime(5)}) {
        MatrixK m = make(f, 2, 2, {1, 2, 2, 4});
        REQUIRE(m.rank() == 1);
        MatrixK k = m.kernel_basis();
        REQUIRE(k.cols() == 1);
        REQUIRE((m * k).is_zero());
        // Kernel is spanned by (2, -1): the basis vector must be a multiple.
        MatrixK v(f, 2, 1);
        v.at(0, 0) = Scalar(f, 2);
        v.at(1, 0) = Scalar(f, -1);
        REQUIRE(in_span(k, v));
    }
}

TEST_CASE("rank-nullity on random matrices") {
    Rng rng{42};
    for (Field f : {Field::rationals(), Field::prime(97)}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t r = 1 + rng.next() % 5, c = 1 + rng.next() % 5;
            MatrixK m(f, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, rng.small());
            MatrixK k = m.kernel_basis();
            REQUIRE(m.rank() + k.cols() == c);
            REQUIRE((m * k).is_zero());
            REQUIRE(k.rank() == k.cols());
        }
    }
}

TEST_CASE("solve and inverse") {
    Field q = Field::rationals();
    MatrixK m = make(q, 2, 2, {1, 2, 3, 4});
    auto inv = m.inverse();
    REQUIRE(inv);
    REQUIRE(*inv * m == MatrixK::identity(q, 2));

    MatrixK rhs(q, 2, 1);
    rhs.at(0, 0) = Scalar(q, 5);
    rhs.at(1, 0) = Scalar(q, 6);
    auto x = m.solve(rhs);
    REQUIRE(x);
    REQUIRE(m * *x == rhs);

    MatrixK sing = make(q, 2, 2, {1, 2, 2, 4});
    REQUIRE_FALSE(sing.inverse());
    MatrixK bad(q, 2, 1);
    bad.at(0, 0) = Scalar(q, 1);
    REQUIRE_FALSE(sing.solve(bad));
}

TEST_CASE("image basis spans the column space") {
    Field f7 = Field::prime(7);
    MatrixK m = make(f7, 3, 3, {1, 2, 3, 2, 4, 6, 0, 0, 1});
    MatrixK im = m.image_basis();
    REQUIRE(im.cols() == m.rank());
    for (std::size_t j = 0; j < m.cols(); ++j) REQUIRE(in_span(im, m.column(j)));
}
