#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nbldpc/gf.hpp"
#include "nbldpc/rng.hpp"
#include "oracles.hpp"

#include <stdexcept>

using nbldpc::Field;
using nbldpc::Symbol;

TEST_CASE("construction rejects out-of-range extension degrees") {
    CHECK_THROWS_AS(Field(1), std::invalid_argument);
    CHECK_THROWS_AS(Field(9), std::invalid_argument);
    CHECK_THROWS_AS(Field(0), std::invalid_argument);
    for (int p = 2; p <= 8; ++p) CHECK(Field(p).q() == (1 << p));
}

TEST_CASE("gf(4) matches the polynomial oracle") {
    Field f(2);
    CHECK(f.mul(2, 2) == 3);  // x * x = x^2 = x + 1 under x^2 + x + 1
    CHECK(f.add(1, 2) == 3);
    CHECK(f.inv(2) == 3);
    CHECK(f.mul(2, 3) == 1);
}

TEST_CASE("trivial identities") {
    Field f4(4);
    for (int a = 0; a < 16; ++a) CHECK(f4.mul(static_cast<Symbol>(a), 1) == a);
    Field f3(3);
    for (int a = 0; a < 8; ++a) CHECK(f3.add(static_cast<Symbol>(a), static_cast<Symbol>(a)) == 0);
    CHECK(f4.add(3, 3) == 0);
    for (int a = 0; a < 16; ++a) CHECK(f4.add(0, static_cast<Symbol>(a)) == a);
    for (int a = 0; a < 16; ++a) CHECK(f4.mul(0, static_cast<Symbol>(a)) == 0);
}

TEST_CASE("gf(16) product spot check against schoolbook multiply") {
    Field f(4);
    const unsigned poly = f.primitive_poly();
    CHECK(poly == 0x13u);
    CHECK(f.mul(9, 5) == oracles::poly_mul_mod(9, 5, poly, 4));
}

TEST_CASE("all products match the schoolbook oracle exhaustively for q <= 16") {
    for (int p = 2; p <= 4; ++p) {
        Field f(p);
        for (int a = 0; a < f.q(); ++a)
            for (int b = 0; b < f.q(); ++b)
                CHECK(f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) ==
                      oracles::poly_mul_mod(static_cast<unsigned>(a), static_cast<unsigned>(b),
                                            f.primitive_poly(), p));
    }
}

TEST_CASE("randomized product oracle for larger fields") {
    for (int p = 5; p <= 8; ++p) {
        Field f(p);
        nbldpc::SplitMix64 rng(0xC0FFEE + p);
        for (int t = 0; t < 20000; ++t) {
            const auto a = static_cast<Symbol>(rng.bounded(f.q()));
            const auto b = static_cast<Symbol>(rng.bounded(f.q()));
            CHECK(f.mul(a, b) == oracles::poly_mul_mod(a, b, f.primitive_poly(), p));
        }
    }
}

TEST_CASE("inverse matches exhaustive unit search") {
    for (int p : {2, 3, 4, 5}) {
        Field f(p);
        for (int a = 1; a < f.q(); ++a)
            CHECK(f.inv(static_cast<Symbol>(a)) ==
                  oracles::poly_inv(static_cast<unsigned>(a), f.primitive_poly(), p, f.q()));
    }
    CHECK(Field(2).inv(2) == 3);
}

TEST_CASE("inv(0) is a domain error, log(0) too") {
    Field f(4);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    CHECK_THROWS_AS(f.log(0), std::domain_error);
}

TEST_CASE("log/antilog round trip and period") {
    for (int p = 2; p <= 8; ++p) {
        Field f(p);
        for (int a = 1; a < f.q(); ++a)
            CHECK(f.antilog(static_cast<unsigned>(f.log(static_cast<Symbol>(a)))) == a);
        for (int e = 0; e < f.q() - 1; ++e)
            CHECK(f.antilog(static_cast<unsigned>(e)) ==
                  f.antilog(static_cast<unsigned>(e + f.q() - 1)));
    }
}

TEST_CASE("field axioms: exhaustive small fields, randomized large") {
    for (int p = 2; p <= 8; ++p) {
        Field f(p);
        std::string msg;
        CHECK_MESSAGE(nbldpc::field_self_test(f, &msg), msg);
    }
}

TEST_CASE("negation is the identity map in characteristic 2") {
    for (int p = 2; p <= 8; ++p) {
        Field f(p);
        for (int a = 0; a < f.q(); ++a) {
            CHECK(f.neg(static_cast<Symbol>(a)) == a);
            CHECK(f.add(static_cast<Symbol>(a), f.neg(static_cast<Symbol>(a))) == 0);
        }
    }
}
