#include "doctest.h"

#include <random>

#include "hopfinv/exactfield.hpp"

using namespace hopfinv;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
    for (int n = 1; n <= 24; ++n) {
        CHECK(cyclotomic_polynomial(n).size() == std::size_t(euler_phi(n) + 1));
        CHECK(Scalar::zeta(n).pow(n).is_one());
        // Phi_n(zeta) = 0
        auto phi = cyclotomic_polynomial(n);
        Scalar acc(n);
        for (std::size_t i = 0; i < phi.size(); ++i)
            acc += Scalar(n, Rational(phi[i])) * Scalar::zeta(n, long(i));
        CHECK(acc.is_zero());
    }
    CHECK_THROWS_AS(cyclotomic_polynomial(0), Error);
}

TEST_CASE("small identities") {
    auto z4 = Scalar::zeta(4);
    CHECK(z4 * z4 == Scalar(4, -1L));
    auto z3 = Scalar::zeta(3);
    CHECK((Scalar::one(3) + z3 + z3 * z3).is_zero());
    auto z6 = Scalar::zeta(6);
    CHECK((z6 * z6.pow(5)).is_one());
    CHECK(Scalar(1, 2L).inverse() == Scalar(1, Rational(1, 2)));
    CHECK(Scalar::zeta(5).inverse() == Scalar::zeta(5, 4));
    auto w = (Scalar::one(4) + z4).inverse();
    CHECK(w == (Scalar::one(4) - z4) * Scalar(4, Rational(1, 2)));
    CHECK_THROWS_AS(Scalar(4).inverse(), Error);
    CHECK_THROWS_AS(Scalar::one(4) + Scalar::one(3), Error);
}

TEST_CASE("field axioms on random operands") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int n : {1, 3, 5, 8, 12, 20}) {
        auto rnd = [&] {
            std::vector<Rational> c;
            for (int i = 0; i < euler_phi(n); ++i) c.emplace_back(d(rng), 1 + (d(rng) + 5) % 4);
            for (auto& x : c) x.canonicalize();
            return Scalar(n, c);
        };
        for (int it = 0; it < 20; ++it) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(Scalar::parse(a.to_string(), n) == a);
        }
    }
}

TEST_CASE("embedding") {
    auto z3 = Scalar::zeta(3);
    CHECK(z3.embed(6) == Scalar::zeta(6, 2));
    CHECK(Scalar(3, Rational(2, 3)).embed(12) == Scalar(12, Rational(2, 3)));
    CHECK_THROWS_AS(z3.embed(4), Error);
}

TEST_CASE("parse") {
    CHECK(Scalar::parse("-3/6", 1) == Scalar(1, Rational(-1, 2)));
    CHECK(Scalar::parse("0,1", 4) == Scalar::zeta(4));
    CHECK(Scalar::parse("2", 5) == Scalar(5, 2L));
    CHECK_THROWS_AS(Scalar::parse("1,2", 5), ParseError);
    CHECK_THROWS_AS(Scalar::parse("x", 1), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/0", 1), ParseError);
}
