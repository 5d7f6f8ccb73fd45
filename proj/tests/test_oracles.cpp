#include "doctest.h"

#include <random>

#include "hopfinv/oracles.hpp"

using namespace hopfinv;

namespace {

const ConventionRecord rec;

Diagram B(const std::string& n) { return builtin_diagram(n, rec); }

}  // namespace

TEST_CASE("presentations") {
    CHECK(pi1_presentation(B("L(5,1)")).to_string() == "<x0 | x0^5>");
    CHECK(pi1_presentation(B("S2xS1")).to_string() == "<x0 | 1>");
    CHECK(pi1_presentation(B("L(2,1)#L(3,1)")).to_string() == "<x0,x1 | x0^2, x1^3>");
    CHECK(pi1_presentation(B("S3_genus0")).generators == 0);
}

TEST_CASE("hom counts") {
    GroupPresentation cube{1, {{1, 1, 1}}}, sq{1, {{1, 1}}}, free{1, {{}}};
    CHECK(hom_count(cube, symmetric_group3()) == 3);
    CHECK(hom_count(sq, symmetric_group3()) == 4);
    CHECK(hom_count(free, cyclic_group(5)) == 5);
    // commutator relator: commuting pairs
    GroupPresentation comm{2, {{1, 2, -1, -2}}};
    CHECK(hom_count(comm, symmetric_group3()) == 18);
    GroupPresentation big{8, {}};
    CHECK_THROWS_AS(hom_count(big, dihedral_group(4)), Error);
}

TEST_CASE("smith normal form") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMatrix A(r, std::vector<mpz_class>(c));
        for (auto& row : A)
            for (auto& x : row) x = d(rng) * (trial % 3 == 0 ? 2 : 1);
        auto f = smith_normal_form(A);
        CHECK(smith_form_valid(A, f));
    }
    IntMatrix A{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto f = smith_normal_form(A);
    CHECK(f.D[0][0] == 2);
    CHECK(f.D[1][1] == 6);
    CHECK(f.D[2][2] == 12);
}

TEST_CASE("first homology") {
    CHECK(h1_order(B("L(5,1)")) == 5);
    CHECK(h1_order(B("S2xS1")) == 0);
    CHECK(h1_order(B("S3_genus1")) == 1);
    CHECK(h1_order(B("S3_genus0")) == 1);
    CHECK(h1_order(B("L(5,2)#L(3,1)#RP3_left")) == 30);
}

TEST_CASE("cross validation") {
    auto r = cross_validate(B("L(3,1)"), {symmetric_group3()}, false, rec);
    CHECK(r.ok());
    CHECK(r.checks[0].value == "3");
    CHECK(cross_validate(B("RP3_left"), {cyclic_group(2)}, true, rec).ok());
    auto s = cross_validate(B("S2xS1"), {}, true, rec);
    CHECK(s.ok());
    CHECK(s.checks[0].oracle == "0");
}
