#include "doctest.h"

#include "hopfinv/algebrazoo.hpp"

using namespace hopfinv;

namespace {

Scalar rat(long p, long q = 1) { return Scalar(1, Rational(p, q)); }

}  // namespace

TEST_CASE("group algebras") {
    auto H = group_algebra(symmetric_group3());
    CHECK(H.dim() == 6);
    CHECK(verify_axioms(H).ok());
    auto D = derive_all(H);
    CHECK(D.q.is_one());
    CHECK(D.sigma == 1);
    CHECK(D.involutory);
    CHECK(D.balanced);
    CHECK(D.N == identity_mat(6, 1));
    // λ = δ_e, e_R = Σ g
    CHECK(D.mu_R == basis_vec(6, 0, 1));
    CHECK(D.e_R == Vec(6, Scalar::one(1)));
    CHECK(trace_S_power(H, 1) == rat(4));
    CHECK(trace_S_power(H, 2) == rat(6));
    auto Z5 = group_algebra(cyclic_group(5));
    CHECK(derive_all(Z5).a == basis_vec(5, 0, 1));
    CHECK_THROWS_AS(GroupTable::from_table("bad", {{0, 1}, {0, 1}}), Error);
}

TEST_CASE("dual group algebras") {
    for (auto G : {cyclic_group(3), symmetric_group3(), dihedral_group(4)}) {
        auto H = dual_group_algebra(G);
        CHECK(verify_axioms(H).ok());
        auto D = derive_all(H);
        CHECK(D.q.is_one());
    }
    auto dd = dual(dual(group_algebra(symmetric_group3())));
    CHECK(dd == group_algebra(symmetric_group3()));
}

TEST_CASE("exterior algebras") {
    for (int n = 1; n <= 3; ++n) {
        auto H = exterior_algebra(n);
        CHECK(H.dim() == (1 << n));
        CHECK(H.space()->graded_dim() == 0);
        auto D = derive_all(H);
        CHECK(D.sigma == (n % 2 ? -1 : 1));
        auto dH = dual(H);
        CHECK(verify_axioms(dH).ok());
        CHECK(derive_all(dH).sigma == D.sigma);
    }
    auto L1 = exterior_algebra(1);
    CHECK(solve_right_integral(L1) == Vec{rat(0), rat(1)});
}

TEST_CASE("sweedler") {
    auto H = sweedler();
    CHECK(verify_axioms(H).ok());
    auto D = derive_all(H);
    CHECK(D.q == rat(-1));
    CHECK_FALSE(D.involutory);
    CHECK(D.balanced);
    CHECK(D.a == basis_vec(4, 1, 1));
    CHECK(D.alpha[1] == rat(-1));
    CHECK(D.alpha[2].is_zero());
    CHECK(is_left_integral(H, integral_family(H, D, 1).first));
    CHECK(mat_pow(H.antipode(), 4) == identity_mat(4, 1));

    // antipode replaced by the identity
    HopfAlgebra bad("broken", 1, {0, 0, 0, 0});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j)
            for (auto& t : H.product(i, j)) bad.add_mult(i, j, t.index, t.c);
        for (auto& t : H.coproduct(i)) bad.add_comult(i, t.left, t.right, t.c);
        bad.set_unit(i, H.unit()[i]);
        bad.set_counit(i, H.counit()[i]);
        bad.set_antipode(i, i, Scalar::one(1));
    }
    bad.finalize();
    auto rep = verify_axioms(bad);
    CHECK_FALSE(rep.ok());
    bool antipode_failed = false;
    for (auto& c : rep.checks)
        if (c.name == "antipode") antipode_failed = !c.ok;
    CHECK(antipode_failed);
    CHECK(verify_axioms(dual(H)).ok());
    CHECK(op_variant(op_variant(H)) == H);
}

TEST_CASE("u_q(sl2+) small rank") {
    for (int r : {2, 3}) {
        auto H = uq_borel_sl2(r);
        CHECK(H.dim() == 2 * r * r);
        auto D = derive_all(H);
        CHECK(D.balanced);
        CHECK_FALSE(D.involutory);
        CHECK(D.q.pow(r).is_one());
        for (int k = 1; k < r; ++k) CHECK_FALSE(D.q.pow(k).is_one());
        // α(E) = 0
        CHECK(D.alpha[1].is_zero());
        // Tr(S) = 2(1 - q^{-⌊(r+1)/2⌋}) / (1 - q^{-1})
        Scalar one = Scalar::one(2 * r);
        Scalar qi = D.q.inverse();
        Scalar want = Scalar(2 * r, 2L) * (one - qi.pow((r + 1) / 2)) * (one - qi).inverse();
        CHECK(trace_S_power(H, 1) == want);
        Scalar want_inv = Scalar(2 * r, 2L) * (one - D.q.pow((r + 1) / 2)) * (one - D.q).inverse();
        CHECK(trace_S_power(H, -1) == want_inv);
    }
}

TEST_CASE("tensor products") {
    auto Z2 = group_algebra(cyclic_group(2));
    auto T = tensor_product(Z2, Z2);
    CHECK(T == [] {
        auto H = group_algebra(direct_product(cyclic_group(2), cyclic_group(2)));
        return H;
    }());
    auto q1 = derive_all(sweedler()).q;
    auto TS = tensor_product(sweedler(), exterior_algebra(1));
    CHECK(derive_all(TS).q == q1);
    CHECK(derive_all(TS).sigma == -1);
    CHECK_THROWS_AS(tensor_product(sweedler(), uq_borel_sl2(2)), Error);
}
