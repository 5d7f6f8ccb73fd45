#include "doctest.h"

#include <algorithm>
#include <random>

#include "hopfinv/gradedtensor.hpp"

using namespace hopfinv;

namespace {

GradedTensor identity(const SpacePtr& V) {
    GradedTensor t(1, {{V, Variance::Out}, {V, Variance::In}}, 0);
    for (int i = 0; i < V->dim(); ++i) t.set({i, i}, Scalar::one(1));
    return t;
}

GradedTensor random_tensor(std::mt19937& rng, std::vector<Axis> axes, int parity) {
    GradedTensor t(1, axes, parity);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<int> idx(axes.size(), 0);
    while (true) {
        if (t.index_parity(idx) == parity) t.set(idx, Scalar(1, long(d(rng))));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == axes[k].space->dim()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return t;
}

}  // namespace

TEST_CASE("transpose signs") {
    auto L = GradedSpace::make({0, 1});
    GradedTensor t(1, {{L, Variance::Out}, {L, Variance::Out}}, 0);
    t.set({1, 1}, Scalar::one(1));
    t.set({0, 0}, Scalar(1, 2L));
    auto s = transpose_adjacent(t, 0);
    CHECK(s.get({1, 1}) == Scalar(1, -1L));
    CHECK(s.get({0, 0}) == Scalar(1, 2L));
    CHECK(transpose_adjacent(s, 0) == t);
    CHECK_THROWS_AS(transpose_adjacent(t, 1), Error);
    CHECK_THROWS_AS(t.set({0, 1}, Scalar::one(1)), Error);
}

TEST_CASE("traces and composition") {
    auto V = GradedSpace::even(3);
    CHECK(self_contract(identity(V), 0, 1).value() == Scalar(1, 3L));
    auto L = GradedSpace::make({0, 1});
    CHECK(self_contract(identity(L), 0, 1).value().is_zero());
    auto L2 = GradedSpace::make({0, 1, 1, 0});
    CHECK(self_contract(identity(L2), 0, 1).value() == Scalar(1, long(L2->graded_dim())));

    GradedTensor v(1, {{V, Variance::Out}}, 0);
    v.set({0}, Scalar(1, 2L));
    v.set({2}, Scalar(1, -1L));
    CHECK(contract_edge(v, 0, identity(V), 1) == v);
    CHECK_THROWS_AS(contract_edge(v, 0, identity(L), 1), Error);
    CHECK_THROWS_AS(contract_edge(v, 0, v, 0), Error);
}

TEST_CASE("network basics") {
    auto V = GradedSpace::even(3);
    std::mt19937 rng(1);
    TensorNetwork net;
    int a = net.add_node(random_tensor(rng, {{V, Variance::Out}}, 0), "v");
    int m = net.add_node(random_tensor(rng, {{V, Variance::Out}, {V, Variance::In}}, 0), "L");
    int w = net.add_node(random_tensor(rng, {{V, Variance::In}}, 0), "w");
    net.connect(a, 0, m, 1);
    net.connect(m, 0, w, 0);
    auto x = evaluate_network(net, plan_naive(net)).value();
    auto y = evaluate_network(net, ContractionPlan{{1, 0}}).value();
    CHECK(x == y);
    CHECK_THROWS_AS(evaluate_network(net, ContractionPlan{{1}}), Error);
    CHECK(plan_greedy(net).steps.size() == 2);

    TensorNetwork loop;
    int i = loop.add_node(identity(V));
    loop.connect(i, 0, i, 1);
    CHECK(evaluate_network(loop, plan_greedy(loop)).value() == Scalar(1, 3L));
}

TEST_CASE("odd nodes follow the sign order") {
    auto L = GradedSpace::make({0, 1});
    GradedTensor v(1, {{L, Variance::Out}}, 1);
    v.set({1}, Scalar::one(1));
    GradedTensor f(1, {{L, Variance::In}}, 1);
    f.set({1}, Scalar::one(1));
    TensorNetwork net;
    int a = net.add_node(v), b = net.add_node(f);
    net.connect(a, 0, b, 0);
    auto x = evaluate_network(net, plan_naive(net)).value();
    net.sign_order = {b, a};
    auto y = evaluate_network(net, plan_naive(net)).value();
    CHECK(x == -y);
    // an even node in between changes nothing
    TensorNetwork net2;
    int c = net2.add_node(v);
    net2.add_node(identity(GradedSpace::even(2)));
    int d = net2.add_node(f);
    net2.connect(c, 0, d, 0);
    net2.connect(1, 0, 1, 1);
    CHECK(evaluate_network(net2, plan_greedy(net2)).value() == x * Scalar(1, 2L));
}

TEST_CASE("star network stays small") {
    auto V = GradedSpace::even(4);
    std::mt19937 rng(3);
    TensorNetwork net;
    int hub = net.add_node(random_tensor(
        rng, {{V, Variance::In}, {V, Variance::In}, {V, Variance::In}}, 0));
    for (int k = 0; k < 3; ++k) {
        int leaf = net.add_node(random_tensor(rng, {{V, Variance::Out}}, 0));
        net.connect(leaf, 0, hub, k);
    }
    PlanStats st;
    evaluate_network(net, plan_greedy(net), &st);
    CHECK(st.max_entries <= 64);
}

TEST_CASE("plan independence on random graded networks") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dimd(1, 4), pard(0, 1);
        std::vector<SpacePtr> spaces;
        for (int s = 0; s < 3; ++s) {
            std::vector<std::uint8_t> p(dimd(rng));
            for (auto& x : p) x = pard(rng);
            spaces.push_back(GradedSpace::make(p));
        }
        int n = 2 + trial % 5;
        // random edge list first, then build axes
        std::vector<std::vector<Axis>> axes(n);
        struct E { int from, fa, to, ta; };
        std::vector<E> es;
        int ne = n + trial % 3;
        std::uniform_int_distribution<int> nd(0, n - 1), sd(0, 2);
        for (int e = 0; e < ne; ++e) {
            int u = nd(rng), w = nd(rng);
            auto sp = spaces[sd(rng)];
            int fa = axes[u].size();
            axes[u].push_back({sp, Variance::Out});
            int ta = axes[w].size();
            axes[w].push_back({sp, Variance::In});
            es.push_back({u, fa, w, ta});
        }
        TensorNetwork net;
        for (int i = 0; i < n; ++i) net.add_node(random_tensor(rng, axes[i], pard(rng)));
        for (auto& e : es) net.connect(e.from, e.fa, e.to, e.ta);
        auto ref = evaluate_network(net, plan_naive(net)).value();
        CHECK(evaluate_network(net, plan_greedy(net)).value() == ref);
        std::vector<int> perm(ne);
        std::iota(perm.begin(), perm.end(), 0);
        for (int k = 0; k < 4; ++k) {
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(evaluate_network(net, ContractionPlan{perm}).value() == ref);
        }
    }
}
