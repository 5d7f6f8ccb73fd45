#include "hopfinv/algebrazoo.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>

namespace hopfinv {

GroupTable GroupTable::from_table(std::string name, std::vector<std::vector<int>> mul) {
    GroupTable G;
    G.name = std::move(name);
    G.n = static_cast<int>(mul.size());
    G.mul = std::move(mul);
    const int n = G.n;
    if (n == 0) throw Error("NotAGroup", "empty table");
    for (auto& row : G.mul) {
        if (static_cast<int>(row.size()) != n) throw Error("NotAGroup", "table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw Error("NotAGroup", "entry out of range");
    }
    G.identity = -1;
    for (int e = 0; e < n && G.identity < 0; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g) ok = G.mul[e][g] == g && G.mul[g][e] == g;
        if (ok) G.identity = e;
    }
    if (G.identity < 0) throw Error("NotAGroup", "no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]]) throw Error("NotAGroup", "not associative");
    G.inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (G.mul[a][b] == G.identity && G.mul[b][a] == G.identity) G.inv[a] = b;
    if (std::count(G.inv.begin(), G.inv.end(), -1)) throw Error("NotAGroup", "missing inverse");
    return G;
}

int GroupTable::power(int g, long k) const {
    if (k < 0) {
        g = inv[g];
        k = -k;
    }
    int r = identity;
    for (long i = 0; i < k; ++i) r = mul[r][g];
    return r;
}

GroupTable cyclic_group(int n) {
    if (n < 1) throw Error("NotAGroup", "cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return GroupTable::from_table("Z" + std::to_string(n), t);
}

GroupTable symmetric_group3() {
    std::vector<std::array<int, 3>> els;
    std::array<int, 3> p{0, 1, 2};
    do els.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int i = 0; i < 3; ++i) c[i] = els[a][els[b][i]];
            t[a][b] = static_cast<int>(std::find(els.begin(), els.end(), c) - els.begin());
        }
    return GroupTable::from_table("S3", t);
}

GroupTable dihedral_group(int n) {
    // r^i s^j stored at i + n*j; s r s = r^{-1}
    std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
    for (int x = 0; x < 2 * n; ++x)
        for (int y = 0; y < 2 * n; ++y) {
            int a = x % n, b = x / n, c = y % n, d = y / n;
            int i = ((a + (b ? -c : c)) % n + n) % n;
            t[x][y] = i + n * ((b + d) % 2);
        }
    return GroupTable::from_table("D" + std::to_string(n), t);
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
    int n = a.n * b.n;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[x][y] = a.mul[x / b.n][y / b.n] * b.n + b.mul[x % b.n][y % b.n];
    return GroupTable::from_table(a.name + "x" + b.name, t);
}

GroupTable group_by_name(const std::string& name) {
    auto x = name.find('x');
    if (x != std::string::npos)
        return direct_product(group_by_name(name.substr(0, x)), group_by_name(name.substr(x + 1)));
    if (name == "S3") return symmetric_group3();
    try {
        if (name.size() > 1 && name[0] == 'Z') return cyclic_group(std::stoi(name.substr(1)));
        if (name.size() > 1 && name[0] == 'D') return dihedral_group(std::stoi(name.substr(1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw Error("UnknownName", "unknown group '" + name + "'");
}

namespace {

void check_or_throw(const HopfAlgebra& H) {
    auto rep = verify_axioms(H);
    if (!rep.ok()) throw Error("AxiomFailure", H.name() + " fails:\n" + rep.to_string());
}

}  // namespace

HopfAlgebra group_algebra(const GroupTable& G) {
    HopfAlgebra H("group:" + G.name, 1, std::vector<std::uint8_t>(G.n, 0));
    Scalar one = Scalar::one(1);
    for (int a = 0; a < G.n; ++a) {
        for (int b = 0; b < G.n; ++b) H.add_mult(a, b, G.mul[a][b], one);
        H.add_comult(a, a, a, one);
        H.set_counit(a, one);
        H.set_antipode(a, G.inv[a], one);
    }
    H.set_unit(G.identity, one);
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra dual_group_algebra(const GroupTable& G) {
    // delta functions: δ_a δ_b = [a = b] δ_a, Δ(δ_g) = Σ_{ab = g} δ_a ⊗ δ_b
    HopfAlgebra H("dualgroup:" + G.name, 1, std::vector<std::uint8_t>(G.n, 0));
    Scalar one = Scalar::one(1);
    for (int a = 0; a < G.n; ++a) {
        H.add_mult(a, a, a, one);
        H.set_unit(a, one);
        for (int b = 0; b < G.n; ++b) H.add_comult(G.mul[a][b], a, b, one);
        H.set_antipode(a, G.inv[a], one);
    }
    H.set_counit(G.identity, one);
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra exterior_algebra(int n) {
    if (n < 1 || n > 10) throw Error("InvalidOrder", "exterior algebra needs 1 <= n <= 10");
    const int d = 1 << n;
    std::vector<std::uint8_t> par(d);
    for (int A = 0; A < d; ++A) par[A] = std::popcount(static_cast<unsigned>(A)) & 1;
    HopfAlgebra H("exterior:" + std::to_string(n), 1, par);
    // sign of concatenating sorted A then sorted B into sorted order
    auto shuffle_sign = [](int A, int B) {
        int inv = 0;
        for (int a = 0; a < 16; ++a)
            if (A >> a & 1) inv += std::popcount(static_cast<unsigned>(B & ((1 << a) - 1)));
        return inv & 1 ? -1L : 1L;
    };
    for (int A = 0; A < d; ++A) {
        for (int B = 0; B < d; ++B)
            if (!(A & B)) H.add_mult(A, B, A | B, Scalar(1, shuffle_sign(A, B)));
        for (int B = A;; B = (B - 1) & A) {
            H.add_comult(A, B, A & ~B, Scalar(1, shuffle_sign(B, A & ~B)));
            if (B == 0) break;
        }
        H.set_antipode(A, A, Scalar(1, par[A] ? -1L : 1L));
    }
    H.set_unit(0, Scalar::one(1));
    H.set_counit(0, Scalar::one(1));
    H.finalize();
    check_or_throw(H);
    return H;
}


// K^j E^k with K^n = 1, E^r = 0, K E = w E K, Δ(E) = E ⊗ 1 + K ⊗ E,
// S(E) = -K^{-1} E.
HopfAlgebra taft_like(std::string name, const Scalar& w0, int n, int r, std::function<int(int, int)> idx) {
    const int N = w0.order();
    HopfAlgebra H(std::move(name), N, std::vector<std::uint8_t>(n * r, 0));
    auto w = [&](long e) { return w0.pow(e); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < r; ++d)
                    if (b + d < r) H.add_mult(idx(a, b), idx(c, d), idx((a + c) % n, b + d), w(-long(b) * c));
    H.set_unit(idx(0, 0), Scalar::one(N));
    for (int a = 0; a < n; ++a) H.set_counit(idx(a, 0), Scalar::one(N));
    H.finalize();

    using T2 = std::map<std::pair<int, int>, Scalar>;
    auto mul2 = [&](const T2& x, const T2& y) {
        T2 out;
        for (auto& [p, c] : x)
            for (auto& [q, c2] : y)
                for (auto& t1 : H.product(p.first, q.first))
                    for (auto& t2 : H.product(p.second, q.second)) {
                        Scalar v = c * c2 * t1.c * t2.c;
                        auto key = std::make_pair(t1.index, t2.index);
                        auto it = out.find(key);
                        if (it == out.end())
                            out.emplace(key, v);
                        else
                            it->second += v;
                    }
        return out;
    };
    Scalar one = Scalar::one(N);
    T2 dK{{{idx(1 % n, 0), idx(1 % n, 0)}, one}};
    T2 dE{{{idx(0, 1), idx(0, 0)}, one}, {{idx(1 % n, 0), idx(0, 1)}, one}};
    Vec SK = H.basis(idx(n - 1, 0));
    Vec SE = scaled(H.mul(H.basis(idx(n - 1, 0)), H.basis(idx(0, 1))), Scalar(N, -1L));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < r; ++k) {
            T2 D{{{idx(0, 0), idx(0, 0)}, one}};
            Vec s = H.one();
            for (int i = 0; i < j; ++i) D = mul2(D, dK);
            for (int i = 0; i < k; ++i) D = mul2(D, dE);
            for (int i = 0; i < k; ++i) s = H.mul(s, SE);
            for (int i = 0; i < j; ++i) s = H.mul(s, SK);
            for (auto& [p, c] : D) H.add_comult(idx(j, k), p.first, p.second, c);
            for (int m = 0; m < H.dim(); ++m)
                if (!s[m].is_zero()) H.set_antipode(idx(j, k), m, s[m]);
        }
    H.finalize();
    check_or_throw(H);
    return H;
}


HopfAlgebra sweedler() {
    // basis 1, g, x, gx
    return taft_like("sweedler", Scalar(1, -1L), 2, 2, [](int j, int k) { return k * 2 + j; });
}

HopfAlgebra uq_borel_sl2(int r) {
    if (r < 2) throw Error("InvalidOrder", "u_q(sl2+) needs r >= 2");
    // q = ζ_{2r}^2, K^{2r} = 1
    return taft_like("uq_sl2:" + std::to_string(r), Scalar::zeta(2 * r, 2), 2 * r, r, [r](int j, int k) { return j * r + k; });
}

HopfAlgebra tensor_product(const HopfAlgebra& A, const HopfAlgebra& B) {
    if (A.order() != B.order())
        throw Error("FieldMismatch", "tensor factors over Q(ζ_" + std::to_string(A.order()) + ") and Q(ζ_" +
                                         std::to_string(B.order()) + "); embed one explicitly");
    const int da = A.dim(), db = B.dim(), N = A.order();
    std::vector<std::uint8_t> par(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) par[i * db + j] = A.parity(i) ^ B.parity(j);
    HopfAlgebra H("tensor:" + A.name() + "," + B.name(), N, par);
    auto id = [db](int i, int j) { return i * db + j; };
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
            for (int c = 0; c < da; ++c)
                for (int d = 0; d < db; ++d) {
                    // (a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd
                    bool neg = B.parity(b) && A.parity(c);
                    for (auto& t1 : A.product(a, c))
                        for (auto& t2 : B.product(b, d)) {
                            Scalar v = t1.c * t2.c;
                            H.add_mult(id(a, b), id(c, d), id(t1.index, t2.index), neg ? -v : v);
                        }
                }
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b) {
            for (auto& x : A.coproduct(a))
                for (auto& y : B.coproduct(b)) {
                    // (a1⊗b1)⊗(a2⊗b2) with (-1)^{|a2||b1|}
                    Scalar v = x.c * y.c;
                    if (A.parity(x.right) && B.parity(y.left)) v = -v;
                    H.add_comult(id(a, b), id(x.left, y.left), id(x.right, y.right), v);
                }
            H.set_unit(id(a, b), A.unit()[a] * B.unit()[b]);
            H.set_counit(id(a, b), A.counit()[a] * B.counit()[b]);
            for (int c = 0; c < da; ++c)
                for (int d = 0; d < db; ++d) {
                    Scalar v = A.antipode()[a][c] * B.antipode()[b][d];
                    if (!v.is_zero()) H.set_antipode(id(a, b), id(c, d), v);
                }
        }
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra op_variant(const HopfAlgebra& h) {
    std::vector<std::uint8_t> par(h.space()->parity);
    HopfAlgebra H("op:" + h.name(), h.order(), par);
    for (int i = 0; i < h.dim(); ++i) {
        for (int j = 0; j < h.dim(); ++j)
            for (auto& t : h.product(j, i)) H.add_mult(i, j, t.index, h.parity(i) && h.parity(j) ? -t.c : t.c);
        for (auto& t : h.coproduct(i)) H.add_comult(i, t.left, t.right, t.c);
        H.set_unit(i, h.unit()[i]);
        H.set_counit(i, h.counit()[i]);
    }
    Mat Si = inverse(h.antipode(), h.order());
    for (int i = 0; i < h.dim(); ++i)
        for (int k = 0; k < h.dim(); ++k)
            if (!Si[i][k].is_zero()) H.set_antipode(i, k, Si[i][k]);
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra cop_variant(const HopfAlgebra& h) {
    HopfAlgebra H("cop:" + h.name(), h.order(), h.space()->parity);
    for (int i = 0; i < h.dim(); ++i) {
        for (int j = 0; j < h.dim(); ++j)
            for (auto& t : h.product(i, j)) H.add_mult(i, j, t.index, t.c);
        for (auto& t : h.coproduct(i))
            H.add_comult(i, t.right, t.left, h.parity(t.left) && h.parity(t.right) ? -t.c : t.c);
        H.set_unit(i, h.unit()[i]);
        H.set_counit(i, h.counit()[i]);
    }
    Mat Si = inverse(h.antipode(), h.order());
    for (int i = 0; i < h.dim(); ++i)
        for (int k = 0; k < h.dim(); ++k)
            if (!Si[i][k].is_zero()) H.set_antipode(i, k, Si[i][k]);
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra dual(const HopfAlgebra& h) {
    // dual basis b_i*, pairing with the Koszul sign (-1)^{|g||x|} on
    // <f ⊗ g, x ⊗ y>; both structure transposes pick up (-1)^{|i||j|}
    std::string name = h.name().rfind("dual:", 0) == 0 ? h.name().substr(5) : "dual:" + h.name();
    HopfAlgebra H(name, h.order(), h.space()->parity);
    for (int k = 0; k < h.dim(); ++k) {
        for (auto& t : h.coproduct(k))
            H.add_mult(t.left, t.right, k, h.parity(t.left) && h.parity(t.right) ? -t.c : t.c);
        H.set_unit(k, h.counit()[k]);
        H.set_counit(k, h.unit()[k]);
        for (int i = 0; i < h.dim(); ++i)
            if (!h.antipode()[i][k].is_zero()) H.set_antipode(k, i, h.antipode()[i][k]);
    }
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j)
            for (auto& t : h.product(i, j))
                H.add_comult(t.index, i, j, h.parity(i) && h.parity(j) ? -t.c : t.c);
    H.finalize();
    check_or_throw(H);
    return H;
}

HopfAlgebra embed_algebra(const HopfAlgebra& h, int order) {
    if (order == h.order()) return h;
    HopfAlgebra H(h.name(), order, h.space()->parity);
    for (int i = 0; i < h.dim(); ++i) {
        for (int j = 0; j < h.dim(); ++j) {
            for (auto& t : h.product(i, j)) H.add_mult(i, j, t.index, t.c.embed(order));
            if (!h.antipode()[i][j].is_zero()) H.set_antipode(i, j, h.antipode()[i][j].embed(order));
        }
        for (auto& t : h.coproduct(i)) H.add_comult(i, t.left, t.right, t.c.embed(order));
        H.set_unit(i, h.unit()[i].embed(order));
        H.set_counit(i, h.counit()[i].embed(order));
    }
    H.finalize();
    return H;
}

HopfAlgebra zoo_algebra(const std::string& spec) {
    auto rest = [&](const std::string& prefix) { return spec.substr(prefix.size()); };
    auto starts = [&](const std::string& prefix) { return spec.rfind(prefix, 0) == 0; };
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw Error("UnknownName", "bad integer in zoo spec '" + spec + "'");
    };
    if (spec == "sweedler") return sweedler();
    if (starts("group:")) return group_algebra(group_by_name(rest("group:")));
    if (starts("dualgroup:")) return dual_group_algebra(group_by_name(rest("dualgroup:")));
    if (starts("exterior:")) return exterior_algebra(to_int(rest("exterior:")));
    if (starts("uq_sl2:")) return uq_borel_sl2(to_int(rest("uq_sl2:")));
    if (starts("dual:")) return dual(zoo_algebra(rest("dual:")));
    if (starts("op:")) return op_variant(zoo_algebra(rest("op:")));
    if (starts("cop:")) return cop_variant(zoo_algebra(rest("cop:")));
    if (starts("tensor:")) {
        auto body = rest("tensor:");
        auto comma = body.find(',');
        if (comma == std::string::npos) throw Error("UnknownName", "tensor needs two factors");
        auto a = zoo_algebra(body.substr(0, comma));
        auto b = zoo_algebra(body.substr(comma + 1));
        int N = std::lcm(a.order(), b.order());
        return tensor_product(embed_algebra(a, N), embed_algebra(b, N));
    }
    throw Error("UnknownName", "unknown zoo algebra '" + spec + "'");
}

}  // namespace hopfinv
