#include "hopfinv/hopfcore.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hopfinv {

namespace {

using SVec = std::map<int, Scalar>;
using S2Map = std::map<std::pair<int, int>, Scalar>;
using S3Map = std::map<std::tuple<int, int, int>, Scalar>;

template <class K>
void acc(std::map<K, Scalar>& m, const K& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end())
        m.emplace(k, c);
    else
        it->second += c;
}

template <class K>
void prune(std::map<K, Scalar>& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

template <class K>
bool same(std::map<K, Scalar> a, std::map<K, Scalar> b) {
    prune(a);
    prune(b);
    return a == b;
}

SVec sparse(const Vec& v) {
    SVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace(static_cast<int>(i), v[i]);
    return s;
}

SVec smul(const HopfAlgebra& H, const SVec& x, const SVec& y) {
    SVec r;
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) {
            Scalar ab = a * b;
            for (auto& t : H.product(i, j)) acc(r, t.index, ab * t.c);
        }
    return r;
}

SVec sant(const HopfAlgebra& H, int i) { return sparse(H.antipode()[i]); }

std::string fmt_idx(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

}  // namespace

HopfAlgebra::HopfAlgebra(std::string name, int order, std::vector<std::uint8_t> parity)
    : name_(std::move(name)), order_(order), space_(GradedSpace::make(std::move(parity))) {
    int d = dim();
    if (d <= 0) throw Error("ShapeMismatch", "algebra dimension must be positive");
    mult_.resize(static_cast<std::size_t>(d) * d);
    comult_.resize(d);
    unit_ = zero_vec(d, order);
    counit_ = zero_vec(d, order);
    S_ = zero_mat(d, d, order);
}

void HopfAlgebra::add_mult(int i, int j, int k, const Scalar& c) {
    int d = dim();
    if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d)
        throw Error("ShapeMismatch", "multiplication index out of range");
    if (c.order() != order_) throw Error("OrderMismatch", "scalar of a different field");
    mult_[i * d + j].push_back({k, c});
}

void HopfAlgebra::add_comult(int i, int j, int k, const Scalar& c) {
    int d = dim();
    if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d)
        throw Error("ShapeMismatch", "comultiplication index out of range");
    if (c.order() != order_) throw Error("OrderMismatch", "scalar of a different field");
    comult_[i].push_back({j, k, c});
}

void HopfAlgebra::finalize() {
    for (auto& lst : mult_) {
        SVec m;
        for (auto& t : lst) acc(m, t.index, t.c);
        prune(m);
        lst.clear();
        for (auto& [k, c] : m) lst.push_back({k, c});
    }
    for (auto& lst : comult_) {
        S2Map m;
        for (auto& t : lst) acc(m, std::make_pair(t.left, t.right), t.c);
        prune(m);
        lst.clear();
        for (auto& [k, c] : m) lst.push_back({k.first, k.second, c});
    }
}

Vec HopfAlgebra::mul(const Vec& x, const Vec& y) const {
    Vec r = zero_vec(dim(), order_);
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim(); ++j) {
            if (y[j].is_zero()) continue;
            Scalar ab = x[i] * y[j];
            for (auto& t : product(i, j)) r[t.index].add_mul(ab, t.c);
        }
    }
    return r;
}

Mat HopfAlgebra::comul(const Vec& x) const {
    Mat r = zero_mat(dim(), dim(), order_);
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (auto& t : comult_[i]) r[t.left][t.right].add_mul(x[i], t.c);
    }
    return r;
}

int HopfAlgebra::vec_parity(const Vec& x) const {
    int p = -1;
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        if (p < 0)
            p = parity(i);
        else if (p != parity(i))
            return 2;
    }
    return p;
}

Vec HopfAlgebra::grouplike_pow(const Vec& g, int k) const {
    Vec base = k < 0 ? S(g) : g;
    Vec r = one();
    for (int i = 0; i < std::abs(k); ++i) r = mul(r, base);
    return r;
}

Vec HopfAlgebra::character_pow(const Vec& f, int k) const {
    // (f*g)(x) = f(x1) g(x2)
    Vec base = f;
    if (k < 0) base = apply_map(f, transpose(S_));  // f o S
    Vec r = counit_;
    for (int n = 0; n < std::abs(k); ++n) {
        Vec next = zero_vec(dim(), order_);
        for (int i = 0; i < dim(); ++i)
            for (auto& t : comult_[i]) {
                if (r[t.left].is_zero() || base[t.right].is_zero()) continue;
                next[i] += t.c * r[t.left] * base[t.right];
            }
        r = std::move(next);
    }
    return r;
}

GradedTensor HopfAlgebra::mult_tensor() const {
    GradedTensor t(order_, {{space_, Variance::Out}, {space_, Variance::In}, {space_, Variance::In}}, 0);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            for (auto& term : product(i, j)) t.add({term.index, j, i}, term.c);
    t.prune();
    return t;
}

GradedTensor HopfAlgebra::comult_tensor() const {
    GradedTensor t(order_, {{space_, Variance::Out}, {space_, Variance::Out}, {space_, Variance::In}}, 0);
    for (int i = 0; i < dim(); ++i)
        for (auto& term : comult_[i]) t.add({term.left, term.right, i}, term.c);
    t.prune();
    return t;
}

GradedTensor HopfAlgebra::unit_tensor() const {
    GradedTensor t(order_, {{space_, Variance::Out}}, 0);
    for (int i = 0; i < dim(); ++i) t.add({i}, unit_[i]);
    return t;
}

GradedTensor HopfAlgebra::counit_tensor() const {
    GradedTensor t(order_, {{space_, Variance::In}}, 0);
    for (int i = 0; i < dim(); ++i) t.add({i}, counit_[i]);
    return t;
}

std::string HopfAlgebra::fingerprint() const {
    std::ostringstream os;
    os << order_ << '|';
    for (auto p : space_->parity) os << int(p);
    os << "|M";
    for (int i = 0; i < dim() * dim(); ++i)
        for (auto& t : mult_[i]) os << i << ':' << t.index << '=' << t.c << ';';
    os << "|D";
    for (int i = 0; i < dim(); ++i)
        for (auto& t : comult_[i]) os << i << ':' << t.left << ',' << t.right << '=' << t.c << ';';
    os << "|u";
    for (auto& c : unit_) os << c << ';';
    os << "|e";
    for (auto& c : counit_) os << c << ';';
    os << "|S";
    for (auto& row : S_)
        for (auto& c : row) os << c << ';';
    return std::to_string(std::hash<std::string>{}(os.str())) + ":" + std::to_string(os.str().size());
}

bool HopfAlgebra::operator==(const HopfAlgebra& o) const {
    if (order_ != o.order_ || !(*space_ == *o.space_)) return false;
    if (unit_ != o.unit_ || counit_ != o.counit_ || S_ != o.S_) return false;
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        SVec a, b;
        for (auto& t : mult_[i]) acc(a, t.index, t.c);
        for (auto& t : o.mult_[i]) acc(b, t.index, t.c);
        if (!same(a, b)) return false;
    }
    for (std::size_t i = 0; i < comult_.size(); ++i) {
        S2Map a, b;
        for (auto& t : comult_[i]) acc(a, std::make_pair(t.left, t.right), t.c);
        for (auto& t : o.comult_[i]) acc(b, std::make_pair(t.left, t.right), t.c);
        if (!same(a, b)) return false;
    }
    return true;
}

bool AxiomReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.ok; });
}

std::string AxiomReport::to_string() const {
    std::string s;
    for (auto& c : checks) {
        s += (c.ok ? "  ok    " : "  FAIL  ") + c.name;
        if (!c.ok && !c.detail.empty()) s += "  " + c.detail;
        s += "\n";
    }
    return s;
}

AxiomReport verify_axioms(const HopfAlgebra& H) {
    const int d = H.dim();
    const int N = H.order();
    AxiomReport rep;
    auto record = [&](const std::string& name, const std::string& fail) {
        rep.checks.push_back({name, fail.empty(), fail});
    };
    auto par = [&](int i) { return H.parity(i); };
    Scalar one = Scalar::one(N);
    SVec unit = sparse(H.unit());

    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i)
            for (int j = 0; j < d && f.empty(); ++j) {
                for (auto& t : H.product(i, j))
                    if (par(t.index) != (par(i) ^ par(j))) f = "odd product term at " + fmt_idx({i, j});
                for (auto& t : H.coproduct(i))
                    if ((par(t.left) ^ par(t.right)) != par(i)) f = "odd coproduct term at " + fmt_idx({i});
                if (!H.antipode()[i][j].is_zero() && par(i) != par(j)) f = "odd antipode entry";
            }
        for (int i = 0; i < d; ++i)
            if ((!H.unit()[i].is_zero() || !H.counit()[i].is_zero()) && par(i))
                f = "unit or counit touches an odd basis element";
        record("homogeneity", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i)
            for (int j = 0; j < d && f.empty(); ++j) {
                SVec ij;
                for (auto& t : H.product(i, j)) acc(ij, t.index, t.c);
                for (int k = 0; k < d; ++k) {
                    SVec l, r;
                    for (auto& t : H.product(i, j))
                        for (auto& u : H.product(t.index, k)) acc(l, u.index, t.c * u.c);
                    for (auto& t : H.product(j, k))
                        for (auto& u : H.product(i, t.index)) acc(r, u.index, t.c * u.c);
                    if (!same(l, r)) {
                        f = "(b_i b_j) b_k != b_i (b_j b_k) at " + fmt_idx({i, j, k});
                        break;
                    }
                }
            }
        record("associativity", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i) {
            SVec bi{{i, one}};
            if (!same(smul(H, unit, bi), bi) || !same(smul(H, bi, unit), bi))
                f = "1 b_i != b_i at " + fmt_idx({i});
        }
        record("unit", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i) {
            S3Map l, r;
            for (auto& t : H.coproduct(i)) {
                for (auto& u : H.coproduct(t.left)) acc(l, std::make_tuple(u.left, u.right, t.right), t.c * u.c);
                for (auto& u : H.coproduct(t.right)) acc(r, std::make_tuple(t.left, u.left, u.right), t.c * u.c);
            }
            if (!same(l, r)) f = "(Δ⊗id)Δ != (id⊗Δ)Δ at " + fmt_idx({i});
        }
        record("coassociativity", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i) {
            SVec l, r;
            for (auto& t : H.coproduct(i)) {
                acc(l, t.right, t.c * H.counit()[t.left]);
                acc(r, t.left, t.c * H.counit()[t.right]);
            }
            SVec bi{{i, one}};
            if (!same(l, bi) || !same(r, bi)) f = "counit fails at " + fmt_idx({i});
        }
        record("counit", f);
    }
    {
        std::string f;
        // Δ(1) = 1 ⊗ 1, ε(xy) = ε(x)ε(y), Δ(xy) = Δ(x)Δ(y) with the Koszul sign
        S2Map d1, u11;
        for (auto& [i, c] : unit)
            for (auto& t : H.coproduct(i)) acc(d1, std::make_pair(t.left, t.right), c * t.c);
        for (auto& [i, c] : unit)
            for (auto& [j, c2] : unit) acc(u11, std::make_pair(i, j), c * c2);
        if (!same(d1, u11)) f = "Δ(1) != 1⊗1";
        for (int i = 0; i < d && f.empty(); ++i)
            for (int j = 0; j < d && f.empty(); ++j) {
                Scalar e(N);
                for (auto& t : H.product(i, j)) e += t.c * H.counit()[t.index];
                if (e != H.counit()[i] * H.counit()[j]) {
                    f = "ε(b_i b_j) != ε(b_i)ε(b_j) at " + fmt_idx({i, j});
                    break;
                }
                S2Map l, r;
                for (auto& t : H.product(i, j))
                    for (auto& u : H.coproduct(t.index)) acc(l, std::make_pair(u.left, u.right), t.c * u.c);
                for (auto& x : H.coproduct(i))
                    for (auto& y : H.coproduct(j)) {
                        Scalar c = x.c * y.c;
                        if (par(x.right) && par(y.left)) c = -c;
                        for (auto& p1 : H.product(x.left, y.left))
                            for (auto& p2 : H.product(x.right, y.right))
                                acc(r, std::make_pair(p1.index, p2.index), c * p1.c * p2.c);
                    }
                if (!same(l, r)) f = "Δ(b_i b_j) != Δ(b_i)Δ(b_j) at " + fmt_idx({i, j});
            }
        record("bialgebra", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i) {
            SVec l, r, want;
            for (auto& [k, c] : unit) acc(want, k, c * H.counit()[i]);
            for (auto& t : H.coproduct(i)) {
                SVec sl = sant(H, t.left), sr = sant(H, t.right);
                for (auto& [k, c] : smul(H, sl, SVec{{t.right, t.c}})) acc(l, k, c);
                for (auto& [k, c] : smul(H, SVec{{t.left, t.c}}, sr)) acc(r, k, c);
            }
            if (!same(l, want) || !same(r, want)) f = "S(x1)x2 or x1S(x2) != ε(x)1 at " + fmt_idx({i});
        }
        record("antipode", f);
    }
    {
        std::string f;
        Scalar e = dot(H.unit(), H.counit());
        if (e != one) f = "ε(1) = " + e.to_string();
        record("counit_of_unit", f);
    }
    {
        // x⊗y -> x1⊗x2 y and x⊗y -> x1⊗S(x2) y are mutually inverse
        std::string f;
        auto ladder = [&](const S2Map& in, bool with_s) {
            S2Map out;
            for (auto& [xy, c] : in)
                for (auto& t : H.coproduct(xy.first)) {
                    SVec left = with_s ? sant(H, t.right) : SVec{{t.right, one}};
                    for (auto& [k, c2] : smul(H, left, SVec{{xy.second, one}}))
                        acc(out, std::make_pair(t.left, k), c * t.c * c2);
                }
            return out;
        };
        for (int i = 0; i < d && f.empty(); ++i)
            for (int j = 0; j < d && f.empty(); ++j) {
                S2Map b{{{i, j}, one}};
                if (!same(ladder(ladder(b, true), false), b) || !same(ladder(ladder(b, false), true), b))
                    f = "ladders not inverse at " + fmt_idx({i, j});
            }
        record("ladders", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i)
            for (int j = 0; j < d && f.empty(); ++j) {
                SVec l;
                for (auto& t : H.product(i, j))
                    for (auto& [k, c] : sant(H, t.index)) acc(l, k, t.c * c);
                SVec r = smul(H, sant(H, j), sant(H, i));
                if (par(i) && par(j))
                    for (auto& [k, c] : r) c = -c;
                if (!same(l, r)) f = "S(b_i b_j) != ±S(b_j)S(b_i) at " + fmt_idx({i, j});
            }
        record("antipode_antihomomorphism", f);
    }
    {
        std::string f;
        for (int i = 0; i < d && f.empty(); ++i) {
            S2Map l, r;
            for (auto& [k, c] : sant(H, i))
                for (auto& t : H.coproduct(k)) acc(l, std::make_pair(t.left, t.right), c * t.c);
            for (auto& t : H.coproduct(i)) {
                Scalar c = t.c;
                if (par(t.left) && par(t.right)) c = -c;
                for (auto& [a, ca] : sant(H, t.right))
                    for (auto& [b, cb] : sant(H, t.left)) acc(r, std::make_pair(a, b), c * ca * cb);
            }
            if (!same(l, r)) f = "Δ(S(b_i)) != ±(S⊗S)Δ^op(b_i) at " + fmt_idx({i});
        }
        record("antipode_anticoalgebra", f);
    }
    {
        std::string f;
        if (H.S(H.unit()) != H.unit()) f = "S(1) != 1";
        if (apply_map(H.counit(), transpose(H.antipode())) != H.counit()) f = "ε∘S != ε";
        record("antipode_fixes_unit_counit", f);
    }
    return rep;
}

std::string HopfConventions::to_string() const {
    std::ostringstream os;
    os << "a_inverse=" << a_inverse << " mu=" << mu_side << (mu_sign > 0 ? "+" : "-") << " e=" << e_side
       << (e_sign > 0 ? "+" : "-");
    return os.str();
}

namespace {

Vec single_solution(RowReducer& red, const HopfAlgebra& H, int* dim, const char* what) {
    auto ker = red.kernel();
    if (dim) *dim = static_cast<int>(ker.size());
    if (ker.size() != 1)
        throw Error("DegenerateIntegralSpace", std::string(what) + " space of " + H.name() +
                                                   " has dimension " + std::to_string(ker.size()));
    if (H.vec_parity(ker[0]) > 1)
        throw Error("NonHomogeneousIntegral", std::string(what) + " is not parity-homogeneous");
    return ker[0];
}

}  // namespace

Vec solve_right_integral(const HopfAlgebra& H, int* solution_dim) {
    // x1 λ(x2) = λ(x) 1 for every basis x, componentwise
    const int d = H.dim();
    RowReducer red(d, H.order());
    for (int x = 0; x < d; ++x) {
        std::map<int, Vec> rows;
        for (auto& t : H.coproduct(x)) {
            auto& row = rows.try_emplace(t.left, zero_vec(d, H.order())).first->second;
            row[t.right] += t.c;
        }
        for (int k = 0; k < d; ++k) {
            if (H.unit()[k].is_zero()) continue;
            auto& row = rows.try_emplace(k, zero_vec(d, H.order())).first->second;
            row[x] -= H.unit()[k];
        }
        for (auto& [k, row] : rows)
            if (!is_zero(row)) red.add_row(std::move(row));
    }
    return single_solution(red, H, solution_dim, "right integral");
}

Vec solve_right_cointegral(const HopfAlgebra& H, int* solution_dim) {
    // e b_x = ε(b_x) e
    const int d = H.dim();
    RowReducer red(d, H.order());
    for (int x = 0; x < d; ++x) {
        std::map<int, Vec> rows;
        for (int i = 0; i < d; ++i)
            for (auto& t : H.product(i, x)) {
                auto& row = rows.try_emplace(t.index, zero_vec(d, H.order())).first->second;
                row[i] += t.c;
            }
        if (!H.counit()[x].is_zero())
            for (int k = 0; k < d; ++k) {
                auto& row = rows.try_emplace(k, zero_vec(d, H.order())).first->second;
                row[k] -= H.counit()[x];
            }
        for (auto& [k, row] : rows)
            if (!is_zero(row)) red.add_row(std::move(row));
    }
    return single_solution(red, H, solution_dim, "right cointegral");
}

bool is_right_integral(const HopfAlgebra& H, const Vec& mu) {
    for (int x = 0; x < H.dim(); ++x) {
        Vec r = zero_vec(H.dim(), H.order());
        for (auto& t : H.coproduct(x)) r[t.left] += t.c * mu[t.right];
        if (r != scaled(H.unit(), mu[x])) return false;
    }
    return true;
}

bool is_left_integral(const HopfAlgebra& H, const Vec& mu) {
    for (int x = 0; x < H.dim(); ++x) {
        Vec r = zero_vec(H.dim(), H.order());
        for (auto& t : H.coproduct(x)) r[t.right] += t.c * mu[t.left];
        if (r != scaled(H.unit(), mu[x])) return false;
    }
    return true;
}

bool is_right_cointegral(const HopfAlgebra& H, const Vec& e) {
    for (int x = 0; x < H.dim(); ++x)
        if (H.mul(e, H.basis(x)) != scaled(e, H.counit()[x])) return false;
    return true;
}

bool is_left_cointegral(const HopfAlgebra& H, const Vec& e) {
    for (int x = 0; x < H.dim(); ++x)
        if (H.mul(H.basis(x), e) != scaled(e, H.counit()[x])) return false;
    return true;
}

bool is_grouplike(const HopfAlgebra& H, const Vec& g) {
    Mat dg = H.comul(g);
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j)
            if (dg[i][j] != g[i] * g[j]) return false;
    return H.eps(g).is_one();
}

bool is_character(const HopfAlgebra& H, const Vec& f) {
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            Scalar v(H.order());
            for (auto& t : H.product(i, j)) v += t.c * f[t.index];
            if (v != f[i] * f[j]) return false;
        }
    return dot(H.unit(), f).is_one();
}

Mat ad_left(const HopfAlgebra& H, const Vec& g, const Vec& g_inv) {
    Mat m;
    for (int i = 0; i < H.dim(); ++i) m.push_back(H.mul(H.mul(g, H.basis(i)), g_inv));
    return m;
}

Mat ad_character(const HopfAlgebra& H, const Vec& f, const Vec& f_inv) {
    Mat m = zero_mat(H.dim(), H.dim(), H.order());
    for (int i = 0; i < H.dim(); ++i)
        for (auto& t : H.coproduct(i)) {
            if (f[t.left].is_zero()) continue;
            Scalar c = t.c * f[t.left];
            for (auto& u : H.coproduct(t.right))
                if (!f_inv[u.right].is_zero()) m[i][u.left] += c * u.c * f_inv[u.right];
        }
    return m;
}

bool radford_holds(const HopfAlgebra& H, const Derived& D) {
    Mat ada = ad_left(H, D.a, D.a_inv);
    Vec alpha_inv = H.character_pow(D.alpha, -1);
    Mat adal = ad_character(H, D.alpha, alpha_inv);
    Mat S4 = matmul(D.S2, D.S2);
    return matmul(ada, adal) == S4 && matmul(adal, ada) == S4;
}

bool is_algebra_automorphism(const HopfAlgebra& H, const Mat& f) {
    if (apply_map(H.unit(), f) != H.unit()) return false;
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            Vec l = apply_map(H.mul(H.basis(i), H.basis(j)), f);
            if (l != H.mul(f[i], f[j])) return false;
        }
    return rank(f, H.order()) == H.dim();
}

bool is_bialgebra_automorphism(const HopfAlgebra& H, const Mat& f) {
    if (!is_algebra_automorphism(H, f)) return false;
    if (apply_map(H.counit(), transpose(f)) != H.counit()) return false;
    for (int i = 0; i < H.dim(); ++i) {
        Mat l = H.comul(f[i]);
        Mat r = zero_mat(H.dim(), H.dim(), H.order());
        for (auto& t : H.coproduct(i))
            for (int a = 0; a < H.dim(); ++a) {
                if (f[t.left][a].is_zero()) continue;
                Scalar c = t.c * f[t.left][a];
                for (int b = 0; b < H.dim(); ++b)
                    if (!f[t.right][b].is_zero()) r[a][b] += c * f[t.right][b];
            }
        if (l != r) return false;
    }
    return true;
}

Mat gram_matrix(const HopfAlgebra& H, const Vec& mu) {
    Mat B = zero_mat(H.dim(), H.dim(), H.order());
    for (int j = 0; j < H.dim(); ++j)
        for (int k = 0; k < H.dim(); ++k)
            for (auto& t : H.product(j, k)) B[j][k] += t.c * mu[t.index];
    return B;
}

namespace {

struct BaseData {
    Vec mu_R, e_R, v, alpha;
    int mu_dim = 0, e_dim = 0;
    Mat S, S_inv, S2;
};

BaseData base_data(const HopfAlgebra& H) {
    BaseData b;
    b.mu_R = solve_right_integral(H, &b.mu_dim);
    Vec e = solve_right_cointegral(H, &b.e_dim);
    Scalar n = dot(b.mu_R, e);
    if (n.is_zero()) throw Error("NormalizationImpossible", "μ_R(e_R) = 0");
    b.e_R = scaled(e, n.inverse());
    if (H.vec_parity(b.mu_R) != H.vec_parity(b.e_R))
        throw Error("NonHomogeneousIntegral", "integral and cointegral have different parity");

    // x e = α(x) e
    int piv = 0;
    while (b.e_R[piv].is_zero()) ++piv;
    Scalar inv = b.e_R[piv].inverse();
    b.alpha = zero_vec(H.dim(), H.order());
    for (int x = 0; x < H.dim(); ++x) {
        Vec xe = H.mul(H.basis(x), b.e_R);
        b.alpha[x] = xe[piv] * inv;
        if (xe != scaled(b.e_R, b.alpha[x]))
            throw Error("NotGrouplike", "x e_R is not a multiple of e_R");
    }
    // (μ ⊗ id)Δ(x) = μ(x) v
    int px = 0;
    while (b.mu_R[px].is_zero()) ++px;
    b.v = zero_vec(H.dim(), H.order());
    for (auto& t : H.coproduct(px)) b.v[t.right] += t.c * b.mu_R[t.left];
    b.v = scaled(b.v, b.mu_R[px].inverse());
    for (int x = 0; x < H.dim(); ++x) {
        Vec r = zero_vec(H.dim(), H.order());
        for (auto& t : H.coproduct(x)) r[t.right] += t.c * b.mu_R[t.left];
        if (r != scaled(b.v, b.mu_R[x])) throw Error("NotGrouplike", "(μ_R ⊗ id)Δ is not a multiple of μ_R");
    }
    if (!is_grouplike(H, b.v)) throw Error("NotGrouplike", "modular element is not group-like");
    if (!is_character(H, b.alpha)) throw Error("NotGrouplike", "α is not an algebra map");

    b.S = H.antipode();
    b.S_inv = inverse(b.S, H.order());
    b.S2 = matmul(b.S, b.S);
    return b;
}

Vec family_mu(const HopfAlgebra& H, const Derived& D, int n2) {
    int k = D.conv.mu_sign * (n2 + 1) / 2;
    Vec ak = H.grouplike_pow(D.a, k);
    Vec r = zero_vec(H.dim(), H.order());
    for (int x = 0; x < H.dim(); ++x) {
        Vec p = D.conv.mu_side == 'R' ? H.mul(H.basis(x), ak) : H.mul(ak, H.basis(x));
        r[x] = dot(D.mu_R, p);
    }
    return r;
}

Vec family_e(const HopfAlgebra& H, const Derived& D, int n2) {
    int k = D.conv.e_sign * (n2 + 1) / 2;
    Vec al = H.character_pow(D.alpha, -k);
    Mat de = H.comul(D.e_R);
    Vec r = zero_vec(H.dim(), H.order());
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            if (de[i][j].is_zero()) continue;
            if (D.conv.e_side == 'R')
                r[i] += de[i][j] * al[j];
            else
                r[j] += de[i][j] * al[i];
        }
    return r;
}

void apply_conventions(const HopfAlgebra& H, const BaseData& b, const HopfConventions& conv, Derived& D) {
    D.conv = conv;
    D.mu_R = b.mu_R;
    D.e_R = b.e_R;
    D.v = b.v;
    D.alpha = b.alpha;
    D.S = b.S;
    D.S_inv = b.S_inv;
    D.S2 = b.S2;
    D.right_integral_dim = b.mu_dim;
    D.right_cointegral_dim = b.e_dim;
    D.a = conv.a_inverse ? H.S(b.v) : b.v;
    D.a_inv = H.S(D.a);
    D.q = dot(D.alpha, D.a);
    D.integral_parity = H.vec_parity(D.e_R);
    D.sigma = D.integral_parity ? -1 : 1;
    D.mu_L = family_mu(H, D, 1);
    D.e_L = family_e(H, D, 1);
}

}  // namespace

std::pair<Vec, Vec> integral_family(const HopfAlgebra& H, const Derived& D, int n2) {
    if (n2 % 2 == 0) throw Error("ConventionViolation", "family index 2n must be odd");
    return {family_mu(H, D, n2), family_e(H, D, n2)};
}

bool conventions_consistent(const HopfAlgebra& H, const HopfConventions& conv) {
    BaseData b = base_data(H);
    Derived D;
    apply_conventions(H, b, conv, D);
    if (!radford_holds(H, D)) return false;
    if (!is_left_integral(H, D.mu_L) || !is_left_cointegral(H, D.e_L)) return false;
    if (dot(D.mu_L, D.e_L) != D.q.inverse()) return false;
    auto fam = integral_family(H, D, -1);
    return fam.first == D.mu_R && fam.second == D.e_R;
}

Derived derive_all(const HopfAlgebra& H, const HopfConventions& conv) {
    BaseData b = base_data(H);
    Derived D;
    apply_conventions(H, b, conv, D);
    const int N = H.order();
    auto fail = [](const std::string& kind, const std::string& what) { throw Error(kind, what); };

    if (!is_grouplike(H, D.a)) fail("NotGrouplike", "a is not group-like");
    if (H.mul(D.a, D.a_inv) != H.one()) fail("NotGrouplike", "a S(a) != 1");
    if (!radford_holds(H, D)) fail("ConventionViolation", "Ad_α* ∘ Ad_a != S^4");
    for (int n = -2; n <= 2; ++n)
        for (int k = -2; k <= 2; ++k)
            if (dot(H.character_pow(D.alpha, n), H.grouplike_pow(D.a, k)) != D.q.pow(n * k))
                fail("ConventionViolation", "α^n(a^k) != q^{nk}");
    if (matmul(D.S, D.S_inv) != identity_mat(H.dim(), N) || matmul(D.S_inv, D.S) != identity_mat(H.dim(), N))
        fail("ConventionViolation", "S S' != id");
    // S' is an antipode for the opposite multiplication: x2 S'(x1) = ε(x)1
    for (int x = 0; x < H.dim(); ++x) {
        Vec r = zero_vec(H.dim(), N);
        for (auto& t : H.coproduct(x)) {
            Vec p = H.mul(H.basis(t.right), D.S_inv[t.left]);
            Scalar c = t.c;
            if (H.parity(t.left) && H.parity(t.right)) c = -c;
            r = add(r, scaled(p, c));
        }
        if (r != scaled(H.one(), H.counit()[x])) fail("ConventionViolation", "S' fails the op antipode axiom");
    }

    auto fam = integral_family(H, D, -1);
    if (fam.first != D.mu_R || fam.second != D.e_R) fail("ConventionViolation", "μ_{-1/2}, e_{-1/2} endpoints");
    if (!is_left_integral(H, D.mu_L)) fail("ConventionViolation", "μ_{1/2} is not a left integral");
    if (!is_left_cointegral(H, D.e_L)) fail("ConventionViolation", "e_{1/2} is not a left cointegral");
    if (!dot(D.mu_R, D.e_R).is_one()) fail("ConventionViolation", "μ_R(e_R) != 1");
    if (dot(D.mu_L, D.e_L) != D.q.inverse()) fail("ConventionViolation", "μ_L(e_L) != q^{-1}");

    // S^2 eigenvectors
    for (auto* e : {&D.e_R, &D.e_L})
        if (apply_map(*e, D.S2) != scaled(*e, D.q)) fail("ConventionViolation", "S^2 eigenvalue on a cointegral");
    Mat S2t = transpose(D.S2);
    for (auto* m : {&D.mu_R, &D.mu_L})
        if (apply_map(*m, S2t) != scaled(*m, D.q)) fail("ConventionViolation", "S^2 eigenvalue on an integral");

    Mat ada = ad_left(H, D.a, D.a_inv);
    if (matmul(ada, D.S2) != matmul(D.S2, ada)) fail("ConventionViolation", "Ad_a does not commute with S^2");
    D.T = matmul(ad_left(H, D.a_inv, D.a), D.S2);
    if (!is_bialgebra_automorphism(H, D.T)) fail("TiltNotAutomorphism", "T is not a bialgebra automorphism");
    if (matmul(D.T, D.S2) != matmul(D.S2, D.T)) fail("TiltNotAutomorphism", "T does not commute with S^2");
    Mat Tt = transpose(D.T);
    for (auto* e : {&D.e_R, &D.e_L})
        if (apply_map(*e, D.T) != *e) fail("TiltNotAutomorphism", "T moves a cointegral");
    for (auto* m : {&D.mu_R, &D.mu_L})
        if (apply_map(*m, Tt) != *m) fail("TiltNotAutomorphism", "T moves an integral");

    Mat B = gram_matrix(H, D.mu_R);
    if (rank(B, N) != H.dim()) fail("SingularGramMatrix", "μ_R(b_j b_k) is singular");
    D.N = transpose(matmul(inverse(B, N), transpose(B)));
    if (!is_algebra_automorphism(H, D.N)) fail("ConventionViolation", "Nakayama map is not an automorphism");
    for (int x = 0; x < H.dim(); ++x)
        for (int y = 0; y < H.dim(); ++y)
            if (B[x][y] != dot(D.mu_R, H.mul(H.basis(y), D.N[x])))
                fail("ConventionViolation", "μ_R(xy) != μ_R(y N(x))");

    Mat I = identity_mat(H.dim(), N);
    D.involutory = D.S2 == I;
    D.balanced = D.T == I;
    if (D.involutory && (!D.balanced || !D.q.is_one()))
        fail("ConventionViolation", "involutory algebra that is not balanced with q = 1");
    return D;
}

Scalar graded_trace(const HopfAlgebra& H, const Mat& f) {
    Scalar s(H.order());
    for (int i = 0; i < H.dim(); ++i) {
        if (H.parity(i))
            s -= f[i][i];
        else
            s += f[i][i];
    }
    return s;
}

Scalar trace_S_power(const HopfAlgebra& H, int m) {
    return graded_trace(H, mat_pow(H.antipode(), m));
}

std::shared_ptr<const Derived> derived_for(const HopfAlgebra& H, const HopfConventions& conv) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const Derived>> cache;
    std::string key = H.fingerprint() + "/" + conv.to_string();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto d = std::make_shared<const Derived>(derive_all(H, conv));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, d).first->second;
}

}  // namespace hopfinv
