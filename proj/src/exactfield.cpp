#include "hopfinv/exactfield.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace hopfinv {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// returns (quotient, remainder) of a / b, b nonzero and trimmed
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (a[k] == 0) continue;
        Rational f = a[k] / lead;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        if (k == 0) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

struct CycloTable {
    std::mutex mu;
    std::map<int, std::shared_ptr<const std::vector<Integer>>> polys;
};

CycloTable& table() {
    static CycloTable t;
    return t;
}

std::shared_ptr<const std::vector<Integer>> phi_poly(int n) {
    thread_local int last_n = 0;
    thread_local std::shared_ptr<const std::vector<Integer>> last;
    if (n == last_n && last) return last;
    auto& t = table();
    std::shared_ptr<const std::vector<Integer>> p;
    {
        std::lock_guard<std::mutex> lock(t.mu);
        auto it = t.polys.find(n);
        if (it != t.polys.end()) p = it->second;
    }
    if (!p) {
        // x^n - 1 divided by Phi_d for every proper divisor d
        Poly num(n + 1, Rational(0));
        num[0] = -1;
        num[n] = 1;
        for (int d = 1; d < n; ++d) {
            if (n % d) continue;
            auto sub_poly = phi_poly(d);
            Poly den(sub_poly->begin(), sub_poly->end());
            num = divmod(num, den).first;
        }
        auto ip = std::make_shared<std::vector<Integer>>();
        for (auto& c : num) ip->push_back(Integer(c.get_num()));
        std::lock_guard<std::mutex> lock(t.mu);
        p = t.polys.emplace(n, ip).first->second;
    }
    last_n = n;
    last = p;
    return p;
}

// Reduce a coefficient vector of arbitrary length modulo monic Phi_n.
void reduce(Poly& r, int n, std::size_t deg) {
    if (r.size() <= deg) {
        r.resize(deg, Rational(0));
        return;
    }
    auto phi = phi_poly(n);
    for (std::size_t k = r.size(); k-- > deg;) {
        if (r[k] == 0) continue;
        Rational f = r[k];
        std::size_t shift = k - deg;
        for (std::size_t i = 0; i <= deg; ++i)
            if ((*phi)[i] != 0) r[shift + i] -= f * (*phi)[i];
    }
    r.resize(deg);
}

}  // namespace

int euler_phi(int n) {
    if (n < 1) throw Error("InvalidOrder", "cyclotomic order must be positive");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<Integer> cyclotomic_polynomial(int n) {
    if (n < 1) throw Error("InvalidOrder", "cyclotomic order must be positive");
    return *phi_poly(n);
}

Scalar::Scalar(int order) : n_(order), c_(euler_phi(order), Rational(0)) {}

Scalar::Scalar(int order, const Rational& r) : Scalar(order) { c_[0] = r; }

Scalar::Scalar(int order, std::vector<Rational> coeffs) : n_(order), c_(std::move(coeffs)) {
    reduce(c_, n_, euler_phi(n_));
}

Scalar Scalar::zeta(int order, long k) {
    long m = ((k % order) + order) % order;
    Poly p(m + 1, Rational(0));
    p[m] = 1;
    return Scalar(order, std::move(p));
}

bool Scalar::is_zero() const {
    for (auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool Scalar::is_one() const { return is_rational() && c_[0] == 1; }

bool Scalar::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Scalar::rational_value() const {
    if (!is_rational()) throw Error("NotRational", "scalar " + to_string() + " is not rational");
    return c_[0];
}

void Scalar::check_same(const Scalar& o) const {
    if (n_ != o.n_)
        throw Error("OrderMismatch", "cyclotomic orders " + std::to_string(n_) + " and " +
                                         std::to_string(o.n_) + " do not mix");
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    if (c_.size() == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    if (o.is_rational()) {
        for (auto& c : c_) c *= o.c_[0];
        return *this;
    }
    if (is_rational()) {
        Rational f = c_[0];
        c_ = o.c_;
        for (auto& c : c_) c *= f;
        return *this;
    }
    std::size_t deg = c_.size();
    Poly r(2 * deg - 1, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < deg; ++j)
            if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
    }
    reduce(r, n_, deg);
    c_ = std::move(r);
    return *this;
}

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
    check_same(b);
    if (c_.size() == 1) {
        b.check_same(c);
        c_[0] += b.c_[0] * c.c_[0];
        return;
    }
    *this += b * c;
}

bool operator==(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    return a.c_ == b.c_;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    if (is_rational()) return Scalar(n_, Rational(1) / c_[0]);
    // extended Euclid: find u with u*a + v*phi = 1
    auto ip = phi_poly(n_);
    Poly phi(ip->begin(), ip->end());
    Poly a = c_;
    trim(a);
    Poly r0 = phi, r1 = a;
    Poly s0, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) throw Error("DivisionByZero", "non-invertible residue");
    }
    for (auto& c : s1) c /= r1[0];
    Scalar out(n_, std::move(s1));
    return out;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one(n_), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Scalar Scalar::embed(int order) const {
    if (order == n_) return *this;
    if (order % n_)
        throw Error("OrderMismatch", "cannot embed order " + std::to_string(n_) + " into " +
                                         std::to_string(order));
    int step = order / n_;
    Scalar z = zeta(order, step), acc = one(order), out(order);
    for (auto& c : c_) {
        if (c != 0) out += Scalar(order, c) * acc;
        acc *= z;
    }
    return out;
}

std::string Scalar::to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += c_[i].get_str();
    }
    return s;
}

Scalar Scalar::parse(const std::string& text, int order) {
    std::vector<Rational> cs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty coefficient in scalar '" + text + "'");
        item = item.substr(b, e - b + 1);
        if (item[0] == '+') item = item.substr(1);
        Rational r;
        if (r.set_str(item, 10) != 0) throw ParseError("bad rational '" + item + "'");
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + item + "'");
        r.canonicalize();
        cs.push_back(r);
    }
    if (cs.empty()) throw ParseError("empty scalar");
    std::size_t deg = euler_phi(order);
    if (cs.size() != 1 && cs.size() != deg)
        throw ParseError("scalar '" + text + "' has " + std::to_string(cs.size()) +
                         " coefficients, expected 1 or " + std::to_string(deg));
    return Scalar(order, std::move(cs));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace hopfinv
