#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "hopfinv/errors.hpp"

namespace hopfinv {

using Integer = mpz_class;
using Rational = mpq_class;

int euler_phi(int n);

// Phi_N as integer coefficients, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int n);

// Element of Q(zeta_N) stored as the reduced residue modulo Phi_N.
// N = 1 is plain Q.
class Scalar {
public:
    Scalar() : Scalar(1) {}
    explicit Scalar(int order);  // zero
    Scalar(int order, const Rational& r);
    Scalar(int order, long r) : Scalar(order, Rational(r)) {}
    Scalar(int order, std::vector<Rational> coeffs);

    static Scalar zero(int order) { return Scalar(order); }
    static Scalar one(int order) { return Scalar(order, 1L); }
    static Scalar zeta(int order, long k = 1);

    int order() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // Set when every coefficient but the constant one vanishes.
    bool is_rational() const;
    Rational rational_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // a += b * c without a temporary on the rational fast path
    void add_mul(const Scalar& b, const Scalar& c);

    Scalar inverse() const;
    Scalar pow(long e) const;

    // Explicit embedding Q(zeta_N) -> Q(zeta_M) for N | M.
    Scalar embed(int order) const;

    // Canonical form: "p/q" for rationals, "c0,c1,..." otherwise.
    std::string to_string() const;
    static Scalar parse(const std::string& text, int order);

private:
    void check_same(const Scalar& o) const;
    int n_;
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace hopfinv
