#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfinv/gradedtensor.hpp"
#include "hopfinv/linalg.hpp"

namespace hopfinv {

struct Term {
    int index;
    Scalar c;
};
struct Term2 {
    int left, right;
    Scalar c;
};

// Finite-dimensional Hopf (super)algebra by structure constants in a fixed
// basis b_0..b_{d-1}. Structure maps are kept as sparse images of basis
// elements (basis products for M).
class HopfAlgebra {
public:
    HopfAlgebra(std::string name, int order, std::vector<std::uint8_t> parity);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    int order() const { return order_; }
    int dim() const { return space_->dim(); }
    const SpacePtr& space() const { return space_; }
    int parity(int i) const { return space_->parity[i]; }

    // b_i b_j
    const std::vector<Term>& product(int i, int j) const { return mult_[i * dim() + j]; }
    const std::vector<Term2>& coproduct(int i) const { return comult_[i]; }
    const Vec& unit() const { return unit_; }
    const Vec& counit() const { return counit_; }
    const Mat& antipode() const { return S_; }

    void add_mult(int i, int j, int k, const Scalar& c);
    void add_comult(int i, int j, int k, const Scalar& c);
    void set_unit(int i, const Scalar& c) { unit_.at(i) = c; }
    void set_counit(int i, const Scalar& c) { counit_.at(i) = c; }
    void set_antipode(int i, int k, const Scalar& c) { S_.at(i).at(k) = c; }
    void finalize();  // drops zero terms, merges duplicates

    Vec mul(const Vec& x, const Vec& y) const;
    // Δ(x) as a d x d coefficient matrix
    Mat comul(const Vec& x) const;
    Vec S(const Vec& x) const { return apply_map(x, S_); }
    Scalar eps(const Vec& x) const { return dot(x, counit_); }
    Vec one() const { return unit_; }
    Vec basis(int i) const { return basis_vec(dim(), i, order_); }
    int vec_parity(const Vec& x) const;  // -1 if zero, 2 if mixed

    // power of an invertible element, negative powers through S for grouplikes
    Vec grouplike_pow(const Vec& g, int k) const;
    // convolution power of an algebra map H -> field; negative via f o S
    Vec character_pow(const Vec& f, int k) const;

    // Tensors for networks. M has axes (out, in2, in1), Δ (out1, out2, in).
    GradedTensor mult_tensor() const;
    GradedTensor comult_tensor() const;
    GradedTensor unit_tensor() const;
    GradedTensor counit_tensor() const;

    std::string fingerprint() const;
    bool operator==(const HopfAlgebra& o) const;

private:
    std::string name_;
    int order_;
    SpacePtr space_;
    std::vector<std::vector<Term>> mult_;
    std::vector<std::vector<Term2>> comult_;
    Vec unit_, counit_;
    Mat S_;
};

struct AxiomCheck {
    std::string name;
    bool ok;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool ok() const;
    std::string to_string() const;
};

AxiomReport verify_axioms(const HopfAlgebra& H);

// Calibratable choices for the integral families and the phase element.
struct HopfConventions {
    bool a_inverse = true;  // a = S(v) where (μ_R ⊗ id)Δ(x) = μ_R(x) v
    char mu_side = 'L';     // μ_n(x) = μ_R(a^k x) for 'L', μ_R(x a^k) for 'R'
    int mu_sign = -1;       // k = mu_sign * (n + 1/2)
    char e_side = 'R';      // e_n = e_(1) α^{-k}(e_(2)) for 'R', α^{-k}(e_(1)) e_(2) for 'L'
    int e_sign = -1;        // k = e_sign * (n + 1/2)
    bool operator==(const HopfConventions&) const = default;
    std::string to_string() const;
};

struct Derived {
    Vec mu_R, e_R, mu_L, e_L;
    Vec v;       // modular element before the a-convention is applied
    Vec a;       // phase element
    Vec a_inv;
    Vec alpha;   // dual phase element
    Scalar q;
    int sigma = 1;
    int integral_parity = 0;
    int right_integral_dim = 0, right_cointegral_dim = 0;
    Mat S, S_inv, S2, T, N;
    bool balanced = false, involutory = false;
    HopfConventions conv;
};

Vec solve_right_integral(const HopfAlgebra& H, int* solution_dim = nullptr);
Vec solve_right_cointegral(const HopfAlgebra& H, int* solution_dim = nullptr);

// Derives everything and asserts each defining identity; throws on the
// first one that fails.
Derived derive_all(const HopfAlgebra& H, const HopfConventions& conv = {});

// (μ_n, e_n) for n = n2 / 2, n2 odd.
std::pair<Vec, Vec> integral_family(const HopfAlgebra& H, const Derived& D, int n2);

Scalar trace_S_power(const HopfAlgebra& H, int m);
Scalar graded_trace(const HopfAlgebra& H, const Mat& f);

// Individual identity checks used by derive_all and the acceptance suite.
bool is_left_integral(const HopfAlgebra& H, const Vec& mu);
bool is_right_integral(const HopfAlgebra& H, const Vec& mu);
bool is_left_cointegral(const HopfAlgebra& H, const Vec& e);
bool is_right_cointegral(const HopfAlgebra& H, const Vec& e);
bool is_grouplike(const HopfAlgebra& H, const Vec& g);
bool is_character(const HopfAlgebra& H, const Vec& f);
Mat ad_left(const HopfAlgebra& H, const Vec& g, const Vec& g_inv);  // x -> g x g^{-1}
Mat ad_character(const HopfAlgebra& H, const Vec& f, const Vec& f_inv);  // f(x1) x2 f^{-1}(x3)
bool radford_holds(const HopfAlgebra& H, const Derived& D);
bool is_bialgebra_automorphism(const HopfAlgebra& H, const Mat& f);
bool is_algebra_automorphism(const HopfAlgebra& H, const Mat& f);
Mat gram_matrix(const HopfAlgebra& H, const Vec& mu);

// Checks of the hopf part of a convention: endpoint identities of the
// families and μ_L(e_L) = q^{-1}. Returns false instead of throwing.
bool conventions_consistent(const HopfAlgebra& H, const HopfConventions& conv);

// Cached derivation keyed by algebra content.
std::shared_ptr<const Derived> derived_for(const HopfAlgebra& H, const HopfConventions& conv);

}  // namespace hopfinv
