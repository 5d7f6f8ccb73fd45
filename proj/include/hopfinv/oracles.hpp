#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "hopfinv/algebrazoo.hpp"
#include "hopfinv/heegaard.hpp"

namespace hopfinv {

// Letters are 1-based generator indices, negative for inverses.
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;
    std::string to_string() const;  // "<x0,x1 | x0^2, x1 x0^-1>"
};

// One generator per lower circle, one relator per upper circle.
GroupPresentation pi1_presentation(const Diagram& d);

// Exhaustive; throws TooLarge when |G|^generators > 10^7.
long hom_count(const GroupPresentation& p, const GroupTable& G);

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SmithForm {
    IntMatrix U, D, V;  // U A V = D
};
SmithForm smith_normal_form(const IntMatrix& A);
// U, V unimodular, D diagonal with d_i | d_{i+1}, U A V = D
bool smith_form_valid(const IntMatrix& A, const SmithForm& f);

// |H_1(M)|, 0 when infinite.
mpz_class h1_order(const Diagram& d);

struct CrossCheck {
    std::string what;
    std::string value, oracle;
    bool ok = false;
};
struct CrossReport {
    std::vector<CrossCheck> checks;
    bool ok() const;
    std::string to_string() const;
};
CrossReport cross_validate(const Diagram& d, const std::vector<GroupTable>& groups, bool exterior,
                           const ConventionRecord& rec);

}  // namespace hopfinv
