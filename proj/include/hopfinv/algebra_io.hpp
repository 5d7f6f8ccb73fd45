#pragma once

#include <string>

#include "hopfinv/hopfcore.hpp"

namespace hopfinv {

// {name, dim, cyclotomic_order, parity, mult: [[i,j,k,c]], comult: [[i,j,k,c]],
//  unit: [[i,c]], counit: [[i,c]], antipode: [[i,k,c]]}
std::string algebra_to_json(const HopfAlgebra& H);
HopfAlgebra algebra_from_json(const std::string& text);  // ParseError

// With verify set the axioms are checked and a failing file raises
// AxiomFailure carrying the report.
HopfAlgebra load_algebra(const std::string& path, bool verify = true);
void save_algebra(const HopfAlgebra& H, const std::string& path);

}  // namespace hopfinv
