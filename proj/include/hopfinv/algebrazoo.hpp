#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopfinv/hopfcore.hpp"

namespace hopfinv {

struct GroupTable {
    std::string name;
    int n = 0;
    std::vector<std::vector<int>> mul;  // mul[a][b] = index of ab
    std::vector<int> inv;
    int identity = 0;

    // Checks the group axioms and fills inv/identity. Throws NotAGroup.
    static GroupTable from_table(std::string name, std::vector<std::vector<int>> mul);
    int power(int g, long k) const;
};

GroupTable cyclic_group(int n);
GroupTable symmetric_group3();
GroupTable dihedral_group(int n);  // order 2n
GroupTable direct_product(const GroupTable& a, const GroupTable& b);
// "Z5", "S3", "D4", "Z2xZ2", ...
GroupTable group_by_name(const std::string& name);

HopfAlgebra group_algebra(const GroupTable& G);
HopfAlgebra dual_group_algebra(const GroupTable& G);
HopfAlgebra exterior_algebra(int n);
HopfAlgebra taft_like(std::string name, const Scalar& w0, int n, int r, std::function<int(int, int)> idx);
HopfAlgebra sweedler();
HopfAlgebra uq_borel_sl2(int r);

HopfAlgebra tensor_product(const HopfAlgebra& a, const HopfAlgebra& b);
HopfAlgebra op_variant(const HopfAlgebra& h);
HopfAlgebra cop_variant(const HopfAlgebra& h);
HopfAlgebra dual(const HopfAlgebra& h);
// Same structure constants viewed over Q(ζ_order); order must be a multiple.
HopfAlgebra embed_algebra(const HopfAlgebra& h, int order);

// "sweedler", "group:S3", "dualgroup:Z3", "exterior:2", "uq_sl2:3",
// "dual:<spec>", "op:<spec>", "cop:<spec>", "tensor:<spec>,<spec>" (nesting
// with parentheses is not supported). Throws UnknownName.
HopfAlgebra zoo_algebra(const std::string& spec);

}  // namespace hopfinv
