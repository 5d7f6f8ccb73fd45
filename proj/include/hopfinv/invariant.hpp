#pragma once

#include <string>
#include <vector>

#include "hopfinv/gradedtensor.hpp"
#include "hopfinv/heegaard.hpp"
#include "hopfinv/hopfcore.hpp"

namespace hopfinv {

// Naive contracts edges in creation order; Perturbed is the greedy plan with
// jittered costs.
enum class PlanKind { Greedy, Naive, Perturbed };

struct InvariantResult {
    Scalar value;
    std::string algebra, diagram;
    int sign_order_parity = 1;  // factor applied for the odd integral nodes
    PlanStats plan_stats;
};

// The network: lower circle -> cointegral through a chain of coproducts, one
// leg per crossing; crossing -> S^s T^t; upper circle -> product chain closed
// by an integral. Odd integral nodes are laid out as the record says.
TensorNetwork build_network(const Diagram& d, const HopfAlgebra& H, const Derived& D, bool with_tilt,
                            const std::string& layout = "upper_lower_pairs");

InvariantResult evaluate(const Diagram& d, const HopfAlgebra& H, const ConventionRecord& rec,
                         PlanKind plan = PlanKind::Greedy);
// Tilt factors suppressed; needs T = id (NotBalanced).
InvariantResult evaluate_combed(const Diagram& d, const HopfAlgebra& H, const ConventionRecord& rec,
                                PlanKind plan = PlanKind::Greedy);

// Record checked in under conventions/record.json, or $HOPFINV_CONVENTIONS.
// Throws ConventionUnpinned when absent.
std::string default_record_path();
const ConventionRecord& default_record();
InvariantResult evaluate(const Diagram& d, const HopfAlgebra& H);

struct CovarianceStep {
    std::string move;
    Scalar value, expected;
    bool ok = false;
};
struct CovarianceReport {
    Scalar initial;
    std::vector<CovarianceStep> steps;
    bool ok() const;
    std::string to_string() const;
};
// Spirals must scale by q^{±1}; every other move must fix the value.
CovarianceReport covariance_suite(const HopfAlgebra& H, const Diagram& d, const std::vector<Move>& script,
                                  const ConventionRecord& rec);

struct DualityReport {
    Scalar value, dual_value, mirror_op_value;
    bool dual_ok = false, mirror_ok = false;
    bool ok() const { return dual_ok && mirror_ok; }
};
// Diagram of the same manifold with reversed orientation: the two
// handlebodies trade places.
Diagram mirror_diagram(const Diagram& d, const ConventionRecord& rec);
DualityReport duality_checks(const HopfAlgebra& H, const Diagram& d, const ConventionRecord& rec);

}  // namespace hopfinv
