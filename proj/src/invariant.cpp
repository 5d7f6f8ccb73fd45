#include "hopfinv/invariant.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "hopfinv/algebrazoo.hpp"

namespace hopfinv {

namespace {

GradedTensor vector_tensor(const HopfAlgebra& H, const Vec& v, Variance var) {
    int p = H.vec_parity(v);
    if (p == 2) throw Error("NonHomogeneousIntegral", "integral vector mixes parities");
    GradedTensor t(H.order(), {{H.space(), var}}, p < 0 ? 0 : p);
    for (int i = 0; i < H.dim(); ++i)
        if (!v[i].is_zero()) t.set({i}, v[i]);
    return t;
}

struct Leg {
    int node, axis;
};

}  // namespace

TensorNetwork build_network(const Diagram& d, const HopfAlgebra& H, const Derived& D, bool with_tilt,
                            const std::string& layout) {
    TensorNetwork net;
    const int N = H.order();
    const GradedTensor delta = H.comult_tensor(), mult = H.mult_tensor();

    std::map<int, std::pair<Vec, Vec>> family;
    auto fam = [&](int n2) -> const std::pair<Vec, Vec>& {
        auto it = family.find(n2);
        if (it == family.end()) it = family.emplace(n2, integral_family(H, D, n2)).first;
        return it->second;
    };
    std::map<std::pair<int, int>, GradedTensor> maps;
    auto edge_map = [&](int s, int t) -> const GradedTensor* {
        if (!with_tilt) t = 0;
        if (s == 0 && t == 0) return nullptr;
        auto key = std::make_pair(s, t);
        auto it = maps.find(key);
        if (it == maps.end()) {
            Mat m = mat_pow(D.S, s, &D.S_inv);
            if (t) m = matmul(m, mat_pow(D.T, t));
            it = maps.emplace(key, map_tensor(H.space(), m, N)).first;
        }
        return &it->second;
    };

    std::vector<int> odd_e, odd_mu;
    std::map<int, Leg> leg_of;  // crossing id -> endpoint delivering into the upper side

    for (std::size_t c = 0; c < d.lower.size(); ++c) {
        const auto& circ = d.lower[c];
        int e = net.add_node(vector_tensor(H, fam(circ.theta2).second, Variance::Out), "e" + std::to_string(c));
        if (net.nodes[e].parity()) odd_e.push_back(e);
        const auto& xs = circ.crossings;
        if (xs.empty()) {
            int eps = net.add_node(H.counit_tensor(), "counit");
            net.connect(e, 0, eps, 0);
            continue;
        }
        Leg tail{e, 0};
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
            int dn = net.add_node(delta, "delta");
            net.connect(tail.node, tail.axis, dn, 2);
            leg_of[xs[k]] = {dn, 0};
            tail = {dn, 1};
        }
        leg_of[xs.back()] = tail;
    }

    for (auto& [id, x] : d.crossings) {
        const GradedTensor* m = edge_map(x.s, x.t);
        if (!m) continue;
        int node = net.add_node(*m, "S^" + std::to_string(x.s));
        Leg from = leg_of.at(id);
        net.connect(from.node, from.axis, node, 1);
        leg_of[id] = {node, 0};
    }

    for (std::size_t c = 0; c < d.upper.size(); ++c) {
        const auto& circ = d.upper[c];
        int mu = net.add_node(vector_tensor(H, fam(-circ.theta2).first, Variance::In), "mu" + std::to_string(c));
        if (net.nodes[mu].parity()) odd_mu.push_back(mu);
        const auto& xs = circ.crossings;
        Leg acc;
        if (xs.empty()) {
            acc = {net.add_node(H.unit_tensor(), "unit"), 0};
        } else {
            acc = leg_of.at(xs[0]);
            for (std::size_t k = 1; k < xs.size(); ++k) {
                int mn = net.add_node(mult, "mult");
                net.connect(acc.node, acc.axis, mn, 2);
                Leg y = leg_of.at(xs[k]);
                net.connect(y.node, y.axis, mn, 1);
                acc = {mn, 0};
            }
        }
        net.connect(acc.node, acc.axis, mu, 0);
    }
    const bool upper_first = layout == "upper_first" || layout == "upper_lower_pairs";
    const auto& a = upper_first ? odd_mu : odd_e;
    const auto& b = upper_first ? odd_e : odd_mu;
    if (layout == "lower_first" || layout == "upper_first") {
        net.sign_order = a;
        net.sign_order.insert(net.sign_order.end(), b.begin(), b.end());
    } else {
        for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
            if (i < a.size()) net.sign_order.push_back(a[i]);
            if (i < b.size()) net.sign_order.push_back(b[i]);
        }
    }
    return net;
}

namespace {

InvariantResult run(const Diagram& d, const HopfAlgebra& H, const ConventionRecord& rec, PlanKind plan,
                    bool combed) {
    auto D = derived_for(H, rec.hopf);
    if (combed && !D->balanced) throw Error("NotBalanced", H.name() + " has a nontrivial tilt map");
    if (!combed && !D->balanced && !d.framed)
        throw Error("UnbalancedNeedsFraming", H.name() + " is not balanced and the diagram carries no framing");

    InvariantResult r;
    r.algebra = H.name();
    r.diagram = d.name;
    TensorNetwork net = build_network(d, H, *D, !combed && d.framed, rec.sign_normalization);
    if (net.nodes.empty()) {
        r.value = Scalar::one(H.order());
    } else {
        ContractionPlan p = plan == PlanKind::Naive ? plan_naive(net) : plan_greedy(net, plan == PlanKind::Perturbed ? 7 : 0);
        r.value = evaluate_network(net, p, &r.plan_stats).value();
    }
    if (D->integral_parity) {
        r.sign_order_parity = canonical_sign(d);
        if (r.sign_order_parity < 0) r.value = -r.value;
    }
    return r;
}

}  // namespace

InvariantResult evaluate(const Diagram& d, const HopfAlgebra& H, const ConventionRecord& rec, PlanKind plan) {
    return run(d, H, rec, plan, false);
}

InvariantResult evaluate_combed(const Diagram& d, const HopfAlgebra& H, const ConventionRecord& rec,
                                PlanKind plan) {
    return run(d, H, rec, plan, true);
}

std::string default_record_path() {
    if (const char* p = std::getenv("HOPFINV_CONVENTIONS")) return p;
    const char* dir = std::getenv("HOPFINV_DATA");
    return std::string(dir ? dir : HOPFINV_DATA_DIR) + "/conventions/record.json";
}

const ConventionRecord& default_record() {
    static std::mutex mu;
    static std::map<std::string, ConventionRecord> loaded;
    std::lock_guard<std::mutex> lock(mu);
    std::string path = default_record_path();
    auto it = loaded.find(path);
    if (it == loaded.end()) it = loaded.emplace(path, ConventionRecord::load(path)).first;
    return it->second;
}

InvariantResult evaluate(const Diagram& d, const HopfAlgebra& H) { return evaluate(d, H, default_record()); }

bool CovarianceReport::ok() const {
    for (auto& s : steps)
        if (!s.ok) return false;
    return true;
}

std::string CovarianceReport::to_string() const {
    std::ostringstream os;
    os << "start  " << initial.to_string() << "\n";
    for (auto& s : steps)
        os << (s.ok ? "  ok    " : "  FAIL  ") << s.move << "  " << s.value.to_string()
           << (s.ok ? "" : "  expected " + s.expected.to_string()) << "\n";
    return os.str();
}

CovarianceReport covariance_suite(const HopfAlgebra& H, const Diagram& d0, const std::vector<Move>& script,
                                  const ConventionRecord& rec) {
    auto D = derived_for(H, rec.hopf);
    CovarianceReport rep;
    Diagram d = d0;
    Scalar v = evaluate(d, H, rec).value;
    rep.initial = v;
    for (auto& m : script) {
        d = apply_move(d, m, rec);
        Scalar expected = m.kind == Move::Kind::Spiral ? v * D->q.pow(m.dir) : v;
        Scalar got = evaluate(d, H, rec).value;
        rep.steps.push_back({m.to_string(), got, expected, got == expected});
        v = got;
    }
    return rep;
}

Diagram mirror_diagram(const Diagram& d, const ConventionRecord& rec) {
    Diagram m;
    m.name = d.name.empty() ? "" : "-" + d.name;
    m.genus = d.genus;
    m.framed = d.framed;
    for (auto& c : d.lower) m.upper.push_back({-c.theta2, c.crossings});
    for (auto& c : d.upper) m.lower.push_back({-c.theta2, c.crossings});
    for (auto& [id, x] : d.crossings) m.crossings[id] = {x.s, x.t, x.eps};
    (void)rec;
    return m;
}

DualityReport duality_checks(const HopfAlgebra& H, const Diagram& d, const ConventionRecord& rec) {
    DualityReport r;
    r.value = evaluate(d, H, rec).value;
    r.dual_value = evaluate(d, dual(H), rec).value;
    r.mirror_op_value = evaluate(mirror_diagram(d, rec), op_variant(H), rec).value;
    r.dual_ok = r.dual_value == r.value;
    r.mirror_ok = r.mirror_op_value == r.value;
    return r;
}

}  // namespace hopfinv
