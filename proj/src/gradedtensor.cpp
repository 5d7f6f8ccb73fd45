#include "hopfinv/gradedtensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace hopfinv {

namespace {
thread_local std::size_t current_limit = GradedTensor::kMaxEntries;
}

std::size_t GradedTensor::entry_limit() { return current_limit; }

EntryLimit::EntryLimit(std::size_t limit) : prev_(current_limit) { current_limit = std::min(limit, prev_); }
EntryLimit::~EntryLimit() { current_limit = prev_; }

long GradedSpace::graded_dim() const {
    long s = 0;
    for (auto p : parity) s += p ? -1 : 1;
    return s;
}

bool GradedSpace::ungraded() const {
    return std::all_of(parity.begin(), parity.end(), [](auto p) { return p == 0; });
}

SpacePtr GradedSpace::make(std::vector<std::uint8_t> parity) {
    auto s = std::make_shared<GradedSpace>();
    s->parity = std::move(parity);
    return s;
}

SpacePtr GradedSpace::even(int dim) { return make(std::vector<std::uint8_t>(dim, 0)); }

GradedTensor::GradedTensor(int order, std::vector<Axis> axes, int parity)
    : order_(order), axes_(std::move(axes)), parity_(parity & 1) {
    stride_.resize(axes_.size());
    Key s = 1;
    for (std::size_t i = axes_.size(); i-- > 0;) {
        stride_[i] = s;
        Key d = static_cast<Key>(axes_[i].space->dim());
        if (d && s > std::numeric_limits<Key>::max() / d)
            throw Error("TensorTooLarge", "index space exceeds 128-bit keys");
        s *= d;
    }
}

GradedTensor::Key GradedTensor::encode(const std::vector<int>& idx) const {
    if (idx.size() != axes_.size()) throw Error("AxisOutOfRange", "index rank mismatch");
    Key k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= axes_[i].space->dim())
            throw Error("AxisOutOfRange", "index out of range");
        k += stride_[i] * static_cast<Key>(idx[i]);
    }
    return k;
}

void GradedTensor::decode(Key k, std::vector<int>& idx) const {
    idx.resize(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        idx[i] = static_cast<int>(k / stride_[i]);
        k %= stride_[i];
    }
}

int GradedTensor::index_parity(const std::vector<int>& idx) const {
    int p = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) p ^= axes_[i].space->parity[idx[i]];
    return p;
}

Scalar GradedTensor::get(const std::vector<int>& idx) const {
    auto it = entries_.find(encode(idx));
    return it == entries_.end() ? Scalar::zero(order_) : it->second;
}

void GradedTensor::set(const std::vector<int>& idx, const Scalar& v) {
    Key k = encode(idx);
    if (v.is_zero()) {
        entries_.erase(k);
        return;
    }
    if (index_parity(idx) != parity_)
        throw Error("NonHomogeneous", "entry parity differs from tensor parity");
    entries_[k] = v;
}

void GradedTensor::add(const std::vector<int>& idx, const Scalar& v) {
    if (v.is_zero()) return;
    if (index_parity(idx) != parity_)
        throw Error("NonHomogeneous", "entry parity differs from tensor parity");
    add_key(encode(idx), v);
}

void GradedTensor::add_key(Key k, const Scalar& v) {
    auto it = entries_.find(k);
    if (it == entries_.end()) {
        if (entries_.size() >= current_limit)
            throw Error("TensorTooLarge", "intermediate tensor passed " + std::to_string(current_limit) + " entries");
        entries_.emplace(k, v);
    } else
        it->second += v;
}

void GradedTensor::prune() {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second.is_zero())
            it = entries_.erase(it);
        else
            ++it;
    }
}

Scalar GradedTensor::value() const {
    if (!axes_.empty()) throw Error("AxisOutOfRange", "value() on a tensor with free axes");
    auto it = entries_.find(0);
    return it == entries_.end() ? Scalar::zero(order_) : it->second;
}

void GradedTensor::scale(const Scalar& s) {
    for (auto& [k, v] : entries_) v *= s;
    prune();
}

bool operator==(const GradedTensor& a, const GradedTensor& b) {
    if (a.axes_.size() != b.axes_.size() || a.order_ != b.order_) return false;
    for (std::size_t i = 0; i < a.axes_.size(); ++i)
        if (!(*a.axes_[i].space == *b.axes_[i].space) ||
            a.axes_[i].variance != b.axes_[i].variance)
            return false;
    if (a.entries_.size() != b.entries_.size()) return false;
    if (!a.entries_.empty() && a.parity_ != b.parity_) return false;
    for (auto& [k, v] : a.entries_) {
        auto it = b.entries_.find(k);
        if (it == b.entries_.end() || !(it->second == v)) return false;
    }
    return true;
}

GradedTensor transpose_adjacent(const GradedTensor& t, int axis) {
    if (axis < 0 || axis + 1 >= t.rank()) throw Error("AxisOutOfRange", "transpose axis");
    auto axes = t.axes();
    std::swap(axes[axis], axes[axis + 1]);
    GradedTensor r(t.order(), axes, t.parity());
    std::vector<int> idx;
    for (auto& [k, v] : t.entries()) {
        t.decode(k, idx);
        bool neg = t.axes()[axis].space->parity[idx[axis]] &&
                   t.axes()[axis + 1].space->parity[idx[axis + 1]];
        std::swap(idx[axis], idx[axis + 1]);
        r.add_key(r.encode(idx), neg ? -v : v);
    }
    return r;
}

namespace {

void check_dual(const Axis& a, const Axis& b) {
    if (!(*a.space == *b.space)) throw Error("SpaceMismatch", "paired axes carry different spaces");
    if (a.variance == b.variance)
        throw Error("VarianceMismatch", "paired axes must be one In and one Out");
}

void check_order(const GradedTensor& a, const GradedTensor& b) {
    if (a.order() != b.order())
        throw Error("OrderMismatch", "tensors over different cyclotomic fields");
}

}  // namespace

GradedTensor contract_axes(const GradedTensor& a, int x, const GradedTensor& b, int y) {
    if (x < 0 || x >= a.rank() || y < 0 || y >= b.rank())
        throw Error("AxisOutOfRange", "contraction axis");
    check_dual(a.axes()[x], b.axes()[y]);
    check_order(a, b);
    std::vector<Axis> axes;
    for (int i = 0; i < a.rank(); ++i)
        if (i != x) axes.push_back(a.axes()[i]);
    for (int i = 0; i < b.rank(); ++i)
        if (i != y) axes.push_back(b.axes()[i]);
    GradedTensor r(a.order(), axes, a.parity() ^ b.parity());
    const auto& par = a.axes()[x].space->parity;
    bool pair_sign = a.axes()[x].variance == Variance::Out;  // V (x) V* pairing

    // bucket b's entries by the contracted index, keeping the sign of moving
    // axis y to the front and the key of the remaining indices
    struct Part {
        GradedTensor::Key rest;
        const Scalar* v;
        bool neg;
    };
    std::unordered_map<int, std::vector<Part>> bucket;
    std::vector<int> idx;
    const int arank = a.rank() - 1;
    std::vector<GradedTensor::Key> bstride(b.rank(), 0);
    {
        // strides of b's remaining axes inside the result key
        GradedTensor::Key s = 1;
        for (int i = b.rank(); i-- > 0;) {
            if (i == y) continue;
            bstride[i] = s;
            s *= b.axes()[i].space->dim();
        }
    }
    GradedTensor::Key bblock = 1;
    for (int i = 0; i < b.rank(); ++i)
        if (i != y) bblock *= b.axes()[i].space->dim();
    for (auto& [k, v] : b.entries()) {
        b.decode(k, idx);
        int before = 0;
        for (int i = 0; i < y; ++i) before ^= b.axes()[i].space->parity[idx[i]];
        GradedTensor::Key rest = 0;
        for (int i = 0; i < b.rank(); ++i)
            if (i != y) rest += bstride[i] * idx[i];
        bool neg = par[idx[y]] && before;
        bucket[idx[y]].push_back({rest, &v, neg});
    }
    std::vector<GradedTensor::Key> astride(a.rank(), 0);
    {
        GradedTensor::Key s = bblock;
        for (int i = a.rank(); i-- > 0;) {
            if (i == x) continue;
            astride[i] = s;
            s *= a.axes()[i].space->dim();
        }
    }
    (void)arank;
    for (auto& [k, v] : a.entries()) {
        a.decode(k, idx);
        auto it = bucket.find(idx[x]);
        if (it == bucket.end()) continue;
        int after = 0;
        for (int i = x + 1; i < a.rank(); ++i) after ^= a.axes()[i].space->parity[idx[i]];
        bool p = par[idx[x]];
        bool neg = (p && after) ^ (pair_sign && p);
        GradedTensor::Key head = 0;
        for (int i = 0; i < a.rank(); ++i)
            if (i != x) head += astride[i] * idx[i];
        for (auto& part : it->second) {
            Scalar prod = v * *part.v;
            if (neg ^ part.neg) prod = -prod;
            r.add_key(head + part.rest, prod);
        }
    }
    r.prune();
    return r;
}

GradedTensor contract_edge(const GradedTensor& a, int out_axis, const GradedTensor& b, int in_axis) {
    if (out_axis < 0 || out_axis >= a.rank() || in_axis < 0 || in_axis >= b.rank())
        throw Error("AxisOutOfRange", "contraction axis");
    if (a.axes()[out_axis].variance != Variance::Out || b.axes()[in_axis].variance != Variance::In)
        throw Error("VarianceMismatch", "contract_edge expects an Out axis and an In axis");
    return contract_axes(a, out_axis, b, in_axis);
}

GradedTensor self_contract(const GradedTensor& t, int x, int y) {
    if (x == y || x < 0 || y < 0 || x >= t.rank() || y >= t.rank())
        throw Error("AxisOutOfRange", "trace axes");
    if (x > y) std::swap(x, y);
    check_dual(t.axes()[x], t.axes()[y]);
    std::vector<Axis> axes;
    for (int i = 0; i < t.rank(); ++i)
        if (i != x && i != y) axes.push_back(t.axes()[i]);
    GradedTensor r(t.order(), axes, t.parity());
    bool pair_sign = t.axes()[x].variance == Variance::Out;
    const auto& par = t.axes()[x].space->parity;
    std::vector<int> idx, rest;
    for (auto& [k, v] : t.entries()) {
        t.decode(k, idx);
        if (idx[x] != idx[y]) continue;
        int between = 0;
        for (int i = x + 1; i < y; ++i) between ^= t.axes()[i].space->parity[idx[i]];
        bool p = par[idx[x]];
        bool neg = (p && between) ^ (pair_sign && p);
        rest.clear();
        for (int i = 0; i < t.rank(); ++i)
            if (i != x && i != y) rest.push_back(idx[i]);
        r.add_key(r.encode(rest), neg ? -v : v);
    }
    r.prune();
    return r;
}

GradedTensor outer(const GradedTensor& a, const GradedTensor& b) {
    check_order(a, b);
    auto axes = a.axes();
    axes.insert(axes.end(), b.axes().begin(), b.axes().end());
    GradedTensor r(a.order(), axes, a.parity() ^ b.parity());
    GradedTensor::Key block = 1;
    for (auto& ax : b.axes()) block *= ax.space->dim();
    for (auto& [ka, va] : a.entries())
        for (auto& [kb, vb] : b.entries()) r.add_key(ka * block + kb, va * vb);
    r.prune();
    return r;
}

GradedTensor map_tensor(const SpacePtr& space, const std::vector<std::vector<Scalar>>& m, int order) {
    GradedTensor t(order, {{space, Variance::Out}, {space, Variance::In}}, 0);
    for (int i = 0; i < space->dim(); ++i)
        for (int k = 0; k < space->dim(); ++k)
            if (!m[i][k].is_zero()) t.set({k, i}, m[i][k]);
    return t;
}

int TensorNetwork::add_node(GradedTensor t, std::string label) {
    nodes.push_back(std::move(t));
    labels.push_back(std::move(label));
    return static_cast<int>(nodes.size()) - 1;
}

void TensorNetwork::connect(int from_node, int from_axis, int to_node, int to_axis) {
    const auto& fa = nodes.at(from_node).axes().at(from_axis);
    const auto& ta = nodes.at(to_node).axes().at(to_axis);
    if (fa.variance != Variance::Out || ta.variance != Variance::In)
        throw Error("VarianceMismatch", "edges run from an Out axis to an In axis");
    if (!(*fa.space == *ta.space)) throw Error("SpaceMismatch", "edge joins different spaces");
    edges.push_back({{from_node, from_axis}, {to_node, to_axis}});
}

ContractionPlan plan_naive(const TensorNetwork& net) {
    ContractionPlan p;
    p.steps.resize(net.edges.size());
    std::iota(p.steps.begin(), p.steps.end(), 0);
    return p;
}

ContractionPlan plan_greedy(const TensorNetwork& net, unsigned seed) {
    // Estimated log2 nnz per group; a contraction over an index of dimension d
    // is costed as the sparse join size nnz(A) nnz(B) / d, capped by the dense
    // size of the open axes. Parallel edges between the merged groups are
    // closed right after the merge.
    const int n = static_cast<int>(net.nodes.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<double> lognnz(n, 0.0), logdense(n, 0.0);
    for (int i = 0; i < n; ++i) {
        lognnz[i] = std::log2(std::max<double>(1.0, double(net.nodes[i].nnz())));
        for (auto& ax : net.nodes[i].axes()) logdense[i] += std::log2(double(ax.space->dim()));
    }
    auto logdim = [&](const TensorNetwork::Edge& ed) {
        return std::log2(double(net.nodes[ed.from.node].axes()[ed.from.axis].space->dim()));
    };
    std::vector<char> done(net.edges.size(), 0);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, seed ? 3.0 : 0.0);
    ContractionPlan plan;
    auto close_loops = [&](int g) {
        for (std::size_t f = 0; f < net.edges.size(); ++f) {
            if (done[f]) continue;
            if (find(net.edges[f].from.node) == g && find(net.edges[f].to.node) == g) {
                done[f] = 1;
                plan.steps.push_back(static_cast<int>(f));
                double d = logdim(net.edges[f]);
                logdense[g] -= 2 * d;
                lognnz[g] = std::min(std::max(lognnz[g] - d, 0.0), logdense[g]);
            }
        }
    };
    for (int i = 0; i < n; ++i) close_loops(i);
    while (plan.steps.size() < net.edges.size()) {
        int best = -1;
        double best_cost = 0, best_nnz = 0, best_dense = 0;
        for (std::size_t e = 0; e < net.edges.size(); ++e) {
            if (done[e]) continue;
            const auto& ed = net.edges[e];
            int g1 = find(ed.from.node), g2 = find(ed.to.node);
            double nnz = lognnz[g1] + lognnz[g2], dense = logdense[g1] + logdense[g2];
            for (std::size_t f = 0; f < net.edges.size(); ++f) {
                if (done[f]) continue;
                int h1 = find(net.edges[f].from.node), h2 = find(net.edges[f].to.node);
                if ((h1 == g1 && h2 == g2) || (h1 == g2 && h2 == g1)) {
                    nnz -= logdim(net.edges[f]);
                    dense -= 2 * logdim(net.edges[f]);
                }
            }
            nnz = std::min(std::max(nnz, 0.0), dense);
            // wide keys are a hard limit, everything else is a size estimate
            double cost = nnz + (dense > 62 ? 1e3 * (dense - 62) : 0.0) + (seed ? jitter(rng) : 0.0);
            if (best < 0 || cost < best_cost - 1e-9) {
                best = static_cast<int>(e);
                best_cost = cost;
                best_nnz = nnz;
                best_dense = dense;
            }
        }
        const auto& ed = net.edges[best];
        int g1 = find(ed.from.node), g2 = find(ed.to.node);
        done[best] = 1;
        plan.steps.push_back(best);
        parent[g2] = g1;
        // the parallel edges are accounted for already
        for (std::size_t f = 0; f < net.edges.size(); ++f) {
            if (done[f]) continue;
            if (find(net.edges[f].from.node) == g1 && find(net.edges[f].to.node) == g1) {
                done[f] = 1;
                plan.steps.push_back(static_cast<int>(f));
            }
        }
        lognnz[g1] = best_nnz;
        logdense[g1] = best_dense;
    }
    return plan;
}

GradedTensor evaluate_network(const TensorNetwork& net, const ContractionPlan& plan, PlanStats* stats) {
    const int n = static_cast<int>(net.nodes.size());
    if (n == 0) throw Error("EmptyNetwork", "network has no nodes");
    {
        std::vector<int> seen(net.edges.size(), 0);
        for (int s : plan.steps) {
            if (s < 0 || s >= static_cast<int>(net.edges.size()) || seen[s]++)
                throw Error("PlanIncomplete", "plan step repeats or is out of range");
        }
        if (plan.steps.size() != net.edges.size())
            throw Error("PlanIncomplete", "plan does not cover every edge");
    }
    const int order = net.nodes[0].order();

    struct Group {
        GradedTensor t;
        std::vector<std::pair<int, int>> origin;  // (node, axis) per current axis
    };
    std::vector<Group> groups(n);
    std::vector<int> owner(n);
    for (int i = 0; i < n; ++i) {
        groups[i].t = net.nodes[i];
        for (int a = 0; a < net.nodes[i].rank(); ++a) groups[i].origin.push_back({i, a});
        owner[i] = i;
    }

    // initial order: index order with odd slots filled in sign order
    std::vector<int> order_list(n);
    std::iota(order_list.begin(), order_list.end(), 0);
    {
        std::vector<int> odd;
        for (int i = 0; i < n; ++i)
            if (net.nodes[i].parity()) odd.push_back(i);
        if (!net.sign_order.empty()) {
            auto sorted = net.sign_order;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != odd)
                throw Error("SignOrderMismatch", "sign order must list exactly the odd nodes");
            std::size_t j = 0;
            for (int i = 0; i < n; ++i)
                if (net.nodes[i].parity()) order_list[i] = net.sign_order[j++];
        }
    }

    auto find_axis = [&](const Group& g, int node, int axis) {
        for (std::size_t i = 0; i < g.origin.size(); ++i)
            if (g.origin[i].first == node && g.origin[i].second == axis) return static_cast<int>(i);
        throw Error("PlanIncomplete", "edge endpoint already consumed");
    };
    auto group_of = [&](int node) {
        while (owner[node] != node) node = owner[node];
        return node;
    };

    PlanStats st;
    for (int s : plan.steps) {
        const auto& e = net.edges[s];
        int g1 = group_of(e.from.node), g2 = group_of(e.to.node);
        if (g1 == g2) {
            Group& g = groups[g1];
            int x = find_axis(g, e.from.node, e.from.axis);
            int y = find_axis(g, e.to.node, e.to.axis);
            g.t = self_contract(g.t, x, y);
            std::vector<std::pair<int, int>> o;
            for (int i = 0; i < static_cast<int>(g.origin.size()); ++i)
                if (i != x && i != y) o.push_back(g.origin[i]);
            g.origin = std::move(o);
        } else {
            auto p1 = std::find(order_list.begin(), order_list.end(), g1) - order_list.begin();
            auto p2 = std::find(order_list.begin(), order_list.end(), g2) - order_list.begin();
            int first = p1 < p2 ? g1 : g2, second = p1 < p2 ? g2 : g1;
            auto lo = std::min(p1, p2), hi = std::max(p1, p2);
            int between = 0;
            for (auto k = lo + 1; k < hi; ++k) between ^= groups[order_list[k]].t.parity();
            bool neg = groups[second].t.parity() && between;
            Group& A = groups[first];
            Group& B = groups[second];
            int xa = first == g1 ? find_axis(A, e.from.node, e.from.axis)
                                 : find_axis(A, e.to.node, e.to.axis);
            int xb = first == g1 ? find_axis(B, e.to.node, e.to.axis)
                                 : find_axis(B, e.from.node, e.from.axis);
            GradedTensor merged = contract_axes(A.t, xa, B.t, xb);
            if (neg) merged.scale(-Scalar::one(order));
            std::vector<std::pair<int, int>> o;
            for (int i = 0; i < static_cast<int>(A.origin.size()); ++i)
                if (i != xa) o.push_back(A.origin[i]);
            for (int i = 0; i < static_cast<int>(B.origin.size()); ++i)
                if (i != xb) o.push_back(B.origin[i]);
            A.t = std::move(merged);
            A.origin = std::move(o);
            B.t = GradedTensor();
            owner[second] = first;
            order_list.erase(order_list.begin() + hi);
        }
        int g = group_of(e.from.node);
        st.max_entries = std::max(st.max_entries, groups[g].t.nnz());
        st.total_entries += groups[g].t.nnz();
        ++st.steps;
    }

    // combine the remaining components in order
    GradedTensor result = groups[order_list[0]].t;
    for (std::size_t i = 1; i < order_list.size(); ++i) {
        const auto& t = groups[order_list[i]].t;
        if (result.rank() == 0 && t.rank() == 0) {
            GradedTensor r(order, {}, result.parity() ^ t.parity());
            Scalar v = result.value() * t.value();
            if (!v.is_zero()) r.add_key(0, v);
            result = std::move(r);
        } else {
            result = outer(result, t);
        }
    }
    if (stats) *stats = st;
    return result;
}

}  // namespace hopfinv
