#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopfinv/exactfield.hpp"

namespace hopfinv {

struct GradedSpace {
    std::vector<std::uint8_t> parity;

    int dim() const { return static_cast<int>(parity.size()); }
    long graded_dim() const;
    bool ungraded() const;
    static std::shared_ptr<const GradedSpace> make(std::vector<std::uint8_t> parity);
    static std::shared_ptr<const GradedSpace> even(int dim);
    bool operator==(const GradedSpace& o) const { return parity == o.parity; }
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

enum class Variance : std::uint8_t { In, Out };

struct Axis {
    SpacePtr space;
    Variance variance;
};

// Mixed-radix entry key. 128 bits keep rank ~30 tensors over small spaces
// addressable; wide cuts in diagram networks do reach that.
using TensorKey = unsigned __int128;
struct TensorKeyHash {
    std::size_t operator()(TensorKey k) const noexcept {
        std::uint64_t lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    }
};

// Homogeneous tensor in W_1 (x) ... (x) W_k with W = V for Out axes and V* for
// In axes. Entries are stored sparsely under a mixed-radix key; zero entries
// are never stored.
class GradedTensor {
public:
    // Hard cap on stored entries; exact scalars are heavy and running out of
    // memory is worse than a clean TensorTooLarge.
    static constexpr std::size_t kMaxEntries = 3'000'000;
    // Current cap for this thread, lowered by EntryLimit.
    static std::size_t entry_limit();

    using Key = TensorKey;
    using Map = std::unordered_map<Key, Scalar, TensorKeyHash>;

    GradedTensor() = default;
    GradedTensor(int order, std::vector<Axis> axes, int parity);

    int order() const { return order_; }
    int rank() const { return static_cast<int>(axes_.size()); }
    int parity() const { return parity_; }
    const std::vector<Axis>& axes() const { return axes_; }
    const Map& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    Scalar get(const std::vector<int>& idx) const;
    void set(const std::vector<int>& idx, const Scalar& v);
    void add(const std::vector<int>& idx, const Scalar& v);

    Key encode(const std::vector<int>& idx) const;
    void decode(Key k, std::vector<int>& idx) const;
    int index_parity(const std::vector<int>& idx) const;

    // Scalar value of a rank-0 tensor.
    Scalar value() const;
    void scale(const Scalar& s);

    friend bool operator==(const GradedTensor& a, const GradedTensor& b);

    // Internal: insert without homogeneity check (caller guarantees it).
    void add_key(Key k, const Scalar& v);
    void prune();

private:
    int order_ = 1;
    std::vector<Axis> axes_;
    std::vector<Key> stride_;
    int parity_ = 0;
    Map entries_;
};

GradedTensor transpose_adjacent(const GradedTensor& t, int axis);

// Contract axis x of a with axis y of b (a listed before b). The axes must be
// dual to each other. Axes of the result: a's remaining, then b's remaining.
GradedTensor contract_axes(const GradedTensor& a, int x, const GradedTensor& b, int y);
GradedTensor contract_edge(const GradedTensor& a, int out_axis, const GradedTensor& b, int in_axis);
GradedTensor self_contract(const GradedTensor& t, int x, int y);
GradedTensor outer(const GradedTensor& a, const GradedTensor& b);

// Tensor of an even linear map V -> V given by rows: f(b_i) = sum_k m[i][k] b_k.
// Axes are (Out, In).
GradedTensor map_tensor(const SpacePtr& space, const std::vector<std::vector<Scalar>>& m,
                        int order);

struct TensorNetwork {
    struct Endpoint {
        int node;
        int axis;
    };
    struct Edge {
        Endpoint from;  // Out axis
        Endpoint to;    // In axis
    };

    std::vector<GradedTensor> nodes;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    // odd nodes in the order they are combined; empty means index order
    std::vector<int> sign_order;

    int add_node(GradedTensor t, std::string label = {});
    void connect(int from_node, int from_axis, int to_node, int to_axis);
};

struct ContractionPlan {
    std::vector<int> steps;  // edge indices
};

struct PlanStats {
    std::size_t max_entries = 0;
    std::size_t total_entries = 0;
    int steps = 0;
};

ContractionPlan plan_naive(const TensorNetwork& net);
// seed != 0 jitters the cost estimates, giving a different but still
// size-aware order
ContractionPlan plan_greedy(const TensorNetwork& net, unsigned seed = 0);

// Scoped lower cap on tensor entries for the current thread.
class EntryLimit {
public:
    explicit EntryLimit(std::size_t limit);
    ~EntryLimit();
    EntryLimit(const EntryLimit&) = delete;
    EntryLimit& operator=(const EntryLimit&) = delete;

private:
    std::size_t prev_;
};
GradedTensor evaluate_network(const TensorNetwork& net, const ContractionPlan& plan,
                              PlanStats* stats = nullptr);

}  // namespace hopfinv
