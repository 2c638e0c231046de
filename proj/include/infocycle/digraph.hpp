#ifndef INFOCYCLE_DIGRAPH_HPP
#define INFOCYCLE_DIGRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "infocycle/errors.hpp"

namespace infocycle {

/// Directed graph, cycles permitted. Self-loops and parallel edges are
/// rejected; u->v and v->u may coexist.
class Digraph {
public:
    explicit Digraph(int node_count);

    int node_count() const { return node_count_; }
    void add_edge(int parent, int child);
    bool has_edge(int parent, int child) const;
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    std::vector<std::pair<int, int>> edges() const;  // sorted (parent, child) pairs

private:
    int node_count_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;

    void check_node(int v) const;
};

/// The n-node ring in which each node i has the single parent (i+1) mod n.
Digraph cycle_graph(int n);

/// All nodes reachable from v by directed paths of length >= 1 (v itself is
/// included exactly when v lies on a directed cycle).
std::vector<int> descendants(const Digraph& g, int v);

/// d-separation of node sets A and B by Z, valid on cyclic graphs.
///
/// A path is blocked iff it contains a non-collider in Z, or a collider that
/// is neither in Z nor has a descendant in Z. Implemented as reachability
/// over edge-orientation states (so repeated traversal around cycles is
/// handled soundly); its agreement with exhaustive simple-path enumeration on
/// every small graph is part of the test suite.
bool d_separated(const Digraph& g, std::span<const int> a, std::span<const int> b,
                 std::span<const int> z);

}  // namespace infocycle

#endif
