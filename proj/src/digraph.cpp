#include "infocycle/digraph.hpp"

#include <algorithm>
#include <string>

namespace infocycle {

Digraph::Digraph(int node_count) : node_count_(node_count) {
    if (node_count < 0) throw Error(ErrorCode::IndexOutOfRange, "negative node count");
    parents_.resize(node_count);
    children_.resize(node_count);
}

void Digraph::check_node(int v) const {
    if (v < 0 || v >= node_count_)
        throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v) + " out of range");
}

void Digraph::add_edge(int parent, int child) {
    check_node(parent);
    check_node(child);
    if (parent == child)
        throw Error(ErrorCode::IndexOutOfRange,
                    "self-loop on node " + std::to_string(parent) + " not allowed");
    if (has_edge(parent, child)) return;  // deduplicated
    children_[parent].push_back(child);
    parents_[child].push_back(parent);
    ++edge_count_;
}

bool Digraph::has_edge(int parent, int child) const {
    check_node(parent);
    check_node(child);
    const auto& c = children_[parent];
    return std::find(c.begin(), c.end(), child) != c.end();
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < node_count_; ++u)
        for (int v : children_[u]) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

Digraph cycle_graph(int n) {
    if (n < 2) throw Error(ErrorCode::NTooSmall, "a cycle needs at least 2 nodes");
    Digraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge((i + 1) % n, i);  // parent of i is its successor
    return g;
}

std::vector<int> descendants(const Digraph& g, int v) {
    if (v < 0 || v >= g.node_count())
        throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v) + " out of range");
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack(g.children(v));
    for (int w : stack) seen[w] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int w : g.children(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < g.node_count(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

namespace {

constexpr char kInA = 1;
constexpr char kInB = 2;
constexpr char kInZ = 4;

void mark(std::vector<char>& labels, std::span<const int> nodes, char bit, int n) {
    for (int v : nodes) {
        if (v < 0 || v >= n)
            throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v) + " out of range");
        if (labels[v] & ~bit & (kInA | kInB | kInZ))
            throw Error(ErrorCode::OverlappingSets,
                        "node " + std::to_string(v) + " appears in two of A, B, Z");
        labels[v] |= bit;
    }
}

}  // namespace

bool d_separated(const Digraph& g, std::span<const int> a, std::span<const int> b,
                 std::span<const int> z) {
    const int n = g.node_count();
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySubset, "A and B must be non-empty");

    // Scratch reused across calls; the function stays pure from the caller's
    // point of view and safe under concurrent reads.
    static thread_local std::vector<char> labels, desc_z, visited;
    static thread_local std::vector<int> queue;

    labels.assign(n, 0);
    mark(labels, a, kInA, n);
    mark(labels, b, kInB, n);
    mark(labels, z, kInZ, n);

    // desc_z[v]: some directed path of length >= 1 leads from v into Z.
    desc_z.assign(n, 0);
    queue.clear();
    for (int v : z) queue.push_back(v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (int p : g.parents(queue[head])) {
            if (!desc_z[p]) {
                desc_z[p] = 1;
                queue.push_back(p);
            }
        }
    }

    // Reachability over (node, orientation-of-arriving-edge) states.
    // State 2v   : the last edge points into v.
    // State 2v+1 : the last edge points out of v.
    visited.assign(2 * static_cast<std::size_t>(n), 0);
    queue.clear();
    auto push = [&](int v, int arrived_into) {
        const int s = 2 * v + (arrived_into ? 0 : 1);
        if (!visited[s]) {
            visited[s] = 1;
            queue.push_back(s);
        }
    };

    for (int v : a) {
        for (int w : g.children(v)) push(w, 1);  // leaves along v->w, arrives pointing in
        for (int w : g.parents(v)) push(w, 0);   // leaves along w->v, arrives pointing out
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int state = queue[head];
        const int v = state / 2;
        const bool arrived_into = (state % 2) == 0;
        if (labels[v] & kInB) return false;  // active trail reached B

        const bool in_z = labels[v] & kInZ;

        // Depart along a child edge v->w: v is a chain or fork, never a collider.
        if (!in_z)
            for (int w : g.children(v)) push(w, 1);

        // Depart along a parent edge w->v: v is a collider iff we also arrived
        // on an edge pointing into v.
        const bool passable = arrived_into ? (in_z || desc_z[v]) : !in_z;
        if (passable)
            for (int w : g.parents(v)) push(w, 0);
    }
    return true;
}

}  // namespace infocycle
