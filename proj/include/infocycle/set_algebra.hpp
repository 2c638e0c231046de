#ifndef INFOCYCLE_SET_ALGEBRA_HPP
#define INFOCYCLE_SET_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "infocycle/errors.hpp"

namespace infocycle {

// Subset of variable indices as a bitmask; usable for up to 16 variables.
using VarSet = std::uint32_t;

inline constexpr int kMaxVarSetBits = 16;

std::vector<int> varset_indices(VarSet s);
VarSet varset_from(std::initializer_list<int> indices);

/// Bitset over the atoms of the n-variable set algebra. Atom T (a non-empty
/// subset of variable indices, encoded as its bitmask) is the cell lying
/// inside every ground set in T and outside every other ground set. Bit
/// position T of the mask marks atom T; position 0 is never set.
class AtomMask {
public:
    explicit AtomMask(int var_count);
    static AtomMask universe(int var_count);

    int var_count() const { return var_count_; }
    std::uint32_t atom_count() const { return (1u << var_count_) - 1; }

    void set(std::uint32_t atom);
    bool test(std::uint32_t atom) const;
    bool empty() const;
    std::size_t count() const;

    AtomMask operator|(const AtomMask& other) const;
    AtomMask operator&(const AtomMask& other) const;
    AtomMask and_not(const AtomMask& other) const;
    AtomMask complement() const;  // relative to the universe of non-empty atoms

    bool operator==(const AtomMask& other) const;

    // Iterates set atoms in ascending bitmask order.
    template <typename F>
    void for_each_atom(F&& f) const {
        for (std::uint32_t t = 1; t <= atom_count(); ++t)
            if (test(t)) f(t);
    }

private:
    int var_count_;
    std::vector<std::uint64_t> words_;

    void check_compatible(const AtomMask& other) const;
    void clear_padding();
};

/// Symbolic expression over the per-variable ground sets: leaves are single
/// ground sets, nodes are union, intersection, difference, and complement
/// (complement is relative to the union of all ground sets).
class SetExpression {
public:
    static SetExpression ground(int var);
    static SetExpression ground_union(VarSet vars);         // union of several ground sets
    static SetExpression ground_intersection(VarSet vars);  // intersection of several

    SetExpression operator|(const SetExpression& rhs) const;
    SetExpression operator&(const SetExpression& rhs) const;
    SetExpression operator-(const SetExpression& rhs) const;
    SetExpression operator~() const;

    // Largest leaf variable index in the expression.
    int max_leaf() const;

    struct Node;  // defined in the implementation file

private:
    explicit SetExpression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;

    friend AtomMask eval_set_expression(const SetExpression& expr, int var_count);
};

/// Evaluates the expression to the exact set of atoms it contains.
AtomMask eval_set_expression(const SetExpression& expr, int var_count);

}  // namespace infocycle

#endif
