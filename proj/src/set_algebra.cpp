#include "infocycle/set_algebra.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace infocycle {

std::vector<int> varset_indices(VarSet s) {
    std::vector<int> out;
    for (int i = 0; s != 0; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

VarSet varset_from(std::initializer_list<int> indices) {
    VarSet s = 0;
    for (int i : indices) s |= (1u << i);
    return s;
}

namespace {

void check_var_count(int var_count) {
    if (var_count < 1 || var_count > kMaxVarSetBits)
        throw Error(ErrorCode::TooManyVariables,
                    "set algebra supports 1.." + std::to_string(kMaxVarSetBits) +
                        " variables, got " + std::to_string(var_count));
}

}  // namespace

AtomMask::AtomMask(int var_count) : var_count_(var_count) {
    check_var_count(var_count);
    words_.assign(((1u << var_count) + 63) / 64, 0);
}

AtomMask AtomMask::universe(int var_count) {
    AtomMask m(var_count);
    for (auto& w : m.words_) w = ~std::uint64_t{0};
    m.words_[0] &= ~std::uint64_t{1};  // atom 0 (the empty cell) does not exist
    m.clear_padding();
    return m;
}

void AtomMask::clear_padding() {
    const std::uint32_t bits = 1u << var_count_;
    const std::uint32_t tail = bits % 64;
    if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

void AtomMask::set(std::uint32_t atom) { words_[atom / 64] |= std::uint64_t{1} << (atom % 64); }

bool AtomMask::test(std::uint32_t atom) const {
    return (words_[atom / 64] >> (atom % 64)) & 1u;
}

bool AtomMask::empty() const {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

std::size_t AtomMask::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

void AtomMask::check_compatible(const AtomMask& other) const {
    if (var_count_ != other.var_count_)
        throw Error(ErrorCode::DimensionMismatch, "atom masks over different variable counts");
}

AtomMask AtomMask::operator|(const AtomMask& other) const {
    check_compatible(other);
    AtomMask out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
}

AtomMask AtomMask::operator&(const AtomMask& other) const {
    check_compatible(other);
    AtomMask out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
}

AtomMask AtomMask::and_not(const AtomMask& other) const {
    check_compatible(other);
    AtomMask out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
    return out;
}

AtomMask AtomMask::complement() const { return universe(var_count_).and_not(*this); }

bool AtomMask::operator==(const AtomMask& other) const {
    return var_count_ == other.var_count_ && words_ == other.words_;
}

struct SetExpression::Node {
    enum Kind { Ground, Union, Intersection, Difference, Complement } kind;
    int var = -1;
    std::shared_ptr<const Node> lhs, rhs;
};

SetExpression SetExpression::ground(int var) {
    if (var < 0)
        throw Error(ErrorCode::IndexOutOfRange, "negative ground-set index");
    auto node = std::make_shared<Node>();
    node->kind = Node::Ground;
    node->var = var;
    return SetExpression(std::move(node));
}

SetExpression SetExpression::ground_union(VarSet vars) {
    const auto idx = varset_indices(vars);
    if (idx.empty()) throw Error(ErrorCode::EmptySubset, "empty ground-set union");
    SetExpression e = ground(idx[0]);
    for (std::size_t i = 1; i < idx.size(); ++i) e = e | ground(idx[i]);
    return e;
}

SetExpression SetExpression::ground_intersection(VarSet vars) {
    const auto idx = varset_indices(vars);
    if (idx.empty()) throw Error(ErrorCode::EmptySubset, "empty ground-set intersection");
    SetExpression e = ground(idx[0]);
    for (std::size_t i = 1; i < idx.size(); ++i) e = e & ground(idx[i]);
    return e;
}

SetExpression SetExpression::operator|(const SetExpression& rhs) const {
    auto node = std::make_shared<Node>();
    node->kind = Node::Union;
    node->lhs = root_;
    node->rhs = rhs.root_;
    return SetExpression(std::move(node));
}

SetExpression SetExpression::operator&(const SetExpression& rhs) const {
    auto node = std::make_shared<Node>();
    node->kind = Node::Intersection;
    node->lhs = root_;
    node->rhs = rhs.root_;
    return SetExpression(std::move(node));
}

SetExpression SetExpression::operator-(const SetExpression& rhs) const {
    auto node = std::make_shared<Node>();
    node->kind = Node::Difference;
    node->lhs = root_;
    node->rhs = rhs.root_;
    return SetExpression(std::move(node));
}

SetExpression SetExpression::operator~() const {
    auto node = std::make_shared<Node>();
    node->kind = Node::Complement;
    node->lhs = root_;
    return SetExpression(std::move(node));
}

namespace {

AtomMask eval_rec(const SetExpression::Node* node, int var_count) {
    using Node = SetExpression::Node;
    switch (node->kind) {
        case Node::Ground: {
            if (node->var >= var_count)
                throw Error(ErrorCode::IndexOutOfRange,
                            "ground set X" + std::to_string(node->var) + " with only " +
                                std::to_string(var_count) + " variables");
            AtomMask m(var_count);
            const std::uint32_t atoms = m.atom_count();
            for (std::uint32_t t = 1; t <= atoms; ++t)
                if ((t >> node->var) & 1u) m.set(t);
            return m;
        }
        case Node::Union:
            return eval_rec(node->lhs.get(), var_count) | eval_rec(node->rhs.get(), var_count);
        case Node::Intersection:
            return eval_rec(node->lhs.get(), var_count) & eval_rec(node->rhs.get(), var_count);
        case Node::Difference:
            return eval_rec(node->lhs.get(), var_count)
                .and_not(eval_rec(node->rhs.get(), var_count));
        case Node::Complement:
            return eval_rec(node->lhs.get(), var_count).complement();
    }
    throw Error(ErrorCode::DimensionMismatch, "corrupt expression node");
}

int max_leaf_rec(const SetExpression::Node* node) {
    using Node = SetExpression::Node;
    if (node->kind == Node::Ground) return node->var;
    int m = -1;
    if (node->lhs) m = std::max(m, max_leaf_rec(node->lhs.get()));
    if (node->rhs) m = std::max(m, max_leaf_rec(node->rhs.get()));
    return m;
}

}  // namespace

int SetExpression::max_leaf() const { return max_leaf_rec(root_.get()); }

AtomMask eval_set_expression(const SetExpression& expr, int var_count) {
    check_var_count(var_count);
    return eval_rec(expr.root_.get(), var_count);
}

}  // namespace infocycle
