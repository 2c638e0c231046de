#include "infocycle/info_measures.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace infocycle {

namespace {

void check_subset(const JointDistribution& dist, VarSet s, const char* what) {
    if (s == 0) throw Error(ErrorCode::EmptySubset, std::string(what) + " is empty");
    if (dist.var_count() > kMaxVarSetBits)
        throw Error(ErrorCode::TooManyVariables, "more than 16 variables");
    if (s >> dist.var_count())
        throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " has out-of-range bits");
}

void check_disjoint(VarSet a, VarSet b) {
    if (a & b) throw Error(ErrorCode::OverlappingSets, "variable subsets overlap");
}

// -sum p log2 p of the masked marginal, accumulated into a scratch bucket
// array. Marginal sums are exact per-cell additions; no atom recombination.
double entropy_of_mask(const JointDistribution& dist, VarSet mask,
                       std::vector<double>& scratch) {
    const int n = dist.var_count();
    std::size_t buckets = 1;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) buckets *= static_cast<std::size_t>(dist.variables[i].cardinality);

    scratch.assign(buckets, 0.0);
    std::vector<std::size_t> bucket_stride(n, 0);
    {
        std::size_t s = 1;
        for (int i = n - 1; i >= 0; --i) {
            if ((mask >> i) & 1u) {
                bucket_stride[i] = s;
                s *= static_cast<std::size_t>(dist.variables[i].cardinality);
            }
        }
    }

    std::vector<int> digits(n, 0);
    const std::size_t cells = dist.cell_count();
    std::size_t bucket = 0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        scratch[bucket] += dist.table[cell];
        for (int i = n - 1; i >= 0; --i) {
            ++digits[i];
            bucket += bucket_stride[i];
            if (digits[i] < dist.variables[i].cardinality) break;
            bucket -= bucket_stride[i] * digits[i];
            digits[i] = 0;
        }
    }

    double h = 0.0;
    for (double p : scratch)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

}  // namespace

double entropy(const JointDistribution& dist, VarSet subset) {
    check_subset(dist, subset, "subset");
    std::vector<double> scratch;
    return entropy_of_mask(dist, subset, scratch);
}

double conditional_entropy(const JointDistribution& dist, VarSet a, VarSet b) {
    check_subset(dist, a, "A");
    check_subset(dist, b, "B");
    check_disjoint(a, b);
    std::vector<double> scratch;
    return entropy_of_mask(dist, a | b, scratch) - entropy_of_mask(dist, b, scratch);
}

double mutual_information(const JointDistribution& dist, VarSet a, VarSet b) {
    check_subset(dist, a, "A");
    check_subset(dist, b, "B");
    check_disjoint(a, b);
    std::vector<double> scratch;
    return entropy_of_mask(dist, a, scratch) + entropy_of_mask(dist, b, scratch) -
           entropy_of_mask(dist, a | b, scratch);
}

double conditional_mutual_information(const JointDistribution& dist, VarSet a, VarSet b,
                                      VarSet c) {
    check_subset(dist, a, "A");
    check_subset(dist, b, "B");
    if (c >> dist.var_count())
        throw Error(ErrorCode::IndexOutOfRange, "C has out-of-range bits");
    check_disjoint(a, b);
    check_disjoint(a, c);
    check_disjoint(b, c);
    if (c == 0) return mutual_information(dist, a, b);
    std::vector<double> scratch;
    return entropy_of_mask(dist, a | c, scratch) + entropy_of_mask(dist, b | c, scratch) -
           entropy_of_mask(dist, a | b | c, scratch) - entropy_of_mask(dist, c, scratch);
}

std::vector<double> subset_entropies(const JointDistribution& dist) {
    const int n = dist.var_count();
    if (n > kMaxVarSetBits) throw Error(ErrorCode::TooManyVariables, "more than 16 variables");
    const std::uint32_t masks = 1u << n;
    std::vector<double> ent(masks, 0.0);
    std::vector<double> scratch;
    for (std::uint32_t m = 1; m < masks; ++m) ent[m] = entropy_of_mask(dist, m, scratch);
    return ent;
}

double co_information(const JointDistribution& dist) {
    const int n = dist.var_count();
    if (n < 2) throw Error(ErrorCode::NTooSmall, "co-information needs at least 2 variables");
    const std::vector<double> ent = subset_entropies(dist);
    double total = 0.0;
    for (std::uint32_t s = 1; s < ent.size(); ++s) {
        const int sign = (std::popcount(s) % 2 == 1) ? +1 : -1;
        total += sign * ent[s];
    }
    return total;
}

AtomTable i_measure(const JointDistribution& dist) {
    const int n = dist.var_count();
    if (n < 1) throw Error(ErrorCode::EmptySubset, "no variables");
    if (n > kMaxVarSetBits) throw Error(ErrorCode::TooManyVariables, "more than 16 variables");

    const std::uint32_t masks = 1u << n;
    const std::uint32_t full = masks - 1;
    const std::vector<double> ent = subset_entropies(dist);

    // mu(T) = (-1)^{|T|+1} * sum_{S subseteq T} (-1)^{|S|} H(X_{S^c}),
    // the Moebius inverse of f(S) = H(full) - H(S^c) = sum of atoms inside S.
    // The inner sums over all T at once via the subset-sum transform.
    std::vector<double> acc(masks);
    for (std::uint32_t s = 0; s < masks; ++s) {
        const int sign = (std::popcount(s) % 2 == 0) ? +1 : -1;
        acc[s] = sign * ent[full ^ s];
    }
    for (int j = 0; j < n; ++j)
        for (std::uint32_t t = 0; t < masks; ++t)
            if ((t >> j) & 1u) acc[t] += acc[t ^ (1u << j)];

    AtomTable atoms;
    atoms.var_count = n;
    atoms.values.assign(masks, 0.0);
    for (std::uint32_t t = 1; t < masks; ++t) {
        const int sign = (std::popcount(t) % 2 == 1) ? +1 : -1;
        atoms.values[t] = sign * acc[t];
    }
    return atoms;
}

double measure_of(const AtomTable& atoms, const AtomMask& mask) {
    if (mask.var_count() != atoms.var_count)
        throw Error(ErrorCode::DimensionMismatch, "atom mask over a different variable count");
    double total = 0.0;
    mask.for_each_atom([&](std::uint32_t t) { total += atoms.values[t]; });
    return total;
}

double measure_of(const AtomTable& atoms, const SetExpression& expr) {
    if (expr.max_leaf() >= atoms.var_count)
        throw Error(ErrorCode::DimensionMismatch,
                    "expression mentions X" + std::to_string(expr.max_leaf()) +
                        " but the table has " + std::to_string(atoms.var_count) +
                        " variables");
    return measure_of(atoms, eval_set_expression(expr, atoms.var_count));
}

}  // namespace infocycle
