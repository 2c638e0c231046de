#ifndef INFOCYCLE_JOINT_DISTRIBUTION_HPP
#define INFOCYCLE_JOINT_DISTRIBUTION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infocycle/errors.hpp"

namespace infocycle {

// Absolute tolerance for direct table arithmetic (normalization, row sums).
inline constexpr double kTableTol = 1e-12;
// Default absolute tolerance for derived quantities (entropies, residuals).
inline constexpr double kDerivedTol = 1e-9;
// Largest table accepted anywhere: exact desk-scale arithmetic only.
inline constexpr std::size_t kMaxCells = 10'000'000;

struct Variable {
    std::string name;
    int cardinality = 0;
};

/// Exact probability table over named finite-alphabet variables.
/// Layout is row-major with the LAST variable varying fastest, so the cell
/// for assignment (a_0,...,a_{n-1}) sits at index
/// ((a_0 * c_1 + a_1) * c_2 + a_2) * ...
struct JointDistribution {
    std::vector<Variable> variables;
    std::vector<double> table;

    int var_count() const { return static_cast<int>(variables.size()); }

    std::size_t cell_count() const;

    // Product of cardinalities of variables[i..], i.e. the index stride of
    // variable i-1. stride(n) == 1.
    std::size_t stride(int i) const;

    std::size_t index_of(std::span<const int> assignment) const;
    void assignment_of(std::size_t index, std::span<int> out) const;

    double& at(std::span<const int> assignment) { return table[index_of(assignment)]; }
    double at(std::span<const int> assignment) const { return table[index_of(assignment)]; }
};

struct Violation {
    ErrorCode code;
    std::size_t index = 0;  // offending cell for NegativeProbability
    double value = 0.0;     // offending value (or the off sum)
    std::string message;
};

/// Checks every JointDistribution invariant in a fixed order and reports the
/// first violation; std::nullopt means the distribution is valid.
std::optional<Violation> validate(const JointDistribution& dist);

/// validate() + throw; used by parsers and constructors of derived tables.
void require_valid(const JointDistribution& dist);

/// Exact marginal over the kept variables. `keep` is a set (order and
/// duplicates ignored); the output preserves the input variable order.
JointDistribution marginal(const JointDistribution& dist, std::span<const int> keep);

/// Conditional distribution table p(targets | given).
///
/// Rows are indexed by given-assignments (row-major over the given variables
/// in ascending index order, last fastest), columns by target-assignments.
/// A row is undefined exactly when the conditioning marginal is zero there.
struct ConditionalTable {
    std::vector<int> targets;  // ascending variable indices
    std::vector<int> given;    // ascending, disjoint from targets
    std::size_t target_cells = 0;
    std::size_t given_cells = 0;
    std::vector<double> rows;         // given_cells x target_cells
    std::vector<char> row_defined;    // per given-assignment

    double value(std::size_t given_index, std::size_t target_index) const {
        return rows[given_index * target_cells + target_index];
    }
    bool defined(std::size_t given_index) const { return row_defined[given_index] != 0; }
    std::size_t undefined_row_count() const;
};

ConditionalTable conditional(const JointDistribution& dist, std::span<const int> targets,
                             std::span<const int> given);

/// The fully independent distribution with the same one-variable marginals.
JointDistribution product_of_marginals(const JointDistribution& dist);

/// max over cells of |a - b|; requires identical variable lists.
double max_abs_distance(const JointDistribution& a, const JointDistribution& b);

}  // namespace infocycle

#endif
