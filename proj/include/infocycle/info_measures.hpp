#ifndef INFOCYCLE_INFO_MEASURES_HPP
#define INFOCYCLE_INFO_MEASURES_HPP

#include <vector>

#include "infocycle/joint_distribution.hpp"
#include "infocycle/set_algebra.hpp"

namespace infocycle {

/// Shannon entropy of the marginal over `subset`, in bits. 0 log 0 := 0.
double entropy(const JointDistribution& dist, VarSet subset);

/// H(A | B) = H(A u B) - H(B), in bits. A and B must be disjoint, non-empty.
double conditional_entropy(const JointDistribution& dist, VarSet a, VarSet b);

/// I(A ; B) = H(A) + H(B) - H(A u B), in bits.
double mutual_information(const JointDistribution& dist, VarSet a, VarSet b);

/// I(A ; B | C) = H(A u C) + H(B u C) - H(A u B u C) - H(C). C may be empty.
double conditional_mutual_information(const JointDistribution& dist, VarSet a, VarSet b,
                                      VarSet c);

/// Alternating-sign sum of subset entropies over all non-empty subsets,
/// sum_S (-1)^{|S|+1} H(X_S). Equals the signed measure of the intersection
/// of all ground sets; may be negative.
double co_information(const JointDistribution& dist);

/// Entropies of all 2^n variable subsets, indexed by bitmask (entry 0 is 0).
std::vector<double> subset_entropies(const JointDistribution& dist);

/// Signed measure values on all 2^n - 1 atoms of the variable set algebra.
/// values[T] is the measure of atom T; values[0] is unused and zero.
struct AtomTable {
    int var_count = 0;
    std::vector<double> values;

    double value(std::uint32_t atom) const { return values[atom]; }
};

/// The unique signed measure consistent with all subset entropies: solves
/// { sum over atoms T with T & G != 0 of mu(T) == H(X_G) for all G != 0 }
/// by Moebius inversion over the subset lattice.
AtomTable i_measure(const JointDistribution& dist);

/// Sum of atom values over the atoms of an evaluated set expression.
double measure_of(const AtomTable& atoms, const SetExpression& expr);
double measure_of(const AtomTable& atoms, const AtomMask& mask);

}  // namespace infocycle

#endif
