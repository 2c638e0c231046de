#ifndef INFOCYCLE_GENERATE_HPP
#define INFOCYCLE_GENERATE_HPP

#include <cstdint>
#include <span>

#include "infocycle/joint_distribution.hpp"
#include "infocycle/verify.hpp"

namespace infocycle {

/// Outcome of a projection or search run.
struct SearchResult {
    JointDistribution best;
    double residual = 0.0;         // cycle-factorization residual of `best`
    double dependence_bits = 0.0;  // max pairwise mutual information of `best`
    std::uint64_t iterations = 0;  // projection updates applied
    bool converged = false;        // residual <= requested tolerance
    std::uint64_t seed = 0;
};

/// Deterministic strictly-positive random table: mt19937_64 stream, one
/// exponential variate per cell, normalized (symmetric Dirichlet(1) shape).
/// Variables are named "X0".."Xk" with the given cardinalities.
JointDistribution random_joint(std::span<const int> cardinalities, std::uint64_t seed);

/// Random per-variable marginal on `cardinality` values from the same stream
/// kind; used to build independent inputs seed-for-seed reproducibly.
std::vector<double> random_marginal(int cardinality, std::uint64_t seed);

/// Product distribution of the given per-variable marginals.
JointDistribution independent_joint(const std::vector<std::vector<double>>& marginals);

/// Iterates q <- normalize(prod_i q(x_i | x_{i(+)1})), recomputing the
/// conditionals from the current iterate each round, and keeps the best
/// iterate seen. Stops once the residual is within tol or the iteration
/// budget is spent. The input is floored to 1e-9 and renormalized first so
/// that no conditional row starts undefined.
SearchResult ipf_cycle_projection(const JointDistribution& dist, const CycleSpec& cycle,
                                  int max_iters, double tol);

/// Multi-start probe for cyclically factorizing distributions with n >= 3:
/// runs the projection from `attempts` random seeds (seed, seed+1, ...),
/// polishes each by coordinate descent on the simplex, and returns the
/// converged result with the largest pairwise dependence (or the smallest
/// residual when nothing converges). A dependence score at tolerance level
/// means only independent solutions were found.
SearchResult search_nontrivial_cyclic(std::span<const int> cardinalities,
                                      const CycleSpec& cycle, int attempts, double tol,
                                      std::uint64_t seed = 1);

}  // namespace infocycle

#endif
