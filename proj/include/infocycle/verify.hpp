#ifndef INFOCYCLE_VERIFY_HPP
#define INFOCYCLE_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

#include "infocycle/digraph.hpp"
#include "infocycle/info_measures.hpp"
#include "infocycle/joint_distribution.hpp"

namespace infocycle {

// Default hypothesis tolerance (how exactly the factorization must hold) and
// conclusion tolerance (forward-error allowance on the implied quantity).
inline constexpr double kHypothesisTol = 1e-9;
inline constexpr double kConclusionTol = 1e-6;

/// A cyclic ordering of the variables. The factor for position i is
/// p(x_{order[i]} | x_{order[i+1 mod n]}): every variable is conditioned on
/// its successor around the cycle.
struct CycleSpec {
    std::vector<int> order;

    static CycleSpec identity(int n);

    int size() const { return static_cast<int>(order.size()); }
    int successor(int position) const { return order[(position + 1) % order.size()]; }

    /// Same cycle walked the other way; each factor's conditioning side flips.
    CycleSpec reversed() const;

    /// Throws unless order is a permutation of 0..n-1 with n >= 2 matching dist.
    void check_against(const JointDistribution& dist) const;
};

enum class Verdict { Pass, Fail, Vacuous };

const char* verdict_name(Verdict v);

struct SupportDiagnostics {
    std::size_t zero_cells = 0;      // joint cells that are exactly zero
    std::size_t undefined_rows = 0;  // undefined conditional rows across the cycle factors
};

enum class TermClass { ConditionalEntropy, AdjacentDisjoint, NonadjacentDsep };

const char* term_class_name(TermClass c);  // spec'd wire strings

/// One inclusion-exclusion term over a subset W of cycle positions: the
/// signed measure of the intersection of the differences (X_i - X_{i(+)1})
/// for i in W, with the two literal right-hand rewrites kept for diagnosis.
struct IeTerm {
    std::uint32_t positions = 0;  // W as a bitmask over cycle positions
    int sign = 0;                 // (-1)^{|W|+1}
    TermClass classification = TermClass::ConditionalEntropy;
    bool atoms_empty = false;     // the evaluated atom mask is exactly empty
    double value_bits = 0.0;                  // measure of the intersection of differences
    double inter_minus_inter_bits = 0.0;      // measure of (cap X_i) - (cap X_{i(+)1})
    double inter_minus_union_bits = 0.0;      // measure of (cap X_i) - (cup X_{i(+)1})
};

struct VerificationReport {
    std::string check;
    bool hypothesis_satisfied = false;
    double hypothesis_residual = 0.0;
    double hypothesis_tol = kHypothesisTol;
    std::map<std::string, double> conclusion_values;
    double conclusion_tol = kConclusionTol;
    Verdict verdict = Verdict::Vacuous;
    std::vector<IeTerm> terms;
    SupportDiagnostics support;
};

/// Cell-wise max deviation between the joint and the cycle-factor product
/// prod_i p(x_{o_i} | x_{o_{i(+)1}}). Cells hitting an undefined conditional
/// row contribute a product of 0 (their joint probability is necessarily 0).
double cycle_factorization_residual(const JointDistribution& dist, const CycleSpec& cycle);

SupportDiagnostics support_diagnostics(const JointDistribution& dist, const CycleSpec& cycle);

/// Two-variable check: if p(x,y) = p(x|y)p(y|x) holds within hyp_tol, then
/// I(X;Y) and the distance to the product of marginals must be within
/// concl_tol.
VerificationReport verify_theorem1(const JointDistribution& dist,
                                   double hyp_tol = kHypothesisTol,
                                   double concl_tol = kConclusionTol);

/// n-variable check: a cycle-factorizing distribution has co-information 0.
VerificationReport verify_theorem2(const JointDistribution& dist, const CycleSpec& cycle,
                                   double hyp_tol = kHypothesisTol,
                                   double concl_tol = kConclusionTol);

/// A cycle-factorizing distribution also factorizes along the reversed cycle.
VerificationReport verify_theorem3(const JointDistribution& dist, const CycleSpec& cycle,
                                   double hyp_tol = kHypothesisTol,
                                   double concl_tol = kConclusionTol);

/// A cycle-factorizing distribution has H(joint) equal to the sum of the
/// cycle's conditional entropies.
VerificationReport verify_lemma1(const JointDistribution& dist, const CycleSpec& cycle,
                                 double hyp_tol = kHypothesisTol,
                                 double concl_tol = kConclusionTol);

/// Distribution-free set identity: H(joint) equals the measure of the union
/// of cycle differences plus the co-information. Must pass for every valid
/// distribution; tolerance is the derived-quantity default.
VerificationReport verify_lemma2(const JointDistribution& dist, const CycleSpec& cycle,
                                 double tol = kDerivedTol);

/// Every inclusion-exclusion term of the union of cycle differences, with
/// sign, classification, and measure. The signed sum equals the measure of
/// the union exactly up to float error.
std::vector<IeTerm> inclusion_exclusion_terms(const JointDistribution& dist,
                                              const CycleSpec& cycle);

/// Combined term check: adjacent-containing terms must be exactly zero at the
/// set level for any distribution; when the factorization hypothesis holds,
/// non-adjacent terms must vanish within concl_tol as well.
VerificationReport verify_terms(const JointDistribution& dist, const CycleSpec& cycle,
                                double hyp_tol = kHypothesisTol,
                                double concl_tol = kConclusionTol);

/// Graph-side check for non-adjacent positions: every pair (j,k) in W must be
/// d-separated in cycle_graph(n) by {j(+)1, k(+)1}. W must contain at least
/// two positions and no adjacent pair.
VerificationReport verify_lemma4_dsep(int n, std::span<const int> w);

/// If dist is certified to factorize along g (caller supplies the residual)
/// and A, B are d-separated by Z in g, then I(A;B|Z) must be within tol.
/// Without a certificate within hyp_tol, or without d-separation, the verdict
/// is vacuous.
VerificationReport dsep_ci_check(const JointDistribution& dist, const Digraph& g,
                                 std::span<const int> a, std::span<const int> b,
                                 std::span<const int> z, double certificate_residual,
                                 double hyp_tol = kHypothesisTol,
                                 double tol = kConclusionTol);

}  // namespace infocycle

#endif
