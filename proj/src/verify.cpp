#include "infocycle/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace infocycle {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Vacuous: return "vacuous";
    }
    return "?";
}

const char* term_class_name(TermClass c) {
    switch (c) {
        case TermClass::ConditionalEntropy: return "conditional-entropy";
        case TermClass::AdjacentDisjoint: return "Lemma3-adjacent";
        case TermClass::NonadjacentDsep: return "Lemma4-nonadjacent";
    }
    return "?";
}

CycleSpec CycleSpec::identity(int n) {
    CycleSpec c;
    c.order.resize(n);
    for (int i = 0; i < n; ++i) c.order[i] = i;
    return c;
}

CycleSpec CycleSpec::reversed() const {
    CycleSpec c = *this;
    std::reverse(c.order.begin(), c.order.end());
    return c;
}

void CycleSpec::check_against(const JointDistribution& dist) const {
    const int n = dist.var_count();
    if (size() != n)
        throw Error(ErrorCode::ArityMismatch,
                    "cycle lists " + std::to_string(size()) + " variables, distribution has " +
                        std::to_string(n));
    if (n < 2) throw Error(ErrorCode::NTooSmall, "a cycle needs at least 2 variables");
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v])
            throw Error(ErrorCode::ArityMismatch,
                        "cycle order is not a permutation of the variable indices");
        seen[v] = 1;
    }
}

namespace {

struct CycleFactors {
    std::vector<ConditionalTable> tables;  // tables[i]: p(order[i] | successor(i))
};

CycleFactors cycle_factors(const JointDistribution& dist, const CycleSpec& cycle) {
    CycleFactors f;
    f.tables.reserve(cycle.size());
    for (int i = 0; i < cycle.size(); ++i) {
        const int target[1] = {cycle.order[i]};
        const int given[1] = {cycle.successor(i)};
        f.tables.push_back(conditional(dist, target, given));
    }
    return f;
}

// The cell-wise product of the cycle factors. Cells whose conditioning
// assignment hits an undefined row get 0 (their joint probability is 0).
std::vector<double> factor_product_table(const JointDistribution& dist, const CycleSpec& cycle,
                                         const CycleFactors& factors) {
    const int n = dist.var_count();
    std::vector<double> product(dist.cell_count(), 0.0);
    std::vector<int> digits(n, 0);
    for (std::size_t cell = 0; cell < product.size(); ++cell) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            const auto& f = factors.tables[i];
            const std::size_t row = static_cast<std::size_t>(digits[cycle.successor(i)]);
            if (!f.defined(row)) {
                p = 0.0;
                break;
            }
            p *= f.value(row, static_cast<std::size_t>(digits[cycle.order[i]]));
        }
        product[cell] = p;
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < dist.variables[i].cardinality) break;
            digits[i] = 0;
        }
    }
    return product;
}

double residual_from_product(const JointDistribution& dist, const std::vector<double>& product) {
    double r = 0.0;
    for (std::size_t i = 0; i < product.size(); ++i)
        r = std::max(r, std::abs(product[i] - dist.table[i]));
    return r;
}

VarSet full_mask(int n) { return (VarSet{1} << n) - 1; }

double max_abs(const std::map<std::string, double>& values) {
    double m = 0.0;
    for (const auto& [k, v] : values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double cycle_factorization_residual(const JointDistribution& dist, const CycleSpec& cycle) {
    cycle.check_against(dist);
    const CycleFactors factors = cycle_factors(dist, cycle);
    return residual_from_product(dist, factor_product_table(dist, cycle, factors));
}

SupportDiagnostics support_diagnostics(const JointDistribution& dist, const CycleSpec& cycle) {
    cycle.check_against(dist);
    SupportDiagnostics s;
    for (double p : dist.table)
        if (p == 0.0) ++s.zero_cells;
    const CycleFactors factors = cycle_factors(dist, cycle);
    for (const auto& t : factors.tables) s.undefined_rows += t.undefined_row_count();
    return s;
}

VerificationReport verify_theorem1(const JointDistribution& dist, double hyp_tol,
                                   double concl_tol) {
    if (dist.var_count() != 2)
        throw Error(ErrorCode::ArityMismatch, "two-variable check needs exactly 2 variables");
    const CycleSpec cycle = CycleSpec::identity(2);

    VerificationReport r;
    r.check = "t1";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = concl_tol;
    r.hypothesis_residual = cycle_factorization_residual(dist, cycle);
    r.hypothesis_satisfied = r.hypothesis_residual <= hyp_tol;
    r.support = support_diagnostics(dist, cycle);

    r.conclusion_values["mutual_information_bits"] = mutual_information(dist, 0b01, 0b10);
    r.conclusion_values["product_of_marginals_distance"] =
        max_abs_distance(dist, product_of_marginals(dist));

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = max_abs(r.conclusion_values) <= concl_tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

VerificationReport verify_theorem2(const JointDistribution& dist, const CycleSpec& cycle,
                                   double hyp_tol, double concl_tol) {
    VerificationReport r;
    r.check = "t2";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = concl_tol;
    r.hypothesis_residual = cycle_factorization_residual(dist, cycle);
    r.hypothesis_satisfied = r.hypothesis_residual <= hyp_tol;
    r.support = support_diagnostics(dist, cycle);

    r.conclusion_values["co_information_bits"] = co_information(dist);

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = std::abs(r.conclusion_values["co_information_bits"]) <= concl_tol
                        ? Verdict::Pass
                        : Verdict::Fail;
    return r;
}

VerificationReport verify_theorem3(const JointDistribution& dist, const CycleSpec& cycle,
                                   double hyp_tol, double concl_tol) {
    VerificationReport r;
    r.check = "t3";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = concl_tol;
    r.hypothesis_residual = cycle_factorization_residual(dist, cycle);
    r.hypothesis_satisfied = r.hypothesis_residual <= hyp_tol;
    r.support = support_diagnostics(dist, cycle);

    r.conclusion_values["reversed_cycle_residual"] =
        cycle_factorization_residual(dist, cycle.reversed());

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = r.conclusion_values["reversed_cycle_residual"] <= concl_tol ? Verdict::Pass
                                                                                : Verdict::Fail;
    return r;
}

VerificationReport verify_lemma1(const JointDistribution& dist, const CycleSpec& cycle,
                                 double hyp_tol, double concl_tol) {
    VerificationReport r;
    r.check = "l1";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = concl_tol;
    r.hypothesis_residual = cycle_factorization_residual(dist, cycle);
    r.hypothesis_satisfied = r.hypothesis_residual <= hyp_tol;
    r.support = support_diagnostics(dist, cycle);

    const int n = dist.var_count();
    double cond_sum = 0.0;
    for (int i = 0; i < n; ++i)
        cond_sum += conditional_entropy(dist, VarSet{1} << cycle.order[i],
                                        VarSet{1} << cycle.successor(i));
    const double joint = entropy(dist, full_mask(n));
    r.conclusion_values["joint_entropy_bits"] = joint;
    r.conclusion_values["conditional_entropy_sum_bits"] = cond_sum;
    r.conclusion_values["gap_bits"] = joint - cond_sum;

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = std::abs(joint - cond_sum) <= concl_tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

namespace {

SetExpression union_of_cycle_differences(const CycleSpec& cycle) {
    SetExpression expr = SetExpression::ground(cycle.order[0]) -
                         SetExpression::ground(cycle.successor(0));
    for (int i = 1; i < cycle.size(); ++i)
        expr = expr | (SetExpression::ground(cycle.order[i]) -
                       SetExpression::ground(cycle.successor(i)));
    return expr;
}

}  // namespace

VerificationReport verify_lemma2(const JointDistribution& dist, const CycleSpec& cycle,
                                 double tol) {
    cycle.check_against(dist);
    VerificationReport r;
    r.check = "l2";
    r.hypothesis_tol = tol;
    r.conclusion_tol = tol;
    r.hypothesis_residual = 0.0;     // identity holds for every valid distribution
    r.hypothesis_satisfied = true;
    r.support = support_diagnostics(dist, cycle);

    const AtomTable atoms = i_measure(dist);
    const double joint = entropy(dist, full_mask(dist.var_count()));
    const double union_measure = measure_of(atoms, union_of_cycle_differences(cycle));
    const double co = co_information(dist);
    r.conclusion_values["joint_entropy_bits"] = joint;
    r.conclusion_values["difference_union_bits"] = union_measure;
    r.conclusion_values["co_information_bits"] = co;
    r.conclusion_values["identity_gap_bits"] = joint - union_measure - co;

    r.verdict = std::abs(joint - union_measure - co) <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

std::vector<IeTerm> inclusion_exclusion_terms(const JointDistribution& dist,
                                              const CycleSpec& cycle) {
    cycle.check_against(dist);
    const int n = dist.var_count();
    if (n > 12)
        throw Error(ErrorCode::TooManyVariables,
                    "term expansion supports at most 12 variables (2^n - 1 terms)");

    const AtomTable atoms = i_measure(dist);

    // Atom masks of each cycle difference and of each variable's ground set.
    std::vector<AtomMask> diff(n, AtomMask(n));
    std::vector<AtomMask> ground(n, AtomMask(n));
    for (int i = 0; i < n; ++i)
        ground[i] = eval_set_expression(SetExpression::ground(i), n);
    for (int i = 0; i < n; ++i)
        diff[i] = ground[cycle.order[i]].and_not(ground[cycle.successor(i)]);

    std::vector<IeTerm> terms;
    terms.reserve((std::size_t{1} << n) - 1);
    for (std::uint32_t w = 1; w < (1u << n); ++w) {
        IeTerm term;
        term.positions = w;
        term.sign = (std::popcount(w) % 2 == 1) ? +1 : -1;

        bool adjacent = false;
        for (int i = 0; i < n && !adjacent; ++i)
            adjacent = ((w >> i) & 1u) && ((w >> ((i + 1) % n)) & 1u);
        term.classification = std::popcount(w) == 1 ? TermClass::ConditionalEntropy
                              : adjacent           ? TermClass::AdjacentDisjoint
                                                   : TermClass::NonadjacentDsep;

        AtomMask inter = AtomMask::universe(n);
        AtomMask heads = AtomMask::universe(n);  // intersection of the X_i in W
        AtomMask tails = AtomMask::universe(n);  // intersection of the successors
        AtomMask tail_union(n);
        for (int i = 0; i < n; ++i) {
            if (!((w >> i) & 1u)) continue;
            inter = inter & diff[i];
            heads = heads & ground[cycle.order[i]];
            tails = tails & ground[cycle.successor(i)];
            tail_union = tail_union | ground[cycle.successor(i)];
        }
        term.atoms_empty = inter.empty();
        term.value_bits = measure_of(atoms, inter);
        term.inter_minus_inter_bits = measure_of(atoms, heads.and_not(tails));
        term.inter_minus_union_bits = measure_of(atoms, heads.and_not(tail_union));
        terms.push_back(term);
    }
    return terms;
}

VerificationReport verify_terms(const JointDistribution& dist, const CycleSpec& cycle,
                                double hyp_tol, double concl_tol) {
    VerificationReport r;
    r.check = "l3l4-terms";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = concl_tol;
    r.hypothesis_residual = cycle_factorization_residual(dist, cycle);
    r.hypothesis_satisfied = r.hypothesis_residual <= hyp_tol;
    r.support = support_diagnostics(dist, cycle);
    r.terms = inclusion_exclusion_terms(dist, cycle);

    // Set-level facts that hold for every distribution: adjacent-containing
    // terms are exactly empty, and the signed terms add up to the union.
    bool adjacent_ok = true;
    double signed_sum = 0.0;
    double max_nonadjacent = 0.0;
    for (const auto& t : r.terms) {
        signed_sum += t.sign * t.value_bits;
        if (t.classification == TermClass::AdjacentDisjoint)
            adjacent_ok = adjacent_ok && t.atoms_empty && t.value_bits == 0.0;
        if (t.classification == TermClass::NonadjacentDsep)
            max_nonadjacent = std::max(max_nonadjacent, std::abs(t.value_bits));
    }
    const AtomTable atoms = i_measure(dist);
    const double union_measure = measure_of(atoms, union_of_cycle_differences(cycle));
    const double ie_gap = signed_sum - union_measure;

    r.conclusion_values["adjacent_terms_exact_zero"] = adjacent_ok ? 1.0 : 0.0;
    r.conclusion_values["inclusion_exclusion_gap_bits"] = ie_gap;
    r.conclusion_values["max_nonadjacent_term_bits"] = max_nonadjacent;

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = (adjacent_ok && std::abs(ie_gap) <= kDerivedTol &&
                     max_nonadjacent <= concl_tol)
                        ? Verdict::Pass
                        : Verdict::Fail;
    return r;
}

VerificationReport verify_lemma4_dsep(int n, std::span<const int> w) {
    if (n < 4)
        throw Error(ErrorCode::NTooSmall,
                    "non-adjacent positions require a cycle of at least 4 nodes");
    std::vector<int> positions(w.begin(), w.end());
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    if (positions.size() < 2)
        throw Error(ErrorCode::NTooSmall, "W needs at least two distinct positions");
    for (int p : positions)
        if (p < 0 || p >= n)
            throw Error(ErrorCode::IndexOutOfRange,
                        "position " + std::to_string(p) + " out of range");
    for (std::size_t x = 0; x < positions.size(); ++x)
        for (std::size_t y = x + 1; y < positions.size(); ++y) {
            const int j = positions[x], k = positions[y];
            if ((j + 1) % n == k || (k + 1) % n == j)
                throw Error(ErrorCode::AdjacentPair,
                            "positions " + std::to_string(j) + " and " + std::to_string(k) +
                                " are adjacent on the cycle");
        }

    VerificationReport r;
    r.check = "l4-dsep";
    r.hypothesis_satisfied = true;
    r.hypothesis_residual = 0.0;
    r.hypothesis_tol = 0.0;
    r.conclusion_tol = 0.0;

    const Digraph g = cycle_graph(n);
    bool all = true;
    for (std::size_t x = 0; x < positions.size(); ++x)
        for (std::size_t y = x + 1; y < positions.size(); ++y) {
            const int j = positions[x], k = positions[y];
            const int a[1] = {j}, b[1] = {k};
            const int z[2] = {(j + 1) % n, (k + 1) % n};
            const bool sep = d_separated(g, a, b, z);
            r.conclusion_values["dsep_" + std::to_string(j) + "_" + std::to_string(k)] =
                sep ? 1.0 : 0.0;
            all = all && sep;
        }
    r.verdict = all ? Verdict::Pass : Verdict::Fail;
    return r;
}

VerificationReport dsep_ci_check(const JointDistribution& dist, const Digraph& g,
                                 std::span<const int> a, std::span<const int> b,
                                 std::span<const int> z, double certificate_residual,
                                 double hyp_tol, double tol) {
    if (dist.var_count() != g.node_count())
        throw Error(ErrorCode::ArityMismatch, "distribution arity differs from graph size");

    VerificationReport r;
    r.check = "dsep-ci";
    r.hypothesis_tol = hyp_tol;
    r.conclusion_tol = tol;
    r.hypothesis_residual = certificate_residual;

    const bool separated = d_separated(g, a, b, z);
    const bool certified = certificate_residual <= hyp_tol;
    r.hypothesis_satisfied = separated && certified;

    VarSet am = 0, bm = 0, cm = 0;
    for (int v : a) am |= VarSet{1} << v;
    for (int v : b) bm |= VarSet{1} << v;
    for (int v : z) cm |= VarSet{1} << v;
    const double cmi = conditional_mutual_information(dist, am, bm, cm);
    r.conclusion_values["conditional_mutual_information_bits"] = cmi;
    r.conclusion_values["d_separated"] = separated ? 1.0 : 0.0;
    r.conclusion_values["certified"] = certified ? 1.0 : 0.0;

    for (double p : dist.table)
        if (p == 0.0) ++r.support.zero_cells;

    if (!r.hypothesis_satisfied)
        r.verdict = Verdict::Vacuous;
    else
        r.verdict = cmi <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

}  // namespace infocycle
