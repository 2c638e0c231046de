#include "infocycle/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "infocycle/info_measures.hpp"

namespace infocycle {

namespace {

constexpr double kPositivityFloor = 1e-9;

// Uniform double in the open interval (0,1): 53-bit draw with a half-ulp
// offset, so -log(u) is always finite and strictly positive.
double open_unit_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<Variable> default_variables(std::span<const int> cardinalities) {
    std::vector<Variable> vars;
    vars.reserve(cardinalities.size());
    for (std::size_t i = 0; i < cardinalities.size(); ++i)
        vars.push_back({"X" + std::to_string(i), cardinalities[i]});
    return vars;
}

void normalize(std::vector<double>& table) {
    double sum = 0.0;
    for (double v : table) sum += v;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw Error(ErrorCode::NonfiniteIterate, "normalization mass is " + std::to_string(sum));
    for (double& v : table) v /= sum;
}

double max_pairwise_mi(const JointDistribution& dist) {
    double best = 0.0;
    for (int i = 0; i < dist.var_count(); ++i)
        for (int j = i + 1; j < dist.var_count(); ++j)
            best = std::max(best, mutual_information(dist, VarSet{1} << i, VarSet{1} << j));
    return best;
}

}  // namespace

JointDistribution random_joint(std::span<const int> cardinalities, std::uint64_t seed) {
    if (cardinalities.empty()) throw Error(ErrorCode::EmptySubset, "no variables");
    std::size_t cells = 1;
    for (int c : cardinalities) {
        if (c < 2) throw Error(ErrorCode::BadCardinality, "cardinalities must be >= 2");
        cells *= static_cast<std::size_t>(c);
        if (cells > kMaxCells) throw Error(ErrorCode::SizeCapExceeded, "table exceeds cell cap");
    }

    JointDistribution d;
    d.variables = default_variables(cardinalities);
    d.table.resize(cells);
    std::mt19937_64 rng(seed);
    for (double& v : d.table) v = -std::log(open_unit_uniform(rng));
    normalize(d.table);
    return d;
}

std::vector<double> random_marginal(int cardinality, std::uint64_t seed) {
    if (cardinality < 2) throw Error(ErrorCode::BadCardinality, "cardinality must be >= 2");
    std::vector<double> m(cardinality);
    std::mt19937_64 rng(seed);
    for (double& v : m) v = -std::log(open_unit_uniform(rng));
    normalize(m);
    return m;
}

JointDistribution independent_joint(const std::vector<std::vector<double>>& marginals) {
    if (marginals.empty()) throw Error(ErrorCode::InvalidMarginal, "no marginals given");
    std::size_t cells = 1;
    for (const auto& m : marginals) {
        if (m.empty()) throw Error(ErrorCode::InvalidMarginal, "empty marginal");
        double sum = 0.0;
        for (double p : m) {
            if (!(p >= 0.0)) throw Error(ErrorCode::InvalidMarginal, "negative marginal entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kTableTol)
            throw Error(ErrorCode::InvalidMarginal,
                        "marginal sums to " + std::to_string(sum));
        cells *= m.size();
        if (cells > kMaxCells) throw Error(ErrorCode::SizeCapExceeded, "table exceeds cell cap");
    }

    JointDistribution d;
    d.variables.reserve(marginals.size());
    for (std::size_t i = 0; i < marginals.size(); ++i)
        d.variables.push_back({"X" + std::to_string(i), static_cast<int>(marginals[i].size())});
    d.table.assign(cells, 0.0);
    std::vector<int> digits(marginals.size(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        double p = 1.0;
        for (std::size_t i = 0; i < marginals.size(); ++i) p *= marginals[i][digits[i]];
        d.table[cell] = p;
        for (int i = static_cast<int>(marginals.size()) - 1; i >= 0; --i) {
            if (++digits[i] < static_cast<int>(marginals[i].size())) break;
            digits[i] = 0;
        }
    }
    return d;
}

namespace {

JointDistribution floored(const JointDistribution& dist) {
    JointDistribution q = dist;
    for (double& v : q.table) v = std::max(v, kPositivityFloor);
    normalize(q.table);
    return q;
}

// One round of q <- normalize(prod_i q(x_i | x_{i(+)1})).
JointDistribution project_once(const JointDistribution& q, const CycleSpec& cycle) {
    const int n = q.var_count();
    JointDistribution next = q;
    std::vector<ConditionalTable> factors;
    factors.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int target[1] = {cycle.order[i]};
        const int given[1] = {cycle.successor(i)};
        factors.push_back(conditional(q, target, given));
    }
    std::vector<int> digits(n, 0);
    for (std::size_t cell = 0; cell < next.table.size(); ++cell) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            const auto& f = factors[i];
            const std::size_t row = static_cast<std::size_t>(digits[cycle.successor(i)]);
            if (!f.defined(row)) {
                p = 0.0;
                break;
            }
            p *= f.value(row, static_cast<std::size_t>(digits[cycle.order[i]]));
        }
        next.table[cell] = p;
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < q.variables[i].cardinality) break;
            digits[i] = 0;
        }
    }
    normalize(next.table);
    return next;
}

}  // namespace

SearchResult ipf_cycle_projection(const JointDistribution& dist, const CycleSpec& cycle,
                                  int max_iters, double tol) {
    cycle.check_against(dist);

    SearchResult result;
    JointDistribution q = floored(dist);
    result.best = q;
    result.residual = cycle_factorization_residual(q, cycle);
    result.iterations = 0;

    while (result.residual > tol && result.iterations < static_cast<std::uint64_t>(max_iters)) {
        q = project_once(q, cycle);
        ++result.iterations;
        const double r = cycle_factorization_residual(q, cycle);
        if (r < result.residual) {
            result.residual = r;
            result.best = q;
        }
    }
    result.converged = result.residual <= tol;
    result.dependence_bits = max_pairwise_mi(result.best);
    return result;
}

namespace {

// Greedy pairwise mass transfers, shrinking step sizes; returns the number of
// accepted moves.
std::uint64_t coordinate_descent(JointDistribution& q, const CycleSpec& cycle, double& residual,
                                 double tol) {
    static const double kSteps[] = {3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    const std::size_t cells = q.table.size();
    std::uint64_t accepted = 0;
    for (double step : kSteps) {
        if (residual <= tol) break;
        bool improved = true;
        int rounds = 0;
        while (improved && rounds++ < 4 && residual > tol) {
            improved = false;
            for (std::size_t from = 0; from < cells; ++from) {
                for (std::size_t to = 0; to < cells; ++to) {
                    if (to == from) continue;
                    if (q.table[from] < step) break;  // accepted moves drain this cell
                    JointDistribution cand = q;
                    cand.table[from] -= step;
                    cand.table[to] += step;
                    const double r = cycle_factorization_residual(cand, cycle);
                    if (r < residual - 1e-15) {
                        q = std::move(cand);
                        residual = r;
                        improved = true;
                        ++accepted;
                    }
                }
            }
        }
    }
    if (accepted > 0) {
        normalize(q.table);  // absorb rounding drift from the transfers
        residual = cycle_factorization_residual(q, cycle);
    }
    return accepted;
}

}  // namespace

SearchResult search_nontrivial_cyclic(std::span<const int> cardinalities, const CycleSpec& cycle,
                                      int attempts, double tol, std::uint64_t seed) {
    if (cardinalities.size() < 3)
        throw Error(ErrorCode::NTooSmall,
                    "two-variable cyclic factorizations are necessarily independent (check t1); "
                    "search needs at least 3 variables");
    if (static_cast<int>(cardinalities.size()) != cycle.size())
        throw Error(ErrorCode::ArityMismatch, "cycle arity differs from cardinality list");
    if (attempts < 1) throw Error(ErrorCode::NTooSmall, "attempts must be >= 1");

    constexpr int kProjectionIters = 400;

    bool have_converged = false;
    SearchResult best;
    bool have_any = false;

    for (int a = 0; a < attempts; ++a) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(a);
        SearchResult r = ipf_cycle_projection(random_joint(cardinalities, s), cycle,
                                              kProjectionIters, tol);
        r.seed = s;
        if (!r.converged) {
            JointDistribution q = r.best;
            double residual = r.residual;
            r.iterations += coordinate_descent(q, cycle, residual, tol);
            if (residual < r.residual) {
                r.best = std::move(q);
                r.residual = residual;
                r.converged = residual <= tol;
                r.dependence_bits = max_pairwise_mi(r.best);
            }
        }

        if (!have_any) {
            best = r;
            have_any = true;
            have_converged = r.converged;
            continue;
        }
        if (r.converged && !have_converged) {
            best = r;
            have_converged = true;
        } else if (r.converged == have_converged) {
            const bool better = have_converged ? (r.dependence_bits > best.dependence_bits)
                                               : (r.residual < best.residual);
            if (better) best = r;
        }
    }
    return best;
}

}  // namespace infocycle
