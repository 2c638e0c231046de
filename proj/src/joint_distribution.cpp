#include "infocycle/joint_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>

namespace infocycle {

std::size_t JointDistribution::cell_count() const {
    std::size_t n = 1;
    for (const auto& v : variables) n *= static_cast<std::size_t>(v.cardinality);
    return n;
}

std::size_t JointDistribution::stride(int i) const {
    std::size_t s = 1;
    for (int k = i; k < var_count(); ++k) s *= static_cast<std::size_t>(variables[k].cardinality);
    return s;
}

std::size_t JointDistribution::index_of(std::span<const int> assignment) const {
    std::size_t idx = 0;
    for (int i = 0; i < var_count(); ++i) idx = idx * variables[i].cardinality + assignment[i];
    return idx;
}

void JointDistribution::assignment_of(std::size_t index, std::span<int> out) const {
    for (int i = var_count() - 1; i >= 0; --i) {
        out[i] = static_cast<int>(index % variables[i].cardinality);
        index /= variables[i].cardinality;
    }
}

std::optional<Violation> validate(const JointDistribution& dist) {
    std::set<std::string> seen;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < dist.variables.size(); ++i) {
        const auto& v = dist.variables[i];
        if (v.name.empty())
            return Violation{ErrorCode::EmptyVariableName, i, 0.0, "variable name is empty"};
        if (!seen.insert(v.name).second)
            return Violation{ErrorCode::DuplicateVariableName, i, 0.0,
                             "duplicate variable name '" + v.name + "'"};
        if (v.cardinality < 1)
            return Violation{ErrorCode::BadCardinality, i,
                             static_cast<double>(v.cardinality),
                             "cardinality of '" + v.name + "' must be positive"};
        cells *= static_cast<std::size_t>(v.cardinality);
        if (cells > kMaxCells)
            return Violation{ErrorCode::SizeCapExceeded, i, static_cast<double>(cells),
                             "table exceeds the cell cap"};
    }
    if (dist.table.size() != cells) {
        std::ostringstream msg;
        msg << "table has " << dist.table.size() << " entries, expected " << cells;
        return Violation{ErrorCode::LengthMismatch, dist.table.size(),
                         static_cast<double>(cells), msg.str()};
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.table.size(); ++i) {
        const double p = dist.table[i];
        if (!(p >= 0.0)) {  // also catches NaN
            std::ostringstream msg;
            msg << "entry " << i << " is " << p;
            return Violation{ErrorCode::NegativeProbability, i, p, msg.str()};
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTableTol) {
        std::ostringstream msg;
        msg << "entries sum to " << sum;
        return Violation{ErrorCode::NotNormalized, 0, sum, msg.str()};
    }
    return std::nullopt;
}

void require_valid(const JointDistribution& dist) {
    if (auto v = validate(dist)) throw Error(v->code, v->message);
}

namespace {

// Sorted, deduplicated, range-checked copy of an index set.
std::vector<int> canonical_index_set(std::span<const int> indices, int var_count,
                                     bool allow_empty) {
    std::vector<int> out(indices.begin(), indices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!allow_empty && out.empty()) throw Error(ErrorCode::EmptySubset, "empty variable subset");
    for (int i : out)
        if (i < 0 || i >= var_count)
            throw Error(ErrorCode::IndexOutOfRange,
                        "variable index " + std::to_string(i) + " out of range");
    return out;
}

}  // namespace

JointDistribution marginal(const JointDistribution& dist, std::span<const int> keep) {
    const std::vector<int> kept = canonical_index_set(keep, dist.var_count(), false);

    JointDistribution out;
    out.variables.reserve(kept.size());
    for (int i : kept) out.variables.push_back(dist.variables[i]);
    out.table.assign(out.cell_count(), 0.0);

    // Stride of each kept variable inside the output index.
    std::vector<std::size_t> out_strides(kept.size());
    {
        std::size_t s = 1;
        for (int k = static_cast<int>(kept.size()) - 1; k >= 0; --k) {
            out_strides[k] = s;
            s *= static_cast<std::size_t>(out.variables[k].cardinality);
        }
    }

    std::vector<int> digits(dist.var_count(), 0);
    const std::size_t cells = dist.cell_count();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t out_idx = 0;
        for (std::size_t k = 0; k < kept.size(); ++k) out_idx += digits[kept[k]] * out_strides[k];
        out.table[out_idx] += dist.table[cell];

        // odometer increment, last variable fastest
        for (int i = dist.var_count() - 1; i >= 0; --i) {
            if (++digits[i] < dist.variables[i].cardinality) break;
            digits[i] = 0;
        }
    }
    return out;
}

ConditionalTable conditional(const JointDistribution& dist, std::span<const int> targets,
                             std::span<const int> given) {
    ConditionalTable ct;
    ct.targets = canonical_index_set(targets, dist.var_count(), false);
    ct.given = canonical_index_set(given, dist.var_count(), true);
    for (int t : ct.targets)
        if (std::binary_search(ct.given.begin(), ct.given.end(), t))
            throw Error(ErrorCode::OverlappingSets,
                        "variable " + std::to_string(t) + " is both target and given");

    std::size_t tcells = 1, gcells = 1;
    for (int t : ct.targets) tcells *= static_cast<std::size_t>(dist.variables[t].cardinality);
    for (int g : ct.given) gcells *= static_cast<std::size_t>(dist.variables[g].cardinality);
    ct.target_cells = tcells;
    ct.given_cells = gcells;
    ct.rows.assign(gcells * tcells, 0.0);
    ct.row_defined.assign(gcells, 0);

    // Accumulate the joint mass of every (given, target) pair, then divide
    // rows by their mass.
    std::vector<std::size_t> t_strides(ct.targets.size()), g_strides(ct.given.size());
    {
        std::size_t s = 1;
        for (int k = static_cast<int>(ct.targets.size()) - 1; k >= 0; --k) {
            t_strides[k] = s;
            s *= static_cast<std::size_t>(dist.variables[ct.targets[k]].cardinality);
        }
        s = 1;
        for (int k = static_cast<int>(ct.given.size()) - 1; k >= 0; --k) {
            g_strides[k] = s;
            s *= static_cast<std::size_t>(dist.variables[ct.given[k]].cardinality);
        }
    }

    std::vector<double> row_mass(gcells, 0.0);
    std::vector<int> digits(dist.var_count(), 0);
    const std::size_t cells = dist.cell_count();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t tidx = 0, gidx = 0;
        for (std::size_t k = 0; k < ct.targets.size(); ++k)
            tidx += digits[ct.targets[k]] * t_strides[k];
        for (std::size_t k = 0; k < ct.given.size(); ++k)
            gidx += digits[ct.given[k]] * g_strides[k];
        ct.rows[gidx * tcells + tidx] += dist.table[cell];
        row_mass[gidx] += dist.table[cell];

        for (int i = dist.var_count() - 1; i >= 0; --i) {
            if (++digits[i] < dist.variables[i].cardinality) break;
            digits[i] = 0;
        }
    }

    for (std::size_t g = 0; g < gcells; ++g) {
        if (row_mass[g] == 0.0) continue;  // row stays undefined, entries zero
        ct.row_defined[g] = 1;
        for (std::size_t t = 0; t < tcells; ++t) ct.rows[g * tcells + t] /= row_mass[g];
    }
    return ct;
}

std::size_t ConditionalTable::undefined_row_count() const {
    std::size_t n = 0;
    for (char d : row_defined)
        if (!d) ++n;
    return n;
}

JointDistribution product_of_marginals(const JointDistribution& dist) {
    std::vector<std::vector<double>> margs;
    margs.reserve(dist.variables.size());
    for (int i = 0; i < dist.var_count(); ++i) {
        const int idx[1] = {i};
        margs.push_back(marginal(dist, idx).table);
    }

    JointDistribution out;
    out.variables = dist.variables;
    out.table.assign(dist.cell_count(), 1.0);
    std::vector<int> digits(dist.var_count(), 0);
    for (std::size_t cell = 0; cell < out.table.size(); ++cell) {
        double p = 1.0;
        for (int i = 0; i < dist.var_count(); ++i) p *= margs[i][digits[i]];
        out.table[cell] = p;
        for (int i = dist.var_count() - 1; i >= 0; --i) {
            if (++digits[i] < dist.variables[i].cardinality) break;
            digits[i] = 0;
        }
    }
    return out;
}

double max_abs_distance(const JointDistribution& a, const JointDistribution& b) {
    if (a.variables.size() != b.variables.size())
        throw Error(ErrorCode::ShapeMismatch, "different variable counts");
    for (std::size_t i = 0; i < a.variables.size(); ++i)
        if (a.variables[i].name != b.variables[i].name ||
            a.variables[i].cardinality != b.variables[i].cardinality)
            throw Error(ErrorCode::ShapeMismatch,
                        "variable " + std::to_string(i) + " differs between operands");
    if (a.table.size() != b.table.size())
        throw Error(ErrorCode::ShapeMismatch, "table sizes differ");
    double d = 0.0;
    for (std::size_t i = 0; i < a.table.size(); ++i)
        d = std::max(d, std::abs(a.table[i] - b.table[i]));
    return d;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeProbability: return "NegativeProbability";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyVariableName: return "EmptyVariableName";
        case ErrorCode::DuplicateVariableName: return "DuplicateVariableName";
        case ErrorCode::BadCardinality: return "BadCardinality";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::OverlappingSets: return "OverlappingSets";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::TooManyVariables: return "TooManyVariables";
        case ErrorCode::NTooSmall: return "NTooSmall";
        case ErrorCode::AdjacentPair: return "AdjacentPair";
        case ErrorCode::InvalidMarginal: return "InvalidMarginal";
        case ErrorCode::NonfiniteIterate: return "NonfiniteIterate";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BadDocument: return "BadDocument";
    }
    return "UnknownError";
}

}  // namespace infocycle
