#ifndef INFOCYCLE_TESTS_FIXTURES_HPP
#define INFOCYCLE_TESTS_FIXTURES_HPP

#include <vector>

#include "infocycle/joint_distribution.hpp"

namespace fixtures {

using infocycle::JointDistribution;

inline JointDistribution uniform_pair() {
    return {{{"X", 2}, {"Y", 2}}, {0.25, 0.25, 0.25, 0.25}};
}

// X uniform, Y == X.
inline JointDistribution copy_pair() {
    return {{{"X", 2}, {"Y", 2}}, {0.5, 0.0, 0.0, 0.5}};
}

// X, Y uniform independent, Z = X xor Y: mass 1/4 on each even-parity cell.
inline JointDistribution xor_triple() {
    JointDistribution d{{{"X", 2}, {"Y", 2}, {"Z", 2}}, std::vector<double>(8, 0.0)};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const int idx[3] = {x, y, x ^ y};
            d.at(idx) = 0.25;
        }
    return d;
}

inline JointDistribution independent_pair(double px0, double py0) {
    return {{{"X", 2}, {"Y", 2}},
            {px0 * py0, px0 * (1 - py0), (1 - px0) * py0, (1 - px0) * (1 - py0)}};
}

// p(x) p(y|x) p(z|y) with asymmetric kernels; I(X;Z|Y) = 0 by construction.
inline JointDistribution markov_chain_triple() {
    const double px[2] = {0.3, 0.7};
    const double py_x[2][2] = {{0.8, 0.2}, {0.2, 0.8}};
    const double pz_y[2][2] = {{0.7, 0.3}, {0.4, 0.6}};
    JointDistribution d{{{"X", 2}, {"Y", 2}, {"Z", 2}}, std::vector<double>(8, 0.0)};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const int idx[3] = {x, y, z};
                d.at(idx) = px[x] * py_x[x][y] * pz_y[y][z];
            }
    return d;
}

// A pair with p(Y=1) = 0, to exercise undefined conditional rows.
inline JointDistribution zero_column_pair() {
    return {{{"X", 2}, {"Y", 2}}, {0.6, 0.0, 0.4, 0.0}};
}

}  // namespace fixtures

#endif
