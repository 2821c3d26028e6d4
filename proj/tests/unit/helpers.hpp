#pragma once

#include <random>

#include "hzent/state.hpp"

namespace testing_support {

inline hzent::PureState random_state(const hzent::BasisPtr& basis, std::mt19937_64& rng, bool real = false) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->dim()));
    for (auto& x : v) x = hzent::Complex(gauss(rng), real ? 0.0 : gauss(rng));
    return hzent::PureState(basis, v).normalized();
}

// |n_a = n, n_b = N - n>
inline hzent::PureState two_mode_fock(int N, int n) {
    const auto basis = hzent::enumerate_two_mode(N);
    return hzent::PureState::basis_state(basis, *basis->index_of({n, N - n, 0, 0}));
}

}  // namespace testing_support
