#pragma once

#include "hzent/fock_basis.hpp"
#include "hzent/sym_matrix.hpp"

namespace hzent {

/// Two-well, one-component BEC. Energies in units of the tunneling rate.
struct TwoModeParams {
    double kappa = 1.0;
    double g = 0.0;
    int N = 0;

    /// g chosen so that N g / kappa equals `ratio`.
    static TwoModeParams from_ratio(int N, double ratio, double kappa = 1.0) {
        return {kappa, N > 0 ? ratio * kappa / N : 0.0, N};
    }
};

/// Two-well, two-component BEC. Pair 1 is (a1, b1), pair 2 is (a2, b2).
struct FourModeParams {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;
    int N1 = 0;
    int N2 = 0;
};

/// H = kappa (a+ b + a b+) + (g/2) (a+ a+ a a + b+ b+ b b).
SymMatrix build_two_mode(const TwoModeParams& p, const FockBasis& basis);

/// H = sum_i kappa_i (a_i+ b_i + a_i b_i+)
///     + (1/2) sum_ij g_ij (a_i+ a_j+ a_j a_i + b_i+ b_j+ b_j b_i).
///
/// Interactions are identical at both wells.
SymMatrix build_four_mode(const FourModeParams& p, const FockBasis& basis);

/// Nonlinearity left over once the local cross coupling is absorbed:
/// chi = (g11 + g22 - 2 g12) / 2.
inline double effective_chi(const FourModeParams& p) {
    return 0.5 * (p.g11 + p.g22 - 2.0 * p.g12);
}

}  // namespace hzent
