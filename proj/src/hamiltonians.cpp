#include "hzent/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "hzent/errors.hpp"

namespace hzent {

namespace {

double pair_interaction(double g, int n) { return 0.5 * g * n * (n - 1.0); }

}  // namespace

SymMatrix build_two_mode(const TwoModeParams& p, const FockBasis& basis) {
    if (basis.mode_count() != 2 || basis.sector_total(0) != p.N) {
        throw BasisMismatch("two-mode Hamiltonian for N=" + std::to_string(p.N) +
                            " needs the matching two-mode sector");
    }
    const int N = p.N;
    SymMatrix h(static_cast<Eigen::Index>(basis.dim()));
    for (int n = 0; n <= N; ++n) {
        h.set(n, n, pair_interaction(p.g, n) + pair_interaction(p.g, N - n));
        if (n < N) h.set(n + 1, n, p.kappa * std::sqrt((n + 1.0) * (N - n)));
    }
    return h;
}

SymMatrix build_four_mode(const FourModeParams& p, const FockBasis& basis) {
    if (basis.mode_count() != 4 || basis.sector_total(0) != p.N1 || basis.sector_total(1) != p.N2) {
        throw BasisMismatch("four-mode Hamiltonian for (N1, N2)=(" + std::to_string(p.N1) + ", " +
                            std::to_string(p.N2) + ") needs the matching sector");
    }
    SymMatrix h(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto& occ = basis[i];
        const int na1 = occ[0], nb1 = occ[1], na2 = occ[2], nb2 = occ[3];
        double diag = 0.0;
        for (const auto& [x, y] : {std::pair{na1, na2}, std::pair{nb1, nb2}}) {
            diag += pair_interaction(p.g11, x) + pair_interaction(p.g22, y) + p.g12 * x * y;
        }
        const auto ii = static_cast<Eigen::Index>(i);
        h.set(ii, ii, diag);

        // a1+ b1 and a2+ b2; the conjugate terms fill the other triangle.
        if (nb1 > 0) {
            const auto j = basis.index_of({na1 + 1, nb1 - 1, na2, nb2});
            h.set(static_cast<Eigen::Index>(*j), ii, p.kappa1 * std::sqrt((na1 + 1.0) * nb1));
        }
        if (nb2 > 0) {
            const auto j = basis.index_of({na1, nb1, na2 + 1, nb2 - 1});
            h.set(static_cast<Eigen::Index>(*j), ii, p.kappa2 * std::sqrt((na2 + 1.0) * nb2));
        }
    }
    return h;
}

}  // namespace hzent
