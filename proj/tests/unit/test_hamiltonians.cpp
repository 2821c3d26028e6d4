#include <algorithm>
#include <vector>

#include "doctest.h"
#include "hzent/eigensolve.hpp"
#include "hzent/errors.hpp"
#include "hzent/hamiltonians.hpp"

using namespace hzent;

TEST_CASE("two-mode matrix entries") {
    const auto b1 = enumerate_two_mode(1);
    const SymMatrix h = build_two_mode({1.0, 0.0, 1}, *b1);
    CHECK(h(0, 0) == 0.0);
    CHECK(h(1, 1) == 0.0);
    CHECK(h(0, 1) == 1.0);

    const auto b2 = enumerate_two_mode(2);
    const SymMatrix g = build_two_mode({0.0, 2.0, 2}, *b2);
    CHECK(g(0, 0) == 2.0);
    CHECK(g(1, 1) == 0.0);
    CHECK(g(2, 2) == 2.0);

    const auto s = eig_full(build_two_mode({1.0, 0.0, 2}, *b2));
    CHECK(s.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(std::abs(s.eigenvalues[1]) < 1e-14);
    CHECK(s.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(build_two_mode({1.0, 0.0, 3}, *b2), BasisMismatch);
    CHECK_THROWS_AS(build_two_mode({1.0, 0.0, 2}, *enumerate_four_mode(1, 1)), BasisMismatch);
}

TEST_CASE("two-mode swap symmetry and linearity") {
    const int N = 17;
    const auto basis = enumerate_two_mode(N);
    const SymMatrix h = build_two_mode({0.7, -0.3, N}, *basis);
    const SymMatrix k = build_two_mode({1.0, 0.0, N}, *basis);
    const SymMatrix g = build_two_mode({0.0, 1.0, N}, *basis);
    const Eigen::MatrixXd d = h.to_dense();
    CHECK((d - d.reverse()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d - (0.7 * k + (-0.3) * g).to_dense()).cwiseAbs().maxCoeff() < 1e-14);
    for (Eigen::Index i = 0; i <= N; ++i)
        for (Eigen::Index j = 0; j <= N; ++j)
            if (std::abs(i - j) > 1) CHECK(d(i, j) == 0.0);
}

TEST_CASE("four-mode matrix") {
    const auto basis = enumerate_four_mode(1, 1);
    FourModeParams p;
    p.N1 = p.N2 = 1;
    const auto s = eig_full(build_four_mode(p, *basis));
    CHECK(s.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-14));

    FourModeParams c{0.0, 0.0, 0.0, 1.0, 0.0, 1, 1};
    const SymMatrix hc = build_four_mode(c, *basis);
    const auto i = static_cast<Eigen::Index>(*basis->index_of({1, 0, 1, 0}));
    CHECK(hc(i, i) == 1.0);
    CHECK_THROWS_AS(build_four_mode(c, *enumerate_four_mode(1, 2)), BasisMismatch);
}

TEST_CASE("decoupled four-mode spectrum is the sum of pair spectra") {
    for (auto [n1, n2] : {std::pair{3, 5}, std::pair{6, 9}, std::pair{1, 12}}) {
        FourModeParams p{0.8, 1.3, -0.4, 0.0, 0.25, n1, n2};
        const auto four = eig_full(build_four_mode(p, *enumerate_four_mode(n1, n2)));
        const auto one = eig_full(build_two_mode({p.kappa1, p.g11, n1}, *enumerate_two_mode(n1)));
        const auto two = eig_full(build_two_mode({p.kappa2, p.g22, n2}, *enumerate_two_mode(n2)));
        std::vector<double> sums;
        for (double x : one.eigenvalues) for (double y : two.eigenvalues) sums.push_back(x + y);
        std::sort(sums.begin(), sums.end());
        REQUIRE(static_cast<Eigen::Index>(sums.size()) == four.eigenvalues.size());
        for (std::size_t k = 0; k < sums.size(); ++k)
            CHECK(std::abs(four.eigenvalues[static_cast<Eigen::Index>(k)] - sums[k]) < 1e-9);
    }
}

TEST_CASE("effective nonlinearity") {
    CHECK(effective_chi({1, 1, 0.3, 0.3, 0.3, 1, 1}) == 0.0);
    CHECK(effective_chi({1, 1, 1.0, 0.0, 1.0, 1, 1}) == 1.0);
    CHECK(effective_chi({1, 1, 1.0, -1.0, 1.0, 1, 1}) == 2.0);
}
