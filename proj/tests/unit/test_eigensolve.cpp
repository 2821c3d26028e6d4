#include <random>

#include "doctest.h"
#include "hzent/eigensolve.hpp"
#include "hzent/hamiltonians.hpp"

using namespace hzent;

namespace {

SymMatrix random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymMatrix h(n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j; i < n; ++i) h.set(i, j, u(rng));
    return h;
}

double orthonormality_defect(const Eigen::MatrixXd& v) {
    return (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("small analytic spectra") {
    SymMatrix x(2);
    x.set(1, 0, 1.0);
    const auto s = eig_full(x);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));

    SymMatrix d(3);
    d.set(0, 0, 3.0);
    d.set(1, 1, 1.0);
    d.set(2, 2, 2.0);
    const auto t = eig_full(d);
    CHECK(t.eigenvalues == Eigen::Vector3d(1.0, 2.0, 3.0));
    CHECK(std::abs(t.eigenvectors(1, 0)) == 1.0);
    CHECK(std::abs(t.eigenvectors(2, 1)) == 1.0);
    CHECK(std::abs(t.eigenvectors(0, 2)) == 1.0);

    SymMatrix one(1);
    one.set(0, 0, -4.0);
    CHECK(eig_full(one).eigenvalues[0] == -4.0);
    CHECK(std::isinf(ground_pair(one).gap));
}

TEST_CASE("random reconstruction against the reference solver") {
    std::mt19937_64 rng(42);
    const SymMatrix h = random_symmetric(50, rng);
    const auto s = eig_full(h);
    const Eigen::MatrixXd a = h.to_dense();
    const Eigen::MatrixXd back = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(orthonormality_defect(s.eigenvectors) < 1e-10);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    CHECK((ref.eigenvalues() - s.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("residual and orthogonality bounds") {
    std::mt19937_64 rng(7);
    for (Eigen::Index n : {2, 3, 10, 64, 150}) {
        const SymMatrix h = random_symmetric(n, rng);
        const auto s = eig_full(h);
        CHECK(s.residual_bound <= 1e-10 * h.norm_inf());
        CHECK(orthonormality_defect(s.eigenvectors) < 1e-10);
        for (Eigen::Index k = 1; k < n; ++k) CHECK(s.eigenvalues[k - 1] <= s.eigenvalues[k]);
    }
}

TEST_CASE("deterministic output") {
    std::mt19937_64 rng(9);
    const SymMatrix h = random_symmetric(40, rng);
    const auto x = eig_full(h);
    const auto y = eig_full(h);
    CHECK(x.eigenvalues == y.eigenvalues);
    CHECK(x.eigenvectors == y.eigenvectors);
}

TEST_CASE("ground pair: dense and Lanczos paths") {
    const auto b100 = enumerate_two_mode(100);
    const auto g0 = ground_pair(build_two_mode({1.0, 0.0, 100}, *b100));
    CHECK(g0.energy == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(g0.gap == doctest::Approx(2.0).epsilon(1e-10));

    const auto b2 = enumerate_two_mode(2);
    CHECK(ground_pair(build_two_mode({1.0, 0.0, 2}, *b2)).energy == doctest::Approx(-2.0).epsilon(1e-14));

    SymMatrix id(10);
    for (Eigen::Index i = 0; i < 10; ++i) id.set(i, i, 1.0);
    CHECK(ground_pair(id).degenerate);

    GroundOptions lanczos;
    lanczos.method = GroundMethod::Lanczos;
    const auto l0 = ground_pair(build_two_mode({1.0, 0.0, 100}, *b100), lanczos);
    CHECK(l0.energy == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(l0.gap == doctest::Approx(2.0).epsilon(1e-9));
    CHECK((l0.vector - g0.vector).norm() < 1e-8);

    std::mt19937_64 rng(1);
    for (Eigen::Index n : {20, 120, 300}) {
        const SymMatrix h = random_symmetric(n, rng);
        const auto d = ground_pair(h);
        const auto l = ground_pair(h, lanczos);
        const double norm = h.norm_inf();
        CHECK(std::abs(d.energy - l.energy) < 1e-9 * norm);
        CHECK(l.residual <= 1e-10 * norm);
        CHECK(std::abs(d.gap - l.gap) < 1e-8 * norm);
        CHECK(std::abs(l.vector.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("ground pair sign convention") {
    const auto basis = enumerate_two_mode(30);
    const auto g = ground_pair(build_two_mode({1.0, 0.05, 30}, *basis));
    Eigen::Index peak;
    g.vector.cwiseAbs().maxCoeff(&peak);
    CHECK(g.vector[peak] > 0.0);
    CHECK(g.residual <= 1e-10 * build_two_mode({1.0, 0.05, 30}, *basis).norm_inf());
}

TEST_CASE("tridiagonal ground kernel") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (Eigen::Index n : {1, 2, 5, 40, 201}) {
        Eigen::VectorXd d(n), e(std::max<Eigen::Index>(n - 1, 0));
        for (auto& x : d) x = u(rng);
        for (auto& x : e) x = u(rng);
        SymMatrix h(n);
        for (Eigen::Index i = 0; i < n; ++i) h.set(i, i, d[i]);
        for (Eigen::Index i = 0; i + 1 < n; ++i) h.set(i + 1, i, e[i]);
        const auto ref = eig_full(h);
        const auto g = tridiagonal_ground<double>(d, e);
        CHECK(std::abs(g.energy - ref.eigenvalues[0]) < 1e-12 * std::max(1.0, h.norm_inf()));
        CHECK(g.residual < 1e-12 * std::max(1.0, h.norm_inf()));
        INFO(n);
        if (n > 1) CHECK(std::abs(g.gap - (ref.eigenvalues[1] - ref.eigenvalues[0])) < 1e-10);
    }
}
