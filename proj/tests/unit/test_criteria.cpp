#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "hzent/criteria.hpp"
#include "hzent/ensembles.hpp"
#include "hzent/errors.hpp"
#include "reference.hpp"

using namespace hzent;
using testing_support::random_state;
using testing_support::two_mode_fock;

namespace {

bool same_or_both_nan(double x, double y, double tol) {
    return (std::isnan(x) && std::isnan(y)) || std::abs(x - y) < tol;
}

// Spin-J matrices in the J_Z basis m = J, J-1, ..., -J.
struct SpinMatrices {
    Eigen::MatrixXcd x, y, z;
};

SpinMatrices spin_matrices(double J) {
    const int n = static_cast<int>(std::lround(2 * J)) + 1;
    SpinMatrices s{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double m = J - k;
        s.z(k, k) = m;
        if (k > 0) plus(k - 1, k) = std::sqrt(J * (J + 1) - m * (m + 1));
    }
    s.x = 0.5 * (plus + plus.adjoint());
    s.y = Complex(0.0, -0.5) * (plus - plus.adjoint());
    return s;
}

// Var J_X + Var J_Y minimized by brute force over the ground states of
// J_X^2 + J_Y^2 - lambda J_X on a fine lambda grid.
double planar_minimum_oracle(double J) {
    const SpinMatrices s = spin_matrices(J);
    const Eigen::MatrixXcd perp = s.x * s.x + s.y * s.y;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 4000; ++k) {
        const double lambda = (4 * J + 4) * k / 4000.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(perp - lambda * s.x);
        const Eigen::VectorXcd v = es.eigenvectors().col(0);
        const double mx = v.dot(s.x * v).real(), my = v.dot(s.y * v).real();
        best = std::min(best, v.dot(perp * v).real() - mx * mx - my * my);
    }
    return best;
}

}  // namespace

TEST_CASE("classification bands") {
    CHECK(classify(0.0) == Classification::EPRSteering);
    CHECK(classify(0.4999) == Classification::EPRSteering);
    CHECK(classify(0.5) == Classification::Entangled);
    CHECK(classify(0.5 - 1e-15) == Classification::Entangled);
    CHECK(classify(0.5 - 1e-9) == Classification::EPRSteering);
    CHECK(classify(1.0 - 1e-15) == Classification::SeparableConsistent);
    CHECK(classify(0.9999) == Classification::Entangled);
    CHECK(classify(1.0) == Classification::SeparableConsistent);
    CHECK(classify(7.0) == Classification::SeparableConsistent);
    CHECK(classify(std::nan("")) == Classification::Inconclusive);
    CHECK(std::string(to_string(Classification::EPRSteering)) == "EPRSteering");

    const auto r = CriterionResult::from_value(0.3);
    CHECK(r.threshold_entangled == 1.0);
    CHECK(r.threshold_steering == 0.5);
    CHECK(CriterionResult::inconclusive().classification == Classification::Inconclusive);
}

TEST_CASE("HZ criterion examples") {
    for (int N : {1, 2, 10, 60}) {
        const auto r = e_hz(hz_moments(bs_single_fock(N), 1));
        CHECK(std::abs(r.value - 0.5) < 1e-10);
        CHECK(r.classification == Classification::Entangled);
    }
    const auto d3 = e_hz(hz_moments(bs_double_fock(3), 2));
    CHECK(d3.value < 0.5);
    CHECK(d3.classification == Classification::EPRSteering);

    // d = 0 gives an inconclusive result, never an exception.
    const auto empty = e_hz(hz_moments(two_mode_fock(4, 4), 1));
    CHECK(empty.classification == Classification::Inconclusive);
    CHECK(std::isnan(empty.value));
}

TEST_CASE("HZ criterion against closed forms") {
    for (int N : {3, 6}) {
        const MixedState s = bs_single_fock(N);
        const auto f = reference::frame(s, 6);
        for (int m = 1; m <= N; ++m) {
            const auto ours = e_hz(hz_moments(s, m));
            const auto ref = e_hz(reference::hz(f, m, 0, 1));
            CHECK(same_or_both_nan(ours.value, ref.value, 1e-10));
        }
    }
}

TEST_CASE("product Fock states are never certified") {
    for (int N : {1, 4, 9})
        for (int n = 0; n <= N; ++n)
            for (int m = 1; m <= 3; ++m) {
                const auto r = e_hz(hz_moments(two_mode_fock(N, n), m));
                CHECK((r.classification == Classification::SeparableConsistent ||
                       r.classification == Classification::Inconclusive));
            }
}

TEST_CASE("planar and rotated spin forms") {
    for (int N : {2, 6, 20}) {
        const auto planar = e_hz_planar(interwell_spin_stats(bs_single_fock(N)));
        CHECK(std::abs(planar.value - 0.5) < 1e-12);
        const auto twin = interwell_spin_stats(two_mode_fock(N, N / 2));
        CHECK(e_hz_planar(twin).value >= 1.0);
        CHECK(e_hz_rotated(twin).value == doctest::Approx(twin.variance()[0] / (N / 2.0)).epsilon(1e-12));
        // g = 0 ground state is the binomial split: (0 + N/4)/(N/2).
        const auto g0 = interwell_spin_stats(ground_two_mode({1.0, 0.0, N}).state);
        CHECK(e_hz_rotated(g0).value == doctest::Approx(0.5).epsilon(1e-12));
    }
    const auto vac = interwell_spin_stats(PureState::basis_state(enumerate_two_mode(0), 0));
    CHECK(e_hz_planar(vac).classification == Classification::Inconclusive);
    CHECK(e_hz_rotated(vac).classification == Classification::Inconclusive);

    const auto opt = ground_two_mode(TwoModeParams::from_ratio(100, -2.0));
    CHECK(std::abs(e_hz_planar(interwell_spin_stats(opt.state)).value - e_hz(hz_moments(opt.state, 1)).value) <
          1e-10);
}

TEST_CASE("spin HZ criterion") {
    const auto bs = e_hz_spin(local_spin_quartics(bs_four_mode(5, 100)));
    CHECK(bs.value < 1.0);

    FourModeParams p;
    p.N1 = 5;
    p.N2 = 100;
    p.g11 = -2.1 / 5;
    p.g22 = -2.03 / 100;
    const auto opt = e_hz_spin(local_spin_quartics(ground_four_mode(p).state));
    CHECK(opt.value < 0.5);
    CHECK(opt.classification == Classification::EPRSteering);
    CHECK(opt.detail.count("raw_entangled") == 1);
    CHECK(opt.detail.count("raw_steering") == 1);

    const auto basis = enumerate_four_mode(3, 4);
    const auto frozen = PureState::basis_state(basis, *basis->index_of({1, 2, 3, 1}));
    const auto r = e_hz_spin(local_spin_quartics(frozen));
    CHECK((r.value >= 1.0 || r.classification == Classification::Inconclusive));
}

TEST_CASE("Duan and Heisenberg-product spin criteria") {
    std::mt19937_64 rng(17);
    // Independent site states: a product over sites A = (a1, a2) and B = (b1, b2)
    // with fixed pair totals means each pair is in a Fock state.
    const auto basis = enumerate_four_mode(2, 2);
    for (const auto& occ : basis->occupations()) {
        const auto s = PureState::basis_state(basis, *basis->index_of(occ));
        const auto lm = local_spin_moments(s);
        const auto d = duan_sum_spin(lm);
        CHECK((d.inconclusive || !d.passed));
        const auto h = heisenberg_product(lm);
        CHECK((h.inconclusive || !h.passed));
    }

    const MixedState zero = PureState::basis_state(enumerate_four_mode(0, 0), 0);
    CHECK(duan_sum_spin(local_spin_moments(zero)).inconclusive);
    CHECK(heisenberg_product(local_spin_moments(zero)).inconclusive);

    // Duan against the reference frame.
    const auto s = random_state(enumerate_four_mode(2, 3), rng);
    const auto lm = local_spin_moments(s);
    const auto rl = reference::local_moments(reference::frame(s, 4));
    CHECK(std::abs(duan_sum_spin(lm).lhs - duan_sum_spin(rl).lhs) < 1e-10);
    CHECK(std::abs(duan_sum_spin(lm).rhs - duan_sum_spin(rl).rhs) < 1e-10);

    // Grid refinement and A <-> B symmetry of the product form.
    const auto coarse = heisenberg_product(lm, 180);
    const auto fine = heisenberg_product(lm, 360);
    CHECK(std::abs(coarse.lhs - fine.lhs) < 1e-6);

    const auto bs = bs_four_mode(3, 3);
    LocalSpinMoments sym = local_spin_moments(bs);
    LocalSpinMoments swapped;
    Eigen::PermutationMatrix<6> perm;
    perm.indices() << 3, 4, 5, 0, 1, 2;
    swapped.mean = perm * sym.mean;
    swapped.covariance = perm * sym.covariance * perm.transpose();
    CHECK(std::abs(heisenberg_product(sym).lhs - heisenberg_product(swapped).lhs) < 1e-12);
    CHECK(std::abs(heisenberg_product(sym).rhs - heisenberg_product(swapped).rhs) < 1e-12);
    CHECK_THROWS(heisenberg_product(sym, 2));
}

TEST_CASE("planar squeezing bound C_J") {
    CHECK(std::abs(c_j(0.5) - 0.25) < 1e-8);
    for (double J : {1.0, 1.5, 3.0, 7.5}) {
        CAPTURE(J);
        CHECK(std::abs(c_j(J) - planar_minimum_oracle(J)) < 1e-5 * J);
    }
    CHECK(c_j(50.0) / 50.0 == doctest::Approx(0.15).epsilon(0.01 / 0.15));

    // Scaling check: log-log slope near 2/3.
    const double slope = std::log(c_j(60.0) / c_j(10.0)) / std::log(6.0);
    CHECK(slope == doctest::Approx(2.0 / 3.0).epsilon(0.05 / (2.0 / 3.0)));
    CHECK_THROWS(c_j(0.0));
    CHECK_THROWS(c_j(0.7));
}

TEST_CASE("C_J table and entanglement depth") {
    CJTable table(30.0);
    CHECK(table.j_max() == 30.0);
    const auto entries = table.entries();
    REQUIRE(entries.size() == 60);
    for (std::size_t k = 1; k < entries.size(); ++k)
        CHECK(entries[k].second / entries[k].first < entries[k - 1].second / entries[k - 1].first);
    CHECK(table.at(1.5) == doctest::Approx(c_j(1.5)).epsilon(1e-12));
    CHECK_THROWS_AS(table.at(40.0), std::out_of_range);

    CHECK(entanglement_depth(0.6, table) == 0);
    CHECK(entanglement_depth(0.5, table) == 0);
    const int small = entanglement_depth(0.49, table);
    CHECK(small >= 1);
    CHECK(small <= 3);
    int previous = 1 << 30;
    for (double e = 0.2; e < 0.5; e += 0.01) {
        const int d = entanglement_depth(e, table);
        CHECK(d <= previous);
        previous = d;
    }
    CHECK_THROWS_AS(entanglement_depth(0.05, table), TableExhausted);

    table.extend(60.0);
    CHECK(table.j_max() == 60.0);
    CHECK(entanglement_depth(0.149, table) == doctest::Approx(100).epsilon(0.02));
}

TEST_CASE("order-m coherence") {
    for (int N : {1, 2, 5}) {
        const auto c = order_m_coherence(bs_double_fock(N), 1);
        CHECK(std::abs(c.value) < 1e-15);
        CHECK_FALSE(c.present);
    }
    const auto d1 = order_m_coherence(bs_double_fock(1), 2);
    CHECK(std::abs(d1.value) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d1.present);
    for (int m : {1, 2, 3}) CHECK_FALSE(order_m_coherence(two_mode_fock(6, 6), m).present);
    CHECK_THROWS_AS(order_m_coherence(bs_single_fock(2), 0), OrderTooHigh);
}

TEST_CASE("coherent local oscillator ratio") {
    // At alpha = 1 the correlation term carries the factor a^4/(1+a^2)^2 = 1/4.
    HZMoments m;
    m.c = 2.0;
    m.q = 0.0;
    m.nA = m.nB = 4.0;
    const auto one = coherent_lo_ratio(m, 1.0);
    CHECK(one.value == doctest::Approx(1.0 - 0.25 * 4.0 / 4.0));
    CHECK(coherent_lo_ratio(m, 0.0).classification == Classification::Inconclusive);

    const auto g = ground_two_mode(TwoModeParams::from_ratio(40, -2.0));
    const auto h = hz_moments(g.state, 1);
    double previous = std::numeric_limits<double>::infinity();
    for (double a : {1.0, 3.0, 10.0, 30.0, 100.0, 1e4}) {
        const double v = coherent_lo_ratio(h, a).value;
        CHECK(v < previous);
        previous = v;
    }
    CHECK(std::abs(previous - e_hz(h).value) < 1e-6);
}

TEST_CASE("criteria are invariant under a global phase") {
    std::mt19937_64 rng(4);
    const auto s2 = random_state(enumerate_two_mode(6), rng);
    const auto t2 = s2.with_global_phase(1.234);
    for (int m : {1, 2, 3})
        CHECK(same_or_both_nan(e_hz(hz_moments(s2, m)).value, e_hz(hz_moments(t2, m)).value, 1e-12));
    CHECK(std::abs(e_hz_planar(interwell_spin_stats(s2)).value - e_hz_planar(interwell_spin_stats(t2)).value) < 1e-12);
    CHECK(std::abs(e_hz_rotated(interwell_spin_stats(s2)).value - e_hz_rotated(interwell_spin_stats(t2)).value) <
          1e-12);

    const auto s4 = random_state(enumerate_four_mode(2, 3), rng);
    const auto t4 = s4.with_global_phase(-2.5);
    CHECK(same_or_both_nan(e_hz_spin(local_spin_quartics(s4)).value, e_hz_spin(local_spin_quartics(t4)).value, 1e-12));
}
