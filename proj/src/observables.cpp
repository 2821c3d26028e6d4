#include "hzent/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hzent/errors.hpp"

namespace hzent {

namespace {

constexpr double kClamp = 1e-12;
constexpr double kNegativeLimit = 1e-9;

double real_expect(const MixedState& s, const OperatorSum& op) { return expectation(s, op).real(); }

double clamp_variance(double v) {
    if (v < -kNegativeLimit) throw NumericalFailure("variance " + std::to_string(v) + " is negative");
    return v < kClamp && v < 0.0 ? 0.0 : v;
}

void require_pair(const FockBasis& basis, ModePair pair) {
    if (pair.first < 0 || pair.second < 0 || pair.first >= basis.mode_count() ||
        pair.second >= basis.mode_count() || pair.first == pair.second) {
        throw std::invalid_argument("mode pair is not part of the basis");
    }
}

// (J_X, J_Y, J_Z) of modes (a, b) in Schwinger form.
std::array<OperatorSum, 3> schwinger(int a, int b) {
    const Complex half(0.5), minus_half_i(0.0, -0.5);
    const OperatorSum ab = create(a) * annihilate(b);
    const OperatorSum ba = create(b) * annihilate(a);
    return {half * (ab + ba), minus_half_i * (ab - ba),
            half * (OperatorSum(number(a)) - OperatorSum(number(b)))};
}

OperatorSum transformed(const OperatorSum& op, const Eigen::MatrixXcd* u) {
    return u ? transform_modes(op, *u) : op;
}

// Means and symmetrized covariance of a list of hermitian operators.
template <int Size>
void spin_moments(const MixedState& s, const std::array<OperatorSum, Size>& ops,
                  Eigen::Matrix<double, Size, 1>& mean, Eigen::Matrix<double, Size, Size>& cov) {
    for (int i = 0; i < Size; ++i) mean[i] = real_expect(s, ops[i]);
    for (int i = 0; i < Size; ++i)
        for (int j = i; j < Size; ++j) {
            const OperatorSum sym = Complex(0.5) * (ops[i] * ops[j] + ops[j] * ops[i]);
            cov(i, j) = cov(j, i) = real_expect(s, sym.simplified()) - mean[i] * mean[j];
        }
    for (int i = 0; i < Size; ++i) cov(i, i) = clamp_variance(cov(i, i));
}

SpinStats pair_stats(const MixedState& state, ModePair pair, const Eigen::MatrixXcd* u) {
    require_pair(state.basis(), pair);
    auto ops = schwinger(pair.first, pair.second);
    for (auto& op : ops) op = transformed(op, u).simplified();
    SpinStats out;
    spin_moments<3>(state, ops, out.mean, out.covariance);
    out.total = real_expect(state, OperatorSum(number(pair.first)) + OperatorSum(number(pair.second)));
    return out;
}

void require_four_mode(const FockBasis& basis) {
    if (basis.mode_count() != 4) throw std::invalid_argument("local spins need a four-mode state");
}

Eigen::MatrixXcd local_rotation(PairRotation r) {
    switch (r) {
        case PairRotation::None:
            return Eigen::MatrixXcd::Identity(4, 4);
        case PairRotation::Pair1:
            return rotation_matrix(4, ModePair::pair(0));
        case PairRotation::BothPairs:
            return rotation_matrix(4, ModePair::pair(0)) * rotation_matrix(4, ModePair::pair(1));
        case PairRotation::PlanarPair1:
            return planar_rotation_matrix(4, ModePair::pair(0));
        case PairRotation::PlanarBothPairs:
            return planar_rotation_matrix(4, ModePair::pair(0)) * planar_rotation_matrix(4, ModePair::pair(1));
    }
    return Eigen::MatrixXcd::Identity(4, 4);
}

// W = exp(iG) on the pair sector with n quanta, G = sum_jk h(j, k) a_j+ a_k and
// exp(ih) = u, so that W a_k+ W^-1 = sum_m u(m, k) a_m+. Column k is W|k, n - k>.
Eigen::MatrixXcd pair_rotation_block(int n, const Eigen::Matrix2cd& h) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int p = 0; p <= n; ++p) {
        g(p, p) = h(0, 0) * static_cast<double>(p) + h(1, 1) * static_cast<double>(n - p);
        if (p < n) {
            const double r = std::sqrt(static_cast<double>((p + 1) * (n - p)));
            g(p + 1, p) = h(0, 1) * r;
            g(p, p + 1) = h(1, 0) * r;
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    const Eigen::VectorXcd phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// -i log(u) for a unitary 2x2 block.
Eigen::Matrix2cd unitary_log(const Eigen::Matrix2cd& u) {
    const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
    Eigen::Vector2cd angles;
    for (int i = 0; i < 2; ++i) angles[i] = std::arg(es.eigenvalues()[i]);
    const Eigen::Matrix2cd v = es.eigenvectors();
    const Eigen::Matrix2cd h = v * angles.asDiagonal() * v.inverse();
    return 0.5 * (h + h.adjoint());
}

// The state W|psi>, so that moments of the substituted modes equal plain
// moments of the result.
PureState rotate_pair(const PureState& psi, ModePair pair, const Eigen::MatrixXcd& u) {
    const FockBasis& basis = psi.basis();
    const int a = pair.first, b = pair.second;
    Eigen::Matrix2cd block;
    block << u(a, a), u(a, b), u(b, a), u(b, b);
    const Eigen::Matrix2cd h = unitary_log(block);
    std::map<int, Eigen::MatrixXcd> blocks;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amplitudes().size());
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Complex amp = psi.amplitudes()[static_cast<Eigen::Index>(i)];
        if (amp == Complex(0.0)) continue;
        Occupation occ = basis[i];
        const int n = occ[a] + occ[b], k = occ[a];
        auto it = blocks.find(n);
        if (it == blocks.end()) it = blocks.emplace(n, pair_rotation_block(n, h)).first;
        const Eigen::MatrixXcd& r = it->second;
        for (int p = 0; p <= n; ++p) {
            occ[a] = p;
            occ[b] = n - p;
            out[static_cast<Eigen::Index>(*basis.index_of(occ))] += r(p, k) * amp;
        }
    }
    return PureState(psi.basis_ptr(), std::move(out));
}

}  // namespace

namespace {

HZMoments moments_of(const MixedState& state, int m, ModePair pair, const Eigen::MatrixXcd* u) {
    if (m <= 0) throw OrderTooHigh("moment order must be positive, got " + std::to_string(m));
    require_pair(state.basis(), pair);
    const int a = pair.first, b = pair.second;
    const LadderString am = annihilate(a, m), adm = create(a, m);
    const LadderString bm = annihilate(b, m), bdm = create(b, m);
    auto ev = [&](const LadderString& op) {
        return u ? expectation(state, transform_modes(OperatorSum(op), *u).simplified()) : expectation(state, op);
    };

    HZMoments out;
    out.m = m;
    out.c = ev(am * bdm);
    out.q = ev(adm * am * bdm * bm).real();
    out.denomB = ev(adm * am * bm * bdm).real() - out.q;
    out.denomA = ev(bdm * bm * am * adm).real() - out.q;
    out.nA = ev(number(a)).real();
    out.nB = ev(number(b)).real();
    return out;
}

}  // namespace

HZMoments hz_moments(const MixedState& state, int m, ModePair pair) { return moments_of(state, m, pair, nullptr); }

HZMoments rotated_hz_moments(const MixedState& state, int m, ModePair pair) {
    require_pair(state.basis(), pair);
    const Eigen::MatrixXcd u = planar_rotation_matrix(state.basis().mode_count(), pair);
    std::vector<MixedState::Component> parts;
    for (const auto& c : state.components()) parts.push_back({c.weight, rotate_pair(c.state, pair, u)});
    return moments_of(MixedState(state.basis_ptr(), std::move(parts)), m, pair, nullptr);
}

SpinStats interwell_spin_stats(const MixedState& state, ModePair pair) {
    return pair_stats(state, pair, nullptr);
}

Eigen::MatrixXcd rotation_matrix(int mode_count, ModePair pair) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(mode_count, mode_count);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex ri(0.0, -r);  // 1/(sqrt(2) i)
    u(pair.first, pair.first) = ri;
    u(pair.first, pair.second) = ri;
    u(pair.second, pair.first) = r;
    u(pair.second, pair.second) = -r;
    return u;
}

Eigen::MatrixXcd planar_rotation_matrix(int mode_count, ModePair pair) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(mode_count, mode_count);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex ir(0.0, r);
    u(pair.first, pair.first) = r;
    u(pair.first, pair.second) = ir;
    u(pair.second, pair.first) = ir;
    u(pair.second, pair.second) = r;
    return u;
}

SpinStats rotated_pair_stats(const MixedState& state, ModePair pair) {
    require_pair(state.basis(), pair);
    const Eigen::MatrixXcd u = rotation_matrix(state.basis().mode_count(), pair);
    return pair_stats(state, pair, &u);
}

SpinQuartics local_spin_quartics(const MixedState& state, PairRotation rotation) {
    using namespace modes;
    require_four_mode(state.basis());
    const Eigen::MatrixXcd u = local_rotation(rotation);
    auto ev = [&](const OperatorSum& op) { return expectation(state, transform_modes(op, u).simplified()); };

    const OperatorSum jap = create(a1) * annihilate(a2), jam = create(a2) * annihilate(a1);
    const OperatorSum jbp = create(b1) * annihilate(b2), jbm = create(b2) * annihilate(b1);
    const OperatorSum jaz = Complex(0.5) * (OperatorSum(number(a2)) - OperatorSum(number(a1)));
    const OperatorSum jbz = Complex(0.5) * (OperatorSum(number(b2)) - OperatorSum(number(b1)));

    // J^2 - (J^Z)^2 = (J^+ J^- + J^- J^+)/2 at each site.
    const OperatorSum perp_a = Complex(0.5) * (jap * jam + jam * jap);
    const OperatorSum perp_b = Complex(0.5) * (jbp * jbm + jbm * jbp);

    SpinQuartics out;
    out.cross = ev(jap * jbm);
    out.quartic = ev(jap * jam * jbp * jbm).real();
    out.dA = 2.0 * ev(jaz * jbp * jbm).real();
    out.dB = 2.0 * ev(jap * jam * jbz).real();
    out.steerA = ev((perp_a + jaz) * perp_b).real();
    out.steerA_minus = ev((perp_a - jaz) * perp_b).real();
    return out;
}

LocalSpinMoments local_spin_moments(const MixedState& state, PairRotation rotation) {
    using namespace modes;
    require_four_mode(state.basis());
    const Eigen::MatrixXcd u = local_rotation(rotation);
    // Site spins are Schwinger spins of (a1, a2) and (b1, b2) with the Z sign
    // flipped to n_2 - n_1.
    auto sa = schwinger(a1, a2);
    auto sb = schwinger(b1, b2);
    sa[2] *= Complex(-1.0);
    sb[2] *= Complex(-1.0);
    std::array<OperatorSum, 6> ops{sa[0], sa[1], sa[2], sb[0], sb[1], sb[2]};
    for (auto& op : ops) op = transform_modes(op, u).simplified();
    LocalSpinMoments out;
    spin_moments<6>(state, ops, out.mean, out.covariance);
    return out;
}

Ellipsoid ellipsoid(const MixedState& state, ModePair pair) {
    const SpinStats s = interwell_spin_stats(state, pair);
    return {s.variance(), s.mean};
}

double quadrature_D(const MixedState& state, ModePair pair) {
    require_pair(state.basis(), pair);
    const int a = pair.first, b = pair.second;
    auto ev = [&](const LadderString& s) { return expectation(state, OperatorSum(s)); };
    const Complex ma = ev(annihilate(a)), mad = ev(create(a));
    const Complex mb = ev(annihilate(b)), mbd = ev(create(b));
    const Complex caa = ev(number(a)) - mad * ma;
    const Complex cbb = ev(number(b)) - mbd * mb;
    const Complex cab = ev(annihilate(a) * annihilate(b)) - ma * mb;
    const Complex cabd = ev(create(a) * create(b)) - mad * mbd;
    return 4.0 * (1.0 + caa + cbb - cab - cabd).real();
}

double reduced_entropy(const PureState& state) {
    if (state.basis().mode_count() != 2) throw std::invalid_argument("reduced_entropy needs a two-mode state");
    const double norm2 = state.amplitudes().squaredNorm();
    double s = 0.0;
    for (const Complex& c : state.amplitudes()) {
        const double p = std::norm(c) / norm2;
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

}  // namespace hzent
