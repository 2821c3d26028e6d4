#include "hzent/ensembles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hzent {

namespace {

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v) { return v.cast<Complex>(); }

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// log of the single-splitting amplitude sqrt(N! / (2^N n! (N-n)!)).
double log_binomial_amplitude(int N, int n) {
    return 0.5 * (log_factorial(N) - N * std::log(2.0) - log_factorial(n) - log_factorial(N - n));
}

double phase_sign(SplitterPhase phase, int n_b) {
    return phase == SplitterPhase::Minus && (n_b % 2) ? -1.0 : 1.0;
}

void require_nonnegative(int n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

// The site swap a_i <-> b_i reverses the lexicographic order of both bases,
// so index i maps to dim - 1 - i. Both Hamiltonians commute with it.
struct ParityBlock {
    std::vector<std::array<std::pair<Eigen::Index, double>, 2>> vectors;  // (index, coefficient)
    std::vector<int> sizes;
};

ParityBlock parity_block(Eigen::Index dim, int parity) {
    ParityBlock b;
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index j = dim - 1 - i;
        if (i < j) {
            b.vectors.push_back({{{i, r}, {j, parity * r}}});
            b.sizes.push_back(2);
        } else if (i == j && parity > 0) {
            b.vectors.push_back({{{i, 1.0}, {i, 0.0}}});
            b.sizes.push_back(1);
        }
    }
    return b;
}

SymMatrix restrict_to(const SymMatrix& h, const ParityBlock& b) {
    const auto n = static_cast<Eigen::Index>(b.vectors.size());
    SymMatrix out(n);
    for (Eigen::Index s = 0; s < n; ++s)
        for (Eigen::Index r = s; r < n; ++r) {
            double v = 0.0;
            for (int x = 0; x < b.sizes[static_cast<std::size_t>(r)]; ++x)
                for (int y = 0; y < b.sizes[static_cast<std::size_t>(s)]; ++y) {
                    const auto [i, ci] = b.vectors[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)];
                    const auto [j, cj] = b.vectors[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)];
                    v += ci * cj * h(i, j);
                }
            out.set(r, s, v);
        }
    return out;
}

Eigen::VectorXd expand(const Eigen::VectorXd& x, const ParityBlock& b, Eigen::Index dim) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (std::size_t r = 0; r < b.vectors.size(); ++r)
        for (int k = 0; k < b.sizes[r]; ++k) v[b.vectors[r][static_cast<std::size_t>(k)].first] +=
            b.vectors[r][static_cast<std::size_t>(k)].second * x[static_cast<Eigen::Index>(r)];
    return v;
}

// Ground state restricted to definite site-swap parity. With nonzero
// tunneling the exact ground state is nondegenerate (Perron-Frobenius after
// the gauge (-1)^n_a), so it has a definite parity even when its partner lies
// within rounding distance; solving in the full space would return an
// arbitrary, symmetry-broken mixture of the two. `expected` is the parity
// predicted from the tunneling signs, or 0 when unknown.
GroundResult symmetric_ground(const SymMatrix& h, BasisPtr basis, int expected, const GroundOptions& opt) {
    const Eigen::Index dim = h.dim();
    if (dim == 1) return ground_state(h, std::move(basis), opt);

    const ParityBlock even = parity_block(dim, +1), odd = parity_block(dim, -1);
    const auto ge = ground_pair(restrict_to(h, even), opt);
    const auto go = ground_pair(restrict_to(h, odd), opt);
    const double h_norm = h.norm_inf();
    const double tie = opt.degenerate_tol * h_norm;

    bool pick_even = ge.energy <= go.energy;
    if (std::abs(ge.energy - go.energy) < tie && expected != 0) pick_even = expected > 0;
    const auto& g = pick_even ? ge : go;
    const auto& other = pick_even ? go : ge;

    Eigen::VectorXd v = expand(g.vector, pick_even ? even : odd, dim);
    detail::fix_sign(v);
    const double gap = std::max(0.0, std::min(g.gap, other.energy - g.energy));
    const double residual = (h * v - g.energy * v).norm();
    return {g.energy, PureState(std::move(basis), to_complex(v)), gap, gap < tie, residual};
}

int pair_parity(double kappa, int total) {
    if (kappa == 0.0) return 0;
    return kappa > 0.0 && total % 2 ? -1 : 1;
}

}  // namespace

GroundResult ground_state(const SymMatrix& h, BasisPtr basis, const GroundOptions& opt) {
    const auto g = ground_pair(h, opt);
    return {g.energy, PureState(std::move(basis), to_complex(g.vector)), g.gap, g.degenerate, g.residual};
}

GroundResult ground_two_mode(const TwoModeParams& p, const GroundOptions& opt) {
    auto basis = enumerate_two_mode(p.N);
    return symmetric_ground(build_two_mode(p, *basis), basis, pair_parity(p.kappa, p.N), opt);
}

GroundResult ground_four_mode(const FourModeParams& p, const GroundOptions& opt) {
    auto basis = enumerate_four_mode(p.N1, p.N2);
    return symmetric_ground(build_four_mode(p, *basis), basis,
                            pair_parity(p.kappa1, p.N1) * pair_parity(p.kappa2, p.N2), opt);
}

MixedState thermal_state(const ThermalSpec& spec) {
    if (!(spec.temperature >= 0.0)) throw std::invalid_argument("temperature must be nonnegative");

    BasisPtr basis;
    SymMatrix h;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, TwoModeParams>) {
                basis = enumerate_two_mode(p.N);
                h = build_two_mode(p, *basis);
            } else {
                basis = enumerate_four_mode(p.N1, p.N2);
                h = build_four_mode(p, *basis);
            }
        },
        spec.params);

    if (spec.temperature == 0.0) {
        return std::visit(
            [](const auto& p) {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>, TwoModeParams>)
                    return MixedState(ground_two_mode(p).state);
                else
                    return MixedState(ground_four_mode(p).state);
            },
            spec.params);
    }

    // Diagonalize each site-swap parity block separately.
    const Eigen::Index dim = h.dim();
    std::vector<std::pair<double, Eigen::VectorXd>> levels;
    for (const int parity : {+1, -1}) {
        const ParityBlock block = parity_block(dim, parity);
        if (block.vectors.empty()) continue;
        const Spectrum s = eig_full(restrict_to(h, block));
        for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
            levels.emplace_back(s.eigenvalues[k], expand(s.eigenvectors.col(k), block, dim));
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    const double e0 = levels.front().first;
    std::vector<double> w(levels.size());
    double z = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(-(levels[i].first - e0) / spec.temperature);
        z += w[i];
    }
    std::vector<MixedState::Component> components;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        Eigen::VectorXd& v = levels[i].second;
        detail::fix_sign(v);
        components.push_back({w[i] / z, PureState(basis, to_complex(v))});
    }
    return MixedState(basis, std::move(components));
}

PureState bs_single_fock(int N, SplitterPhase phase) {
    require_nonnegative(N, "N");
    auto basis = enumerate_two_mode(N);
    // Binomial amplitudes by ratio recurrence from the peak.
    Eigen::VectorXd mag(N + 1);
    const int peak = N / 2;
    mag[peak] = 1.0;
    for (int n = peak; n < N; ++n) mag[n + 1] = mag[n] * std::sqrt(static_cast<double>(N - n) / (n + 1));
    for (int n = peak; n > 0; --n) mag[n - 1] = mag[n] * std::sqrt(static_cast<double>(n) / (N - n + 1));
    mag /= mag.norm();
    Eigen::VectorXcd v(N + 1);
    for (int n = 0; n <= N; ++n) v[n] = phase_sign(phase, N - n) * mag[n];
    return PureState(std::move(basis), std::move(v));
}

PureState bs_double_fock(int N, SplitterPhase phase) {
    require_nonnegative(N, "N");
    auto basis = enumerate_two_mode(2 * N);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * N + 1);
    for (int n = 0; n <= N; ++n) {
        const double mag = std::exp(0.5 * (log_factorial(2 * n) + log_factorial(2 * (N - n))) -
                                    N * std::log(2.0) - log_factorial(n) - log_factorial(N - n));
        const double sign = (N - n) % 2 ? -1.0 : 1.0;
        v[2 * n] = phase_sign(phase, 2 * (N - n)) * sign * mag;
    }
    return PureState(std::move(basis), std::move(v));
}

PureState bs_four_mode(int N1, int N2, SplitterPhase phase) {
    require_nonnegative(N1, "N1");
    require_nonnegative(N2, "N2");
    auto basis = enumerate_four_mode(N1, N2);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->dim()));
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        const auto& occ = (*basis)[i];
        v[static_cast<Eigen::Index>(i)] = phase_sign(phase, occ[1] + occ[3]) *
                                          std::exp(log_binomial_amplitude(N1, occ[0]) +
                                                   log_binomial_amplitude(N2, occ[2]));
    }
    return PureState(std::move(basis), std::move(v));
}

}  // namespace hzent
