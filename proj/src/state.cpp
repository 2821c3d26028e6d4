#include "hzent/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hzent/errors.hpp"

namespace hzent {

namespace {

// Applies one string to a single basis tuple. Returns false when the result
// vanishes; otherwise `occ` holds the final tuple and `coeff` the factor.
bool act_on_tuple(const LadderString& op, Occupation& occ, double& coeff) {
    const auto& factors = op.factors();
    coeff = 1.0;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        int& n = occ[it->mode];
        double prod = 1.0;
        if (it->creation) {
            for (int k = 1; k <= it->power; ++k) prod *= n + k;
            n += it->power;
        } else {
            if (n < it->power) return false;
            for (int k = 0; k < it->power; ++k) prod *= n - k;
            n -= it->power;
        }
        coeff *= std::sqrt(prod);
    }
    return true;
}

void require_conserving(const FockBasis& basis, const LadderString& op) {
    if (!op.conserves(basis)) {
        throw SectorViolation("ladder string '" + op.to_string() +
                              "' changes a conserved pair total");
    }
}

// <psi| op |psi> without materializing op|psi>.
Complex sandwich(const PureState& state, const LadderString& op) {
    const FockBasis& basis = state.basis();
    const auto& amp = state.amplitudes();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (amp[i] == Complex(0.0)) continue;
        Occupation occ = basis[i];
        double coeff;
        if (!act_on_tuple(op, occ, coeff)) continue;
        const auto j = basis.index_of(occ);
        acc += std::conj(amp[*j]) * coeff * amp[i];
    }
    return acc;
}

}  // namespace

PureState::PureState(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_) throw std::invalid_argument("PureState requires a basis");
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dim()) {
        throw std::invalid_argument("amplitude length " + std::to_string(amplitudes_.size()) +
                                    " does not match basis dimension " +
                                    std::to_string(basis_->dim()));
    }
}

PureState PureState::basis_state(BasisPtr basis, std::size_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(basis), std::move(v));
}

PureState PureState::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw NumericalFailure("cannot normalize a zero state");
    return PureState(basis_, amplitudes_ / n);
}

PureState PureState::with_global_phase(double phase) const {
    return PureState(basis_, amplitudes_ * std::polar(1.0, phase));
}

MixedState::MixedState(BasisPtr basis, std::vector<Component> components)
    : basis_(std::move(basis)), components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) throw std::invalid_argument("mixture weights must be nonnegative");
        if (!(c.state.basis() == *basis_)) {
            throw BasisMismatch("mixture component lives in a different sector");
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture weights sum to " + std::to_string(total));
    }
}

MixedState::MixedState(const PureState& pure)
    : basis_(pure.basis_ptr()), components_{{1.0, pure}} {}

double MixedState::orthonormality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& vi = components_[i].state.amplitudes();
        for (std::size_t j = i; j < components_.size(); ++j) {
            const Complex overlap = vi.dot(components_[j].state.amplitudes());
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(overlap - target));
        }
    }
    return worst;
}

PureState apply_ladder(const PureState& state, const LadderString& op) {
    const FockBasis& basis = state.basis();
    require_conserving(basis, op);
    const auto& amp = state.amplitudes();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amp.size());
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (amp[i] == Complex(0.0)) continue;
        Occupation occ = basis[i];
        double coeff;
        if (!act_on_tuple(op, occ, coeff)) continue;
        out[*basis.index_of(occ)] += coeff * amp[i];
    }
    return PureState(state.basis_ptr(), std::move(out));
}

Complex expectation(const PureState& state, const LadderString& op) {
    require_conserving(state.basis(), op);
    return sandwich(state, op);
}

Complex expectation(const MixedState& state, const LadderString& op) {
    require_conserving(state.basis(), op);
    Complex acc = 0.0;
    for (const auto& c : state.components()) {
        if (c.weight == 0.0) continue;
        acc += c.weight * sandwich(c.state, op);
    }
    return acc;
}

Complex expectation(const MixedState& state, const OperatorSum& op) {
    Complex acc = 0.0;
    for (const auto& [coeff, str] : op.terms()) {
        if (!str.conserves(state.basis())) continue;
        acc += coeff * expectation(state, str);
    }
    return acc;
}

Eigen::MatrixXcd ladder_matrix(const FockBasis& basis, const LadderString& op) {
    require_conserving(basis, op);
    const auto n = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        Occupation occ = basis[i];
        double coeff;
        if (!act_on_tuple(op, occ, coeff)) continue;
        m(static_cast<Eigen::Index>(*basis.index_of(occ)), static_cast<Eigen::Index>(i)) += coeff;
    }
    return m;
}

}  // namespace hzent
