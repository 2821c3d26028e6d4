#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hzent/fock_basis.hpp"
#include "hzent/ladder.hpp"

namespace hzent {

/// Amplitude vector over a FockBasis.
class PureState {
public:
    PureState(BasisPtr basis, Eigen::VectorXcd amplitudes);

    static PureState basis_state(BasisPtr basis, std::size_t index);

    const BasisPtr& basis_ptr() const { return basis_; }
    const FockBasis& basis() const { return *basis_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

    double norm() const { return amplitudes_.norm(); }

    /// Throws NumericalFailure on a zero vector.
    PureState normalized() const;

    PureState with_global_phase(double phase) const;

private:
    BasisPtr basis_;
    Eigen::VectorXcd amplitudes_;
};

/// Spectral-form mixture sum_i w_i |psi_i><psi_i|.
///
/// Weights are nonnegative and sum to one; component states are expected to
/// be mutually orthonormal (see orthonormality_defect()).
class MixedState {
public:
    struct Component {
        double weight;
        PureState state;
    };

    MixedState(BasisPtr basis, std::vector<Component> components);
    MixedState(const PureState& pure);  // NOLINT(google-explicit-constructor)

    const BasisPtr& basis_ptr() const { return basis_; }
    const FockBasis& basis() const { return *basis_; }
    const std::vector<Component>& components() const { return components_; }
    bool is_pure() const { return components_.size() == 1; }

    /// Largest |<psi_i|psi_j> - delta_ij| over component pairs.
    double orthonormality_defect() const;

private:
    BasisPtr basis_;
    std::vector<Component> components_;
};

/// Applies `op` to `state` factor by factor, rightmost first.
///
/// The result is not normalized. Intermediate occupations may leave the sector
/// (e.g. the b in a+ b); only the final tuple has to lie in the basis, which is
/// guaranteed once `op` conserves every pair total. Throws SectorViolation
/// otherwise.
PureState apply_ladder(const PureState& state, const LadderString& op);

Complex expectation(const PureState& state, const LadderString& op);
Complex expectation(const MixedState& state, const LadderString& op);

/// Expectation of a sum of strings. Strings that change a pair total map the
/// sector onto an orthogonal one and contribute exactly zero; they are skipped
/// rather than rejected.
Complex expectation(const MixedState& state, const OperatorSum& op);

/// Dense sector matrix of a conserving string (column j = op |j>).
Eigen::MatrixXcd ladder_matrix(const FockBasis& basis, const LadderString& op);

}  // namespace hzent
