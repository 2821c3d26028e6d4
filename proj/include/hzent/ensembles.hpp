#pragma once

#include <variant>

#include "hzent/eigensolve.hpp"
#include "hzent/hamiltonians.hpp"
#include "hzent/state.hpp"

namespace hzent {

/// Ground state of a Hamiltonian together with its spectral diagnostics.
struct GroundResult {
    double energy;
    PureState state;
    double gap;
    bool degenerate;
    double residual;
};

GroundResult ground_state(const SymMatrix& h, BasisPtr basis, const GroundOptions& opt = {});

GroundResult ground_two_mode(const TwoModeParams& p, const GroundOptions& opt = {});
GroundResult ground_four_mode(const FourModeParams& p, const GroundOptions& opt = {});

/// Canonical ensemble exp(-H/T)/Z; T in units of kappa/k_B.
struct ThermalSpec {
    std::variant<TwoModeParams, FourModeParams> params;
    double temperature = 0.0;
};

/// Spectral mixture over the full spectrum. T = 0 returns the ground state
/// as a one-component mixture; components whose weight underflows to zero
/// are dropped.
MixedState thermal_state(const ThermalSpec& spec);

/// Sign of the vacuum input in the beam-splitter outputs
/// a = (a_in + s a_v)/sqrt(2), b = (a_in - s a_v)/sqrt(2).
enum class SplitterPhase { Plus, Minus };

/// |N>|0> through a 50:50 beam splitter:
/// sum_n sqrt(N! / (2^N n! (N-n)!)) |n>_a |N-n>_b.
PureState bs_single_fock(int N, SplitterPhase phase = SplitterPhase::Plus);

/// |N>|N> through a 50:50 beam splitter, supported on even occupations:
/// sum_n (-1)^(N-n) sqrt((2n)! (2(N-n))!) / (2^N n! (N-n)!) |2n>_a |2(N-n)>_b.
PureState bs_double_fock(int N, SplitterPhase phase = SplitterPhase::Plus);

/// Two independent single-Fock splittings, one per pair.
PureState bs_four_mode(int N1, int N2, SplitterPhase phase = SplitterPhase::Plus);

}  // namespace hzent
