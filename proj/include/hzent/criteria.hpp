#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hzent/observables.hpp"

namespace hzent {

enum class Classification { SeparableConsistent = 0, Entangled = 1, EPRSteering = 2, Inconclusive = 3 };

const char* to_string(Classification c);

/// Values within this distance below a threshold are assigned to the band above it.
inline constexpr double kBandTolerance = 1e-12;

/// Band of a criterion value: < 0.5 steering, < 1 entangled, otherwise
/// separable-consistent, with round-off at a threshold never certifying.
Classification classify(double value);

struct CriterionResult {
    double value = 0;
    double threshold_entangled = 1.0;
    double threshold_steering = 0.5;
    Classification classification = Classification::Inconclusive;
    /// Moments and auxiliary quantities the value was computed from.
    std::map<std::string, double> detail;

    static CriterionResult inconclusive(std::map<std::string, double> detail = {});
    static CriterionResult from_value(double value, std::map<std::string, double> detail = {});
};

/// E = 1 + (q - |c|^2)/d with d = min(nA, nB) for m = 1 and
/// d = min(denomA, denomB) for m >= 2.
CriterionResult e_hz(const HZMoments& m);

/// (Var J_X + Var J_Y)/(N/2).
CriterionResult e_hz_planar(const SpinStats& s);

/// (Var J_X + Var J_Z)/(N/2).
CriterionResult e_hz_rotated(const SpinStats& s);

/// Local-spin form 1 + (quartic - |cross|^2)/min(dA, dB). The detail map
/// also records the strict inequalities |cross|^2 > quartic (key
/// "raw_entangled") and |cross|^2 > min(steerA, steerA_minus)
/// ("raw_steering").
CriterionResult e_hz_spin(const SpinQuartics& qt);

/// Outcome of a two-sided inequality lhs < rhs.
struct InequalityResult {
    double lhs = 0;
    double rhs = 0;
    bool passed = false;
    bool inconclusive = false;
    /// Sign pairing (Duan: +1 for (X-, Y+), -1 for (X+, Y-)) or optimal angle.
    double argument = 0;
};

/// Var(J_A^X -+ J_B^X) + Var(J_A^Y +- J_B^Y) < |<J_A^Z>| + |<J_B^Z>|, best of
/// the two sign pairings.
InequalityResult duan_sum_spin(const LocalSpinMoments& s);

/// min over theta of sqrt(Var(J_A^t - J_B^t) Var(J_A^t' + J_B^t')) against
/// (|<J_A^Y>| + |<J_B^Y>|)/2, with J^t = cos(t) J^X + sin(t) J^Z and
/// t' = t + pi/2. The grid minimum is refined by golden-section search.
InequalityResult heisenberg_product(const LocalSpinMoments& s, int grid = 180);

/// Minimum of Var(J_X) + Var(J_Y) over spin-J states (J a positive
/// half-integer).
double c_j(double J);

/// C_J tabulated on J = 1/2, 1, 3/2, ... up to a maximum that grows on demand.
class CJTable {
public:
    explicit CJTable(double j_max = 0.5);

    double j_max() const;
    /// Extends the table to at least `j_max`.
    void extend(double j_max);
    /// Throws std::out_of_range beyond the tabulated range.
    double at(double J) const;
    /// Pairs (J, C_J) in ascending J.
    std::vector<std::pair<double, double>> entries() const;

private:
    mutable std::mutex mutex_;
    std::vector<double> values_;  // values_[k] = C_J at J = (k + 1)/2
};

/// Largest n0 with E < C_{n0/2}/(n0/2); 0 when E >= 0.5. Throws
/// TableExhausted when E lies below every tabulated ratio.
int entanglement_depth(double E, const CJTable& table);

struct Coherence {
    Complex value;
    bool present = false;
};

/// <a^m b+^m> and whether it exceeds 1e-10 in magnitude.
Coherence order_m_coherence(const MixedState& state, int m, ModePair pair = {});

/// Spin criterion with pair 2 in independent coherent states of real
/// amplitude alpha:
/// 1 + (q (1+a^2)^2 - |c|^2 a^4) / (d (1+a^2)^2), d = min(nA, nB).
CriterionResult coherent_lo_ratio(const HZMoments& pair1, double alpha);

}  // namespace hzent
