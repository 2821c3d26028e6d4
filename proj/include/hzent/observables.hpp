#pragma once

#include <Eigen/Dense>

#include "hzent/state.hpp"

namespace hzent {

/// Moments of order m entering the Hillery-Zubairy ratio for modes (a, b).
struct HZMoments {
    int m = 1;
    Complex c;           ///< <a^m b+^m>
    double q = 0;        ///< <a+^m a^m b+^m b^m>
    double denomB = 0;   ///< <a+^m a^m (b^m b+^m - b+^m b^m)>
    double denomA = 0;   ///< <b+^m b^m (a^m a+^m - a+^m a^m)>
    double nA = 0;
    double nB = 0;
};

/// Throws OrderTooHigh for m <= 0. Orders above the sector total are valid
/// and give vanishing c and q.
HZMoments hz_moments(const MixedState& state, int m, ModePair pair = {});

/// hz_moments of the X-Z plane modes of planar_rotation_matrix(); at m = 1
/// this is the (Var J_X + Var J_Z)/(N/2) criterion.
HZMoments rotated_hz_moments(const MixedState& state, int m, ModePair pair = {});

/// Schwinger spin statistics of one mode pair:
/// J_X = (a+ b + b+ a)/2, J_Y = (a+ b - b+ a)/(2i), J_Z = (a+ a - b+ b)/2.
struct SpinStats {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    /// Symmetrized covariance <{J_i, J_j}>/2 - <J_i><J_j>; diagonal clamped.
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
    double total = 0;  ///< <n_a + n_b>

    Eigen::Vector3d variance() const { return covariance.diagonal(); }
    /// <J_X^2 + J_Y^2 + J_Z^2>
    double casimir() const { return covariance.trace() + mean.squaredNorm(); }
};

SpinStats interwell_spin_stats(const MixedState& state, ModePair pair = {});

/// Mode substitution a' = (a + b)/(sqrt(2) i), b' = (a - b)/sqrt(2) within
/// `pair`, identity on every other mode.
Eigen::MatrixXcd rotation_matrix(int mode_count, ModePair pair);

/// Mode substitution a' = (a + i b)/sqrt(2), b' = (i a + b)/sqrt(2) within
/// `pair`. The rotated spins are (J_X, J_Z, -J_Y), so the rotated planar
/// pair spans the X-Z plane.
Eigen::MatrixXcd planar_rotation_matrix(int mode_count, ModePair pair);

/// Statistics of the rotated pair, by operator transformation.
SpinStats rotated_pair_stats(const MixedState& state, ModePair pair = {});

/// Which pairs are expressed in rotated modes before a local-spin analysis.
/// Pair1 and BothPairs use rotation_matrix(); the Planar variants use
/// planar_rotation_matrix().
enum class PairRotation { None, Pair1, BothPairs, PlanarPair1, PlanarBothPairs };

/// Moments of the local spins J_A^+ = a1+ a2, J_B^+ = b1+ b2 with
/// J^Z = (n_2 - n_1)/2 at each site.
struct SpinQuartics {
    Complex cross;             ///< <J_A^+ J_B^->
    double quartic = 0;        ///< <J_A^+ J_A^- J_B^+ J_B^->
    double dA = 0;             ///< 2 <J_A^Z J_B^+ J_B^->
    double dB = 0;             ///< 2 <J_A^+ J_A^- J_B^Z>
    double steerA = 0;         ///< <[J_A^2 - (J_A^Z)^2 + J_A^Z][J_B^2 - (J_B^Z)^2]>
    double steerA_minus = 0;   ///< same with -J_A^Z
};

SpinQuartics local_spin_quartics(const MixedState& state, PairRotation rotation = PairRotation::None);

/// Means and symmetrized covariance of (J_A^X, J_A^Y, J_A^Z, J_B^X, J_B^Y, J_B^Z).
struct LocalSpinMoments {
    Eigen::Matrix<double, 6, 1> mean = Eigen::Matrix<double, 6, 1>::Zero();
    Eigen::Matrix<double, 6, 6> covariance = Eigen::Matrix<double, 6, 6>::Zero();
};

LocalSpinMoments local_spin_moments(const MixedState& state, PairRotation rotation = PairRotation::None);

struct Ellipsoid {
    Eigen::Vector3d variance;
    Eigen::Vector3d mean;
};

Ellipsoid ellipsoid(const MixedState& state, ModePair pair = {});

/// 4(1 + <a+,a> + <b+,b> - <a,b> - <a+,b+>) with <x,y> = <xy> - <x><y>.
double quadrature_D(const MixedState& state, ModePair pair = {});

/// Base-2 entropy of the distribution |c_n|^2 of a two-mode pure state.
double reduced_entropy(const PureState& state);

}  // namespace hzent
