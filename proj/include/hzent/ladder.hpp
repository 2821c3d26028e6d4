#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hzent/fock_basis.hpp"

namespace hzent {

using Complex = std::complex<double>;

struct LadderFactor {
    int mode = 0;
    bool creation = false;
    int power = 1;

    friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
    friend auto operator<=>(const LadderFactor&, const LadderFactor&) = default;
};

/// Ordered product of powers of creation and annihilation operators.
///
/// Factors are written left to right as in the operator product; when the
/// string acts on a state the rightmost factor acts first.
class LadderString {
public:
    LadderString() = default;
    LadderString(std::initializer_list<LadderFactor> factors);
    explicit LadderString(std::vector<LadderFactor> factors);

    const std::vector<LadderFactor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }

    LadderString adjoint() const;

    /// Net change of each mode's occupation.
    std::array<int, 4> occupation_shift() const;

    /// True when every pair total of `basis` is left unchanged.
    bool conserves(const FockBasis& basis) const;

    std::string to_string() const;

    friend LadderString operator*(const LadderString& x, const LadderString& y);
    friend bool operator==(const LadderString&, const LadderString&) = default;
    friend auto operator<=>(const LadderString&, const LadderString&) = default;

private:
    void canonicalize();
    std::vector<LadderFactor> factors_;
};

inline LadderString create(int mode, int power = 1) { return {{mode, true, power}}; }
inline LadderString annihilate(int mode, int power = 1) { return {{mode, false, power}}; }
inline LadderString number(int mode) { return {{mode, true, 1}, {mode, false, 1}}; }

/// Linear combination of ladder strings.
class OperatorSum {
public:
    using Term = std::pair<Complex, LadderString>;

    OperatorSum() = default;
    OperatorSum(const LadderString& s) : terms_{{Complex(1.0), s}} {}  // NOLINT
    OperatorSum(Complex c, const LadderString& s) : terms_{{c, s}} {}

    static OperatorSum identity(Complex c = 1.0) { return OperatorSum(c, LadderString{}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    OperatorSum adjoint() const;

    /// Combines identical strings and drops exact zeros.
    OperatorSum simplified() const;

    OperatorSum& operator+=(const OperatorSum& other);
    OperatorSum& operator-=(const OperatorSum& other);
    OperatorSum& operator*=(Complex c);

    friend OperatorSum operator+(OperatorSum x, const OperatorSum& y) { return x += y; }
    friend OperatorSum operator-(OperatorSum x, const OperatorSum& y) { return x -= y; }
    friend OperatorSum operator*(OperatorSum x, Complex c) { return x *= c; }
    friend OperatorSum operator*(Complex c, OperatorSum x) { return x *= c; }
    friend OperatorSum operator*(const OperatorSum& x, const OperatorSum& y);

private:
    std::vector<Term> terms_;
};

/// Substitutes a_m -> sum_k u(m, k) a_k (and the adjoint relation for
/// creation operators) into every string of `op`.
///
/// `u` is mode_count x mode_count. The result is expressed in the original
/// modes, so expectation values of transformed operators can be taken in the
/// untransformed state.
OperatorSum transform_modes(const OperatorSum& op, const Eigen::MatrixXcd& u);

}  // namespace hzent
