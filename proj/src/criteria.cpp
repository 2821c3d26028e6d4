#include "hzent/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hzent/eigensolve.hpp"
#include "hzent/errors.hpp"

namespace hzent {

namespace {

constexpr double kInvGolden = 0.6180339887498949;

// Golden-section minimization of f on [lo, hi]; returns (argmin, min).
std::pair<double, double> golden_section(const std::function<double(double)>& f, double lo, double hi,
                                         double tol) {
    double x1 = hi - kInvGolden * (hi - lo);
    double x2 = lo + kInvGolden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

int twice(double J) {
    const double t = 2.0 * J;
    const long r = std::lround(t);
    if (r < 1 || std::abs(t - static_cast<double>(r)) > 1e-9) {
        throw std::invalid_argument("J must be a positive half-integer");
    }
    return static_cast<int>(r);
}

// Var(J_X) + Var(J_Y) in the ground state of J_X^2 + J_Y^2 - lambda J_X,
// written in the J_Z basis where it is tridiagonal.
class PlanarScan {
public:
    explicit PlanarScan(int two_j) : n_(two_j + 1), diag_(n_), step_(n_ - 1) {
        const double J = two_j / 2.0;
        const double jj = J * (J + 1.0);
        for (Eigen::Index k = 0; k < n_; ++k) {
            const double m = -J + static_cast<double>(k);
            diag_[k] = jj - m * m;
            if (k + 1 < n_) step_[k] = 0.5 * std::sqrt(jj - m * (m + 1.0));
        }
    }

    double operator()(double lambda) const {
        const Eigen::VectorXd off = -lambda * step_;
        const auto g = tridiagonal_ground<double>(diag_, off, false);
        const Eigen::VectorXd& psi = g.vector;
        double jx = 0.0;
        for (Eigen::Index k = 0; k + 1 < n_; ++k) jx += 2.0 * step_[k] * psi[k] * psi[k + 1];
        return psi.cwiseAbs2().dot(diag_) - jx * jx;
    }

private:
    Eigen::Index n_;
    Eigen::VectorXd diag_;
    Eigen::VectorXd step_;  // <m+1| J_X |m>
};

std::map<std::string, double> hz_detail(const HZMoments& m) {
    return {{"m", m.m},           {"c_re", m.c.real()},     {"c_im", m.c.imag()}, {"q", m.q},
            {"denomA", m.denomA}, {"denomB", m.denomB},     {"nA", m.nA},         {"nB", m.nB}};
}

CriterionResult planar_form(double var1, double var2, double total) {
    std::map<std::string, double> detail{{"var1", var1}, {"var2", var2}, {"N", total}};
    if (!(total > 0.0)) return CriterionResult::inconclusive(std::move(detail));
    return CriterionResult::from_value((var1 + var2) / (total / 2.0), std::move(detail));
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::SeparableConsistent:
            return "SeparableConsistent";
        case Classification::Entangled:
            return "Entangled";
        case Classification::EPRSteering:
            return "EPRSteering";
        case Classification::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

Classification classify(double value) {
    if (std::isnan(value)) return Classification::Inconclusive;
    if (value < 0.5 - kBandTolerance) return Classification::EPRSteering;
    if (value < 1.0 - kBandTolerance) return Classification::Entangled;
    return Classification::SeparableConsistent;
}

CriterionResult CriterionResult::inconclusive(std::map<std::string, double> detail) {
    CriterionResult r;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.classification = Classification::Inconclusive;
    r.detail = std::move(detail);
    return r;
}

CriterionResult CriterionResult::from_value(double value, std::map<std::string, double> detail) {
    CriterionResult r;
    r.value = value;
    r.classification = classify(value);
    r.detail = std::move(detail);
    return r;
}

CriterionResult e_hz(const HZMoments& m) {
    const double d = m.m == 1 ? std::min(m.nA, m.nB) : std::min(m.denomA, m.denomB);
    auto detail = hz_detail(m);
    detail["d"] = d;
    if (!(d > 0.0)) return CriterionResult::inconclusive(std::move(detail));
    return CriterionResult::from_value(1.0 + (m.q - std::norm(m.c)) / d, std::move(detail));
}

CriterionResult e_hz_planar(const SpinStats& s) {
    return planar_form(s.covariance(0, 0), s.covariance(1, 1), s.total);
}

CriterionResult e_hz_rotated(const SpinStats& s) {
    return planar_form(s.covariance(0, 0), s.covariance(2, 2), s.total);
}

CriterionResult e_hz_spin(const SpinQuartics& qt) {
    const double cross2 = std::norm(qt.cross);
    const double d = std::min(qt.dA, qt.dB);
    std::map<std::string, double> detail{
        {"cross_re", qt.cross.real()}, {"cross_im", qt.cross.imag()},  {"quartic", qt.quartic},
        {"dA", qt.dA},                 {"dB", qt.dB},                  {"steerA", qt.steerA},
        {"steerA_minus", qt.steerA_minus},
        {"raw_entangled", cross2 > qt.quartic ? 1.0 : 0.0},
        {"raw_steering", cross2 > std::min(qt.steerA, qt.steerA_minus) ? 1.0 : 0.0},
    };
    if (!(d > 0.0)) return CriterionResult::inconclusive(std::move(detail));
    return CriterionResult::from_value(1.0 + (qt.quartic - cross2) / d, std::move(detail));
}

InequalityResult duan_sum_spin(const LocalSpinMoments& s) {
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    auto var = [&](const Vec6& w) { return w.dot(s.covariance * w); };
    InequalityResult out;
    out.rhs = std::abs(s.mean[2]) + std::abs(s.mean[5]);
    out.lhs = std::numeric_limits<double>::infinity();
    for (const double sign : {1.0, -1.0}) {
        Vec6 x = Vec6::Zero(), y = Vec6::Zero();
        x[0] = 1.0;
        x[3] = -sign;
        y[1] = 1.0;
        y[4] = sign;
        const double lhs = var(x) + var(y);
        if (lhs < out.lhs) {
            out.lhs = lhs;
            out.argument = sign;
        }
    }
    out.inconclusive = !(out.rhs > 0.0);
    out.passed = !out.inconclusive && out.lhs < out.rhs;
    return out;
}

InequalityResult heisenberg_product(const LocalSpinMoments& s, int grid) {
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    if (grid < 3) throw std::invalid_argument("theta grid needs at least 3 points");
    auto product = [&](double t) {
        const double c = std::cos(t), si = std::sin(t);
        Vec6 minus = Vec6::Zero(), plus = Vec6::Zero();
        minus << c, 0.0, si, -c, 0.0, -si;
        plus << -si, 0.0, c, -si, 0.0, c;
        const double v1 = std::max(0.0, minus.dot(s.covariance * minus));
        const double v2 = std::max(0.0, plus.dot(s.covariance * plus));
        return std::sqrt(v1 * v2);
    };
    const double step = std::numbers::pi / grid;
    int best = 0;
    double best_value = product(0.0);
    for (int k = 1; k < grid; ++k) {
        const double v = product(k * step);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    const auto [t, v] = golden_section(product, (best - 1) * step, (best + 1) * step, 1e-10);

    InequalityResult out;
    out.lhs = std::min(v, best_value);
    out.argument = v < best_value ? t : best * step;
    out.rhs = 0.5 * (std::abs(s.mean[1]) + std::abs(s.mean[4]));
    out.inconclusive = !(out.rhs > 0.0);
    out.passed = !out.inconclusive && out.lhs < out.rhs;
    return out;
}

double c_j(double J) {
    const int two_j = twice(J);
    const PlanarScan f(two_j);
    const double top = 4.0 * J + 4.0;
    constexpr int kCoarse = 40;
    double best_value = std::numeric_limits<double>::infinity();
    int best = 1;
    for (int k = 1; k <= kCoarse; ++k) {
        const double v = f(top * k / kCoarse);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    const double lo = top * (best - 1) / kCoarse;
    const double hi = top * std::min(best + 1, kCoarse) / kCoarse;
    const auto refined = golden_section(std::cref(f), lo, hi, 1e-8 * std::max(1.0, hi));
    return std::min(best_value, refined.second);
}

CJTable::CJTable(double j_max) { extend(j_max); }

double CJTable::j_max() const {
    std::lock_guard lock(mutex_);
    return values_.size() / 2.0;
}

void CJTable::extend(double j_max) {
    const int target = twice(j_max);
    std::lock_guard lock(mutex_);
    for (int k = static_cast<int>(values_.size()) + 1; k <= target; ++k) values_.push_back(c_j(k / 2.0));
}

double CJTable::at(double J) const {
    const int k = twice(J);
    std::lock_guard lock(mutex_);
    if (k > static_cast<int>(values_.size())) throw std::out_of_range("J beyond the tabulated range");
    return values_[static_cast<std::size_t>(k - 1)];
}

std::vector<std::pair<double, double>> CJTable::entries() const {
    std::lock_guard lock(mutex_);
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < values_.size(); ++k) out.emplace_back((k + 1) / 2.0, values_[k]);
    return out;
}

int entanglement_depth(double E, const CJTable& table) {
    if (!(E >= 0.0)) throw std::invalid_argument("criterion value must be nonnegative");
    if (E >= 0.5) return 0;
    const auto entries = table.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto [J, cj] = entries[k];
        if (E >= cj / J) return static_cast<int>(k);
    }
    throw TableExhausted("value " + std::to_string(E) + " lies below C_J/J for every J up to " +
                         std::to_string(table.j_max()));
}

Coherence order_m_coherence(const MixedState& state, int m, ModePair pair) {
    if (m <= 0) throw OrderTooHigh("moment order must be positive, got " + std::to_string(m));
    const Complex v = expectation(state, annihilate(pair.first, m) * create(pair.second, m));
    return {v, std::abs(v) > 1e-10};
}

CriterionResult coherent_lo_ratio(const HZMoments& pair1, double alpha) {
    auto detail = hz_detail(pair1);
    detail["alpha"] = alpha;
    const double d = std::min(pair1.nA, pair1.nB);
    if (!(alpha > 0.0) || !(d > 0.0)) return CriterionResult::inconclusive(std::move(detail));
    const double a2 = alpha * alpha;
    const double lo = (1.0 + a2) * (1.0 + a2);
    return CriterionResult::from_value(1.0 + (pair1.q * lo - std::norm(pair1.c) * a2 * a2) / (d * lo),
                                       std::move(detail));
}

}  // namespace hzent
