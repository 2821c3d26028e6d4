#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hzent/errors.hpp"
#include "hzent/sym_matrix.hpp"

namespace hzent {

/// Complete eigendecomposition, eigenvalues ascending.
template <typename Scalar>
struct BasicSpectrum {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
    /// Largest ||H v_i - lambda_i v_i|| over all pairs.
    Scalar residual_bound = 0;
};

/// Lowest eigenpair of a symmetric matrix.
template <typename Scalar>
struct BasicGroundPair {
    Scalar energy = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
    /// lambda_1 - lambda_0; infinite for a 1x1 matrix.
    Scalar gap = std::numeric_limits<Scalar>::infinity();
    bool degenerate = false;
    Scalar residual = 0;
    int iterations = 0;
};

using Spectrum = BasicSpectrum<double>;
using GroundPair = BasicGroundPair<double>;

enum class GroundMethod { Auto, Dense, Lanczos };

struct GroundOptions {
    GroundMethod method = GroundMethod::Auto;
    double tol = 1e-12;
    Eigen::Index dense_limit = 500;
    /// 0 selects 10 * dim.
    Eigen::Index max_steps = 0;
    double degenerate_tol = 1e-9;
};

namespace detail {

// Householder reduction of a full symmetric matrix to tridiagonal form.
// On exit v holds the accumulated orthogonal transformation, d the diagonal
// and e the subdiagonal in e[1..n-1].
template <typename Scalar>
void householder_tridiagonalize(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v,
                                Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d,
                                Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& e) {
    const Eigen::Index n = v.rows();
    d.resize(n);
    e.setZero(n);
    for (Eigen::Index j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (Eigen::Index i = n - 1; i > 0; --i) {
        Scalar scale = 0, h = 0;
        for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == Scalar(0)) {
            e[i] = d[i - 1];
            for (Eigen::Index j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0;
                v(j, i) = 0;
            }
        } else {
            for (Eigen::Index k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            Scalar f = d[i - 1];
            Scalar g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (Eigen::Index j = 0; j < i; ++j) e[j] = 0;

            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (Eigen::Index k = j + 1; k < i; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0;
            for (Eigen::Index j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const Scalar hh = f / (h + h);
            for (Eigen::Index j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (Eigen::Index k = j; k < i; ++k) v(k, j) -= f * e[k] + g * d[k];
                d[j] = v(i - 1, j);
                v(i, j) = 0;
            }
        }
        d[i] = h;
    }

    for (Eigen::Index i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1;
        const Scalar h = d[i + 1];
        if (h != Scalar(0)) {
            for (Eigen::Index k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (Eigen::Index j = 0; j <= i; ++j) {
                Scalar g = 0;
                for (Eigen::Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (Eigen::Index k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (Eigen::Index k = 0; k <= i; ++k) v(k, i + 1) = 0;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0;
    }
    if (n > 0) v(n - 1, n - 1) = 1;
    if (n > 0) e[0] = 0;
}

// Implicitly shifted QL on the tridiagonal (d, e), rotating the columns of v.
template <typename Scalar>
void implicit_ql(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v,
                 Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d,
                 Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& e, int max_iter) {
    const Eigen::Index n = d.size();
    for (Eigen::Index i = 1; i < n; ++i) e[i - 1] = e[i];
    if (n > 0) e[n - 1] = 0;

    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Scalar f = 0, tst1 = 0;
    for (Eigen::Index l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        Eigen::Index m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter) {
                    throw ConvergenceFailure("QL iteration did not converge for eigenvalue " +
                                             std::to_string(l));
                }
                Scalar g = d[l];
                Scalar p = (d[l + 1] - g) / (2 * e[l]);
                Scalar r = std::hypot(p, Scalar(1));
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const Scalar dl1 = d[l + 1];
                Scalar h = g - d[l];
                for (Eigen::Index i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                Scalar c = 1, c2 = 1, c3 = 1, s = 0, s2 = 0;
                const Scalar el1 = e[l + 1];
                for (Eigen::Index i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (Eigen::Index k = 0; k < v.rows(); ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0;
    }
}

// Number of eigenvalues of the tridiagonal (d, e) strictly below x.
template <typename Scalar>
Eigen::Index sturm_count(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& e, Scalar x) {
    const Scalar tiny = std::numeric_limits<Scalar>::min();
    Eigen::Index count = 0;
    Scalar q = 1;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        q = d[i] - x - (i > 0 ? e[i - 1] * e[i - 1] / q : Scalar(0));
        if (q == Scalar(0)) q = -tiny;
        if (q < 0) ++count;
    }
    return count;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed pseudo-random vector in [-1, 1)^n. It has no reflection symmetry, so
// it overlaps generic eigenvectors of symmetric-looking problems.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> start_vector(Eigen::Index n, std::uint64_t seed) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto bits = splitmix64(seed * 0x100000001b3ULL + static_cast<std::uint64_t>(i)) >> 11;
        v[i] = Scalar(2) * static_cast<Scalar>(static_cast<double>(bits) * 0x1.0p-53) - Scalar(1);
    }
    return v;
}

// Sign convention shared by every ground-vector producer: the first entry
// whose magnitude ties the maximum (relative 1e-12) is made positive.
template <typename Scalar>
void fix_sign(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
    if (v.size() == 0) return;
    const Scalar peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= peak * (Scalar(1) - Scalar(1e-12))) {
            if (v[i] < 0) v = -v;
            return;
        }
    }
}

}  // namespace detail

/// Full spectrum by Householder tridiagonalization and implicit QL.
///
/// Throws ConvergenceFailure after `max_iter` QL sweeps on one eigenvalue.
template <typename Scalar>
BasicSpectrum<Scalar> eig_full(const BasicSymMatrix<Scalar>& h, int max_iter = 50) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (h.dim() < 1) throw std::invalid_argument("eig_full needs a nonempty matrix");
    if (!h.all_finite()) throw NumericalFailure("matrix has non-finite entries");

    const Mat a = h.to_dense();
    Mat v = a;
    Vec d, e;
    detail::householder_tridiagonalize(v, d, e);
    detail::implicit_ql(v, d, e, max_iter);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return d[x] < d[y]; });

    BasicSpectrum<Scalar> out;
    out.eigenvalues.resize(d.size());
    out.eigenvectors.resize(v.rows(), v.cols());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
        out.eigenvalues[k] = d[order[static_cast<std::size_t>(k)]];
        out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    const Mat r = a * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
    out.residual_bound = r.colwise().norm().maxCoeff();
    return out;
}

/// Lowest eigenpair of a symmetric tridiagonal matrix (diagonal d,
/// off-diagonal e) by Sturm bisection followed by inverse iteration. The gap
/// costs a second bisection and is skipped when `with_gap` is false.
template <typename Scalar>
BasicGroundPair<Scalar> tridiagonal_ground(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d,
                                           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& e,
                                           bool with_gap = true) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = d.size();
    if (n < 1) throw std::invalid_argument("tridiagonal_ground needs a nonempty matrix");
    if (e.size() < n - 1) throw std::invalid_argument("off-diagonal too short");

    Scalar lo = std::numeric_limits<Scalar>::max();
    Scalar hi = std::numeric_limits<Scalar>::lowest();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar r = (i > 0 ? std::abs(e[i - 1]) : Scalar(0)) +
                         (i + 1 < n ? std::abs(e[i]) : Scalar(0));
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<Scalar>::min()});
    const Scalar top = hi;
    for (int it = 0; it < 256 && hi - lo > 2 * eps * scale; ++it) {
        const Scalar mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (detail::sturm_count(d, e, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    const Scalar lambda = lo + (hi - lo) / 2;

    // Inverse iteration with a shift just below lambda keeps T - sigma I
    // positive definite, so an unpivoted LDL^T solve is stable.
    const Scalar sigma = lambda - 16 * eps * scale;
    Vec diag(n), lower(std::max<Eigen::Index>(n - 1, 0));
    diag[0] = d[0] - sigma;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (diag[i - 1] == Scalar(0)) diag[i - 1] = eps * scale;
        lower[i - 1] = e[i - 1] / diag[i - 1];
        diag[i] = d[i] - sigma - lower[i - 1] * e[i - 1];
    }
    if (diag[n - 1] == Scalar(0)) diag[n - 1] = eps * scale;

    Vec x = detail::start_vector<Scalar>(n, 7).cwiseAbs().array() + Scalar(0.5);
    x.normalize();
    for (int it = 0; it < 4; ++it) {
        for (Eigen::Index i = 1; i < n; ++i) x[i] -= lower[i - 1] * x[i - 1];
        for (Eigen::Index i = 0; i < n; ++i) x[i] /= diag[i];
        for (Eigen::Index i = n - 2; i >= 0; --i) x[i] -= lower[i] * x[i + 1];
        const Scalar nrm = x.norm();
        if (!(nrm > 0) || !std::isfinite(nrm)) throw NumericalFailure("inverse iteration broke down");
        x /= nrm;
    }
    detail::fix_sign(x);

    BasicGroundPair<Scalar> out;
    Vec tx = d.cwiseProduct(x);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        tx[i] += e[i] * x[i + 1];
        tx[i + 1] += e[i] * x[i];
    }
    out.energy = x.dot(tx);
    out.vector = std::move(x);
    out.residual = (tx - out.energy * out.vector).norm();
    if (n > 1 && with_gap) {
        Scalar lo1 = out.energy, hi1 = top + 2 * eps * scale;
        for (int it = 0; it < 256 && hi1 - lo1 > 2 * eps * scale; ++it) {
            const Scalar mid = lo1 + (hi1 - lo1) / 2;
            if (mid <= lo1 || mid >= hi1) break;
            if (detail::sturm_count(d, e, mid) >= 2)
                hi1 = mid;
            else
                lo1 = mid;
        }
        out.gap = std::max(Scalar(0), lo1 + (hi1 - lo1) / 2 - out.energy);
    }
    return out;
}

namespace detail {

template <typename Scalar>
struct LanczosResult {
    Scalar value;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
    int steps;
};

// Lowest eigenpair of h restricted to the orthogonal complement of the
// columns of `deflate`, by Lanczos with full reorthogonalization.
template <typename Scalar>
LanczosResult<Scalar> lanczos_lowest(const Eigen::SparseMatrix<Scalar>& h, Scalar h_norm,
                                     const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& deflate,
                                     Scalar tol, Eigen::Index max_steps, std::uint64_t seed) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = h.rows();
    const Eigen::Index room = n - deflate.cols();
    if (room < 1) throw std::invalid_argument("nothing left after deflation");

    auto project_out = [&](Vec& w, const Mat& basis, Eigen::Index cols) {
        for (int pass = 0; pass < 2; ++pass) {
            if (deflate.cols() > 0) w -= deflate * (deflate.transpose() * w);
            if (cols > 0) w -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * w);
        }
    };

    Mat v(n, std::min<Eigen::Index>(room, 32) + 1);
    Vec alpha(0), beta(0);
    Vec w = start_vector<Scalar>(n, seed);
    project_out(w, v, 0);
    v.col(0) = w / w.norm();

    const Scalar breakdown = std::numeric_limits<Scalar>::epsilon() * std::max(h_norm, Scalar(1)) * 16;
    for (Eigen::Index j = 0; j < max_steps; ++j) {
        if (v.cols() < j + 2) v.conservativeResize(Eigen::NoChange, std::min(2 * v.cols(), room + 1));
        w = h * v.col(j);
        alpha.conservativeResize(j + 1);
        alpha[j] = v.col(j).dot(w);
        project_out(w, v, j + 1);
        const Scalar b = w.norm();
        beta.conservativeResize(j + 1);
        beta[j] = b;

        const auto ritz = tridiagonal_ground<Scalar>(alpha, beta, false);
        const bool exhausted = j + 1 >= room;
        const bool invariant = b <= breakdown;
        const Scalar estimate = b * std::abs(ritz.vector[j]);
        if (exhausted || invariant || estimate <= tol * h_norm) {
            Vec x = v.leftCols(j + 1) * ritz.vector;
            x.normalize();
            return {ritz.energy, std::move(x), static_cast<int>(j + 1)};
        }
        v.col(j + 1) = w / b;
    }
    throw ConvergenceFailure("Lanczos did not converge in " + std::to_string(max_steps) + " steps");
}

}  // namespace detail

/// Lowest eigenpair with gap and degeneracy flag.
///
/// Small matrices use the full spectrum; larger ones use Lanczos with full
/// reorthogonalization and a second, deflated Lanczos run for the gap. The
/// returned vector has the sign fixed by detail::fix_sign.
template <typename Scalar>
BasicGroundPair<Scalar> ground_pair(const BasicSymMatrix<Scalar>& h, const GroundOptions& opt = {}) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = h.dim();
    if (n < 1) throw std::invalid_argument("ground_pair needs a nonempty matrix");
    if (!h.all_finite()) throw NumericalFailure("matrix has non-finite entries");

    const Scalar h_norm = h.norm_inf();
    const bool dense = opt.method == GroundMethod::Dense ||
                       (opt.method == GroundMethod::Auto && n <= opt.dense_limit);

    BasicGroundPair<Scalar> out;
    if (dense || n == 1) {
        const auto s = eig_full(h);
        out.energy = s.eigenvalues[0];
        out.vector = s.eigenvectors.col(0);
        if (n > 1) out.gap = s.eigenvalues[1] - s.eigenvalues[0];
    } else {
        const Eigen::SparseMatrix<Scalar> sparse = h.to_sparse();
        const Eigen::Index steps = opt.max_steps > 0 ? opt.max_steps : 10 * n;
        const Scalar tol = static_cast<Scalar>(opt.tol);
        auto g = detail::lanczos_lowest<Scalar>(sparse, h_norm, Mat(n, 0), tol, steps, 1);
        Mat deflate = g.vector;
        auto g1 = detail::lanczos_lowest<Scalar>(sparse, h_norm, deflate, tol, steps, 2);
        out.energy = g.value;
        out.vector = std::move(g.vector);
        out.gap = std::max(Scalar(0), g1.value - g.value);
        out.iterations = g.steps + g1.steps;
    }
    detail::fix_sign(out.vector);
    const Vec r = h * out.vector - out.energy * out.vector;
    out.residual = r.norm();
    out.degenerate = out.gap < static_cast<Scalar>(opt.degenerate_tol) * h_norm;
    return out;
}

}  // namespace hzent
