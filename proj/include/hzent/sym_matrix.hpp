#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hzent {

/// Real symmetric matrix stored as its packed lower triangle.
///
/// Only one triangle exists, so the matrix is exactly symmetric. Writes are
/// accepted in either triangle and land on the same element.
template <typename Scalar>
class BasicSymMatrix {
public:
    using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    BasicSymMatrix() = default;
    explicit BasicSymMatrix(Eigen::Index n) : n_(n), packed_(packed_size(n), Scalar(0)) {
        if (n < 0) throw std::invalid_argument("negative matrix dimension");
    }

    /// Symmetrizes a dense matrix by taking its lower triangle.
    static BasicSymMatrix from_lower(const Dense& m) {
        if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
        BasicSymMatrix s(m.rows());
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = j; i < m.rows(); ++i) s.set(i, j, m(i, j));
        return s;
    }

    Eigen::Index dim() const { return n_; }

    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return packed_[offset(i, j)]; }
    void set(Eigen::Index i, Eigen::Index j, Scalar v) { packed_[offset(i, j)] = v; }
    void add(Eigen::Index i, Eigen::Index j, Scalar v) { packed_[offset(i, j)] += v; }

    Dense to_dense() const {
        Dense m(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index i = j; i < n_; ++i) m(i, j) = m(j, i) = (*this)(i, j);
        return m;
    }

    /// Nonzero entries of both triangles as a sparse matrix.
    Eigen::SparseMatrix<Scalar> to_sparse() const {
        std::vector<Eigen::Triplet<Scalar>> t;
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index i = j; i < n_; ++i) {
                const Scalar v = (*this)(i, j);
                if (v == Scalar(0)) continue;
                t.emplace_back(i, j, v);
                if (i != j) t.emplace_back(j, i, v);
            }
        Eigen::SparseMatrix<Scalar> s(n_, n_);
        s.setFromTriplets(t.begin(), t.end());
        return s;
    }

    Vector operator*(const Vector& x) const {
        Vector y = Vector::Zero(n_);
        for (Eigen::Index j = 0; j < n_; ++j) {
            y[j] += (*this)(j, j) * x[j];
            for (Eigen::Index i = j + 1; i < n_; ++i) {
                const Scalar v = (*this)(i, j);
                y[i] += v * x[j];
                y[j] += v * x[i];
            }
        }
        return y;
    }

    /// Maximum absolute row sum.
    Scalar norm_inf() const {
        Vector rows = Vector::Zero(n_);
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index i = j; i < n_; ++i) {
                const Scalar v = std::abs((*this)(i, j));
                rows[i] += v;
                if (i != j) rows[j] += v;
            }
        return n_ ? rows.maxCoeff() : Scalar(0);
    }

    bool all_finite() const {
        for (const Scalar& v : packed_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend BasicSymMatrix operator+(BasicSymMatrix x, const BasicSymMatrix& y) {
        if (x.n_ != y.n_) throw std::invalid_argument("dimension mismatch");
        for (std::size_t k = 0; k < x.packed_.size(); ++k) x.packed_[k] += y.packed_[k];
        return x;
    }
    friend BasicSymMatrix operator*(Scalar c, BasicSymMatrix x) {
        for (Scalar& v : x.packed_) v *= c;
        return x;
    }

private:
    static std::size_t packed_size(Eigen::Index n) {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
    }
    // Column-major packed lower triangle.
    std::size_t offset(Eigen::Index i, Eigen::Index j) const {
        if (i < j) std::swap(i, j);
        if (j < 0 || i >= n_) throw std::out_of_range("symmetric matrix index");
        const auto jj = static_cast<std::size_t>(j);
        return jj * static_cast<std::size_t>(n_) - jj * (jj - 1) / 2 + static_cast<std::size_t>(i - j);
    }

    Eigen::Index n_ = 0;
    std::vector<Scalar> packed_;
};

using SymMatrix = BasicSymMatrix<double>;

}  // namespace hzent
