#pragma once

// Reference moments built from explicit matrices on the full truncated
// product space. Nothing here uses the ladder engine.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hzent/state.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::SparseMatrix<Complex>;
using Vec = Eigen::VectorXcd;

// Product space with mode k truncated at occupation cut[k]. Mode 0 is the
// most significant digit.
struct Space {
    std::vector<int> cut;

    int modes() const { return static_cast<int>(cut.size()); }
    int local(int k) const { return cut[static_cast<std::size_t>(k)] + 1; }
    Eigen::Index dim() const {
        Eigen::Index d = 1;
        for (int k = 0; k < modes(); ++k) d *= local(k);
        return d;
    }

    Eigen::Index flat(const hzent::Occupation& occ) const {
        Eigen::Index idx = 0;
        for (int k = 0; k < modes(); ++k) idx = idx * local(k) + occ[static_cast<std::size_t>(k)];
        return idx;
    }

    // Annihilation operator of one mode as a kron product.
    Mat lower(int mode) const {
        Eigen::Index stride = 1;
        for (int k = mode + 1; k < modes(); ++k) stride *= local(k);
        std::vector<Eigen::Triplet<Complex>> t;
        for (Eigen::Index idx = 0; idx < dim(); ++idx) {
            const int n = static_cast<int>((idx / stride) % local(mode));
            if (n > 0) t.emplace_back(idx - stride, idx, std::sqrt(static_cast<double>(n)));
        }
        Mat out(dim(), dim());
        out.setFromTriplets(t.begin(), t.end());
        return out;
    }
    Mat raise(int mode) const { return lower(mode).adjoint(); }
    Mat number(int mode) const { return raise(mode) * lower(mode); }
    Mat identity() const {
        Mat id(dim(), dim());
        id.setIdentity();
        return id;
    }

    Vec embed(const hzent::PureState& s) const {
        Vec v = Vec::Zero(dim());
        for (std::size_t i = 0; i < s.dim(); ++i) v[flat(s.basis()[i])] = s.amplitudes()[static_cast<Eigen::Index>(i)];
        return v;
    }
};

inline Mat power(const Mat& m, int p) {
    Mat out(m.rows(), m.cols());
    out.setIdentity();
    for (int k = 0; k < p; ++k) out = out * m;
    return out;
}

inline Complex expect(const Vec& v, const Mat& op) { return v.dot(Vec(op * v)); }

// Space large enough that no operator raising any mode at most `extra` times
// reaches beyond the truncation from inside the sector.
// Modes 2p and 2p + 1 form pair p.
inline Space space_for(const hzent::FockBasis& basis, int extra) {
    Space sp;
    for (int k = 0; k < basis.mode_count(); ++k) sp.cut.push_back(basis.sector_total(k / 2) + extra);
    return sp;
}

}  // namespace oracle
