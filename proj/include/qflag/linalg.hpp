#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "qflag/scalar.hpp"

namespace Eigen {

// Exact field scalar: no meaningful epsilon, pivoting is on nonzero-ness.
template <>
struct NumTraits<qflag::Scalar> {
    using Real = qflag::Scalar;
    using NonInteger = qflag::Scalar;
    using Nested = qflag::Scalar;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32,
    };
    static inline Real epsilon() { return qflag::Scalar(0); }
    static inline Real dummy_precision() { return qflag::Scalar(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qflag {

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline Mat zeroMat(Eigen::Index r, Eigen::Index c) { return Mat::Constant(r, c, Scalar(0)); }
inline Mat identityMat(Eigen::Index n) {
    Mat m = zeroMat(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}
inline bool isZeroMat(const Mat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).isZero()) return false;
    return true;
}

/// Row echelon form in place; returns pivot columns. Exact division, first
/// nonzero pivot (no magnitude pivoting over a symbolic field).
std::vector<Eigen::Index> rowReduce(Mat& m);

Eigen::Index rank(Mat m);

/// Basis of the right nullspace {x : m x = 0}, as columns.
Mat nullspace(const Mat& m);

/// One solution of m x = rhs, or nullopt if inconsistent.
std::optional<Vec> solveLinear(const Mat& m, const Vec& rhs);

/// Inverse of a square matrix; throws ScalarError if singular.
Mat inverseMat(const Mat& m);

/// Kronecker product (tensor product in the basis-pair ordering
/// (i,k) -> i*colsB + k).
Mat kron(const Mat& a, const Mat& b);

}  // namespace qflag
