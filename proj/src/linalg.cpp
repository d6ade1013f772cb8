#include "qflag/linalg.hpp"

namespace qflag {

std::vector<Eigen::Index> rowReduce(Mat& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r) {
            if (!m(r, col).isZero()) {
                p = r;
                break;
            }
        }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        Scalar inv = m(row, col).inverse();
        for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).isZero()) continue;
            Scalar f = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Eigen::Index rank(Mat m) { return static_cast<Eigen::Index>(rowReduce(m).size()); }

Mat nullspace(const Mat& m) {
    Mat r = m;
    std::vector<Eigen::Index> pivots = rowReduce(r);
    std::vector<bool> isPivot(m.cols(), false);
    for (Eigen::Index p : pivots) isPivot[static_cast<size_t>(p)] = true;
    Eigen::Index nfree = m.cols() - static_cast<Eigen::Index>(pivots.size());
    Mat basis = zeroMat(m.cols(), nfree);
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < m.cols(); ++free) {
        if (isPivot[static_cast<size_t>(free)]) continue;
        basis(free, k) = Scalar(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            basis(pivots[i], k) = -r(static_cast<Eigen::Index>(i), free);
        ++k;
    }
    return basis;
}

std::optional<Vec> solveLinear(const Mat& m, const Vec& rhs) {
    Mat aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = rhs;
    std::vector<Eigen::Index> pivots = rowReduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x = Vec::Constant(m.cols(), Scalar(0));
    for (size_t i = 0; i < pivots.size(); ++i) x(pivots[i]) = aug(static_cast<Eigen::Index>(i), m.cols());
    return x;
}

Mat inverseMat(const Mat& m) {
    if (m.rows() != m.cols()) throw ScalarError("inverse of non-square matrix");
    Mat aug(m.rows(), 2 * m.cols());
    aug.leftCols(m.cols()) = m;
    aug.rightCols(m.cols()) = identityMat(m.rows());
    std::vector<Eigen::Index> pivots = rowReduce(aug);
    if (static_cast<Eigen::Index>(pivots.size()) != m.rows())
        throw ScalarError("singular matrix has no inverse");
    return aug.rightCols(m.cols());
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r = zeroMat(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j).isZero()) continue;
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

}  // namespace qflag
