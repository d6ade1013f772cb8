#include "qflag/fibercalc.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace qflag {

Scalar defaultShatNormalization(const FlagSpec& flag) {
    if (flag.cartan.series() == 'A' && flag.cartan.rank() == 1) return Scalar::qPower(4);
    return Scalar(1);
}

Mat flipMat(Eigen::Index dimA, Eigen::Index dimB) {
    Mat f = zeroMat(dimA * dimB, dimA * dimB);
    for (Eigen::Index i = 0; i < dimA; ++i)
        for (Eigen::Index k = 0; k < dimB; ++k) f(k * dimA + i, i * dimB + k) = Scalar(1);
    return f;
}

Mat classicalLimitMat(const Mat& m) {
    Mat out = zeroMat(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j).classicalLimit());
    return out;
}

FiberData cotangentFibers(const FlagSpec& flag, const std::optional<Scalar>& shatNorm) {
    const CartanData& cd = flag.cartan;
    if (!isIrreducibleFlag(cd, flag.node))
        throw std::invalid_argument("flag " + flag.name() + " is not irreducible");
    if (cd.series() != 'A')
        throw std::invalid_argument("fiber construction not implemented for series " +
                                    std::string(1, cd.series()));

    // Natural module of the full algebra, then the Levi-stable coordinate
    // split W = A + B across the crossed node.
    ActingAlgebra fullAlg = ActingAlgebra::full(cd);
    ActingAlgebra leviAlg = ActingAlgebra::levi(flag);
    UqModule natural = UqModule::natural(fullAlg).restrictedTo(leviAlg);
    std::vector<Eigen::Index> aIdx, bIdx;
    for (Eigen::Index i = 0; i < natural.dim(); ++i)
        (i < flag.node ? aIdx : bIdx).push_back(i);
    UqModule a = natural.submodule(aIdx);
    UqModule b = natural.submodule(bIdx);

    UqModule v10 = tensor(a, b.dual());
    UqModule v01 = tensor(b, a.dual());

    Scalar norm = shatNorm ? *shatNorm : defaultShatNormalization(flag);
    if (norm.isZero()) throw std::invalid_argument("Shat normalization must be nonzero");
    if (norm.classicalLimit() != 1)
        throw std::invalid_argument("Shat normalization must have classical limit 1");
    EquivariantMap shat = braiding(v10, v01);
    shat.matrix = norm * shat.matrix;

    const Eigen::Index d2 = v10.dim() * v01.dim();
    Mat shatInv = inverseMat(shat.matrix);

    FiberData fd{flag, v10, v01, norm, shat, zeroMat(2 * d2, d2), zeroMat(2 * d2, d2),
                 zeroMat(d2, 2 * d2)};
    fd.liftPm.block(0, 0, d2, d2) = identityMat(d2);
    fd.liftMp.block(d2, 0, d2, d2) = -shat.matrix;
    fd.wedge.block(0, 0, d2, d2) = identityMat(d2);
    fd.wedge.block(0, d2, d2, d2) = -shatInv;

    // Degeneracy guard: the relation columns [ I ; Shat ] must have full
    // rank d^2 so the quotient has dimension d^2.
    Mat rel = zeroMat(2 * d2, d2);
    rel.block(0, 0, d2, d2) = identityMat(d2);
    rel.block(d2, 0, d2, d2) = shat.matrix;
    if (rank(rel) != d2) throw ScalarError("degenerate wedge relations");
    return fd;
}

Mat combineLifts(const FiberData& fd, const Scalar& c1, const Scalar& c2) {
    if (c1 + c2 != Scalar(1)) throw std::invalid_argument("lift coefficients must satisfy c1 + c2 = 1");
    return c1 * fd.liftPm + c2 * fd.liftMp;
}

namespace {

nlohmann::ordered_json matrixJson(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).toString());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string fiberReportJson(const FiberData& fd) {
    nlohmann::ordered_json j;
    j["flag"] = fd.flag.name();
    j["dim_v10"] = fd.dimV10();
    j["dim_v01"] = fd.dimV01();
    j["dim_v11"] = fd.dimV11();
    j["normalization"] = fd.normalization.toString();
    j["shat"] = matrixJson(fd.shat.matrix);
    j["lift_pm"] = matrixJson(fd.liftPm);
    j["lift_mp"] = matrixJson(fd.liftMp);
    return j.dump(2);
}

}  // namespace qflag
