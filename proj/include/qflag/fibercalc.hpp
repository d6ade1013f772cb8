#pragma once

#include <optional>
#include <string>

#include "qflag/uqmodule.hpp"

namespace qflag {

/// Cotangent fiber data of an irreducible flag manifold, as modules over
/// the Levi factor of the crossed node.
///
/// V10 and V01 are the two irreducible pieces of the degree-one fiber;
/// Shat is the normalized braiding V10 (x) V01 -> V01 (x) V10 used to
/// define the degree-(1,1) wedge relations. The two-form fiber V11 is
/// ((V10 (x) V01) + (V01 (x) V10)) / span{ t + Shat(t) }, with the images
/// of the V10 (x) V01 basis as coset representatives; in that basis the
/// wedge projection out of the direct sum D = (V10 (x) V01) + (V01 (x) V10)
/// is [ I  -Shat^{-1} ], and the two canonical lifts V11 -> D are
///   liftPm = [ I ; 0 ]        (into V10 (x) V01),
///   liftMp = [ 0 ; -Shat ]    (into V01 (x) V10).
struct FiberData {
    FlagSpec flag;
    UqModule v10;
    UqModule v01;
    Scalar normalization;  // classical limit must be 1
    EquivariantMap shat;   // normalization * braiding(v10, v01)
    Mat liftPm;            // (2 d^2) x d^2
    Mat liftMp;
    Mat wedge;  // d^2 x (2 d^2)

    Eigen::Index dimV10() const { return v10.dim(); }
    Eigen::Index dimV01() const { return v01.dim(); }
    Eigen::Index dimV11() const { return v10.dim() * v01.dim(); }
};

/// Default Shat normalizations per flag: q^4 for A1:1 (so that Shat matches
/// the scalar of the frame wedge relations on the underlying quantum
/// sphere), 1 otherwise. Overridable.
Scalar defaultShatNormalization(const FlagSpec& flag);

/// Builds the fiber data. Throws for non-irreducible flags and for series
/// without an implemented fiber construction (currently series A).
FiberData cotangentFibers(const FlagSpec& flag,
                          const std::optional<Scalar>& shatNorm = std::nullopt);

/// c1 * liftPm + c2 * liftMp; requires c1 + c2 = 1.
Mat combineLifts(const FiberData& fd, const Scalar& c1, const Scalar& c2);

/// Entrywise classical limit (value at q = 1); throws if any entry has a
/// pole at q = 1.
Mat classicalLimitMat(const Mat& m);

/// Flip v (x) w -> w (x) v as a matrix (kron index conventions).
Mat flipMat(Eigen::Index dimA, Eigen::Index dimB);

/// JSON report: flag, dimensions, shat, lift_pm, lift_mp.
std::string fiberReportJson(const FiberData& fd);

}  // namespace qflag
