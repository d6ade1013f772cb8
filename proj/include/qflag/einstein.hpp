#pragma once

#include <string>
#include <vector>

#include "qflag/scalar.hpp"

namespace qflag {

/// Einstein lift coefficients for Ricci coefficients a, b with a + b != 0:
/// the unique convex combination c1 + c2 = 1 with c1 a = c2 b, giving
/// Ricci_l = lambda g with lambda = a b / (a + b).
struct EinsteinLift {
    Scalar c1, c2, lambda;
};
EinsteinLift einsteinLift(const Scalar& a, const Scalar& b);

struct ScanRow {
    double q, a, b, lambda;
    bool einsteinOk;
};

struct RicciReport {
    Scalar a, b;
    Scalar c1, c2, lambda;
    bool aPlusBNonzero = false;
    std::vector<ScanRow> qSamples;
    bool einsteinOk = false;       // every sample row passed
    long exactRootsInInterval = 0; // certified count for the reduced numerator of a+b
    double neighborhoodLo = 0, neighborhoodHi = 0;  // certified root-free q-interval around 1
};

/// Samples a, b, lambda over [qmin, qmax] and certifies the absence of
/// roots of the reduced numerator of a + b exactly: a Sturm-sequence count
/// over a rational covering of the interval, plus the largest dyadic
/// neighborhood of 1 (in the s = q^{1/2} domain) that is certified
/// root-free.
RicciReport einsteinScan(const Scalar& a, const Scalar& b, double qmin, double qmax, int samples);

/// Number of distinct real roots of p in the open interval (lo, hi),
/// by Sturm sequences over exact rationals. p must be an ordinary
/// polynomial (minExp() >= 0; s-power factors are irrelevant and dropped).
long sturmRootCount(const LaurentPoly& p, const Rational& lo, const Rational& hi);

std::string ricciReportToJson(const RicciReport& r);
/// CSV with header q,a,b,lambda,einstein_ok.
std::string ricciReportToCsv(const RicciReport& r);

}  // namespace qflag
