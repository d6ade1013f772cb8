#include "qflag/einstein.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace qflag {

EinsteinLift einsteinLift(const Scalar& a, const Scalar& b) {
    Scalar sum = a + b;
    if (sum.isZero()) throw ScalarError("einstein lift undefined: a + b = 0");
    return {b / sum, a / sum, a * b / sum};
}

namespace {

LaurentPoly derivative(const LaurentPoly& p) {
    LaurentPoly d;
    for (const auto& [e, c] : p.terms())
        if (e != 0) d.setCoeff(e - 1, c * e);
    return d;
}

LaurentPoly dropSPowers(const LaurentPoly& p) {
    if (p.isZero()) return p;
    return p.shifted(-p.minExp());
}

int signAt(const LaurentPoly& p, const Rational& x) {
    Rational v = p.evalRational(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

std::vector<LaurentPoly> sturmChain(LaurentPoly p) {
    // Square-free part: counts distinct roots.
    LaurentPoly d = derivative(p);
    if (!d.isZero()) {
        LaurentPoly g = polyGcd(p, d);
        p = polyDivExact(p, g);
    }
    std::vector<LaurentPoly> chain{p};
    LaurentPoly prev = p, cur = derivative(p);
    while (!cur.isZero()) {
        chain.push_back(cur);
        LaurentPoly rem = polyDivRem(prev, cur).second;
        prev = cur;
        cur = -rem;
    }
    return chain;
}

long signChanges(const std::vector<LaurentPoly>& chain, const Rational& x) {
    long changes = 0;
    int last = 0;
    for (const auto& p : chain) {
        int s = signAt(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// A rational r with r <= sqrt(x) (below) or r >= sqrt(x) (!below).
Rational rationalSqrtBound(const Rational& x, bool below) {
    if (x <= 0) return Rational(0);
    Rational lo(0), hi = x < 1 ? Rational(1) : x;
    for (int i = 0; i < 40; ++i) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= x)
            lo = mid;
        else
            hi = mid;
    }
    return below ? lo : hi;
}

}  // namespace

long sturmRootCount(const LaurentPoly& p, const Rational& lo, const Rational& hi) {
    if (p.isZero()) throw ScalarError("root count of the zero polynomial");
    LaurentPoly q = dropSPowers(p);
    if (q.maxExp() == 0) return 0;
    auto chain = sturmChain(q);
    // V(lo) - V(hi) counts roots in (lo, hi]; drop hi if it is a root.
    long n = signChanges(chain, lo) - signChanges(chain, hi);
    if (signAt(chain.front(), hi) == 0) --n;
    return n;
}

RicciReport einsteinScan(const Scalar& a, const Scalar& b, double qmin, double qmax, int samples) {
    if (samples < 1 || qmin <= 0 || qmax < qmin)
        throw ScalarError("invalid einstein scan parameters");
    RicciReport r;
    r.a = a;
    r.b = b;
    Scalar sum = a + b;
    r.aPlusBNonzero = !sum.isZero();
    if (!r.aPlusBNonzero) {
        r.einsteinOk = false;
        return r;
    }
    EinsteinLift lift = einsteinLift(a, b);
    r.c1 = lift.c1;
    r.c2 = lift.c2;
    r.lambda = lift.lambda;

    r.einsteinOk = true;
    for (int i = 0; i < samples; ++i) {
        double q0 = samples == 1 ? qmin : qmin + (qmax - qmin) * i / (samples - 1);
        ScanRow row;
        row.q = q0;
        row.a = a.evalAt(q0);
        row.b = b.evalAt(q0);
        double s = row.a + row.b;
        row.einsteinOk = std::isfinite(row.a) && std::isfinite(row.b) && std::fabs(s) > 1e-12;
        row.lambda = row.einsteinOk ? row.a * row.b / s : std::nan("");
        r.einsteinOk = r.einsteinOk && row.einsteinOk;
        r.qSamples.push_back(row);
    }

    // Exact certification in the s = q^{1/2} domain: count distinct roots
    // of the reduced numerator of a + b over a rational covering of
    // [sqrt(qmin), sqrt(qmax)].
    auto toRational = [](double x) {
        return Rational(static_cast<long>(std::llround(x * (1 << 20))), 1 << 20);
    };
    Rational sLo = rationalSqrtBound(toRational(qmin) * Rational(63, 64), true);
    Rational sHi = rationalSqrtBound(toRational(qmax) * Rational(65, 64), false);
    if (sLo <= 0) sLo = Rational(1, 1024);
    r.exactRootsInInterval = sturmRootCount(sum.num(), sLo, sHi);
    if (r.exactRootsInInterval != 0) r.einsteinOk = false;

    // Largest dyadic s-neighborhood of 1 certified root-free.
    const LaurentPoly& numer = sum.num();
    Rational delta(1, 2);
    while (delta > Rational(1, 1 << 20) &&
           sturmRootCount(numer, Rational(1) - delta, Rational(1) + delta) != 0)
        delta /= 2;
    if (sturmRootCount(numer, Rational(1) - delta, Rational(1) + delta) == 0) {
        Rational lo = (Rational(1) - delta) * (Rational(1) - delta);
        Rational hi = (Rational(1) + delta) * (Rational(1) + delta);
        r.neighborhoodLo = lo.get_d();
        r.neighborhoodHi = hi.get_d();
    } else {
        r.einsteinOk = false;
    }
    return r;
}

std::string ricciReportToJson(const RicciReport& r) {
    nlohmann::ordered_json j;
    j["a"] = r.a.toString();
    j["b"] = r.b.toString();
    j["a_plus_b_nonzero"] = r.aPlusBNonzero;
    if (r.aPlusBNonzero) {
        j["c1"] = r.c1.toString();
        j["c2"] = r.c2.toString();
        j["lambda"] = r.lambda.toString();
    }
    j["einstein_ok"] = r.einsteinOk;
    j["exact_roots_in_interval"] = r.exactRootsInInterval;
    j["rootfree_q_neighborhood_of_1"] = {r.neighborhoodLo, r.neighborhoodHi};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.qSamples)
        rows.push_back({{"q", row.q},
                        {"a", row.a},
                        {"b", row.b},
                        {"lambda", row.lambda},
                        {"einstein_ok", row.einsteinOk}});
    j["q_samples"] = rows;
    return j.dump(2);
}

std::string ricciReportToCsv(const RicciReport& r) {
    std::ostringstream os;
    os << "q,a,b,lambda,einstein_ok\n";
    os.precision(17);
    for (const auto& row : r.qSamples)
        os << row.q << "," << row.a << "," << row.b << "," << row.lambda << ","
           << (row.einsteinOk ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace qflag
