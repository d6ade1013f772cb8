#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qflag {

using Rational = mpq_class;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Laurent polynomial in the formal variable s, with exact rational
/// coefficients. We work with s = q^{1/2}, so half-integer powers of q
/// are integer powers of s.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c) {
        if (c != 0) coeff_[0] = c;
    }
    static LaurentPoly monomial(const Rational& c, long exp) {
        LaurentPoly p;
        if (c != 0) p.coeff_[exp] = c;
        return p;
    }

    bool isZero() const { return coeff_.empty(); }
    long minExp() const;
    long maxExp() const;
    Rational coeff(long exp) const {
        auto it = coeff_.find(exp);
        return it == coeff_.end() ? Rational(0) : it->second;
    }
    const std::map<long, Rational>& terms() const { return coeff_; }

    void setCoeff(long exp, const Rational& c) {
        if (c == 0)
            coeff_.erase(exp);
        else
            coeff_[exp] = c;
    }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const { return coeff_ == o.coeff_; }

    LaurentPoly shifted(long by) const;

    /// Exact evaluation at a rational point s0 (for sign tests and limits).
    Rational evalRational(const Rational& s0) const;
    double evalDouble(double s0) const;

private:
    std::map<long, Rational> coeff_;  // exponent -> nonzero coefficient
};

/// Ordinary-polynomial helpers used by the reduction machinery.
/// Both arguments must have minExp() >= 0.
LaurentPoly polyDivExact(const LaurentPoly& a, const LaurentPoly& b);
std::pair<LaurentPoly, LaurentPoly> polyDivRem(const LaurentPoly& a,
                                               const LaurentPoly& b);
LaurentPoly polyGcd(LaurentPoly a, LaurentPoly b);

/// Element of the field Q(s) with q = s^2, stored as a reduced fraction.
///
/// Canonical form: the denominator is an ordinary polynomial in s with
/// nonzero constant term whose lowest-degree coefficient is 1; numerator
/// and denominator are coprime. Any s-power factor lives in the numerator.
class Scalar {
public:
    Scalar() : num_(), den_(LaurentPoly(Rational(1))) {}
    Scalar(long v) : Scalar(Rational(v)) {}
    Scalar(const Rational& v) : num_(LaurentPoly(v)), den_(LaurentPoly(Rational(1))) {}
    Scalar(LaurentPoly num, LaurentPoly den);

    /// q^{k/2} for integer k, i.e. s^k.
    static Scalar sPower(long k) { return Scalar(LaurentPoly::monomial(1, k), LaurentPoly(Rational(1))); }
    /// q^n for integer n.
    static Scalar qPower(long n) { return sPower(2 * n); }
    static Scalar q() { return qPower(1); }
    /// [n]_q = (q^n - q^{-n})/(q - q^{-1}).
    static Scalar qInteger(long n);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool isZero() const { return num_.isZero(); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar pow(long n) const;

    /// Value at q = q0 > 0 (so s = sqrt(q0)), in double precision.
    /// Throws ScalarError on a pole at q0.
    double evalAt(double q0) const;

    /// Exact rational value at q = 1. Throws ScalarError on a genuine pole.
    Rational classicalLimit() const;

    /// Exact sign of the value at s = s0 (rational, s0 > 0).
    int signAtS(const Rational& s0) const;

    std::string toString() const;

private:
    void reduce();

    LaurentPoly num_;
    LaurentPoly den_;
};

inline Scalar operator*(long c, const Scalar& x) { return Scalar(c) * x; }

/// Parses the textual Scalar grammar: rationals, the symbol q, q^n,
/// q^(n/2), + - * / and parentheses. Inverse of Scalar::toString().
Scalar parseScalar(const std::string& text);

std::string laurentToString(const LaurentPoly& p);

}  // namespace qflag
