#include "qflag/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace qflag {

long LaurentPoly::minExp() const {
    if (coeff_.empty()) throw ScalarError("minExp of zero polynomial");
    return coeff_.begin()->first;
}

long LaurentPoly::maxExp() const {
    if (coeff_.empty()) throw ScalarError("maxExp of zero polynomial");
    return coeff_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeff_) r.setCoeff(e, r.coeff(e) + c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeff_) r.setCoeff(e, r.coeff(e) - c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeff_) r.coeff_[e] = -c;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : coeff_)
        for (const auto& [e2, c2] : o.coeff_) r.setCoeff(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::shifted(long by) const {
    LaurentPoly r;
    for (const auto& [e, c] : coeff_) r.coeff_[e + by] = c;
    return r;
}

Rational LaurentPoly::evalRational(const Rational& s0) const {
    if (coeff_.empty()) return Rational(0);
    if (s0 == 0) {
        // Fine for ordinary polynomials; only negative exponents blow up.
        if (minExp() < 0) throw ScalarError("evaluation of Laurent polynomial at s = 0");
        return coeff(0);
    }
    // Horner over the exponent range.
    long lo = minExp(), hi = maxExp();
    Rational acc(0);
    for (long e = hi; e >= lo; --e) {
        acc = acc * s0;
        acc += coeff(e);
    }
    Rational shift(1);
    if (lo > 0)
        for (long i = 0; i < lo; ++i) shift *= s0;
    else
        for (long i = 0; i < -lo; ++i) shift /= s0;
    return acc * shift;
}

double LaurentPoly::evalDouble(double s0) const {
    double acc = 0.0;
    for (const auto& [e, c] : coeff_) acc += c.get_d() * std::pow(s0, static_cast<double>(e));
    return acc;
}

std::pair<LaurentPoly, LaurentPoly> polyDivRem(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.isZero()) throw ScalarError("division by zero polynomial");
    LaurentPoly rem = a, quo;
    long db = b.maxExp();
    Rational lead = b.coeff(db);
    while (!rem.isZero() && rem.maxExp() >= db) {
        long e = rem.maxExp() - db;
        Rational c = rem.coeff(rem.maxExp()) / lead;
        quo.setCoeff(e, c);
        rem = rem - b.shifted(e) * LaurentPoly(c);
    }
    return {quo, rem};
}

LaurentPoly polyDivExact(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = polyDivRem(a, b);
    if (!r.isZero()) throw ScalarError("inexact polynomial division");
    return q;
}

LaurentPoly polyGcd(LaurentPoly a, LaurentPoly b) {
    while (!b.isZero()) {
        auto [q, r] = polyDivRem(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.isZero()) return a;
    // Monic normalization for determinism.
    Rational lead = a.coeff(a.maxExp());
    LaurentPoly r;
    for (const auto& [e, c] : a.terms()) r.setCoeff(e, c / lead);
    return r;
}

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw ScalarError("division by zero polynomial");
    reduce();
}

void Scalar::reduce() {
    if (num_.isZero()) {
        den_ = LaurentPoly(Rational(1));
        return;
    }
    // Move all s-power factors into the numerator.
    long shift = den_.minExp();
    den_ = den_.shifted(-shift);
    num_ = num_.shifted(-shift);
    long numShift = num_.minExp();
    LaurentPoly numPoly = num_.shifted(-numShift);
    LaurentPoly g = polyGcd(numPoly, den_);
    numPoly = polyDivExact(numPoly, g);
    den_ = polyDivExact(den_, g);
    // Denominator convention: lowest-degree coefficient equals 1.
    Rational low = den_.coeff(den_.minExp());
    LaurentPoly n2, d2;
    for (const auto& [e, c] : numPoly.terms()) n2.setCoeff(e, c / low);
    for (const auto& [e, c] : den_.terms()) d2.setCoeff(e, c / low);
    num_ = n2.shifted(numShift);
    den_ = d2;
}

Scalar Scalar::qInteger(long n) {
    // [n] = s^{2n-...}: (q^n - q^-n)/(q - q^-1) = sum_{k} q^{n-1-2k}, k=0..n-1.
    if (n == 0) return Scalar(0);
    long an = n < 0 ? -n : n;
    LaurentPoly p;
    for (long k = 0; k < an; ++k) p.setCoeff(2 * (an - 1 - 2 * k), 1);
    Scalar r(p, LaurentPoly(Rational(1)));
    return n < 0 ? -r : r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const { return Scalar(num_ * o.num_, den_ * o.den_); }

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.isZero()) throw ScalarError("division by zero polynomial");
    return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

Scalar Scalar::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar r(1), base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

double Scalar::evalAt(double q0) const {
    if (!(q0 > 0)) throw ScalarError("evaluation requires q0 > 0");
    double s0 = std::sqrt(q0);
    double d = den_.evalDouble(s0);
    if (std::abs(d) < 1e-300) throw ScalarError("pole at q0");
    return num_.evalDouble(s0) / d;
}

Rational Scalar::classicalLimit() const {
    Rational d = den_.evalRational(Rational(1));
    if (d == 0) throw ScalarError("no classical limit");
    return num_.isZero() ? Rational(0) : num_.evalRational(Rational(1)) / d;
}

int Scalar::signAtS(const Rational& s0) const {
    if (s0 <= 0) throw ScalarError("signAtS requires s0 > 0");
    Rational d = den_.evalRational(s0);
    if (d == 0) throw ScalarError("pole at q0");
    if (num_.isZero()) return 0;
    Rational n = num_.evalRational(s0);
    return sgn(n) * sgn(d);
}

namespace {

std::string rationalToString(const Rational& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

// One Laurent term in q-notation: exponent is in s, so q-exponent e/2.
std::string termToString(const Rational& c, long e) {
    std::string qpow;
    if (e == 0) {
        return rationalToString(c);
    } else if (e == 2) {
        qpow = "q";
    } else if (e % 2 == 0) {
        qpow = "q^" + std::to_string(e / 2);
    } else {
        qpow = "q^(" + std::to_string(e) + "/2)";
    }
    if (c == 1) return qpow;
    if (c == -1) return "-" + qpow;
    std::string cs = rationalToString(c);
    if (c.get_den() != 1) cs = "(" + cs + ")";
    return cs + "*" + qpow;
}

}  // namespace

std::string laurentToString(const LaurentPoly& p) {
    if (p.isZero()) return "0";
    std::string out;
    bool first = true;
    // Highest power first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        std::string t = termToString(it->second, it->first);
        if (first) {
            out = t;
            first = false;
        } else if (!t.empty() && t[0] == '-') {
            out += "-" + t.substr(1);
        } else {
            out += "+" + t;
        }
    }
    return out;
}

std::string Scalar::toString() const {
    std::string n = laurentToString(num_);
    if (den_ == LaurentPoly(Rational(1))) return n;
    std::string d = laurentToString(den_);
    return "(" + n + ")/(" + d + ")";
}

// ---------------------------------------------------------------------------
// Parser for the Scalar grammar.

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Scalar parse() {
        Scalar r = expr();
        skipWs();
        if (pos_ != s_.size()) throw ScalarError("trailing input in scalar: " + s_);
        return r;
    }

private:
    Scalar expr() {
        skipWs();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skipWs();
        }
        Scalar r = term();
        if (neg) r = -r;
        for (;;) {
            skipWs();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Scalar t = term();
                r = (c == '+') ? r + t : r - t;
            } else {
                return r;
            }
        }
    }

    Scalar term() {
        Scalar r = factor();
        for (;;) {
            skipWs();
            char c = peek();
            if (c == '*' || c == '/') {
                get();
                Scalar f = factor();
                r = (c == '*') ? r * f : r / f;
            } else if (c == '(' || c == 'q' || std::isdigit(static_cast<unsigned char>(c))) {
                // Implicit multiplication, e.g. "2q" or "3(q+1)".
                r = r * factor();
            } else {
                return r;
            }
        }
    }

    Scalar factor() {
        Scalar base = atom();
        skipWs();
        if (peek() == '^') {
            get();
            auto [n, d] = exponent();
            if (d == 2) {
                if (!(base == Scalar::q())) throw ScalarError("half powers only supported for q");
                return Scalar::sPower(n);
            }
            return base.pow(n);
        }
        return base;
    }

    // Exponent: integer, or (n/2) / (n) in parentheses.
    std::pair<long, long> exponent() {
        skipWs();
        bool paren = false;
        if (peek() == '(') {
            get();
            paren = true;
        }
        long n = integer();
        long d = 1;
        skipWs();
        if (paren && peek() == '/') {
            get();
            d = integer();
            if (d != 2) throw ScalarError("only half-integer exponents are supported");
        }
        if (paren) {
            skipWs();
            if (get() != ')') throw ScalarError("expected ')' in exponent");
        }
        return {n, d};
    }

    Scalar atom() {
        skipWs();
        char c = peek();
        if (c == '(') {
            get();
            Scalar r = expr();
            skipWs();
            if (get() != ')') throw ScalarError("expected ')'");
            return r;
        }
        if (c == 'q') {
            get();
            return Scalar::q();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long n = integer();
            return Scalar(Rational(n));
        }
        throw ScalarError("unexpected character in scalar: " + s_);
    }

    long integer() {
        skipWs();
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ScalarError("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
        return neg ? -v : v;
    }

    void skipWs() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

Scalar parseScalar(const std::string& text) { return Parser(text).parse(); }

}  // namespace qflag
