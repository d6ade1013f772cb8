#include "qflag/podles.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace qflag::podles {

namespace {

int genGrade(char g) { return (g == 'a' || g == 'c') ? 1 : -1; }

/// Right multiplication of a normal monomial by a single generator,
/// using the rewriting rules of the relations. Moving a past b or c from
/// the right costs q^{-1} each, d costs q^{+1}; the inversion relations
///   d a = 1 + q^{-1} b c,   a d = 1 + q b c
/// resolve mixed a/d powers.
AlgebraElement mulMonGen(const Monomial& m, char g) {
    AlgebraElement out;
    const int j = m.bPow, k = m.cPow;
    switch (g) {
        case 'b':
            out.addTerm(Monomial{m.aPow, m.dPow, j + 1, k}, Scalar(1));
            break;
        case 'c':
            out.addTerm(Monomial{m.aPow, m.dPow, j, k + 1}, Scalar(1));
            break;
        case 'a': {
            Scalar t = Scalar::qPower(-(j + k));
            if (m.dPow == 0) {
                out.addTerm(Monomial{m.aPow + 1, 0, j, k}, t);
            } else {
                out.addTerm(Monomial{0, m.dPow - 1, j, k}, t);
                out.addTerm(Monomial{0, m.dPow - 1, j + 1, k + 1}, t * Scalar::qPower(-1));
            }
            break;
        }
        case 'd': {
            Scalar t = Scalar::qPower(j + k);
            if (m.aPow == 0) {
                out.addTerm(Monomial{0, m.dPow + 1, j, k}, t);
            } else {
                out.addTerm(Monomial{m.aPow - 1, 0, j, k}, t);
                out.addTerm(Monomial{m.aPow - 1, 0, j + 1, k + 1}, t * Scalar::q());
            }
            break;
        }
        default:
            throw std::invalid_argument("unknown generator");
    }
    return out;
}

AlgebraElement mulGen(const AlgebraElement& x, char g) {
    AlgebraElement out;
    for (const auto& [m, c] : x.terms()) {
        AlgebraElement p = mulMonGen(m, g);
        for (const auto& [m2, c2] : p.terms()) out.addTerm(m2, c * c2);
    }
    return out;
}

std::string monomialWord(const Monomial& m) {
    std::string w;
    w.append(static_cast<size_t>(m.aPow), 'a');
    w.append(static_cast<size_t>(m.dPow), 'd');
    w.append(static_cast<size_t>(m.bPow), 'b');
    w.append(static_cast<size_t>(m.cPow), 'c');
    return w;
}

}  // namespace

std::string Monomial::toString() const {
    if (isUnit()) return "1";
    std::string w = monomialWord(*this);
    return w;
}

AlgebraElement AlgebraElement::gen(char g) {
    AlgebraElement x;
    Monomial m;
    switch (g) {
        case 'a': m.aPow = 1; break;
        case 'd': m.dPow = 1; break;
        case 'b': m.bPow = 1; break;
        case 'c': m.cPow = 1; break;
        default: throw std::invalid_argument("unknown generator");
    }
    x.terms_[m] = Scalar(1);
    return x;
}

AlgebraElement AlgebraElement::monomial(const Monomial& m, const Scalar& c) {
    AlgebraElement x;
    if (!c.isZero()) x.terms_[m] = c;
    return x;
}

void AlgebraElement::addTerm(const Monomial& m, const Scalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.isZero()) terms_[m] = c;
        return;
    }
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement out = *this;
    for (const auto& [m, c] : o.terms_) out.addTerm(m, c);
    return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement out = *this;
    for (const auto& [m, c] : o.terms_) out.addTerm(m, -c);
    return out;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

AlgebraElement AlgebraElement::operator*(const Scalar& c) const {
    AlgebraElement out;
    if (c.isZero()) return out;
    for (const auto& [m, cf] : terms_) out.terms_[m] = cf * c;
    return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    AlgebraElement out;
    for (const auto& [m2, c2] : o.terms_) {
        AlgebraElement acc = *this * c2;
        for (char g : monomialWord(m2)) acc = mulGen(acc, g);
        out = out + acc;
    }
    return out;
}

int AlgebraElement::grade() const {
    if (terms_.empty()) return 0;
    int g = terms_.begin()->first.grade();
    for (const auto& [m, c] : terms_)
        if (m.grade() != g) throw ScalarError("inhomogeneous algebra element: " + toString());
    return g;
}

Scalar AlgebraElement::scalarValue() const {
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() != 1 || !terms_.begin()->first.isUnit())
        throw ScalarError("expected a scalar multiple of the unit: " + toString());
    return terms_.begin()->second;
}

std::string AlgebraElement::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.toString() << ")*" << m.toString();
    }
    return os.str();
}

AlgebraElement normalForm(const std::string& word) {
    AlgebraElement acc = AlgebraElement::unit();
    for (char g : word) acc = mulGen(acc, g);
    return acc;
}

AlgebraElement normalFormSplit(const std::string& word) {
    if (word.size() <= 1) return normalForm(word);
    size_t mid = word.size() / 2;
    return normalFormSplit(word.substr(0, mid)) * normalFormSplit(word.substr(mid));
}

namespace {

AlgebraElement actEMon(const Monomial& m);
AlgebraElement actFMon(const Monomial& m);

char leadingGen(const Monomial& m) {
    if (m.aPow) return 'a';
    if (m.dPow) return 'd';
    if (m.bPow) return 'b';
    return 'c';
}

Monomial dropLeading(const Monomial& m, char g) {
    Monomial r = m;
    switch (g) {
        case 'a': --r.aPow; break;
        case 'd': --r.dPow; break;
        case 'b': --r.bPow; break;
        default: --r.cPow; break;
    }
    return r;
}

AlgebraElement genAction(char g, bool e) {
    if (e) {
        if (g == 'b') return AlgebraElement::gen('a');
        if (g == 'd') return AlgebraElement::gen('c');
    } else {
        if (g == 'a') return AlgebraElement::gen('b');
        if (g == 'c') return AlgebraElement::gen('d');
    }
    return {};
}

AlgebraElement actEMon(const Monomial& m) {
    static std::map<Monomial, AlgebraElement> cache;
    if (m.isUnit()) return {};
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    char g = leadingGen(m);
    Monomial rest = dropLeading(m, g);
    // E(xy) = (K x)(E y) + (E x) y with x the leading generator.
    AlgebraElement out = (AlgebraElement::gen(g) * actEMon(rest)) * Scalar::qPower(genGrade(g));
    out = out + genAction(g, true) * AlgebraElement::monomial(rest, Scalar(1));
    cache[m] = out;
    return out;
}

AlgebraElement actFMon(const Monomial& m) {
    static std::map<Monomial, AlgebraElement> cache;
    if (m.isUnit()) return {};
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    char g = leadingGen(m);
    Monomial rest = dropLeading(m, g);
    // F(xy) = x (F y) + (F x)(K^{-1} y) with x the leading generator.
    AlgebraElement out = AlgebraElement::gen(g) * actFMon(rest);
    out = out + genAction(g, false) * AlgebraElement::monomial(rest, Scalar::qPower(-rest.grade()));
    cache[m] = out;
    return out;
}

}  // namespace

AlgebraElement actE(const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [m, c] : x.terms()) out = out + actEMon(m) * c;
    return out;
}

AlgebraElement actF(const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [m, c] : x.terms()) out = out + actFMon(m) * c;
    return out;
}

AlgebraElement actK(const AlgebraElement& x, int power) {
    AlgebraElement out;
    for (const auto& [m, c] : x.terms()) out.addTerm(m, c * Scalar::qPower(power * m.grade()));
    return out;
}

AlgebraElement del(const AlgebraElement& x) { return actF(x); }

AlgebraElement dbar(const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [m, c] : x.terms())
        out = out + actEMon(m) * (c * Scalar::qPower(-m.grade()));
    return out;
}

int legWeight(const Word& w) {
    int s = 0;
    for (int l : w) s += (l == LegVol) ? 2 : 1;
    return s;
}

int properGrade(int leg) { return leg == LegP ? -2 : (leg == LegM ? 2 : 0); }

TensorElement TensorElement::term(const AlgebraElement& c, const Word& w) {
    TensorElement t;
    t.add(w, c);
    return t;
}

void TensorElement::add(const Word& w, const AlgebraElement& c) {
    if (c.isZero()) return;
    auto it = comp_.find(w);
    if (it == comp_.end()) {
        comp_[w] = c;
        return;
    }
    it->second = it->second + c;
    if (it->second.isZero()) comp_.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [w, c] : o.comp_) out.add(w, c);
    return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [w, c] : o.comp_) out.add(w, -c);
    return out;
}

TensorElement TensorElement::operator*(const Scalar& c) const {
    TensorElement out;
    for (const auto& [w, cf] : comp_) out.add(w, cf * c);
    return out;
}

TensorElement TensorElement::leftMul(const AlgebraElement& x) const {
    TensorElement out;
    for (const auto& [w, c] : comp_) out.add(w, x * c);
    return out;
}

TensorElement TensorElement::rightMul(const AlgebraElement& x) const {
    TensorElement out;
    for (const auto& [w, c] : comp_) {
        int wt = legWeight(w);
        for (const auto& [m, cf] : x.terms())
            out.add(w, c * AlgebraElement::monomial(m, cf * Scalar::qPower(-wt * m.grade())));
    }
    return out;
}

TensorElement TensorElement::concat(const TensorElement& o) const {
    TensorElement out;
    for (const auto& [w1, c1] : comp_) {
        int wt = legWeight(w1);
        for (const auto& [w2, c2] : o.comp_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            AlgebraElement moved;
            for (const auto& [m, cf] : c2.terms())
                moved.addTerm(m, cf * Scalar::qPower(-wt * m.grade()));
            out.add(w, c1 * moved);
        }
    }
    return out;
}

std::string TensorElement::toString() const {
    if (comp_.empty()) return "0";
    static const char* names[] = {"w+", "w-", "vol"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : comp_) {
        if (!first) os << "  +  ";
        first = false;
        os << "[" << c.toString() << "]";
        for (int l : w) os << " (x) " << names[l];
    }
    return os.str();
}

const std::vector<std::pair<AlgebraElement, AlgebraElement>>& dualPairs(int g) {
    static std::map<int, std::vector<std::pair<AlgebraElement, AlgebraElement>>> cache;
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    if (g % 2 != 0) throw ScalarError("dual pairs exist only for even grades");
    std::vector<std::pair<AlgebraElement, AlgebraElement>> pairs;
    if (g == 0) {
        pairs.emplace_back(AlgebraElement::unit(), AlgebraElement::unit());
    } else if (g == 2 || g == -2) {
        // Solve sum_{pq} t_{pq} u_p v_q = 1 over the degree-two monomial
        // candidates of the two grades.
        std::vector<std::string> plus{"aa", "ac", "cc"}, minus{"bb", "bd", "dd"};
        const auto& us = (g == 2) ? plus : minus;
        const auto& vs = (g == 2) ? minus : plus;
        std::vector<AlgebraElement> prods;
        std::map<Monomial, size_t> rows;
        for (const auto& u : us)
            for (const auto& v : vs) {
                AlgebraElement p = normalForm(u + v);
                for (const auto& [m, c] : p.terms()) rows.emplace(m, rows.size());
                prods.push_back(p);
            }
        Mat sys = zeroMat(static_cast<Eigen::Index>(rows.size()), 9);
        Vec rhs = zeroMat(static_cast<Eigen::Index>(rows.size()), 1);
        for (size_t col = 0; col < prods.size(); ++col)
            for (const auto& [m, c] : prods[col].terms())
                sys(static_cast<Eigen::Index>(rows.at(m)), static_cast<Eigen::Index>(col)) = c;
        rhs(static_cast<Eigen::Index>(rows.at(Monomial{}))) = Scalar(1);
        auto sol = solveLinear(sys, rhs);
        if (!sol) throw ScalarError("no dual pair decomposition of the unit");
        for (size_t p = 0; p < us.size(); ++p) {
            AlgebraElement v;
            for (size_t qi = 0; qi < vs.size(); ++qi)
                v = v + normalForm(vs[qi]) * (*sol)(static_cast<Eigen::Index>(p * 3 + qi));
            if (!v.isZero()) pairs.emplace_back(normalForm(us[p]), v);
        }
    } else {
        int g1 = g > 0 ? 2 : -2;
        for (const auto& [u1, v1] : dualPairs(g1))
            for (const auto& [u2, v2] : dualPairs(g - g1)) {
                AlgebraElement u = u1 * u2, v = v2 * v1;
                if (!u.isZero() && !v.isZero()) pairs.emplace_back(u, v);
            }
    }
    // Exactness check: sum u_i v_i = 1 with the prescribed grades.
    AlgebraElement sum;
    for (const auto& [u, v] : pairs) {
        if (u.grade() != g || v.grade() != -g) throw ScalarError("dual pair grade mismatch");
        sum = sum + u * v;
    }
    if (sum.scalarValue() != Scalar(1)) throw ScalarError("dual pair sum is not the unit");
    return cache[g] = pairs;
}

std::vector<std::pair<AlgebraElement, AlgebraElement>> splitTerm(const AlgebraElement& c,
                                                                 int prefixWeight, int yGrade) {
    std::vector<std::pair<AlgebraElement, AlgebraElement>> out;
    if (c.isZero()) return out;
    AlgebraElement z = c * Scalar::qPower(prefixWeight * yGrade);
    for (const auto& [u, v] : dualPairs(-yGrade)) out.emplace_back(z * u, v);
    return out;
}

TensorElement dFunction(const AlgebraElement& x) {
    if (!x.isZero() && x.grade() != 0)
        throw ScalarError("d of a function requires grade zero");
    TensorElement t;
    t.add({LegP}, del(x));
    t.add({LegM}, dbar(x));
    return t;
}

/// wedge of two one-form legs, as a scalar multiple of vol.
Scalar wedgeScalar(int l1, int l2) {
    if (l1 == LegP && l2 == LegM) return Scalar(1);
    if (l1 == LegM && l2 == LegP) return -Scalar::qPower(-2);
    return Scalar(0);
}

TensorElement wedgeFirstTwo(const TensorElement& t) {
    TensorElement out;
    for (const auto& [w, c] : t.components()) {
        if (w.size() < 2 || w[0] == LegVol || w[1] == LegVol)
            throw ScalarError("wedge expects two leading one-form legs");
        Scalar s = wedgeScalar(w[0], w[1]);
        if (s.isZero()) continue;
        Word rest{LegVol};
        rest.insert(rest.end(), w.begin() + 2, w.end());
        out.add(rest, c * s);
    }
    return out;
}

TensorElement dOneForm(const AlgebraElement& c, int leg) {
    if (!c.isZero() && c.grade() != properGrade(leg))
        throw ScalarError("improper one-form coefficient");
    // d(c w_eps) = dc /\ w_eps (the frames are closed).
    TensorElement out;
    out.add({LegVol}, del(c) * wedgeScalar(LegP, leg) + dbar(c) * wedgeScalar(LegM, leg));
    return out;
}

int pairIndex(int leg1, int leg2) { return 2 * leg1 + leg2; }

TensorElement metricTensor() {
    TensorElement g;
    g.add({LegP, LegM}, AlgebraElement::unit());
    g.add({LegM, LegP}, AlgebraElement(Scalar::qPower(2)));
    return g;
}

Scalar framePairing(int leg1, int leg2) {
    if (leg1 == LegP && leg2 == LegM) return Scalar::qPower(-2);
    if (leg1 == LegM && leg2 == LegP) return Scalar(1);
    return Scalar(0);
}

TensorElement applyNabla(const Connection& conn, const AlgebraElement& c, int leg) {
    (void)conn;  // covariance leaves no frame freedom in nabla itself
    if (!c.isZero() && c.grade() != properGrade(leg))
        throw ScalarError("improper one-form coefficient");
    TensorElement out;
    out.add({LegP, leg}, del(c));
    out.add({LegM, leg}, dbar(c));
    return out;
}

TensorElement applySigma(const Connection& conn, const TensorElement& t) {
    TensorElement out;
    for (const auto& [w, c] : t.components()) {
        if (w.size() < 2 || w[0] == LegVol || w[1] == LegVol)
            throw ScalarError("sigma expects two leading one-form legs");
        int in = pairIndex(w[0], w[1]);
        for (int o = 0; o < 4; ++o) {
            const Scalar& s = conn.sigma[static_cast<size_t>(in)][static_cast<size_t>(o)];
            if (s.isZero()) continue;
            Word w2 = w;
            w2[0] = o / 2;
            w2[1] = o % 2;
            out.add(w2, c * s);
        }
    }
    return out;
}

namespace {

std::vector<AlgebraElement> properMonomials(int grade, int maxDegree) {
    std::vector<AlgebraElement> out;
    for (int ap = 0; ap <= maxDegree; ++ap)
        for (int dp = 0; dp <= maxDegree; ++dp) {
            if (ap && dp) continue;
            for (int j = 0; ap + dp + j <= maxDegree; ++j)
                for (int k = 0; ap + dp + j + k <= maxDegree; ++k) {
                    Monomial m{ap, dp, j, k};
                    if (m.grade() == grade && m.degree() > 0)
                        out.push_back(AlgebraElement::monomial(m, Scalar(1)));
                }
        }
    return out;
}

const std::vector<std::string>& sigmaCorpusX() {
    static std::vector<std::string> xs{"ab", "cb", "cd", "abab", "abcb", "abcd", "cbcb", "cdcd"};
    return xs;
}

/// (nabla (x) id + (sigma (x) id)(id (x) nabla))(g), the metric
/// compatibility defect. Individual summands depend on the simple-tensor
/// splitting of g; the sum does not.
TensorElement metricDefect(const Connection& conn) {
    TensorElement out;
    TensorElement g = metricTensor();
    for (const auto& [w, c] : g.components()) {
        for (const auto& [x, y] : splitTerm(c, legWeight({w[0]}), properGrade(w[1]))) {
            TensorElement right = applyNabla(conn, y, w[1]);
            out = out + applyNabla(conn, x, w[0]).concat(TensorElement::term(y, {w[1]}));
            out = out + applySigma(conn, TensorElement::term(x, {w[0]}).concat(right));
        }
    }
    return out;
}

/// Collects the linear system "rows" of a TensorElement-valued affine map
/// evaluated at unit vectors of the unknowns.
struct AffineSystem {
    std::map<std::pair<Word, Monomial>, Eigen::Index> rowIndex;
    std::vector<std::map<Eigen::Index, Scalar>> cols;  // per unknown
    std::map<Eigen::Index, Scalar> rhs;

    explicit AffineSystem(size_t nUnknowns) : cols(nUnknowns) {}

    void accumulate(const TensorElement& t, std::map<Eigen::Index, Scalar>& into, const Scalar& sign) {
        for (const auto& [w, c] : t.components())
            for (const auto& [m, cf] : c.terms()) {
                auto key = std::make_pair(w, m);
                auto [it, inserted] = rowIndex.emplace(key, static_cast<Eigen::Index>(rowIndex.size()));
                into[it->second] += sign * cf;
            }
    }

    /// Solves; throws unless the solution exists and is unique.
    Vec solve(const std::string& what) {
        Mat sys = zeroMat(static_cast<Eigen::Index>(rowIndex.size()),
                          static_cast<Eigen::Index>(cols.size()));
        Vec r = zeroMat(static_cast<Eigen::Index>(rowIndex.size()), 1);
        for (size_t u = 0; u < cols.size(); ++u)
            for (const auto& [row, v] : cols[u]) sys(row, static_cast<Eigen::Index>(u)) = v;
        for (const auto& [row, v] : rhs) r(row) = v;
        auto sol = solveLinear(sys, r);
        if (!sol) throw ScalarError("connection solver: " + what + " system inconsistent");
        if (nullspace(sys).cols() != 0)
            throw ScalarError("connection solver: " + what + " system underdetermined");
        return *sol;
    }
};

}  // namespace

TensorElement metricCompatibilityDefect(const Connection& conn) { return metricDefect(conn); }

Connection solveConnection() {
    Connection conn;
    for (auto& row : conn.sigma) row = {Scalar(0), Scalar(0), Scalar(0), Scalar(0)};

    // Covariance forces nabla(c w_eps) = dc (x) w_eps (no Gamma terms, see
    // the Connection docs); sigma comes from the bimodule constraint
    //   sigma(y w_eps (x) dx) = y (dx (x) w_eps)
    // over a corpus of proper coefficients y and sphere elements x.
    {
        AffineSystem sys(16);
        for (int eps : {LegP, LegM}) {
            for (const auto& y : properMonomials(properGrade(eps), 3)) {
                for (const auto& xw : sigmaCorpusX()) {
                    AlgebraElement x = normalForm(xw);
                    TensorElement input = TensorElement::term(y, {eps}).concat(dFunction(x));
                    TensorElement target =
                        dFunction(x).concat(TensorElement::term(AlgebraElement::unit(), {eps}))
                            .leftMul(y);
                    // sigma contributes t[in][out] * input_{in} on word out.
                    for (const auto& [w, c] : input.components()) {
                        int in = pairIndex(w[0], w[1]);
                        for (int o = 0; o < 4; ++o) {
                            TensorElement contrib = TensorElement::term(c, {o / 2, o % 2});
                            sys.accumulate(contrib, sys.cols[static_cast<size_t>(in * 4 + o)],
                                           Scalar(1));
                        }
                    }
                    sys.accumulate(target, sys.rhs, Scalar(1));
                }
            }
        }
        Vec t = sys.solve("sigma");
        for (int in = 0; in < 4; ++in)
            for (int o = 0; o < 4; ++o)
                conn.sigma[static_cast<size_t>(in)][static_cast<size_t>(o)] = t(in * 4 + o);
    }

    // Exact verification of the three defining properties.
    if (!metricDefect(conn).isZero())
        throw ScalarError("connection solver: metric compatibility failed");
    for (int eps : {LegP, LegM}) {
        for (const auto& y : properMonomials(properGrade(eps), 3)) {
            // torsion: /\ nabla = d on Omega^1
            if (!(wedgeFirstTwo(applyNabla(conn, y, eps)) - dOneForm(y, eps)).isZero())
                throw ScalarError("connection solver: torsion check failed");
            // bimodule connection property against sigma
            for (const auto& xw : sigmaCorpusX()) {
                AlgebraElement x = normalForm(xw);
                TensorElement lhs = applyNabla(conn, y * x, eps);
                TensorElement rhs = applyNabla(conn, y, eps).rightMul(x) +
                                    applySigma(conn, TensorElement::term(y, {eps}).concat(dFunction(x)));
                if (!(lhs - rhs).isZero())
                    throw ScalarError("connection solver: bimodule property failed");
            }
        }
    }
    // sigma must be invertible as a bimodule braiding.
    Mat sg = zeroMat(4, 4);
    for (int in = 0; in < 4; ++in)
        for (int o = 0; o < 4; ++o) sg(in, o) = conn.sigma[static_cast<size_t>(in)][static_cast<size_t>(o)];
    inverseMat(sg);
    return conn;
}

TensorElement curvature(const Connection& conn, const AlgebraElement& c, int leg) {
    // R = (d (x) id - (/\ (x) id)(id (x) nabla)) nabla; the two summands
    // are computed on one common simple-tensor splitting (only their sum
    // is splitting-independent).
    TensorElement out;
    TensorElement nab = applyNabla(conn, c, leg);
    for (const auto& [w, cf] : nab.components()) {
        for (const auto& [x, y] : splitTerm(cf, legWeight({w[0]}), properGrade(w[1]))) {
            out = out + dOneForm(x, w[0]).concat(TensorElement::term(y, {w[1]}));
            out = out - wedgeFirstTwo(
                            TensorElement::term(x, {w[0]}).concat(applyNabla(conn, y, w[1])));
        }
    }
    return out;
}

RicciData ricciCoefficients(const Connection& conn) {
    // (id (x) R)(g): R is a left-module map, so it can be applied through
    // a splitting of the second metric leg.
    TensorElement t1;
    TensorElement g = metricTensor();
    for (const auto& [w, c] : g.components())
        for (const auto& [x, y] : splitTerm(c, legWeight({w[0]}), properGrade(w[1])))
            t1 = t1 + TensorElement::term(x, {w[0]}).concat(curvature(conn, y, w[1]));

    auto contract = [&](int liftLeg1, int liftLeg2, const Scalar& liftCoeff) {
        // (pairing (x) id (x) id)(id (x) l (x) id) on words [g, Vol, d].
        TensorElement out;
        for (const auto& [w, c] : t1.components()) {
            if (w.size() != 3 || w[1] != LegVol)
                throw ScalarError("unexpected curvature tensor shape");
            Scalar p = framePairing(w[0], liftLeg1) * liftCoeff;
            if (p.isZero()) continue;
            out.add({liftLeg2, w[2]}, c * p);
        }
        return out;
    };

    RicciData rd{Scalar(0), Scalar(0), contract(LegP, LegM, Scalar(1)),
                 contract(LegM, LegP, -Scalar::qPower(2))};

    // Exact proportionality against the opposite metric components.
    for (const auto& [w, c] : rd.ricciPm.components()) {
        if (w != Word{LegM, LegP}) throw ScalarError("Ricci (+-) outside the [M,P] component");
        rd.a = c.scalarValue() * Scalar::qPower(-2);
    }
    for (const auto& [w, c] : rd.ricciMp.components()) {
        if (w != Word{LegP, LegM}) throw ScalarError("Ricci (-+) outside the [P,M] component");
        rd.b = c.scalarValue();
    }
    return rd;
}

std::string ricciReportJson(const RicciData& rd) {
    nlohmann::ordered_json j;
    j["a"] = rd.a.toString();
    j["b"] = rd.b.toString();
    j["a_plus_b"] = (rd.a + rd.b).toString();
    Scalar sum = rd.a + rd.b;
    if (!sum.isZero()) {
        Scalar lambda = rd.a * rd.b / sum;
        Rational l1 = lambda.classicalLimit();
        j["classical_lambda"] = l1.get_str();
    } else {
        j["classical_lambda"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace qflag::podles
