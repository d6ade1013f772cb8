#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qflag/linalg.hpp"

namespace qflag::podles {

/// The coordinate algebra of the quantum SU(2), with generators a, b, c, d
/// and relations
///   ab = q ba,  ac = q ca,  bc = cb,  bd = q db,  cd = q dc,
///   ad - da = (q - q^{-1}) bc,  ad - q bc = 1,
/// graded by deg a = deg c = +1, deg b = deg d = -1. The quantum sphere is
/// the degree-zero subalgebra. Normal basis: a^p b^j c^k and d^p b^j c^k.
struct Monomial {
    int aPow = 0, dPow = 0, bPow = 0, cPow = 0;

    int grade() const { return aPow + cPow - bPow - dPow; }
    int degree() const { return aPow + dPow + bPow + cPow; }
    bool isUnit() const { return degree() == 0; }
    auto key() const { return std::tie(aPow, dPow, bPow, cPow); }
    bool operator<(const Monomial& o) const { return key() < o.key(); }
    bool operator==(const Monomial& o) const { return key() == o.key(); }
    std::string toString() const;
};

class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(const Scalar& c) {
        if (!c.isZero()) terms_[Monomial{}] = c;
    }
    static AlgebraElement unit() { return AlgebraElement(Scalar(1)); }
    static AlgebraElement gen(char g);
    static AlgebraElement monomial(const Monomial& m, const Scalar& c);

    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    void addTerm(const Monomial& m, const Scalar& c);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const Scalar& c) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    /// Grade of a homogeneous element (0 for the zero element); throws
    /// ScalarError on inhomogeneous input.
    int grade() const;

    /// The coefficient of the unit monomial, requiring no other terms
    /// (throws otherwise): used to read off scalar-valued results.
    Scalar scalarValue() const;

    std::string toString() const;

private:
    std::map<Monomial, Scalar> terms_;
};

/// Normal form of a word in {a, b, c, d}, reducing left to right.
AlgebraElement normalForm(const std::string& word);
/// Same value computed by a different reduction order (split in half and
/// multiply the halves); oracle for confluence of the rewriting rules.
AlgebraElement normalFormSplit(const std::string& word);

/// Actions of the quantized enveloping algebra of sl2 on the coordinate
/// algebra: K x = q^{deg x} x, E b = a, E d = c, F a = b, F c = d on
/// generators, extended by
///   E (xy) = (K x)(E y) + (E x) y,   F (xy) = x (F y) + (F x)(K^{-1} y).
AlgebraElement actE(const AlgebraElement& x);
AlgebraElement actF(const AlgebraElement& x);
AlgebraElement actK(const AlgebraElement& x, int power = 1);

/// Frame derivations of the calculus: del = F, dbar x = q^{-deg x} E x;
/// d x = (del x) w+ + (dbar x) w- on the sphere.
AlgebraElement del(const AlgebraElement& x);
AlgebraElement dbar(const AlgebraElement& x);

/// Frame legs of the calculus: the one-form frames w+ and w- and the
/// volume form vol = w+ /\ w-. Relations of the calculus:
///   w+- x = q^{-deg x} x w+-,   vol x = q^{-2 deg x} x vol,
///   w+ /\ w+ = w- /\ w- = 0,    w- /\ w+ = -q^{-2} w+ /\ w-,
///   d w+- = 0.
enum Leg : int { LegP = 0, LegM = 1, LegVol = 2 };
using Word = std::vector<int>;

int legWeight(const Word& w);   // frame weight: 1 per one-form leg, 2 per vol
int properGrade(int leg);       // coefficient grade of a proper form: -2, +2, 0

/// Element of a tensor power of the bimodule of forms, in canonical form:
/// a sum over leg words of left coefficients,
///   sum_w  coeff_w . [w_0 (x) w_1 (x) ...].
/// Moving a coefficient x from the right of a leg word to the left
/// multiplies it by q^{-legWeight * deg x}.
class TensorElement {
public:
    TensorElement() = default;
    static TensorElement term(const AlgebraElement& c, const Word& w);

    const std::map<Word, AlgebraElement>& components() const { return comp_; }
    bool isZero() const { return comp_.empty(); }
    void add(const Word& w, const AlgebraElement& c);

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator*(const Scalar& c) const;
    bool operator==(const TensorElement& o) const { return comp_ == o.comp_; }

    TensorElement leftMul(const AlgebraElement& x) const;
    /// Right multiplication; x must be grade-homogeneous.
    TensorElement rightMul(const AlgebraElement& x) const;
    /// Tensor concatenation, moving the coefficients of `o` through the
    /// legs of *this.
    TensorElement concat(const TensorElement& o) const;

    std::string toString() const;

private:
    std::map<Word, AlgebraElement> comp_;
};

/// Simple-tensor splittings. dualPairs(g) returns pairs (u_i, v_i) of
/// homogeneous elements with deg u_i = g, deg v_i = -g, sum u_i v_i = 1
/// (g even). splitTerm writes a canonical term c.[L0 | rest] as
/// sum_i (x_i [L0]) (x) (y_i [rest]) with prescribed deg y_i.
const std::vector<std::pair<AlgebraElement, AlgebraElement>>& dualPairs(int g);
std::vector<std::pair<AlgebraElement, AlgebraElement>> splitTerm(const AlgebraElement& c,
                                                                 int prefixWeight, int yGrade);

/// Exterior derivative of a sphere function (grade 0): (del x)[P] + (dbar x)[M].
TensorElement dFunction(const AlgebraElement& x);
/// Exterior derivative Omega^1 -> Omega^2 of a proper one-form c[eps].
TensorElement dOneForm(const AlgebraElement& c, int leg);

/// The left-covariant connection on Omega^1 in frame terms. A general
/// frame ansatz is nabla(c w_eps) = dc (x) w_eps + c Gamma_eps with
/// Gamma_eps a frame-charge +-2 tensor; left-covariance forces the
/// coefficients of Gamma_eps to be coinvariant, and the coinvariants of
/// the coordinate algebra are the scalars, which have the wrong charge:
/// Gamma_eps = 0 identically, so nabla(c w_eps) = dc (x) w_eps. What
/// remains is the bimodule braiding sigma, given on canonical frame pairs
/// by a scalar matrix over the words {[P,P], [P,M], [M,P], [M,M]}.
struct Connection {
    std::array<std::array<Scalar, 4>, 4> sigma;  // [input word][output word]
};

/// Word indexing for sigma: PP=0, PM=1, MP=2, MM=3.
int pairIndex(int leg1, int leg2);

/// The metric g = w+ (x) w- + q^2 w- (x) w+ and the inverse pairing
/// (w+, w-) = q^{-2}, (w-, w+) = 1, (w+-, w+-) = 0.
TensorElement metricTensor();
Scalar framePairing(int leg1, int leg2);

/// Solves for the unique left-covariant torsion-free metric-compatible
/// bimodule connection: covariance pins nabla itself (see Connection),
/// and sigma is solved from the bimodule constraint
///   sigma(y w_eps (x) dx) = y (dx (x) w_eps)
/// over a corpus of sphere elements, as an affine system whose uniqueness
/// is certified by an exact rank computation. Torsion-freeness, metric
/// compatibility and the bimodule property are then verified exactly on a
/// corpus; any failure throws.
Connection solveConnection();

TensorElement applyNabla(const Connection& conn, const AlgebraElement& c, int leg);
TensorElement applySigma(const Connection& conn, const TensorElement& t);

/// (nabla (x) id + (sigma (x) id)(id (x) nabla))(g), computed on a proper
/// simple-tensor splitting of the metric; zero iff the connection is
/// metric-compatible.
TensorElement metricCompatibilityDefect(const Connection& conn);

/// Curvature R = (d (x) id - (/\ (x) id)(id (x) nabla)) nabla on a proper
/// one-form; lands in Omega^2 (x) Omega^1, words [Vol, eps].
TensorElement curvature(const Connection& conn, const AlgebraElement& c, int leg);

/// Wedge product of two one-form legs as a coefficient of vol: P ^ M = vol,
/// M ^ P = -q^{-2} vol, and like legs vanish.
Scalar wedgeScalar(int l1, int l2);

/// Applies the wedge to the two leading legs of every word, producing words of
/// the shape [Vol, ...rest].
TensorElement wedgeFirstTwo(const TensorElement& t);

/// Ricci coefficients: with the degree-(1,1) lifts
///   l+-(vol) = w+ (x) w-,   l-+(vol) = -q^2 w- (x) w+,
/// Ricci_l = ((.,.) (x) id (x) id)(id (x) l (x) id)(id (x) R)(g) is an
/// exact multiple of the opposite metric component:
///   Ricci_{l+-} = a . q^2 [M,P],   Ricci_{l-+} = b . [P,M].
struct RicciData {
    Scalar a, b;
    TensorElement ricciPm, ricciMp;
};
RicciData ricciCoefficients(const Connection& conn);

/// JSON report {a, b, a_plus_b, classical_lambda}.
std::string ricciReportJson(const RicciData& rd);

}  // namespace qflag::podles
