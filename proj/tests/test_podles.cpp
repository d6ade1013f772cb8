#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qflag/podles.hpp"

using namespace qflag;
using namespace qflag::podles;

namespace {

AlgebraElement gen(char g) { return AlgebraElement::gen(g); }

std::string randomWord(std::mt19937& rng, int maxLen) {
    std::uniform_int_distribution<int> len(1, maxLen), pick(0, 3);
    std::string w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w += "abcd"[pick(rng)];
    return w;
}

/// Random grade-zero (sphere) element: a sum of balanced words.
AlgebraElement randomSphereElement(std::mt19937& rng) {
    const std::vector<std::string> balanced = {"ab", "ad", "cb", "cd", "bc", "da"};
    std::uniform_int_distribution<int> pick(0, static_cast<int>(balanced.size()) - 1);
    std::uniform_int_distribution<int> count(1, 3);
    AlgebraElement x;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        std::string w = balanced[pick(rng)];
        if (i == n - 1) w += balanced[pick(rng)];
        x = x + normalForm(w);
    }
    return x;
}

const Scalar kQ = Scalar::q();

}  // namespace

TEST_CASE("defining relations in normal form") {
    CHECK(normalForm("ab") == normalForm("ba") * kQ);
    CHECK(normalForm("ac") == normalForm("ca") * kQ);
    CHECK(normalForm("bc") == normalForm("cb"));
    CHECK(normalForm("bd") == normalForm("db") * kQ);
    CHECK(normalForm("cd") == normalForm("dc") * kQ);
    CHECK(normalForm("ad") - normalForm("da") == normalForm("bc") * (kQ - kQ.inverse()));
    CHECK(normalForm("ad") - normalForm("bc") * kQ == AlgebraElement::unit());
    CHECK(normalForm("da") - normalForm("bc") * kQ.inverse() == AlgebraElement::unit());
}

TEST_CASE("rewriting is confluent") {
    // The deterministic left-to-right reduction agrees with reducing the
    // two halves independently and multiplying, on fixed and random words.
    for (const char* w :
         {"adad", "dada", "abcd", "ddaa", "cabd", "badcba", "ddbbaa", "acbdca"})
        CHECK(normalForm(w) == normalFormSplit(w));
    std::mt19937 rng(13579);
    for (int trial = 0; trial < 60; ++trial) {
        std::string w = randomWord(rng, 7);
        CHECK(normalForm(w) == normalFormSplit(w));
    }
    // Multiplication is associative on random triples.
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement x = normalForm(randomWord(rng, 3));
        AlgebraElement y = normalForm(randomWord(rng, 3));
        AlgebraElement z = normalForm(randomWord(rng, 3));
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("grading") {
    CHECK(gen('a').grade() == 1);
    CHECK(gen('c').grade() == 1);
    CHECK(gen('b').grade() == -1);
    CHECK(gen('d').grade() == -1);
    CHECK(normalForm("abcd").grade() == 0);
    CHECK_THROWS_AS((gen('a') + gen('b')).grade(), ScalarError);
}

TEST_CASE("sl2 action on generators") {
    CHECK(actE(gen('b')) == gen('a'));
    CHECK(actE(gen('d')) == gen('c'));
    CHECK(actE(gen('a')).isZero());
    CHECK(actE(gen('c')).isZero());
    CHECK(actF(gen('a')) == gen('b'));
    CHECK(actF(gen('c')) == gen('d'));
    CHECK(actF(gen('b')).isZero());
    CHECK(actF(gen('d')).isZero());
    for (char g : {'a', 'b', 'c', 'd'})
        CHECK(actK(gen(g)) == gen(g) * Scalar::qPower(gen(g).grade()));
}

TEST_CASE("action respects the module-algebra rule") {
    std::mt19937 rng(2468);
    for (int trial = 0; trial < 25; ++trial) {
        AlgebraElement x = normalForm(randomWord(rng, 4));
        AlgebraElement y = normalForm(randomWord(rng, 4));
        CHECK(actE(x * y) == actK(x) * actE(y) + actE(x) * y);
        CHECK(actF(x * y) == x * actF(y) + actF(x) * actK(y, -1));
        CHECK(actK(x * y) == actK(x) * actK(y));
        // [E, F] = (K - K^{-1}) / (q - q^{-1}).
        AlgebraElement lhs = actE(actF(x)) - actF(actE(x));
        AlgebraElement rhs = (actK(x) - actK(x, -1)) * (kQ - kQ.inverse()).inverse();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exterior derivative squares to zero") {
    std::mt19937 rng(11111);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement x = randomSphereElement(rng);
        TensorElement dx = dFunction(x);
        TensorElement ddx;
        for (const auto& [w, c] : dx.components()) {
            REQUIRE(w.size() == 1);
            ddx = ddx + dOneForm(c, w[0]);
        }
        CHECK(ddx.isZero());
    }
}

TEST_CASE("exterior derivative satisfies the Leibniz rule") {
    std::mt19937 rng(7777);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement x = randomSphereElement(rng);
        AlgebraElement y = randomSphereElement(rng);
        CHECK(dFunction(x * y) == dFunction(x).rightMul(y) + dFunction(y).leftMul(x));
    }
}

TEST_CASE("bimodule twists of the frames") {
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 10; ++trial) {
        AlgebraElement x = normalForm(randomWord(rng, 4));
        int g = x.grade();
        for (int leg : {LegP, LegM})
            CHECK(TensorElement::term(AlgebraElement::unit(), {leg}).rightMul(x) ==
                  TensorElement::term(x * Scalar::qPower(-g), {leg}));
        CHECK(TensorElement::term(AlgebraElement::unit(), {LegVol}).rightMul(x) ==
              TensorElement::term(x * Scalar::qPower(-2 * g), {LegVol}));
    }
    CHECK(wedgeScalar(LegP, LegM) == Scalar(1));
    CHECK(wedgeScalar(LegM, LegP) == -Scalar::qPower(-2));
    CHECK(wedgeScalar(LegP, LegP).isZero());
    CHECK(wedgeScalar(LegM, LegM).isZero());
}

TEST_CASE("dual pairs split the unit at each even grade") {
    for (int g : {-4, -2, 2, 4}) {
        AlgebraElement sum;
        for (const auto& [u, v] : dualPairs(g)) {
            CHECK(u.grade() == g);
            CHECK(v.grade() == -g);
            sum = sum + u * v;
        }
        CHECK(sum == AlgebraElement::unit());
    }
}

TEST_CASE("connection solution") {
    Connection conn = solveConnection();
    // Unique sigma on the canonical frame pairs, diagonal in the word
    // basis up to the PM <-> MP swap.
    Mat sigma = zeroMat(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sigma(i, j) = conn.sigma[i][j];
    Mat expected = zeroMat(4, 4);
    expected(pairIndex(LegP, LegP), pairIndex(LegP, LegP)) = Scalar::qPower(-2);
    expected(pairIndex(LegP, LegM), pairIndex(LegM, LegP)) = Scalar::qPower(2);
    expected(pairIndex(LegM, LegP), pairIndex(LegP, LegM)) = Scalar::qPower(-2);
    expected(pairIndex(LegM, LegM), pairIndex(LegM, LegM)) = Scalar::qPower(2);
    CHECK(isZeroMat(sigma - expected));
}

TEST_CASE("connection identities on random elements") {
    Connection conn = solveConnection();
    std::mt19937 rng(999);
    for (int trial = 0; trial < 8; ++trial) {
        AlgebraElement y = randomSphereElement(rng);
        AlgebraElement x = randomSphereElement(rng);
        for (int eps : {LegP, LegM}) {
            // Coefficients of one-forms must carry the proper grade; build
            // them from grade-zero y times a fixed proper representative.
            AlgebraElement rep = eps == LegP ? normalForm("bb") : normalForm("aa");
            AlgebraElement c = y * rep;

            // Torsion-freeness: /\ after nabla is the exterior derivative.
            CHECK(wedgeFirstTwo(applyNabla(conn, c, eps)) == dOneForm(c, eps));

            // Bimodule (right Leibniz) rule through sigma:
            // nabla(c w_eps x) = nabla(c w_eps) x + sigma(c w_eps (x) dx).
            TensorElement cwx = TensorElement::term(c, {eps}).rightMul(x);
            TensorElement lhs;
            for (const auto& [w, coeff] : cwx.components()) lhs = lhs + applyNabla(conn, coeff, w[0]);
            TensorElement rhs = applyNabla(conn, c, eps).rightMul(x) +
                                applySigma(conn, TensorElement::term(c, {eps}).concat(dFunction(x)));
            CHECK(lhs == rhs);
        }
    }

    // Metric compatibility: (nabla (x) id + (sigma (x) id)(id (x) nabla))
    // annihilates g, computed on a proper simple-tensor splitting.
    CHECK(metricCompatibilityDefect(conn).isZero());
}

TEST_CASE("curvature lands in vol tensor the same frame") {
    Connection conn = solveConnection();
    std::mt19937 rng(555);
    for (int trial = 0; trial < 6; ++trial) {
        AlgebraElement y = randomSphereElement(rng);
        for (int eps : {LegP, LegM}) {
            AlgebraElement rep = eps == LegP ? normalForm("bb") : normalForm("aa");
            TensorElement r = curvature(conn, y * rep, eps);
            for (const auto& [w, c] : r.components()) {
                REQUIRE(w.size() == 2);
                CHECK(w[0] == LegVol);
                CHECK(w[1] == eps);
            }
        }
    }
}

TEST_CASE("Ricci coefficients") {
    Connection conn = solveConnection();
    RicciData rd = ricciCoefficients(conn);
    CHECK(rd.a == Scalar::qPower(1) * (Scalar::qPower(2) + Scalar(1)));   // q^3 + q
    CHECK(rd.b == Scalar::qPower(-3) * (Scalar::qPower(2) + Scalar(1)));  // q^{-1} + q^{-3}
    CHECK(rd.a.classicalLimit() == Rational(2));
    CHECK(rd.b.classicalLimit() == Rational(2));

    // Ricci tensors are exact multiples of the opposite metric components.
    CHECK(rd.ricciPm ==
          TensorElement::term(AlgebraElement(rd.a * Scalar::qPower(2)), {LegM, LegP}));
    CHECK(rd.ricciMp == TensorElement::term(AlgebraElement(rd.b), {LegP, LegM}));

    // lambda = ab/(a+b) has classical value 1: the unit round sphere.
    CHECK((rd.a * rd.b / (rd.a + rd.b)).classicalLimit() == Rational(1));
}

TEST_CASE("metric and pairing are mutually inverse") {
    TensorElement g = metricTensor();
    CHECK(g == TensorElement::term(AlgebraElement::unit(), {LegP, LegM}) +
                   TensorElement::term(AlgebraElement(Scalar::qPower(2)), {LegM, LegP}));
    // (id (x) (.,.))(g (x) w) = w for both frames.
    for (int leg : {LegP, LegM}) {
        AlgebraElement acc;
        Word out;
        for (const auto& [w, c] : g.components()) {
            Scalar p = framePairing(w[1], leg);
            if (p.isZero()) continue;
            acc = acc + c * p;
            out = {w[0]};
        }
        CHECK(acc == AlgebraElement::unit());
        CHECK(out == Word{leg});
    }
}
