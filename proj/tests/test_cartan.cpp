#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "qflag/cartan.hpp"

using qflag::CartanData;
using qflag::Rational;

namespace {

int heightOf(const std::vector<int>& root) {
    int h = 0;
    for (int c : root) h += c;
    return h;
}

}  // namespace

TEST_CASE("positive root counts") {
    // |Phi^+| from the standard tables: A_r: r(r+1)/2, B_r/C_r: r^2,
    // D_r: r(r-1), G2: 6, F4: 24, E6: 36, E7: 63, E8: 120.
    CHECK(CartanData('A', 3).positiveRoots().size() == 6);
    CHECK(CartanData('B', 3).positiveRoots().size() == 9);
    CHECK(CartanData('C', 3).positiveRoots().size() == 9);
    CHECK(CartanData('D', 4).positiveRoots().size() == 12);
    CHECK(CartanData('G', 2).positiveRoots().size() == 6);
    CHECK(CartanData('F', 4).positiveRoots().size() == 24);
    CHECK(CartanData('E', 6).positiveRoots().size() == 36);
    CHECK(CartanData('E', 7).positiveRoots().size() == 63);
    CHECK(CartanData('E', 8).positiveRoots().size() == 120);
}

TEST_CASE("highest roots against the tables") {
    CHECK(CartanData('A', 4).highestRoot() == std::vector<int>{1, 1, 1, 1});
    CHECK(CartanData('B', 3).highestRoot() == std::vector<int>{1, 2, 2});
    CHECK(CartanData('C', 3).highestRoot() == std::vector<int>{2, 2, 1});
    CHECK(CartanData('D', 4).highestRoot() == std::vector<int>{1, 2, 1, 1});
    CHECK(CartanData('G', 2).highestRoot() == std::vector<int>{3, 2});
    CHECK(CartanData('F', 4).highestRoot() == std::vector<int>{2, 3, 4, 2});
    CHECK(CartanData('E', 6).highestRoot() == std::vector<int>{1, 2, 2, 3, 2, 1});

    // The highest root is the unique positive root of maximal height.
    for (auto [series, rank] : {std::pair{'A', 3}, {'C', 3}, {'G', 2}, {'D', 5}}) {
        CartanData cd(series, rank);
        int best = 0, bestCount = 0;
        for (const auto& r : cd.positiveRoots()) {
            int h = heightOf(r);
            if (h > best) best = h, bestCount = 1;
            else if (h == best) ++bestCount;
        }
        CHECK(bestCount == 1);
        CHECK(heightOf(cd.highestRoot()) == best);
    }
}

TEST_CASE("irreducible flags are the cominuscule nodes") {
    auto nodes = [](char series, int rank) {
        CartanData cd(series, rank);
        std::vector<int> out;
        for (int i = 1; i <= rank; ++i)
            if (qflag::isIrreducibleFlag(cd, i)) out.push_back(i);
        return out;
    };
    CHECK(nodes('A', 4) == std::vector<int>{1, 2, 3, 4});
    CHECK(nodes('B', 3) == std::vector<int>{1});
    CHECK(nodes('C', 3) == std::vector<int>{3});
    CHECK(nodes('D', 5) == std::vector<int>{1, 4, 5});
    CHECK(nodes('E', 6) == std::vector<int>{1, 6});
    CHECK(nodes('E', 7) == std::vector<int>{7});
    CHECK(nodes('E', 8).empty());
    CHECK(nodes('F', 4).empty());
    CHECK(nodes('G', 2).empty());
}

TEST_CASE("weight form") {
    // (omega_i, omega_j) = (A^{-1})_{ji} d_j; spot checks for A1, A2, B2.
    CartanData a1('A', 1);
    std::vector<int> w{1};
    CHECK(a1.weightForm(w, w) == Rational(1, 2));

    CartanData a2('A', 2);
    std::vector<int> w1{1, 0}, w2{0, 1};
    CHECK(a2.weightForm(w1, w1) == Rational(2, 3));
    CHECK(a2.weightForm(w1, w2) == Rational(1, 3));
    CHECK(a2.weightForm(w2, w2) == Rational(2, 3));

    CartanData b2('B', 2);
    std::vector<int> b2w1{1, 0}, b2w2{0, 1};
    // Normalization: short roots have square length 2, so d = (2, 1) and
    // (omega_1, omega_1) = 2, (omega_2, omega_2) = 1.
    CHECK(b2.weightForm(b2w1, b2w1) == Rational(2));
    CHECK(b2.weightForm(b2w2, b2w2) == Rational(1));
    CHECK(b2.weightForm(b2w1, b2w2) == b2.weightForm(b2w2, b2w1));

    // Simple roots pair to the symmetrized Cartan matrix.
    for (auto [series, rank] : {std::pair{'A', 3}, {'B', 3}, {'G', 2}}) {
        CartanData cd(series, rank);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                std::vector<int> ei(rank, 0), ej(rank, 0);
                ei[i] = 1;
                ej[j] = 1;
                CHECK(cd.weightForm(cd.rootToWeight(ei), cd.rootToWeight(ej)) ==
                      Rational(cd.symmetrizer(j) * cd.cartan(j, i)));
            }
    }
}

TEST_CASE("weight and root coordinates invert each other") {
    for (auto [series, rank] : {std::pair{'A', 4}, {'C', 3}, {'D', 4}, {'G', 2}}) {
        CartanData cd(series, rank);
        for (const auto& root : cd.positiveRoots()) {
            std::vector<Rational> back = cd.weightToRoot(cd.rootToWeight(root));
            REQUIRE(back.size() == root.size());
            for (size_t i = 0; i < back.size(); ++i) CHECK(back[i] == Rational(root[i]));
        }
    }
}

TEST_CASE("flag spec parsing") {
    qflag::FlagSpec f = qflag::parseFlagSpec("A3:2");
    CHECK(f.cartan.series() == 'A');
    CHECK(f.cartan.rank() == 3);
    CHECK(f.node == 2);
    CHECK(f.name() == "A3:2");
    CHECK(f.leviNodes() == std::vector<int>{1, 3});

    CHECK_THROWS_AS(qflag::parseFlagSpec("A0:1"), std::invalid_argument);
    CHECK_THROWS_AS(qflag::parseFlagSpec("A3:5"), std::out_of_range);
    CHECK_THROWS_AS(qflag::parseFlagSpec("Z3:1"), std::invalid_argument);
    CHECK_THROWS_AS(qflag::parseFlagSpec("A3"), std::invalid_argument);
}
