#include "qflag/cartan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qflag {

namespace {

std::vector<std::vector<int>> cartanMatrix(char series, int rank) {
    auto bad = [&] {
        throw std::invalid_argument(std::string("unsupported Cartan type ") + series +
                                    std::to_string(rank));
    };
    std::vector<std::vector<int>> a(static_cast<size_t>(rank),
                                    std::vector<int>(static_cast<size_t>(rank), 0));
    for (int i = 0; i < rank; ++i) a[i][i] = 2;
    auto link = [&](int i, int j, int aij, int aji) {
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] = aij;
        a[static_cast<size_t>(j)][static_cast<size_t>(i)] = aji;
    };
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) link(i, i + 1, -1, -1);
    };
    switch (series) {
        case 'A':
            if (rank < 1) bad();
            chain(0, rank - 1);
            break;
        case 'B':
            if (rank < 2) bad();
            chain(0, rank - 2);
            link(rank - 2, rank - 1, -1, -2);  // alpha_r short
            break;
        case 'C':
            if (rank < 2) bad();
            chain(0, rank - 2);
            link(rank - 2, rank - 1, -2, -1);  // alpha_r long
            break;
        case 'D':
            if (rank < 3) bad();
            chain(0, rank - 3);
            link(rank - 3, rank - 2, -1, -1);
            link(rank - 3, rank - 1, -1, -1);
            break;
        case 'E':
            if (rank < 6 || rank > 8) bad();
            // Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to 4.
            link(0, 2, -1, -1);
            for (int i = 2; i < rank - 1; ++i) link(i, i + 1, -1, -1);
            link(1, 3, -1, -1);
            break;
        case 'F':
            if (rank != 4) bad();
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            break;
        case 'G':
            if (rank != 2) bad();
            link(0, 1, -3, -1);  // alpha_1 short, alpha_2 long
            break;
        default:
            bad();
    }
    return a;
}

std::vector<int> symmetrizers(const std::vector<std::vector<int>>& a) {
    // Smallest positive integers d with d_i a_{ij} = d_j a_{ji}.
    int rank = static_cast<int>(a.size());
    std::vector<Rational> r(static_cast<size_t>(rank), Rational(0));
    r[0] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                if (a[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0 || r[static_cast<size_t>(i)] == 0)
                    continue;
                // d_j = d_i a_{ij} / a_{ji}
                Rational dj = r[static_cast<size_t>(i)] *
                              Rational(a[static_cast<size_t>(i)][static_cast<size_t>(j)]) /
                              Rational(a[static_cast<size_t>(j)][static_cast<size_t>(i)]);
                if (dj <= 0 || (r[static_cast<size_t>(j)] != 0 && r[static_cast<size_t>(j)] != dj))
                    throw std::invalid_argument("Cartan matrix is not symmetrizable");
                if (r[static_cast<size_t>(j)] == 0) {
                    r[static_cast<size_t>(j)] = dj;
                    changed = true;
                }
            }
    }
    for (Rational& v : r)
        if (v == 0) v = 1;  // disconnected pieces
    // Clear denominators and common factors: smallest positive integers.
    mpz_class lcm(1), gcd(0);
    for (const Rational& v : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    std::vector<int> d;
    d.reserve(r.size());
    for (const Rational& v : r) {
        Rational scaled = v * Rational(lcm);
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_num_mpz_t());
        d.push_back(static_cast<int>(scaled.get_num().get_si()));
    }
    int g = static_cast<int>(gcd.get_si());
    if (g > 1)
        for (int& v : d) v /= g;
    return d;
}

}  // namespace

CartanData::CartanData(char series, int rank) : series_(series), rank_(rank) {
    a_ = cartanMatrix(series, rank);
    d_ = symmetrizers(a_);

    // Positive definiteness of the symmetrized matrix (finite type):
    // leading principal minors of (d_i a_{ij}) must be positive.
    {
        std::vector<std::vector<Rational>> m(static_cast<size_t>(rank),
                                             std::vector<Rational>(static_cast<size_t>(rank)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) m[i][j] = Rational(d_[i] * a_[i][j]);
        Rational det(1);
        for (int k = 0; k < rank; ++k) {
            if (m[k][k] == 0) throw std::invalid_argument("Cartan matrix not of finite type");
            for (int i = k + 1; i < rank; ++i) {
                Rational f = m[i][k] / m[k][k];
                for (int j = k; j < rank; ++j) m[i][j] -= f * m[k][j];
            }
            det *= m[k][k];
            if (det <= 0) throw std::invalid_argument("Cartan matrix not of finite type");
        }
    }

    // Inverse Cartan matrix, exactly.
    {
        std::vector<std::vector<Rational>> aug(
            static_cast<size_t>(rank), std::vector<Rational>(static_cast<size_t>(2 * rank), Rational(0)));
        for (int i = 0; i < rank; ++i) {
            for (int j = 0; j < rank; ++j) aug[i][j] = Rational(a_[i][j]);
            aug[i][static_cast<size_t>(rank + i)] = 1;
        }
        for (int k = 0; k < rank; ++k) {
            int p = k;
            while (aug[static_cast<size_t>(p)][static_cast<size_t>(k)] == 0) ++p;
            std::swap(aug[static_cast<size_t>(p)], aug[static_cast<size_t>(k)]);
            Rational inv = 1 / aug[static_cast<size_t>(k)][static_cast<size_t>(k)];
            for (auto& v : aug[static_cast<size_t>(k)]) v *= inv;
            for (int i = 0; i < rank; ++i) {
                if (i == k) continue;
                Rational f = aug[static_cast<size_t>(i)][static_cast<size_t>(k)];
                if (f == 0) continue;
                for (int j = 0; j < 2 * rank; ++j)
                    aug[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        f * aug[static_cast<size_t>(k)][static_cast<size_t>(j)];
            }
        }
        ainv_.assign(static_cast<size_t>(rank), std::vector<Rational>(static_cast<size_t>(rank)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) ainv_[i][j] = aug[i][static_cast<size_t>(rank + j)];
    }

    // Positive roots by closure under root strings.
    std::map<std::vector<int>, bool> roots;
    for (int i = 0; i < rank; ++i) {
        std::vector<int> r(static_cast<size_t>(rank), 0);
        r[static_cast<size_t>(i)] = 1;
        roots[r] = true;
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current;
        for (const auto& [r, ok] : roots)
            if (ok) current.push_back(r);
        for (const auto& beta : current) {
            for (int i = 0; i < rank; ++i) {
                // p = how far the alpha_i-string extends below beta.
                int p = 0;
                std::vector<int> down = beta;
                for (;;) {
                    down[static_cast<size_t>(i)] -= 1;
                    bool nonneg = std::all_of(down.begin(), down.end(), [](int c) { return c >= 0; });
                    bool allzero = std::all_of(down.begin(), down.end(), [](int c) { return c == 0; });
                    if (!nonneg || allzero || !roots.count(down)) break;
                    ++p;
                }
                int pairing = 0;
                for (int j = 0; j < rank; ++j)
                    pairing += beta[static_cast<size_t>(j)] * a_[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (p - pairing > 0) {
                    std::vector<int> up = beta;
                    up[static_cast<size_t>(i)] += 1;
                    if (!roots.count(up)) {
                        roots[up] = true;
                        grew = true;
                    }
                }
            }
        }
    }
    for (const auto& [r, ok] : roots)
        if (ok) positiveRoots_.push_back(r);
    std::sort(positiveRoots_.begin(), positiveRoots_.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  int hx = 0, hy = 0;
                  for (int c : x) hx += c;
                  for (int c : y) hy += c;
                  return hx != hy ? hx < hy : x < y;
              });
    highestRoot_ = positiveRoots_.back();
    // The highest root dominates every other root coefficient-wise.
    for (const auto& r : positiveRoots_)
        for (int j = 0; j < rank; ++j)
            if (r[static_cast<size_t>(j)] > highestRoot_[static_cast<size_t>(j)])
                throw std::logic_error("root enumeration produced no unique highest root");
}

std::vector<int> CartanData::rootToWeight(const std::vector<int>& rootCoords) const {
    std::vector<int> wt(static_cast<size_t>(rank_), 0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            wt[static_cast<size_t>(i)] +=
                a_[static_cast<size_t>(i)][static_cast<size_t>(j)] * rootCoords[static_cast<size_t>(j)];
    return wt;
}

std::vector<Rational> CartanData::weightToRoot(const std::vector<int>& weightCoords) const {
    std::vector<Rational> c(static_cast<size_t>(rank_), Rational(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            c[static_cast<size_t>(i)] += ainv_[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                         Rational(weightCoords[static_cast<size_t>(j)]);
    return c;
}

Rational CartanData::weightForm(const std::vector<int>& wt1, const std::vector<int>& wt2) const {
    // (omega_i, omega_j) = (A^{-1})_{ji} d_j.
    Rational acc(0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            acc += Rational(wt1[static_cast<size_t>(i)] * wt2[static_cast<size_t>(j)]) *
                   ainv_[static_cast<size_t>(j)][static_cast<size_t>(i)] * Rational(d_[static_cast<size_t>(j)]);
    return acc;
}

bool isIrreducibleFlag(const CartanData& cartan, int node) {
    if (node < 1 || node > cartan.rank()) throw std::out_of_range("crossed node out of range");
    return cartan.highestRoot()[static_cast<size_t>(node - 1)] == 1;
}

FlagSpec parseFlagSpec(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos || colon < 2)
        throw std::invalid_argument("flag spec must look like \"A3:2\": " + text);
    char series = text[0];
    size_t rankEnd = 0, nodeEnd = 0;
    std::string rankPart = text.substr(1, colon - 1), nodePart = text.substr(colon + 1);
    int rank = std::stoi(rankPart, &rankEnd);
    int node = std::stoi(nodePart, &nodeEnd);
    if (rankEnd != rankPart.size() || nodeEnd != nodePart.size())
        throw std::invalid_argument("trailing characters in flag spec: " + text);
    CartanData cartan(series, rank);
    if (node < 1 || node > rank) throw std::out_of_range("crossed node out of range in " + text);
    return FlagSpec{std::move(cartan), node};
}

}  // namespace qflag
