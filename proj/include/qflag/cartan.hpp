#pragma once

#include <string>
#include <vector>

#include "qflag/scalar.hpp"

namespace qflag {

/// Finite-type Cartan data for the classical and exceptional series.
/// Roots and weights are handled in two coordinate systems:
///  - root coordinates: integer vectors over the simple roots,
///  - weight coordinates: integer vectors over the fundamental weights,
///    i.e. the pairings <wt, alpha_i^vee>.
class CartanData {
public:
    CartanData(char series, int rank);

    char series() const { return series_; }
    int rank() const { return rank_; }
    int cartan(int i, int j) const { return a_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int symmetrizer(int i) const { return d_[static_cast<size_t>(i)]; }

    /// All positive roots, in root coordinates, ordered by height.
    const std::vector<std::vector<int>>& positiveRoots() const { return positiveRoots_; }

    /// Coefficients of the highest root over the simple roots.
    const std::vector<int>& highestRoot() const { return highestRoot_; }

    /// Root coordinates -> weight coordinates: wt_i = sum_j a_{ij} c_j.
    std::vector<int> rootToWeight(const std::vector<int>& rootCoords) const;

    /// Weight coordinates -> root coordinates, c = A^{-1} wt (rational in
    /// general; integral exactly when wt lies in the root lattice).
    std::vector<Rational> weightToRoot(const std::vector<int>& weightCoords) const;

    /// Symmetric bilinear form on the weight lattice, for weights given in
    /// fundamental-weight coordinates. (omega_i, omega_j) = (A^{-1})_{ji} d_j.
    Rational weightForm(const std::vector<int>& wt1, const std::vector<int>& wt2) const;

private:
    char series_;
    int rank_;
    std::vector<std::vector<int>> a_;   // Cartan matrix
    std::vector<int> d_;                // symmetrizing integers
    std::vector<std::vector<Rational>> ainv_;
    std::vector<std::vector<int>> positiveRoots_;
    std::vector<int> highestRoot_;
};

/// True iff the crossed node has coefficient 1 in the highest root.
/// Node indices are 1-based.
bool isIrreducibleFlag(const CartanData& cartan, int node);

/// A flag manifold specification: Cartan data plus the crossed node;
/// the Levi set is the complement of the crossed node.
struct FlagSpec {
    CartanData cartan;
    int node;  // 1-based

    std::vector<int> leviNodes() const {
        std::vector<int> s;
        for (int i = 1; i <= cartan.rank(); ++i)
            if (i != node) s.push_back(i);
        return s;
    }
    std::string name() const {
        return std::string(1, cartan.series()) + std::to_string(cartan.rank()) + ":" +
               std::to_string(node);
    }
};

/// Parses "A3:2" style flag specifications (series, rank, crossed node).
FlagSpec parseFlagSpec(const std::string& text);

}  // namespace qflag
