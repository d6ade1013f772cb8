#pragma once

#include <map>
#include <vector>

#include "qflag/cartan.hpp"
#include "qflag/linalg.hpp"

namespace qflag {

/// The acting algebra: either the full quantized enveloping algebra or a
/// Levi factor. All K_i act; E_j, F_j act only for j in eNodes (1-based).
struct ActingAlgebra {
    CartanData cartan;
    std::vector<int> eNodes;

    static ActingAlgebra full(const CartanData& c) {
        std::vector<int> nodes;
        for (int i = 1; i <= c.rank(); ++i) nodes.push_back(i);
        return {c, nodes};
    }
    static ActingAlgebra levi(const FlagSpec& flag) { return {flag.cartan, flag.leviNodes()}; }

    bool sameAs(const ActingAlgebra& o) const {
        return cartan.series() == o.cartan.series() && cartan.rank() == o.cartan.rank() &&
               eNodes == o.eNodes;
    }
    bool hasENode(int j) const {
        for (int n : eNodes)
            if (n == j) return true;
        return false;
    }
};

/// A finite-dimensional weight module, given by the weight of each basis
/// vector (fundamental-weight coordinates) and action matrices for the
/// E_i, F_i of the acting algebra. K_i actions are diagonal, derived from
/// the weights: K_i acts by q_i^{<wt, alpha_i^vee>} with q_i = q^{d_i}.
///
/// The tensor product convention is
///   Delta(E) = E (x) K + 1 (x) E,
///   Delta(F) = F (x) 1 + K^{-1} (x) F,
///   Delta(K) = K (x) K,
/// and duals use the corresponding antipode S(E) = -E K^{-1}, S(F) = -K F.
class UqModule {
public:
    UqModule(ActingAlgebra alg, std::vector<std::vector<int>> weights, std::map<int, Mat> e,
             std::map<int, Mat> f);

    const ActingAlgebra& algebra() const { return alg_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(weights_.size()); }
    const std::vector<int>& weight(Eigen::Index i) const { return weights_[static_cast<size_t>(i)]; }
    const std::vector<std::vector<int>>& weights() const { return weights_; }

    Mat actionK(int node, int power = 1) const;  // diagonal
    const Mat& actionE(int node) const { return e_.at(node); }
    const Mat& actionF(int node) const { return f_.at(node); }

    /// Verifies the defining relations as exact matrix identities: diagonal
    /// K-action, weight shifts, [E_i, F_j], and the quantum Serre relations.
    /// Throws ScalarError naming the first failing relation.
    void verifyRelations() const;

    static UqModule trivial(const ActingAlgebra& alg);
    /// The natural (r+1)-dimensional module of U_q(sl_{r+1}), series A only.
    static UqModule natural(const ActingAlgebra& alg);

    /// Coordinate submodule spanned by the given basis indices; the span
    /// must be invariant under all acting generators.
    UqModule submodule(const std::vector<Eigen::Index>& indices) const;
    UqModule dual() const;

    /// Same underlying space, acted on by a smaller algebra.
    UqModule restrictedTo(const ActingAlgebra& sub) const;

private:
    ActingAlgebra alg_;
    std::vector<std::vector<int>> weights_;
    std::map<int, Mat> e_, f_;
};

UqModule tensor(const UqModule& m, const UqModule& n);

/// A matrix intertwiner between modules of the same acting algebra.
struct EquivariantMap {
    UqModule source;
    UqModule target;
    Mat matrix;

    bool commutesWithAction() const;
    EquivariantMap inverse() const;
};

/// Basis of the space of equivariant maps M -> N, by exact nullspace
/// computation on the commutation constraints.
std::vector<EquivariantMap> intertwiners(const UqModule& m, const UqModule& n);

/// Basis of {v : K_i v = v, E_j v = 0, F_j v = 0 for the acting algebra}.
Mat invariants(const UqModule& m);

/// The braiding M (x) N -> N (x) M, i.e. flip composed with the R-matrix
/// action: the diagonal factor q^{(wt m, wt n)} on flipped pairs (up to a
/// common exponent shift keeping the entries inside Q(q^{1/2})) plus the
/// strictly triangular quasi-R-matrix tail, which raises the M-weight and
/// lowers the N-weight by a positive element of the Levi root cone: an
/// entry from m (x) n to n' (x) m' is allowed only if wt m' = wt m + mu and
/// wt n' = wt n - mu for some nonzero mu in the nonnegative integer span of
/// the Levi simple roots. The tail is pinned by equivariance; the solver
/// requires the solution to be unique and invertible.
EquivariantMap braiding(const UqModule& m, const UqModule& n);

/// q-binomial coefficient in base q_i = q^{d}.
Scalar qBinomial(long n, long k, long d);

}  // namespace qflag
