#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smoothset/linalg.hpp"
#include "smoothset/simplicial.hpp"

namespace smoothset {

enum class Ring { integers, rationals };

std::string to_string(Ring r);

enum class Chains { normalized, unnormalized };

/// Graded free module with boundary matrices. boundary[n] maps degree n to n-1
/// (rows indexed by basis[n-1], columns by basis[n]); boundary[0] has no rows.
struct ChainComplex {
    Ring ring = Ring::integers;
    std::vector<std::vector<SimplexId>> basis;
    std::vector<IntegerMatrix> boundary;
    /// Highest degree whose homology the complex determines.
    int top_degree = -1;

    std::size_t rank(int n) const { return n < static_cast<int>(basis.size()) ? basis[n].size() : 0; }
};

/// Chains on X with the alternating-sum boundary. In normalized mode the basis is the
/// nondegenerate simplices and degenerate faces map to zero. d∘d = 0 is checked.
ChainComplex chain_complex(const SimplicialSet& x, Ring ring, Chains mode = Chains::normalized);

struct HomologySummary {
    Ring ring = Ring::integers;
    std::vector<std::size_t> betti;
    std::vector<std::vector<Integer>> torsion;  // elementary divisors > 1, per degree
};

HomologySummary homology(const ChainComplex& c);
/// Torsion coefficients of H_n; throws ParameterError over the rationals.
std::vector<Integer> torsion(const ChainComplex& c, int n);

long euler_characteristic(const HomologySummary& h);

// ---- cohomology -------------------------------------------------------------

/// Cochains are vectors indexed by the position of a nondegenerate simplex in
/// X.nondegenerate(n).
using Cochain = RationalVector;

/// Normalized rational cochain complex of a simplicial set with canonical
/// cohomology bases: representatives are the reduced row-echelon basis of a
/// complement of the coboundaries inside the cocycles.
class CochainComplex {
public:
    explicit CochainComplex(const SimplicialSet& x);

    const SimplicialSet& space() const { return *x_; }
    /// Highest degree with computed cohomology: the cap, or one less when truncated.
    int top_degree() const { return top_; }
    std::size_t cochain_rank(int n) const { return nondeg_[n].size(); }
    /// Coboundary C^n -> C^{n+1}.
    const RationalMatrix& coboundary(int n) const { return coboundary_[n]; }
    Cochain apply_coboundary(int n, const Cochain& c) const;

    std::size_t dimension(int n) const { return reps_[n].rows(); }
    Cochain representative(int n, std::size_t i) const { return reps_[n].row(i); }
    const RationalMatrix& representatives(int n) const { return reps_[n]; }
    /// Coordinates of the class of a cocycle; throws PreconditionError if not a cocycle.
    RationalVector coordinates(int n, const Cochain& cocycle) const;
    bool is_coboundary(int n, const Cochain& c) const;

    /// Position of a nondegenerate simplex in the cochain basis; nullopt if degenerate.
    std::optional<std::size_t> position(int n, SimplexId x) const;
    const std::vector<SimplexId>& basis(int n) const { return nondeg_[n]; }

    /// Alexander-Whitney cup product on normalized cochains.
    Cochain cup(int p, const Cochain& a, int q, const Cochain& b) const;

private:
    const SimplicialSet* x_;
    int top_;
    std::vector<std::vector<SimplexId>> nondeg_;
    std::vector<std::vector<std::optional<std::size_t>>> position_;
    std::vector<RationalMatrix> coboundary_;
    std::vector<RowEchelon> boundaries_;   // echelon basis of im δ_{n-1}
    std::vector<RationalMatrix> reps_;
    std::vector<std::vector<std::size_t>> rep_pivots_;
};

struct CohomologyRingPresentation {
    std::vector<std::vector<Cochain>> basis;  // basis[n][i] = cocycle representative
    /// products[p][q][i][j] = coordinates of basis[p][i] ∪ basis[q][j] in degree p+q.
    std::vector<std::vector<std::vector<std::vector<RationalVector>>>> products;
    RationalVector unit;  // coordinates of the unit class in degree 0

    std::size_t dimension(int n) const { return basis[n].size(); }
    const RationalVector& product(int p, std::size_t i, int q, std::size_t j) const { return products[p][q][i][j]; }
};

CohomologyRingPresentation cohomology_ring(const SimplicialSet& x);
/// Failures of graded commutativity, associativity and unitality on basis elements.
std::vector<std::string> ring_axiom_failures(const CohomologyRingPresentation& r);

/// f^*: C^n(Y) -> C^n(X) on normalized cochains.
Cochain pullback_cochain(const SimplicialMap& f, const CochainComplex& source, const CochainComplex& target, int n,
                         const Cochain& c);
/// Matrix of f^*: H^n(Y) -> H^n(X) in the canonical bases, acting on column coordinate
/// vectors (rows: classes of X, columns: classes of Y).
RationalMatrix induced_map(const SimplicialMap& f, const CochainComplex& source, const CochainComplex& target, int n);

// ---- Mayer–Vietoris ---------------------------------------------------------

struct MayerVietorisNode {
    std::string label;  // "H^n(X)", "H^n(A)+H^n(B)", "H^n(AnB)"
    int degree = 0;
    std::size_t dimension = 0;
};

struct MayerVietorisSequence {
    std::vector<MayerVietorisNode> nodes;
    /// maps[i] : nodes[i] -> nodes[i+1], as a matrix acting on column coordinate vectors.
    std::vector<RationalMatrix> maps;
    /// exact[i]: image of the incoming map equals kernel of the outgoing map at nodes[i].
    std::vector<bool> exact;
    std::vector<std::size_t> connecting_ranks;  // rank of H^n(AnB) -> H^{n+1}(X), per n

    bool all_exact() const;
};

/// Cohomological Mayer–Vietoris sequence of X = A ∪ B with exactness verified by rank.
/// Throws PreconditionError naming a simplex covered by neither A nor B.
MayerVietorisSequence mayer_vietoris(std::shared_ptr<const SimplicialSet> x, const SubSet& a, const SubSet& b);

}  // namespace smoothset
