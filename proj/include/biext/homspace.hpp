#pragma once

// Groups of multilinear morphisms between Hodge realizations as saturated
// integer lattices, and the operations built on them: currying, biextension
// data, Weil pairings, transposes, symmetric splits, weight checks.

#include "biext/lattice.hpp"
#include "biext/motives.hpp"

#include <optional>
#include <vector>

namespace biext {

/// Integer map Z^{r_1} (x) ... (x) Z^{r_l} -> Z^r stored as an r x (r_1...r_l)
/// matrix acting on column vectors of the lexicographic tensor basis.
struct MultilinearMap {
    std::vector<std::size_t> source_ranks;
    std::size_t target_rank = 0;
    MatrixZ coefficients;

    std::size_t source_dim() const;
    /// Row-major entries, index b*source_dim() + a.
    IntVector flatten() const { return coefficients.data(); }
    static MultilinearMap from_flat(std::vector<std::size_t> source_ranks, std::size_t target_rank,
                                    std::span<const Integer> flat);
    static MultilinearMap zero(std::vector<std::size_t> source_ranks, std::size_t target_rank);

    MatrixK to_k() const { return biext::to_k(coefficients); }

    friend bool operator==(const MultilinearMap&, const MultilinearMap&) = default;
};

MultilinearMap operator+(const MultilinearMap& a, const MultilinearMap& b);
MultilinearMap operator*(const Integer& k, const MultilinearMap& a);

/// Saturated lattice of flattened maps f with f(W_w T) in W_w(target) and
/// f(F^p T) in F^p(target), T the tensor product of the sources.
struct HomLattice {
    std::vector<Mhs> sources;
    Mhs target;
    Mhs tensor;
    IntLattice lattice;

    std::size_t rank() const { return lattice.rank(); }
    std::vector<std::size_t> source_ranks() const;
    MultilinearMap element(std::size_t i) const;
    std::vector<MultilinearMap> basis() const;
    bool contains(const MultilinearMap& f) const;
};

HomLattice hom_lattice(const Mhs& a, const Mhs& b);
HomLattice hom_multilinear(const std::vector<Mhs>& sources, const Mhs& target);

/// Direct re-check of the filtration conditions for one map, without the solver.
bool respects_filtrations(const Mhs& tensor, const Mhs& target, const MultilinearMap& f);

/// Phi in Hom(A (x) B, C) -> element of Hom(A, internal_hom(B, C)).
MultilinearMap curry(const MultilinearMap& phi);
/// Inverse of curry; `rank_b` recovers the split of internal_hom(B, C).
MultilinearMap uncurry(const MultilinearMap& g, std::size_t rank_b);

struct AdjunctionReport {
    std::size_t bilinear_rank = 0;
    std::size_t curried_rank = 0;
    bool images_span = false;   // curry(L) HNF-equals Hom(A, Hom(B, C))
    bool round_trip = false;    // uncurry(curry(x)) == x on the basis
    bool ok() const { return bilinear_rank == curried_rank && images_span && round_trip; }
};

AdjunctionReport curry_adjunction(const Mhs& a, const Mhs& b, const Mhs& c);

/// Biextension of (M1, M2) by M3 given by two bilinear maps on the complexified
/// lattices and the integral morphism lambda = phi1 - phi2.
struct BiextData {
    MatrixK phi1;
    MatrixK phi2;
    MultilinearMap lambda;
};

/// Canonical representative (Phi_K, 0), or (phi1, phi1 - Phi_K) when phi1 is given.
BiextData biext_from_map(const HomLattice& l, const MultilinearMap& phi, const std::optional<MatrixK>& phi1 = {});
/// Empty when valid; otherwise the violated invariant.
std::optional<std::string> check_biext(const HomLattice& l, const BiextData& b);
MultilinearMap biext_class(const BiextData& b);
bool biext_iso(const BiextData& a, const BiextData& b);

/// Bilinear evaluation phi(x, y) of a target-rank x (rA*rB) matrix.
std::vector<KScalar> evaluate(const MatrixK& phi, std::span<const KScalar> x, std::span<const KScalar> y);

/// Psi_1(v + f1, w) = phi1(v, w) + phi2(f1, w) with v integral, f1 in F^0(M1).
std::vector<KScalar> psi1(const BiextData& b, std::span<const Integer> v, std::span<const KScalar> f1,
                          std::span<const KScalar> w);
/// Psi_2(v, w + f2) = phi2(v, w) + phi1(v, f2) with w integral, f2 in F^0(M2).
std::vector<KScalar> psi2(const BiextData& b, std::span<const KScalar> v, std::span<const Integer> w,
                          std::span<const KScalar> f2);

struct WeilPairing {
    MultilinearMap map;   // element of Hom(H (x) H*, Z(1))
    MatrixZ matrix;       // pairing matrix e(e_a, e_b*)
    bool in_lattice = false;
    bool unimodular = false;
};

WeilPairing weil_pairing(const Mhs& h);
/// Bilinear form (h1, h2) -> s(h1)(h2) on H for s in Hom(H, H*).
MultilinearMap pullback_pairing(const MultilinearMap& self_duality);

/// f^t : B* -> A* for f : A -> B.
MultilinearMap transpose(const MultilinearMap& f);

struct AdjointReport {
    MultilinearMap transposed;
    bool transpose_in_lattice = false;
    bool identity_holds = false;   // e_B o (f x id) == e_A o (id x f^t)
    bool ok() const { return transpose_in_lattice && identity_holds; }
};

AdjointReport adjoint_check(const Mhs& a, const Mhs& b, const MultilinearMap& f);

/// Precomposition with the factor swap of a bilinear map on H (x) H.
MultilinearMap swap_factors(const MultilinearMap& phi);

struct SymSplit {
    IntLattice symmetric;       // phi o swap = phi, the classes of skew-symmetric biextensions
    IntLattice antisymmetric;   // phi o swap = -phi
    std::size_t sum_saturation_rank = 0;
    bool swap_preserves_lattice = false;
};

SymSplit sym_antisym_split(const HomLattice& l);

struct WeightRespectReport {
    bool lands_in_w2 = false;   // Phi(W-1 (x) W-1) in W-2
    bool kills_mixed = false;   // Phi(W-2 (x) W-1) = Phi(W-1 (x) W-2) = 0
    MatrixQ induced;            // Gr-1 (x) Gr-1 -> Gr-2 in chosen representatives
    bool ok() const { return lands_in_w2 && kills_mixed; }
};

WeightRespectReport weight_respect_check(const HomLattice& l, const MultilinearMap& phi);

struct ThmotimesTerm {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t copies = 0;
    std::size_t rank = 0;
};

struct ThmotimesReport {
    std::size_t lhs_rank = 0;
    std::size_t rhs_rank = 0;
    std::vector<ThmotimesTerm> terms;
};

ThmotimesReport thmotimes_rank_report(const std::vector<Mhs>& sources, const Mhs& target);

}  // namespace biext
