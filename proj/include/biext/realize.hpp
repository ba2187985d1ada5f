#pragma once

// Finite-level (mod n) and de Rham realizations, and the curvature of the
// canonical connection on a biextension.

#include "biext/homspace.hpp"

namespace biext {

/// T_Z(M) / n T_Z(M), a free Z/n-module of rank r.
struct FiniteRealization {
    long modulus = 2;
    std::size_t rank = 0;

    Integer size() const;
    std::vector<long> reduce(std::span<const Integer> v) const;
};

FiniteRealization reduce_mod_n(const Mhs& h, long n);

/// A multilinear map with coefficients in Z/n, entries in [0, n).
struct FiniteMap {
    long modulus = 2;
    std::vector<std::size_t> source_ranks;
    std::size_t target_rank = 0;
    std::vector<long> coefficients;  // row-major, target_rank x source_dim

    std::vector<long> apply(const std::vector<std::vector<long>>& args) const;
    friend bool operator==(const FiniteMap&, const FiniteMap&) = default;
};

FiniteMap reduce_map_mod_n(const HomLattice& l, const MultilinearMap& phi, long n);
/// Reduces an already reduced map further along Z/nm -> Z/n.
FiniteMap reduce_further(const FiniteMap& f, long n);
/// reduction o Phi == (Phi mod n) o (reduction x ... x reduction) on all basis
/// tensors and on a fixed set of sample arguments.
bool commute_check(const MultilinearMap& phi, const FiniteMap& reduced);

struct DeRhamSpace {
    std::size_t rank = 0;
    std::map<int, MatrixK> hodge;
};

DeRhamSpace de_rham(const Mhs& h);
/// Phi_K; throws CheckFailure if it does not respect F.
MatrixK de_rham_map(const HomLattice& l, const MultilinearMap& phi);

struct CurvatureReport {
    MatrixK gamma1;
    MatrixK gamma2;
    MatrixK upsilon;
    bool identity_holds = false;   // upsilon == -(phi1 - phi2) entry-exactly
    bool expansion_holds = false;  // R(g1+g2, g1'+g2') == upsilon(g1, g2') - upsilon(g1', g2)
};

/// R((t1', t2'), (t1'', t2'')) from the connection components gamma_i = -phi_i.
std::vector<KScalar> curvature_form(const MatrixK& gamma1, const MatrixK& gamma2, std::span<const KScalar> t1a,
                                    std::span<const KScalar> t2a, std::span<const KScalar> t1b,
                                    std::span<const KScalar> t2b);

CurvatureReport curvature(const HomLattice& l, const BiextData& b);

}  // namespace biext
