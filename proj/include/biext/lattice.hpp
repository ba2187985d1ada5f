#pragma once

// Integral linear algebra: Hermite and Smith normal forms, integer kernels,
// saturation, and the constrained-integer-kernel solver.

#include "biext/matrix.hpp"

#include <vector>

namespace biext {

using IntVector = std::vector<Integer>;

/// Sublattice of Z^N stored by its row Hermite normal form: upper echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Equality of lattices is equality of the stored bases.
class IntLattice {
  public:
    IntLattice() = default;
    explicit IntLattice(std::size_t ambient_dim) : basis_(0, ambient_dim) {}

    /// Lattice generated by the rows of `generators`.
    static IntLattice span(const MatrixZ& generators);
    static IntLattice full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t rank() const { return basis_.rows(); }
    const MatrixZ& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const Integer> v) const;
    /// Integer coordinates of `v` in the HNF basis; throws if v is not in the lattice.
    IntVector coordinates(std::span<const Integer> v) const;
    bool is_saturated() const;

    friend bool operator==(const IntLattice& a, const IntLattice& b) { return a.basis_ == b.basis_; }

  private:
    friend IntLattice hnf(const MatrixZ& m);

    MatrixZ basis_;
    std::vector<std::size_t> pivots_;
};

/// Canonical HNF basis of the row span of `m` over Z.
IntLattice hnf(const MatrixZ& m);

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
    MatrixZ diag;      // same shape as A
    MatrixZ left;      // U
    MatrixZ right;     // V
    MatrixZ right_inv; // V^{-1}
    std::vector<Integer> invariants;  // nonzero diagonal entries
};

SmithForm smith(const MatrixZ& a);

/// {x in Z^N : A x^t = 0}; always saturated.
IntLattice integer_kernel(const MatrixZ& a);

/// Q-basis of {v : M v^t = 0}.
MatrixQ rational_kernel(const MatrixQ& m);

/// (L (x) Q) n Z^N, computed through the Smith form of the basis.
IntLattice saturate(const IntLattice& lattice);

/// Scales a rational row to a primitive integer row (same line through 0).
IntVector primitive_integer_row(std::span<const Rational> row);

/// Integer lattice of x in Z^N with c . x = 0 for every K-row c of
/// `constraints`. Each K-row is split into its 1- and w-components.
IntLattice solve_integer_constraints(std::size_t n, const MatrixK& constraints);

/// Incremental form of the solver: feed constraint rows one at a time, then
/// read the saturated solution lattice.
class ConstraintSolver {
  public:
    explicit ConstraintSolver(std::size_t n);

    /// Imposes c . x = 0 for an integer unknown x.
    void add(std::span<const KScalar> c);
    void add(std::span<const Rational> c);
    /// Imposes a functional evaluated directly on the current basis rows; the
    /// callback receives a basis row and returns the functional's value.
    template <class F>
    void add_functional(F&& eval) {
        std::vector<KScalar> values;
        values.reserve(basis_.size());
        for (const auto& b : basis_) values.push_back(eval(std::span<const Integer>(b)));
        impose(values);
    }

    std::size_t dimension() const { return basis_.size(); }
    const std::vector<IntVector>& rational_basis() const { return basis_; }
    IntLattice lattice() const;

  private:
    void impose(const std::vector<KScalar>& values);
    void impose_rational(std::vector<Rational> values);

    std::size_t n_;
    std::vector<IntVector> basis_;  // primitive integer rows spanning the Q-solution space
};

}  // namespace biext
