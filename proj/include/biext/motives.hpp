#pragma once

// Builders turning 1-motive descriptions into mixed Hodge structures.

#include "biext/hodge.hpp"

#include <functional>
#include <string>
#include <vector>

namespace biext {

/// Generator-level description of M = [X -> G], G an extension of a product
/// of elliptic curves by a split torus. Basis order is (x_1..x_r, a_1..a_2g, y_1..y_t).
struct PeriodPresentation {
    std::size_t lattice_rank = 0;
    std::vector<KScalar> elliptic_moduli;
    std::size_t torus_rank = 0;
    MatrixK abelian_lifts;      // g x r
    MatrixK torus_lifts;        // t x r
    MatrixK extension_periods;  // t x 2g

    std::size_t genus() const { return elliptic_moduli.size(); }
    std::size_t rank() const { return lattice_rank + 2 * genus() + torus_rank; }
    /// (g+t) x (r+2g+t) period matrix; F^0 is its kernel.
    MatrixK period_matrix() const;

    friend bool operator==(const PeriodPresentation&, const PeriodPresentation&) = default;
};

/// Assembles the MHS without checking the presentation's non-degeneracy.
Mhs assemble_periods(const PeriodPresentation& p, const FieldContext& field);
/// As assemble_periods, rejecting degenerate moduli and rank-deficient P.
Mhs build_from_periods(const PeriodPresentation& p, const FieldContext& field);

Mhs elliptic(const KScalar& tau, const FieldContext& field);
Mhs kummer(const KScalar& pi, const FieldContext& field);
/// Z(0)^r.
Mhs lattice_motive(std::size_t r, const FieldContext& field);
/// Z(1)^t.
Mhs torus_motive(std::size_t t, const FieldContext& field);

PeriodPresentation elliptic_presentation(const KScalar& tau);
PeriodPresentation kummer_presentation(const KScalar& pi);

Mhs cartier_dual(const Mhs& h);
/// z-fold direct sum of h.
Mhs tensor_weight0(const Mhs& h, std::size_t z);

/// Direct sum over disjoint index tuples nu (size l-i+1) and iota (size i-1)
/// of X_nu (x) (tensor of M_iota) / W_{-i}, X the Gr_0 lattice parts.
Mhs sum_formula_motive(std::span<const Mhs> factors, int i, const FieldContext& field);

/// Symbolic motive description. `Ref` names another motive of the same file.
struct MotiveSpec {
    enum class Kind { Lattice, Torus, Tate, Elliptic, Kummer, Periods, Sum, Dual, Ref };

    Kind kind = Kind::Lattice;
    long count = 0;          // Lattice / Torus rank, Tate twist
    KScalar scalar;          // Elliptic tau, Kummer pi
    PeriodPresentation periods;
    std::vector<MotiveSpec> children;  // Sum parts, Dual operand
    std::string name;        // Ref target

    static MotiveSpec lattice(long r) { return {Kind::Lattice, r, {}, {}, {}, {}}; }
    static MotiveSpec torus(long t) { return {Kind::Torus, t, {}, {}, {}, {}}; }
    static MotiveSpec tate(long n) { return {Kind::Tate, n, {}, {}, {}, {}}; }
    static MotiveSpec elliptic(KScalar tau) { return {Kind::Elliptic, 0, std::move(tau), {}, {}, {}}; }
    static MotiveSpec kummer(KScalar pi) { return {Kind::Kummer, 0, std::move(pi), {}, {}, {}}; }
    static MotiveSpec from_periods(PeriodPresentation p) { return {Kind::Periods, 0, {}, std::move(p), {}, {}}; }
    static MotiveSpec sum(std::vector<MotiveSpec> parts) { return {Kind::Sum, 0, {}, {}, std::move(parts), {}}; }
    static MotiveSpec dual(MotiveSpec inner) { return {Kind::Dual, 0, {}, {}, {std::move(inner)}, {}}; }
    static MotiveSpec ref(std::string n) { return {Kind::Ref, 0, {}, {}, {}, std::move(n)}; }

    friend bool operator==(const MotiveSpec&, const MotiveSpec&) = default;
};

/// Resolves `Ref` nodes; returns nullptr for unknown names.
using SpecResolver = std::function<const MotiveSpec*(const std::string&)>;

/// Builds the MHS of a spec. With `checked` false, degenerate moduli are
/// accepted so that validation can report them.
Mhs build(const MotiveSpec& spec, const FieldContext& field, const SpecResolver& resolve = {},
          bool checked = true);

}  // namespace biext
