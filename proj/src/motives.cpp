#include "biext/motives.hpp"

#include <bit>
#include <set>

namespace biext {

namespace {

void require_shape(const MatrixK& m, std::size_t rows, std::size_t cols, const char* what) {
    if (rows == 0 || cols == 0) {
        if (m.rows() * m.cols() != 0) throw InputError(std::string(what) + " should be empty");
        return;
    }
    if (m.rows() != rows || m.cols() != cols)
        throw InputError(std::string(what) + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
}

const KScalar& entry_or_zero(const MatrixK& m, std::size_t i, std::size_t j) {
    static const KScalar zero;
    if (m.rows() == 0 || m.cols() == 0) return zero;
    return m(i, j);
}

}  // namespace

MatrixK PeriodPresentation::period_matrix() const {
    const std::size_t r = lattice_rank;
    const std::size_t g = genus();
    const std::size_t t = torus_rank;
    require_shape(abelian_lifts, g, r, "abelian_lifts");
    require_shape(torus_lifts, t, r, "torus_lifts");
    require_shape(extension_periods, t, 2 * g, "extension_periods");
    MatrixK p(g + t, rank());
    for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t i = 0; i < r; ++i) p(j, i) = entry_or_zero(abelian_lifts, j, i);
        p(j, r + 2 * j) = elliptic_moduli[j];
        p(j, r + 2 * j + 1) = KScalar(1);
    }
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t i = 0; i < r; ++i) p(g + k, i) = entry_or_zero(torus_lifts, k, i);
        for (std::size_t i = 0; i < 2 * g; ++i) p(g + k, r + i) = entry_or_zero(extension_periods, k, i);
        p(g + k, r + 2 * g + k) = KScalar(1);
    }
    return p;
}

Mhs assemble_periods(const PeriodPresentation& p, const FieldContext& field) {
    const std::size_t n = p.rank();
    const std::size_t r = p.lattice_rank;
    MatrixK period = p.period_matrix();
    for (std::size_t i = 0; i < period.rows(); ++i)
        for (std::size_t j = 0; j < period.cols(); ++j) period(i, j) = field.adopt(period(i, j));

    MatrixQ w1(0, n);
    MatrixQ w2(0, n);
    for (std::size_t i = r; i < n; ++i) {
        std::vector<Rational> e(n);
        e[i] = 1;
        w1.append_row(e);
        if (i >= r + 2 * p.genus()) w2.append_row(e);
    }
    std::map<int, MatrixQ> weight{{-2, w2}, {-1, w1}, {0, MatrixQ::identity(n)}};
    std::map<int, MatrixK> hodge{{-1, MatrixK::identity(n)}, {0, period.rows() ? kernel(period) : MatrixK::identity(n)}};
    return Mhs(field, n, weight, hodge);
}

Mhs build_from_periods(const PeriodPresentation& p, const FieldContext& field) {
    for (const auto& tau : p.elliptic_moduli)
        if (field.adopt(tau).is_rational()) throw InputError("degenerate elliptic modulus " + to_string(tau));
    const MatrixK period = p.period_matrix();
    if (rank(period) != period.rows()) throw InputError("period matrix is rank-deficient");
    Mhs h = assemble_periods(p, field);
    const auto report = validate_mhs(h, true);
    if (!report.ok()) throw CheckFailure("period presentation fails " + report.issues.front().invariant);
    return h;
}

PeriodPresentation elliptic_presentation(const KScalar& tau) {
    PeriodPresentation p;
    p.elliptic_moduli = {tau};
    return p;
}

PeriodPresentation kummer_presentation(const KScalar& pi) {
    PeriodPresentation p;
    p.lattice_rank = 1;
    p.torus_rank = 1;
    p.torus_lifts = MatrixK(1, 1, {pi});
    return p;
}

Mhs elliptic(const KScalar& tau, const FieldContext& field) {
    return build_from_periods(elliptic_presentation(tau), field);
}

Mhs kummer(const KScalar& pi, const FieldContext& field) {
    return build_from_periods(kummer_presentation(pi), field);
}

Mhs lattice_motive(std::size_t r, const FieldContext& field) {
    PeriodPresentation p;
    p.lattice_rank = r;
    return build_from_periods(p, field);
}

Mhs torus_motive(std::size_t t, const FieldContext& field) {
    PeriodPresentation p;
    p.torus_rank = t;
    p.torus_lifts = MatrixK(0, 0);
    return build_from_periods(p, field);
}

Mhs cartier_dual(const Mhs& h) {
    if (!is_one_motive_type(h)) throw InputError("Cartier dual needs a 1-motive type structure");
    return internal_hom(h, tate(1, h.field()));
}

Mhs tensor_weight0(const Mhs& h, std::size_t z) {
    std::vector<Mhs> copies(z, h);
    return direct_sum(copies, h.field());
}

Mhs sum_formula_motive(std::span<const Mhs> factors, int i, const FieldContext& field) {
    const std::size_t l = factors.size();
    if (i < 1 || static_cast<std::size_t>(i) > l + 1) throw InputError("sum formula needs 1 <= i <= l + 1");
    const std::size_t picked = static_cast<std::size_t>(i) - 1;
    std::vector<Mhs> terms;
    // Bitmask over factors: set bits form the i-1 tuple, the rest the l-i+1 tuple.
    for (std::size_t mask = 0; mask < (std::size_t{1} << l); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != picked) continue;
        std::size_t lattice_rank = 1;
        std::vector<Mhs> chosen;
        for (std::size_t j = 0; j < l; ++j) {
            if (mask >> j & 1)
                chosen.push_back(factors[j]);
            else
                {
                const GrProfile g = gr_profile(factors[j]);
                const auto it = g.find(0);
                lattice_rank *= it == g.end() ? 0 : it->second;
            }
        }
        const Mhs quotient = quotient_by_weight(tensor_all(chosen, field), i);
        terms.push_back(tensor_mhs(lattice_motive(lattice_rank, field), quotient));
    }
    return direct_sum(terms, field);
}

namespace {

Mhs build_impl(const MotiveSpec& spec, const FieldContext& field, const SpecResolver& resolve, bool checked,
               std::set<std::string>& active) {
    using Kind = MotiveSpec::Kind;
    switch (spec.kind) {
        case Kind::Lattice:
            if (spec.count < 0) throw InputError("lattice rank must be non-negative");
            return lattice_motive(static_cast<std::size_t>(spec.count), field);
        case Kind::Torus:
            if (spec.count < 0) throw InputError("torus rank must be non-negative");
            return torus_motive(static_cast<std::size_t>(spec.count), field);
        case Kind::Tate:
            return tate(static_cast<int>(spec.count), field);
        case Kind::Elliptic:
            return checked ? elliptic(spec.scalar, field) : assemble_periods(elliptic_presentation(spec.scalar), field);
        case Kind::Kummer:
            return kummer(spec.scalar, field);
        case Kind::Periods:
            return checked ? build_from_periods(spec.periods, field) : assemble_periods(spec.periods, field);
        case Kind::Sum: {
            std::vector<Mhs> parts;
            for (const auto& c : spec.children) parts.push_back(build_impl(c, field, resolve, checked, active));
            return direct_sum(parts, field);
        }
        case Kind::Dual: {
            if (spec.children.size() != 1) throw InputError("dual takes exactly one operand");
            return cartier_dual(build_impl(spec.children.front(), field, resolve, checked, active));
        }
        case Kind::Ref: {
            const MotiveSpec* target = resolve ? resolve(spec.name) : nullptr;
            if (!target) throw InputError("unknown motive '" + spec.name + "'");
            if (!active.insert(spec.name).second) throw InputError("cyclic motive reference '" + spec.name + "'");
            Mhs out = build_impl(*target, field, resolve, checked, active);
            active.erase(spec.name);
            return out;
        }
    }
    throw InputError("unknown motive kind");
}

}  // namespace

Mhs build(const MotiveSpec& spec, const FieldContext& field, const SpecResolver& resolve, bool checked) {
    std::set<std::string> active;
    return build_impl(spec, field, resolve, checked, active);
}

}  // namespace biext
