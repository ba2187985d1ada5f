#include "biext/lattice.hpp"

#include <algorithm>
#include <utility>

namespace biext {

namespace {

void swap_rows(MatrixZ& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(MatrixZ& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_a -= q * row_b
void row_axpy(MatrixZ& m, std::size_t a, std::size_t b, const Integer& q) {
    if (sgn(q) == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(b, j)) != 0) m(a, j) -= q * m(b, j);
}

// col_a -= q * col_b
void col_axpy(MatrixZ& m, std::size_t a, std::size_t b, const Integer& q) {
    if (sgn(q) == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (sgn(m(i, b)) != 0) m(i, a) -= q * m(i, b);
}

// Replaces (row_a, row_b) by the unimodular combination that puts
// gcd(m(a,c), m(b,c)) in row a and 0 in row b at column c.
void gcd_combine_rows(MatrixZ& m, std::size_t a, std::size_t b, std::size_t c) {
    Integer g, s, t;
    const Integer x = m(a, c);
    const Integer y = m(b, c);
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    const Integer xg = x / g;
    const Integer yg = y / g;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Integer ra = m(a, j);
        const Integer rb = m(b, j);
        m(a, j) = s * ra + t * rb;
        m(b, j) = xg * rb - yg * ra;
    }
}

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
int cmpabs(const Rational& a, const Rational& b) { return cmp(abs(a), abs(b)); }

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer lcm_of_denominators(std::span<const Rational> row) {
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

void make_primitive(IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

IntLattice hnf(const MatrixZ& input) {
    MatrixZ a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a(p, c)) == 0) ++p;
        if (p == rows) continue;
        swap_rows(a, r, p);
        for (std::size_t i = r + 1; i < rows; ++i)
            if (sgn(a(i, c)) != 0) gcd_combine_rows(a, r, i, c);
        if (sgn(a(r, c)) < 0)
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) row_axpy(a, i, r, floor_div(a(i, c), a(r, c)));
        pivots.push_back(c);
        ++r;
    }
    IntLattice out;
    out.basis_ = MatrixZ(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.basis_(i, j) = std::move(a(i, j));
    out.pivots_ = std::move(pivots);
    return out;
}

IntLattice IntLattice::span(const MatrixZ& generators) { return hnf(generators); }

IntLattice IntLattice::full(std::size_t ambient_dim) { return hnf(MatrixZ::identity(ambient_dim)); }

IntVector IntLattice::coordinates(std::span<const Integer> v) const {
    if (v.size() != ambient_dim()) throw InputError("vector length does not match lattice dimension");
    IntVector rest(v.begin(), v.end());
    IntVector coords(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        const auto p = pivots_[i];
        if (!mpz_divisible_p(rest[p].get_mpz_t(), basis_(i, p).get_mpz_t()))
            throw InputError("vector is not in the lattice");
        coords[i] = rest[p] / basis_(i, p);
        if (sgn(coords[i]) == 0) continue;
        for (std::size_t j = p; j < ambient_dim(); ++j) rest[j] -= coords[i] * basis_(i, j);
    }
    if (std::any_of(rest.begin(), rest.end(), [](const Integer& x) { return sgn(x) != 0; }))
        throw InputError("vector is not in the lattice");
    return coords;
}

bool IntLattice::contains(std::span<const Integer> v) const {
    try {
        coordinates(v);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

bool IntLattice::is_saturated() const { return saturate(*this) == *this; }

SmithForm smith(const MatrixZ& input) {
    MatrixZ a = input;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    MatrixZ u = MatrixZ::identity(m);
    MatrixZ v = MatrixZ::identity(n);
    MatrixZ vinv = MatrixZ::identity(n);

    auto col_op = [&](std::size_t j, std::size_t t, const Integer& q) {
        // column j -= q * column t; V likewise; V^{-1}: row t += q * row j
        col_axpy(a, j, t, q);
        col_axpy(v, j, t, q);
        row_axpy(vinv, t, j, -q);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        swap_cols(a, x, y);
        swap_cols(v, x, y);
        swap_rows(vinv, x, y);
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        swap_rows(a, x, y);
        swap_rows(u, x, y);
    };

    std::vector<Integer> invariants;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Bring the smallest nonzero entry of the trailing block to (t, t).
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (sgn(a(i, j)) != 0 && (bi == m || cmpabs(a(i, j), a(bi, bj)) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) break;
            row_swap(t, bi);
            col_swap(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(a(i, t)) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                row_axpy(a, i, t, q);
                row_axpy(u, i, t, q);
                if (sgn(a(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(a(t, j)) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                col_op(j, t, q);
                if (sgn(a(t, j)) != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce divisibility of the trailing block by the pivot.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_axpy(a, t, bad, Integer(-1));
            row_axpy(u, t, bad, Integer(-1));
        }
        if (sgn(a(t, t)) == 0) break;
        if (sgn(a(t, t)) < 0) {
            for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
        }
        invariants.push_back(a(t, t));
    }
    return {std::move(a), std::move(u), std::move(v), std::move(vinv), std::move(invariants)};
}

IntLattice integer_kernel(const MatrixZ& a) {
    // Row-reduce [A^t | I]; rows whose left block vanishes span the kernel.
    const std::size_t n = a.cols();
    const std::size_t k = a.rows();
    MatrixZ aug(n, k + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(j, i);
        aug(i, k + i) = 1;
    }
    const IntLattice h = hnf(aug);
    MatrixZ ker(0, n);
    for (std::size_t i = 0; i < h.rank(); ++i) {
        if (h.pivots()[i] < k) continue;
        ker.append_row(h.basis().row(i).subspan(k));
    }
    return hnf(ker);
}

MatrixQ rational_kernel(const MatrixQ& m) { return kernel(m); }

IntLattice saturate(const IntLattice& lattice) {
    const std::size_t k = lattice.rank();
    const std::size_t n = lattice.ambient_dim();
    if (k == 0) return lattice;
    const SmithForm s = smith(lattice.basis());
    MatrixZ sat(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) sat(i, j) = s.right_inv(i, j);
    return hnf(sat);
}

IntVector primitive_integer_row(std::span<const Rational> row) {
    const Integer l = lcm_of_denominators(row);
    IntVector v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        const Rational scaled = row[i] * l;
        v[i] = scaled.get_num();
    }
    make_primitive(v);
    return v;
}

ConstraintSolver::ConstraintSolver(std::size_t n) : n_(n) {
    basis_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        basis_.push_back(std::move(e));
    }
}

void ConstraintSolver::add(std::span<const KScalar> c) {
    if (c.size() != n_) throw InputError("constraint length mismatch");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n_; ++i)
        if (!c[i].is_zero()) support.push_back(i);
    add_functional([&](std::span<const Integer> b) {
        KScalar acc;
        for (auto i : support)
            if (sgn(b[i]) != 0) acc += c[i] * KScalar(b[i]);
        return acc;
    });
}

void ConstraintSolver::add(std::span<const Rational> c) {
    if (c.size() != n_) throw InputError("constraint length mismatch");
    std::vector<Rational> values;
    values.reserve(basis_.size());
    for (const auto& b : basis_) {
        Rational acc = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (sgn(c[i]) != 0 && sgn(b[i]) != 0) acc += c[i] * b[i];
        values.push_back(std::move(acc));
    }
    impose_rational(std::move(values));
}

void ConstraintSolver::impose(const std::vector<KScalar>& values) {
    // Impose the 1-component, carrying the w-component through the same
    // basis change, then impose the transformed w-component.
    std::vector<Rational> re;
    std::vector<Rational> im;
    for (const auto& v : values) {
        re.push_back(v.re());
        im.push_back(v.im());
    }
    const bool has_im = std::any_of(im.begin(), im.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (!has_im) {
        impose_rational(std::move(re));
        return;
    }
    std::size_t pivot = basis_.size();
    for (std::size_t j = 0; j < re.size(); ++j)
        if (sgn(re[j]) != 0 && (pivot == basis_.size() || cmpabs(re[j], re[pivot]) < 0)) pivot = j;
    if (pivot != basis_.size()) {
        std::vector<IntVector> next;
        std::vector<Rational> next_im;
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            if (j == pivot) continue;
            if (sgn(re[j]) == 0) {
                next.push_back(std::move(basis_[j]));
                next_im.push_back(im[j]);
                continue;
            }
            // re[pivot] * b_j - re[j] * b_pivot, scaled to clear denominators
            const Rational a = re[pivot];
            const Rational b = re[j];
            const Integer scale = a.get_den() * b.get_den();
            const Integer ai = Rational(a * scale).get_num();
            const Integer bi = Rational(b * scale).get_num();
            IntVector row(n_);
            for (std::size_t i = 0; i < n_; ++i) row[i] = ai * basis_[j][i] - bi * basis_[pivot][i];
            Rational wv = Rational(ai) * im[j] - Rational(bi) * im[pivot];
            Integer g = 0;
            for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g > 1) {
                for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
                wv /= g;
            }
            next.push_back(std::move(row));
            next_im.push_back(std::move(wv));
        }
        basis_ = std::move(next);
        im = std::move(next_im);
    }
    impose_rational(std::move(im));
}

void ConstraintSolver::impose_rational(std::vector<Rational> values) {
    std::size_t pivot = basis_.size();
    for (std::size_t j = 0; j < values.size(); ++j)
        if (sgn(values[j]) != 0 && (pivot == basis_.size() || cmpabs(values[j], values[pivot]) < 0)) pivot = j;
    if (pivot == basis_.size()) return;
    const Integer scale = lcm_of_denominators(values);
    std::vector<Integer> t(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) t[j] = Rational(values[j] * scale).get_num();

    std::vector<IntVector> next;
    next.reserve(basis_.size() - 1);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (j == pivot) continue;
        if (sgn(t[j]) == 0) {
            next.push_back(std::move(basis_[j]));
            continue;
        }
        IntVector row(n_);
        for (std::size_t i = 0; i < n_; ++i) row[i] = t[pivot] * basis_[j][i] - t[j] * basis_[pivot][i];
        make_primitive(row);
        next.push_back(std::move(row));
    }
    basis_ = std::move(next);
}

IntLattice ConstraintSolver::lattice() const {
    MatrixZ m(0, n_);
    for (const auto& b : basis_) m.append_row(b);
    if (basis_.empty()) return IntLattice(n_);
    return saturate(hnf(m));
}

IntLattice solve_integer_constraints(std::size_t n, const MatrixK& constraints) {
    if (constraints.rows() > 0 && constraints.cols() != n) throw InputError("constraint width mismatch");
    ConstraintSolver solver(n);
    for (std::size_t i = 0; i < constraints.rows(); ++i) solver.add(constraints.row(i));
    return solver.lattice();
}

}  // namespace biext
