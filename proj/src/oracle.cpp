#include "biext/oracle.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

namespace biext {

long DeterministicRng::range(long lo, long hi) {
    if (hi < lo) throw InputError("empty range");
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % width);
}

Rational DeterministicRng::rational(long height) {
    const long num = range(-height, height);
    const long den = range(1, std::max(1L, height));
    return make_rational(num, den);
}

KScalar DeterministicRng::scalar(const FieldContext& field, long height) {
    Rational re = rational(height);
    Rational im = rational(height);
    return field.make(re, im);
}

KScalar DeterministicRng::modulus(const FieldContext& field, long height) {
    Rational re = rational(height);
    long num = range(1, std::max(1L, height));
    if (range(0, 1)) num = -num;
    Rational im = make_rational(num, range(1, std::max(1L, height)));
    return field.make(re, im);
}

MotiveSpec random_motive(const InstanceProfile& profile, const FieldContext& field) {
    DeterministicRng rng(profile.seed);
    PeriodPresentation p;
    p.lattice_rank = profile.lattice_rank;
    std::size_t g = profile.elliptic_factors;
    p.torus_rank = profile.torus_rank;
    if (profile.oracle_sized) {
        while (p.lattice_rank + 2 * g + p.torus_rank > 3) {
            if (p.torus_rank > 0 && p.torus_rank >= p.lattice_rank)
                --p.torus_rank;
            else if (p.lattice_rank > 0)
                --p.lattice_rank;
            else
                --g;
        }
    }
    const long h = std::max(1L, profile.height);
    for (std::size_t j = 0; j < g; ++j) p.elliptic_moduli.push_back(rng.modulus(field, h));
    auto fill = [&](std::size_t rows, std::size_t cols) {
        MatrixK m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.scalar(field, h);
        return m;
    };
    p.abelian_lifts = fill(g, p.lattice_rank);
    p.torus_lifts = fill(p.torus_rank, p.lattice_rank);
    p.extension_periods = fill(p.torus_rank, 2 * g);
    return MotiveSpec::from_periods(std::move(p));
}

namespace {

// Functionals on flattened maps expressing "f(v) lies in the span of the
// RREF rows R": one per non-pivot column j, x_j - sum_k x_{p_k} R_k[j] = 0.
template <class T>
void membership_functionals(std::span<const T> v, const Matrix<T>& target, std::size_t n, std::size_t m,
                            std::vector<std::vector<T>>& out) {
    const auto e = rref(target);
    std::vector<bool> is_pivot(m, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < m; ++j) {
        if (is_pivot[j]) continue;
        std::vector<T> row(n * m);
        for (std::size_t a = 0; a < n; ++a) {
            if (is_zero(v[a])) continue;
            row[j * n + a] += v[a];
            for (std::size_t k = 0; k < e.pivots.size(); ++k)
                if (!is_zero(e.basis(k, j))) row[e.pivots[k] * n + a] -= v[a] * e.basis(k, j);
        }
        out.push_back(std::move(row));
    }
}

std::vector<std::vector<long>> integer_functionals(const Mhs& a, const Mhs& b) {
    const std::size_t n = a.rank();
    const std::size_t m = b.rank();
    std::vector<std::vector<Rational>> rational_rows;
    for (const auto& [w, step] : a.weight_steps())
        for (std::size_t i = 0; i < step.rows(); ++i)
            membership_functionals<Rational>(step.row(i), b.weight(w), n, m, rational_rows);
    std::vector<std::vector<KScalar>> k_rows;
    for (const auto& [p, step] : a.hodge_steps())
        for (std::size_t i = 0; i < step.rows(); ++i) membership_functionals<KScalar>(step.row(i), b.hodge(p), n, m, k_rows);
    for (const auto& row : k_rows) {
        std::vector<Rational> re, im;
        for (const auto& x : row) {
            re.push_back(x.re());
            im.push_back(x.im());
        }
        rational_rows.push_back(std::move(re));
        rational_rows.push_back(std::move(im));
    }
    MatrixQ all(0, n * m);
    for (const auto& r : rational_rows) all.append_row(r);
    const MatrixQ reduced = span_basis(all);
    std::vector<std::vector<long>> out;
    for (std::size_t i = 0; i < reduced.rows(); ++i) {
        const IntVector row = primitive_integer_row(reduced.row(i));
        std::vector<long> small;
        for (const auto& x : row) {
            if (!x.fits_slong_p() || abs(x) > (1L << 40)) throw CheckFailure("oracle functional coefficient too large");
            small.push_back(x.get_si());
        }
        out.push_back(std::move(small));
    }
    return out;
}

}  // namespace

std::vector<BoxPoint> brute_force_hom(const Mhs& a, const Mhs& b, long bound) {
    require_same_field(a, b);
    const std::size_t n = a.rank() * b.rank();
    if (n > kOracleMaxUnknowns) throw InputError("oracle size guard: more than 9 unknowns");
    if (bound < 0 || bound > kOracleMaxBound) throw InputError("oracle size guard: bound must lie in [0, 3]");
    const auto functionals = integer_functionals(a, b);
    const std::size_t k = functionals.size();

    // Column-major coefficients; |value| <= 9 * 3 * 2^40 fits in 64 bits.
    std::vector<long> column(n * k);
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t i = 0; i < n; ++i) column[i * k + f] = functionals[f][i];

    BoxPoint x(n, -bound);
    std::vector<long> values(k, 0);
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t i = 0; i < n; ++i) values[f] += column[i * k + f] * x[i];

    std::vector<BoxPoint> out;
    for (;;) {
        bool ok = true;
        for (std::size_t f = 0; f < k && ok; ++f) ok = values[f] == 0;
        if (ok) out.push_back(x);
        std::size_t i = 0;
        while (i < n && x[i] == bound) {
            x[i] = -bound;
            const long* c = column.data() + i * k;
            for (std::size_t f = 0; f < k; ++f) values[f] -= 2 * bound * c[f];
            ++i;
        }
        if (i == n) break;
        ++x[i];
        const long* c = column.data() + i * k;
        for (std::size_t f = 0; f < k; ++f) values[f] += c[f];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BoxPoint> lattice_box_points(const IntLattice& l, long bound) {
    const std::size_t n = l.ambient_dim();
    const std::size_t k = l.rank();
    const auto& pivots = l.pivots();
    std::vector<std::vector<__int128>> basis(k, std::vector<__int128>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Integer& e = l.basis()(i, j);
            if (!e.fits_slong_p() || abs(e) > (1L << 40)) throw CheckFailure("lattice entry too large for box enumeration");
            basis[i][j] = e.get_si();
        }
    std::vector<BoxPoint> out;
    std::vector<__int128> x(n, 0);

    // Columns before the next pivot are final once rows 0..i are chosen.
    auto settled_ok = [&](std::size_t from, std::size_t to) {
        for (std::size_t j = from; j < to; ++j)
            if (x[j] > bound || x[j] < -bound) return false;
        return true;
    };
    auto floor_div = [](__int128 a, __int128 b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
    auto ceil_div = [&](__int128 a, __int128 b) { return -floor_div(-a, b); };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            out.emplace_back(x.begin(), x.end());
            return;
        }
        const std::size_t p = pivots[i];
        const __int128 piv = basis[i][p];
        const __int128 lo = ceil_div(-bound - x[p], piv);
        const __int128 hi = floor_div(bound - x[p], piv);
        const std::size_t next = i + 1 < k ? pivots[i + 1] : n;
        for (__int128 c = lo; c <= hi; ++c) {
            for (std::size_t j = p; j < n; ++j) x[j] += c * basis[i][j];
            if (settled_ok(p, next)) rec(i + 1);
            for (std::size_t j = p; j < n; ++j) x[j] -= c * basis[i][j];
        }
    };
    if (k == 0 || settled_ok(0, pivots[0])) rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

OracleReport compare_with_oracle(const HomLattice& l, long bound) {
    const auto oracle = brute_force_hom(l.tensor, l.target, bound);
    const auto points = lattice_box_points(l.lattice, bound);
    OracleReport r;
    r.oracle_count = oracle.size();
    r.lattice_count = points.size();
    std::set_difference(oracle.begin(), oracle.end(), points.begin(), points.end(), std::back_inserter(r.missing));
    std::set_difference(points.begin(), points.end(), oracle.begin(), oracle.end(), std::back_inserter(r.extra));
    return r;
}

}  // namespace biext
