#include "biext/homspace.hpp"

#include <numeric>

namespace biext {

namespace {

template <class T>
struct SparseCondition {
    std::vector<std::pair<std::size_t, T>> source;
    std::vector<std::pair<std::size_t, T>> target;
};

template <class T>
SparseCondition<T> sparsify(const MapCondition<T>& c) {
    SparseCondition<T> s;
    for (std::size_t a = 0; a < c.source.size(); ++a)
        if (!is_zero(c.source[a])) s.source.emplace_back(a, c.source[a]);
    for (std::size_t b = 0; b < c.target.size(); ++b)
        if (!is_zero(c.target[b])) s.target.emplace_back(b, c.target[b]);
    return s;
}

// c . f(v) for a flattened map f[b*n + a].
template <class T>
T apply_condition(const SparseCondition<T>& c, std::span<const Integer> f, std::size_t n) {
    T acc{};
    for (const auto& [b, cb] : c.target) {
        T inner{};
        bool any = false;
        for (const auto& [a, va] : c.source) {
            const Integer& x = f[b * n + a];
            if (sgn(x) == 0) continue;
            inner += va * T(x);
            any = true;
        }
        if (any) acc += cb * inner;
    }
    return acc;
}

// Images of the rows of `vectors` under the map with coefficient matrix m.
template <class T>
Matrix<T> image_rows(const Matrix<T>& vectors, const Matrix<T>& m) {
    if (vectors.rows() == 0) return Matrix<T>(0, m.rows());
    return multiply(vectors, transpose(m));
}

std::vector<Rational> eval_q(const MultilinearMap& phi, std::span<const Rational> x, std::span<const Rational> y) {
    const std::size_t rb = y.size();
    std::vector<Rational> out(phi.target_rank);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (std::size_t b = 0; b < rb; ++b) {
            if (sgn(y[b]) == 0) continue;
            const Rational xy = x[a] * y[b];
            for (std::size_t c = 0; c < phi.target_rank; ++c)
                if (sgn(phi.coefficients(c, a * rb + b)) != 0) out[c] += xy * phi.coefficients(c, a * rb + b);
        }
    }
    return out;
}

bool all_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Representatives of W_{w}/W_{w-1}: W_{w-1} rows first, then greedy extension.
std::pair<MatrixQ, MatrixQ> graded_representatives(const Mhs& h, int w) {
    MatrixQ lower = h.weight(w - 1);
    MatrixQ reps(0, h.rank());
    MatrixQ acc = lower;
    const MatrixQ upper = h.weight(w);
    for (std::size_t i = 0; i < upper.rows(); ++i) {
        if (contains<Rational>(acc, upper.row(i))) continue;
        acc.append_row(upper.row(i));
        reps.append_row(upper.row(i));
    }
    return {lower, reps};
}

void require_bilinear(const HomLattice& l) {
    if (l.sources.size() != 2) throw InputError("operation needs a bilinear Hom lattice");
}

}  // namespace

std::size_t MultilinearMap::source_dim() const {
    return std::accumulate(source_ranks.begin(), source_ranks.end(), std::size_t{1}, std::multiplies<>());
}

MultilinearMap MultilinearMap::from_flat(std::vector<std::size_t> source_ranks, std::size_t target_rank,
                                         std::span<const Integer> flat) {
    MultilinearMap m;
    m.source_ranks = std::move(source_ranks);
    m.target_rank = target_rank;
    const std::size_t n = m.source_dim();
    if (flat.size() != n * target_rank) throw InputError("coefficient count does not match the map shape");
    m.coefficients = MatrixZ(target_rank, n, IntVector(flat.begin(), flat.end()));
    return m;
}

MultilinearMap MultilinearMap::zero(std::vector<std::size_t> source_ranks, std::size_t target_rank) {
    MultilinearMap m;
    m.source_ranks = std::move(source_ranks);
    m.target_rank = target_rank;
    m.coefficients = MatrixZ(target_rank, m.source_dim());
    return m;
}

MultilinearMap operator+(const MultilinearMap& a, const MultilinearMap& b) {
    if (a.source_ranks != b.source_ranks || a.target_rank != b.target_rank) throw InputError("map shape mismatch");
    MultilinearMap out = a;
    for (std::size_t i = 0; i < a.coefficients.rows(); ++i)
        for (std::size_t j = 0; j < a.coefficients.cols(); ++j) out.coefficients(i, j) += b.coefficients(i, j);
    return out;
}

MultilinearMap operator*(const Integer& k, const MultilinearMap& a) {
    MultilinearMap out = a;
    for (std::size_t i = 0; i < a.coefficients.rows(); ++i)
        for (std::size_t j = 0; j < a.coefficients.cols(); ++j) out.coefficients(i, j) *= k;
    return out;
}

std::vector<std::size_t> HomLattice::source_ranks() const {
    std::vector<std::size_t> r;
    for (const auto& s : sources) r.push_back(s.rank());
    return r;
}

MultilinearMap HomLattice::element(std::size_t i) const {
    return MultilinearMap::from_flat(source_ranks(), target.rank(), lattice.basis().row(i));
}

std::vector<MultilinearMap> HomLattice::basis() const {
    std::vector<MultilinearMap> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(element(i));
    return out;
}

bool HomLattice::contains(const MultilinearMap& f) const {
    if (f.source_ranks != source_ranks() || f.target_rank != target.rank()) return false;
    return lattice.contains(f.coefficients.data());
}

HomLattice hom_multilinear(const std::vector<Mhs>& sources, const Mhs& target) {
    if (sources.empty()) throw InputError("at least one source is required");
    for (const auto& s : sources) require_same_field(s, target);
    Mhs tensor = tensor_all(sources, target.field());
    const std::size_t n = tensor.rank();
    ConstraintSolver solver(n * target.rank());
    for (const auto& c : weight_condition_pairs(tensor, target, 0)) {
        if (solver.dimension() == 0) break;
        const auto s = sparsify(c);
        solver.add_functional([&](std::span<const Integer> f) { return KScalar(apply_condition(s, f, n)); });
    }
    for (const auto& c : hodge_condition_pairs(tensor, target, 0)) {
        if (solver.dimension() == 0) break;
        const auto s = sparsify(c);
        solver.add_functional([&](std::span<const Integer> f) { return apply_condition(s, f, n); });
    }
    return {sources, target, std::move(tensor), solver.lattice()};
}

HomLattice hom_lattice(const Mhs& a, const Mhs& b) { return hom_multilinear({a}, b); }

bool respects_filtrations(const Mhs& tensor, const Mhs& target, const MultilinearMap& f) {
    if (f.source_dim() != tensor.rank() || f.target_rank != target.rank()) return false;
    const MatrixQ fq = to_q(f.coefficients);
    const MatrixK fk = to_k(f.coefficients);
    for (const auto& [w, step] : tensor.weight_steps())
        if (!is_subspace(image_rows(step, fq), target.weight(w))) return false;
    for (const auto& [p, step] : tensor.hodge_steps())
        if (!is_subspace(image_rows(step, fk), target.hodge(p))) return false;
    return true;
}

MultilinearMap curry(const MultilinearMap& phi) {
    if (phi.source_ranks.size() != 2) throw InputError("curry needs a bilinear map");
    const std::size_t ra = phi.source_ranks[0];
    const std::size_t rb = phi.source_ranks[1];
    const std::size_t rc = phi.target_rank;
    MultilinearMap g = MultilinearMap::zero({ra}, rb * rc);
    for (std::size_t c = 0; c < rc; ++c)
        for (std::size_t a = 0; a < ra; ++a)
            for (std::size_t b = 0; b < rb; ++b) g.coefficients(c * rb + b, a) = phi.coefficients(c, a * rb + b);
    return g;
}

MultilinearMap uncurry(const MultilinearMap& g, std::size_t rank_b) {
    if (g.source_ranks.size() != 1 || rank_b == 0 || g.target_rank % rank_b != 0)
        throw InputError("uncurry: shape mismatch");
    const std::size_t ra = g.source_ranks[0];
    const std::size_t rc = g.target_rank / rank_b;
    MultilinearMap phi = MultilinearMap::zero({ra, rank_b}, rc);
    for (std::size_t c = 0; c < rc; ++c)
        for (std::size_t a = 0; a < ra; ++a)
            for (std::size_t b = 0; b < rank_b; ++b)
                phi.coefficients(c, a * rank_b + b) = g.coefficients(c * rank_b + b, a);
    return phi;
}

AdjunctionReport curry_adjunction(const Mhs& a, const Mhs& b, const Mhs& c) {
    const HomLattice bil = hom_multilinear({a, b}, c);
    const HomLattice cur = hom_lattice(a, internal_hom(b, c));
    AdjunctionReport r;
    r.bilinear_rank = bil.rank();
    r.curried_rank = cur.rank();
    MatrixZ images(0, cur.lattice.ambient_dim());
    r.round_trip = true;
    for (const auto& phi : bil.basis()) {
        const MultilinearMap g = curry(phi);
        images.append_row(g.coefficients.data());
        if (b.rank() > 0 && !(uncurry(g, b.rank()) == phi)) r.round_trip = false;
    }
    r.images_span = hnf(images) == cur.lattice;
    return r;
}

std::vector<KScalar> evaluate(const MatrixK& phi, std::span<const KScalar> x, std::span<const KScalar> y) {
    const std::size_t rb = y.size();
    if (phi.cols() != x.size() * rb) throw InputError("bilinear evaluation: shape mismatch");
    std::vector<KScalar> out(phi.rows());
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < rb; ++b) {
            if (y[b].is_zero()) continue;
            const KScalar xy = x[a] * y[b];
            for (std::size_t c = 0; c < phi.rows(); ++c)
                if (!phi(c, a * rb + b).is_zero()) out[c] += xy * phi(c, a * rb + b);
        }
    }
    return out;
}

namespace {

std::vector<KScalar> lift(std::span<const Integer> v) { return {v.begin(), v.end()}; }

std::vector<KScalar> add(std::vector<KScalar> a, const std::vector<KScalar>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

std::vector<KScalar> psi1(const BiextData& b, std::span<const Integer> v, std::span<const KScalar> f1,
                          std::span<const KScalar> w) {
    return add(evaluate(b.phi1, lift(v), w), evaluate(b.phi2, f1, w));
}

std::vector<KScalar> psi2(const BiextData& b, std::span<const KScalar> v, std::span<const Integer> w,
                          std::span<const KScalar> f2) {
    return add(evaluate(b.phi2, v, lift(w)), evaluate(b.phi1, v, f2));
}

std::optional<std::string> check_biext(const HomLattice& l, const BiextData& b) {
    require_bilinear(l);
    const std::size_t rows = l.target.rank();
    const std::size_t cols = l.tensor.rank();
    if (b.phi1.rows() != rows || b.phi1.cols() != cols || b.phi2.rows() != rows || b.phi2.cols() != cols)
        return "shape";
    if (!l.contains(b.lambda)) return "lambda-not-in-lattice";
    const MatrixK lk = b.lambda.to_k();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!(b.phi1(i, j) - b.phi2(i, j) == lk(i, j))) return "difference-is-not-lambda";
    const MatrixK f1 = l.sources[0].hodge(0);
    const MatrixK f2 = l.sources[1].hodge(0);
    const MatrixK f3 = l.target.hodge(0);
    for (std::size_t i = 0; i < f1.rows(); ++i)
        for (std::size_t j = 0; j < f2.rows(); ++j) {
            const auto x = add(evaluate(b.phi1, f1.row(i), f2.row(j)),
                               [&] {
                                   auto y = evaluate(b.phi2, f1.row(i), f2.row(j));
                                   for (auto& e : y) e = -e;
                                   return y;
                               }());
            if (!contains<KScalar>(f3, x)) return "hodge-filtration";
        }
    return std::nullopt;
}

BiextData biext_from_map(const HomLattice& l, const MultilinearMap& phi, const std::optional<MatrixK>& phi1) {
    require_bilinear(l);
    if (!l.contains(phi)) throw InputError("map is not in the Hom lattice");
    BiextData b;
    b.lambda = phi;
    const MatrixK k = phi.to_k();
    if (!phi1) {
        b.phi1 = k;
        b.phi2 = MatrixK(k.rows(), k.cols());
    } else {
        if (phi1->rows() != k.rows() || phi1->cols() != k.cols()) throw InputError("phi1 has the wrong shape");
        b.phi1 = MatrixK(k.rows(), k.cols());
        b.phi2 = MatrixK(k.rows(), k.cols());
        for (std::size_t i = 0; i < k.rows(); ++i)
            for (std::size_t j = 0; j < k.cols(); ++j) {
                b.phi1(i, j) = l.target.field().adopt((*phi1)(i, j));
                b.phi2(i, j) = b.phi1(i, j) - k(i, j);
            }
    }
    if (auto bad = check_biext(l, b)) throw InputError("biextension data violates " + *bad);
    return b;
}

MultilinearMap biext_class(const BiextData& b) {
    MultilinearMap out = MultilinearMap::zero(b.lambda.source_ranks, b.lambda.target_rank);
    if (b.phi1.rows() != out.coefficients.rows() || b.phi1.cols() != out.coefficients.cols())
        throw InputError("biextension shape mismatch");
    for (std::size_t i = 0; i < b.phi1.rows(); ++i)
        for (std::size_t j = 0; j < b.phi1.cols(); ++j) {
            const KScalar d = b.phi1(i, j) - b.phi2(i, j);
            if (!d.is_rational() || d.re().get_den() != 1) throw CheckFailure("phi1 - phi2 is not integral");
            out.coefficients(i, j) = d.re().get_num();
        }
    return out;
}

bool biext_iso(const BiextData& a, const BiextData& b) {
    if (a.lambda.source_ranks != b.lambda.source_ranks || a.lambda.target_rank != b.lambda.target_rank)
        throw InputError("biextensions have different shapes");
    return biext_class(a) == biext_class(b);
}

WeilPairing weil_pairing(const Mhs& h) {
    if (!is_one_motive_type(h)) throw InputError("Weil pairing needs a 1-motive type structure");
    const std::size_t r = h.rank();
    const Mhs dual = cartier_dual(h);
    WeilPairing out;
    out.map = MultilinearMap::zero({r, dual.rank()}, 1);
    out.matrix = MatrixZ(r, dual.rank());
    for (std::size_t a = 0; a < r; ++a) {
        out.map.coefficients(0, a * r + a) = 1;
        out.matrix(a, a) = 1;
    }
    out.in_lattice = hom_multilinear({h, dual}, tate(1, h.field())).contains(out.map);
    const SmithForm s = smith(out.matrix);
    out.unimodular = s.invariants.size() == r &&
                     std::all_of(s.invariants.begin(), s.invariants.end(), [](const Integer& x) { return x == 1; });
    return out;
}

MultilinearMap pullback_pairing(const MultilinearMap& s) {
    if (s.source_ranks.size() != 1 || s.target_rank != s.source_ranks[0])
        throw InputError("self-duality must map H to a dual of the same rank");
    const std::size_t r = s.target_rank;
    MultilinearMap out = MultilinearMap::zero({r, r}, 1);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) out.coefficients(0, a * r + b) = s.coefficients(b, a);
    return out;
}

MultilinearMap transpose(const MultilinearMap& f) {
    if (f.source_ranks.size() != 1) throw InputError("transpose needs a linear map");
    MultilinearMap t = MultilinearMap::zero({f.target_rank}, f.source_ranks[0]);
    t.coefficients = transpose(f.coefficients);
    return t;
}

AdjointReport adjoint_check(const Mhs& a, const Mhs& b, const MultilinearMap& f) {
    if (!hom_lattice(a, b).contains(f)) throw InputError("map is not in Hom(A, B)");
    const Mhs ad = cartier_dual(a);
    const Mhs bd = cartier_dual(b);
    AdjointReport out;
    out.transposed = transpose(f);
    out.transpose_in_lattice = hom_lattice(bd, ad).contains(out.transposed);

    const WeilPairing ea = weil_pairing(a);
    const WeilPairing eb = weil_pairing(b);
    const std::size_t ra = a.rank();
    const std::size_t rb = b.rank();
    MultilinearMap lhs = MultilinearMap::zero({ra, rb}, 1);
    MultilinearMap rhs = MultilinearMap::zero({ra, rb}, 1);
    for (std::size_t x = 0; x < ra; ++x)
        for (std::size_t y = 0; y < rb; ++y) {
            // e_B(f(e_x), e_y*) and e_A(e_x, f^t(e_y*))
            for (std::size_t k = 0; k < rb; ++k) lhs.coefficients(0, x * rb + y) += f.coefficients(k, x) * eb.matrix(k, y);
            for (std::size_t k = 0; k < ra; ++k)
                rhs.coefficients(0, x * rb + y) += ea.matrix(x, k) * out.transposed.coefficients(k, y);
        }
    out.identity_holds = lhs == rhs && hom_multilinear({a, bd}, tate(1, a.field())).contains(lhs);
    return out;
}

MultilinearMap swap_factors(const MultilinearMap& phi) {
    if (phi.source_ranks.size() != 2 || phi.source_ranks[0] != phi.source_ranks[1])
        throw InputError("swap needs a bilinear map on H (x) H");
    const std::size_t r = phi.source_ranks[0];
    MultilinearMap out = phi;
    for (std::size_t c = 0; c < phi.target_rank; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) out.coefficients(c, a * r + b) = phi.coefficients(c, b * r + a);
    return out;
}

SymSplit sym_antisym_split(const HomLattice& l) {
    require_bilinear(l);
    if (!(l.sources[0] == l.sources[1])) throw InputError("symmetric split needs equal sources");
    const std::size_t k = l.rank();
    const std::size_t n = l.lattice.ambient_dim();
    const MatrixZ& basis = l.lattice.basis();
    MatrixZ swapped(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        const auto s = swap_factors(l.element(i)).flatten();
        for (std::size_t j = 0; j < n; ++j) swapped(i, j) = s[j];
    }
    SymSplit out;
    out.swap_preserves_lattice = hnf(swapped) == l.lattice;
    auto fixed = [&](int sign) {
        MatrixZ d(k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) d(i, j) = swapped(i, j) - sign * basis(i, j);
        const IntLattice coords = integer_kernel(transpose(d));
        if (coords.rank() == 0) return IntLattice(n);
        return hnf(multiply(coords.basis(), basis));
    };
    out.symmetric = fixed(1);
    out.antisymmetric = fixed(-1);
    const IntLattice both = hnf(stack(out.symmetric.basis(), out.antisymmetric.basis()));
    out.sum_saturation_rank = saturate(both).rank();
    return out;
}

WeightRespectReport weight_respect_check(const HomLattice& l, const MultilinearMap& phi) {
    require_bilinear(l);
    if (!l.contains(phi)) throw InputError("map is not in the Hom lattice");
    const Mhs& a = l.sources[0];
    const Mhs& b = l.sources[1];
    const Mhs& c = l.target;
    WeightRespectReport out;
    out.lands_in_w2 = true;
    out.kills_mixed = true;
    const MatrixQ a1 = a.weight(-1), a2 = a.weight(-2);
    const MatrixQ b1 = b.weight(-1), b2 = b.weight(-2);
    const MatrixQ c2 = c.weight(-2);
    for (std::size_t i = 0; i < a1.rows(); ++i)
        for (std::size_t j = 0; j < b1.rows(); ++j)
            if (!contains<Rational>(c2, eval_q(phi, a1.row(i), b1.row(j)))) out.lands_in_w2 = false;
    for (std::size_t i = 0; i < a2.rows(); ++i)
        for (std::size_t j = 0; j < b1.rows(); ++j)
            if (!all_zero(eval_q(phi, a2.row(i), b1.row(j)))) out.kills_mixed = false;
    for (std::size_t i = 0; i < a1.rows(); ++i)
        for (std::size_t j = 0; j < b2.rows(); ++j)
            if (!all_zero(eval_q(phi, a1.row(i), b2.row(j)))) out.kills_mixed = false;

    const auto [a_low, a_reps] = graded_representatives(a, -1);
    const auto [b_low, b_reps] = graded_representatives(b, -1);
    const auto [c_low, c_reps] = graded_representatives(c, -2);
    const MatrixQ c_basis = stack(c_low, c_reps);
    out.induced = MatrixQ(c_reps.rows(), a_reps.rows() * b_reps.rows());
    for (std::size_t i = 0; i < a_reps.rows(); ++i)
        for (std::size_t j = 0; j < b_reps.rows(); ++j) {
            const auto x = eval_q(phi, a_reps.row(i), b_reps.row(j));
            const auto coords = solve_left<Rational>(c_basis, x);
            if (!coords) continue;
            for (std::size_t t = 0; t < c_reps.rows(); ++t)
                out.induced(t, i * b_reps.rows() + j) = (*coords)[c_low.rows() + t];
        }
    return out;
}

ThmotimesReport thmotimes_rank_report(const std::vector<Mhs>& sources, const Mhs& target) {
    if (sources.size() < 2) throw InputError("decomposition needs at least two sources");
    std::vector<std::size_t> lattice_ranks;
    for (const auto& s : sources) {
        if (!is_one_motive_type(s)) throw InputError("decomposition sources must be 1-motives");
        const GrProfile g = gr_profile(s);
        lattice_ranks.push_back(g.count(0) ? g.at(0) : 0);
    }
    ThmotimesReport out;
    out.lhs_rank = hom_multilinear(sources, target).rank();
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = i + 1; j < sources.size(); ++j) {
            ThmotimesTerm t{i, j, 1, 0};
            for (std::size_t v = 0; v < sources.size(); ++v)
                if (v != i && v != j) t.copies *= lattice_ranks[v];
            t.rank = hom_multilinear({sources[i], sources[j]}, tensor_weight0(target, t.copies)).rank();
            out.rhs_rank += t.rank;
            out.terms.push_back(t);
        }
    return out;
}

}  // namespace biext
