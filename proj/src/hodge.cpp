#include "biext/hodge.hpp"

#include "biext/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace biext {

namespace {

template <class T>
Matrix<T> zero_space(std::size_t dim) {
    return Matrix<T>(0, dim);
}

template <class T>
std::map<int, Matrix<T>> drop_repeats(const std::map<int, Matrix<T>>& steps, std::size_t rank, bool ascending) {
    std::map<int, Matrix<T>> out;
    Matrix<T> prev = zero_space<T>(rank);
    auto visit = [&](int key, const Matrix<T>& m) {
        if (m.cols() != rank && !(m.rows() == 0))
            throw InputError("filtration step at index " + std::to_string(key) + " has wrong width");
        Matrix<T> canon = m.rows() == 0 ? zero_space<T>(rank) : span_basis(m);
        if (canon == prev) return;
        out.emplace(key, canon);
        prev = std::move(canon);
    };
    if (ascending)
        for (const auto& [k, m] : steps) visit(k, m);
    else
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) visit(it->first, it->second);
    return out;
}

template <class T>
Matrix<T> kron_span(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(0, a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) out.append_row(kron(a.row(i), b.row(j)));
    return out;
}

template <class T>
Matrix<T> apply_right(const Matrix<T>& rows, const Matrix<T>& map) {
    if (rows.rows() == 0) return Matrix<T>(0, map.cols());
    return multiply(rows, map);
}

std::size_t dim_mod(const MatrixK& sub, const MatrixK& base) {
    return rank(stack(sub, base)) - base.rows();
}

std::string idx(const char* name, int v) { return std::string(name) + "=" + std::to_string(v); }

}  // namespace

GrProfile scale(const GrProfile& profile, std::size_t factor) {
    GrProfile out;
    if (factor == 0) return out;
    for (const auto& [w, r] : profile) out[w] = r * factor;
    return out;
}

std::string to_string(const GrProfile& profile) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto it = profile.rbegin(); it != profile.rend(); ++it) {
        if (!first) os << ", ";
        first = false;
        os << it->first << ":" << it->second;
    }
    os << "}";
    return os.str();
}

Mhs::Mhs(FieldContext field, std::size_t rank, const std::map<int, MatrixQ>& weight,
         const std::map<int, MatrixK>& hodge)
    : field_(field), rank_(rank) {
    weight_ = drop_repeats(weight, rank, true);
    hodge_ = drop_repeats(hodge, rank, false);
}

MatrixQ Mhs::weight(int w) const {
    auto it = weight_.upper_bound(w);
    if (it == weight_.begin()) return zero_space<Rational>(rank_);
    return std::prev(it)->second;
}

MatrixK Mhs::hodge(int p) const {
    auto it = hodge_.lower_bound(p);
    if (it == hodge_.end()) return zero_space<KScalar>(rank_);
    return it->second;
}

void require_same_field(const Mhs& a, const Mhs& b) {
    if (!(a.field() == b.field()))
        throw InputError("field context mismatch (d=" + std::to_string(a.field().d()) +
                         " vs d=" + std::to_string(b.field().d()) + ")");
}

ValidationReport validate_mhs(const Mhs& h, bool one_motive) {
    ValidationReport report;
    auto fail = [&](std::string inv, std::string detail) { report.issues.push_back({std::move(inv), std::move(detail)}); };
    const std::size_t r = h.rank();

    const MatrixQ* prev_w = nullptr;
    int prev_key = 0;
    for (const auto& [w, step] : h.weight_steps()) {
        if (prev_w && !is_subspace(*prev_w, step)) fail("weight-monotone", idx("w", prev_key) + "," + idx("w", w));
        prev_w = &step;
        prev_key = w;
    }
    if (r > 0 && (!h.has_weights() || h.weight(h.weight_max()).rows() != r))
        fail("weight-exhaustive", h.has_weights() ? idx("w", h.weight_max()) : "no weight steps");

    const MatrixK* prev_f = nullptr;
    for (auto it = h.hodge_steps().rbegin(); it != h.hodge_steps().rend(); ++it) {
        if (prev_f && !is_subspace(*prev_f, it->second))
            fail("hodge-monotone", idx("p", it->first) + "," + idx("p", prev_key));
        prev_f = &it->second;
        prev_key = it->first;
    }
    if (r > 0 && (!h.has_hodge() || h.hodge(h.hodge_min()).rows() != r))
        fail("hodge-exhaustive", h.has_hodge() ? idx("p", h.hodge_min()) : "no hodge steps");

    if (r > 0 && h.has_hodge() && h.has_weights()) {
        const int pmin = h.hodge_min();
        const int pmax = h.hodge_max();
        for (const auto& [w, step] : h.weight_steps()) {
            const MatrixK wk = to_k(step);
            const MatrixK wk1 = to_k(h.weight(w - 1));
            const std::size_t gr = wk.rows() - wk1.rows();
            if (gr == 0) continue;
            const int lo = std::min(pmin, w - pmax);
            const int hi = std::max(pmax + 1, w + 1 - pmin);
            for (int p = lo; p <= hi; ++p) {
                const MatrixK a = intersect(h.hodge(p), wk, r);
                const MatrixK c = intersect(conj(h.hodge(w + 1 - p)), wk, r);
                const std::size_t da = dim_mod(a, wk1);
                const std::size_t dc = dim_mod(c, wk1);
                const std::size_t dsum = dim_mod(stack(a, c), wk1);
                if (da + dc != gr || dsum != gr) {
                    fail("hodge-symmetry", idx("w", w) + "," + idx("p", p));
                    break;
                }
            }
        }
    }

    if (one_motive && r > 0) {
        for (const auto& [w, n] : gr_profile(h))
            if (w != 0 && w != -1 && w != -2) fail("one-motive-weights", idx("w", w));
        const GrProfile prof = gr_profile(h);
        auto gr = [&](int w) -> std::size_t {
            auto it = prof.find(w);
            return it == prof.end() ? 0 : it->second;
        };
        const MatrixK f0 = h.hodge(0);
        if (rank(stack(f0, to_k(h.weight(-1)))) != r) fail("one-motive-f0-surjects", idx("p", 0));
        if (intersect(f0, to_k(h.weight(-2)), r).rows() != 0) fail("one-motive-f0-meets-torus", idx("w", -2));
        if (gr(-1) % 2 != 0 || f0.rows() != gr(0) + gr(-1) / 2) fail("one-motive-f0-dimension", idx("p", 0));
        if (h.hodge(1).rows() != 0) fail("one-motive-f1", idx("p", 1));
        if (h.hodge(-1).rows() != r) fail("one-motive-fminus1", idx("p", -1));
    }
    return report;
}

bool is_one_motive_type(const Mhs& h) { return validate_mhs(h, true).ok(); }

Mhs tate(int n, const FieldContext& field) {
    if (n < 0) throw InputError("tate twist must be non-negative");
    return Mhs(field, 1, {{-2 * n, MatrixQ::identity(1)}}, {{-n, MatrixK::identity(1)}});
}

Mhs tensor_mhs(const Mhs& a, const Mhs& b) {
    require_same_field(a, b);
    const std::size_t r = a.rank() * b.rank();
    if (r == 0 || !a.has_weights() || !b.has_weights() || !a.has_hodge() || !b.has_hodge())
        return Mhs(a.field(), r, {}, {});
    std::map<int, MatrixQ> weight;
    for (int n = a.weight_min() + b.weight_min(); n <= a.weight_max() + b.weight_max(); ++n) {
        MatrixQ acc(0, r);
        for (const auto& [i, step] : a.weight_steps()) {
            const MatrixQ other = b.weight(n - i);
            if (other.rows() == 0) continue;
            acc = stack(acc, kron_span(step, other));
        }
        weight.emplace(n, acc);
    }
    std::map<int, MatrixK> hodge;
    for (int p = a.hodge_min() + b.hodge_min(); p <= a.hodge_max() + b.hodge_max(); ++p) {
        MatrixK acc(0, r);
        for (const auto& [q, step] : a.hodge_steps()) {
            const MatrixK other = b.hodge(p - q);
            if (other.rows() == 0) continue;
            acc = stack(acc, kron_span(step, other));
        }
        hodge.emplace(p, acc);
    }
    return Mhs(a.field(), r, weight, hodge);
}

Mhs tensor_all(std::span<const Mhs> factors, const FieldContext& field) {
    Mhs out = tate(0, field);
    for (const auto& f : factors) out = tensor_mhs(out, f);
    return out;
}

std::vector<MapCondition<Rational>> weight_condition_pairs(const Mhs& a, const Mhs& b, int shift) {
    std::vector<MapCondition<Rational>> out;
    for (const auto& [i, step] : a.weight_steps()) {
        const MatrixQ target = b.weight(i + shift);
        if (target.rows() == b.rank()) continue;
        const MatrixQ ann = annihilator(target, b.rank());
        for (std::size_t s = 0; s < step.rows(); ++s)
            for (std::size_t c = 0; c < ann.rows(); ++c) out.push_back({step.row_vector(s), ann.row_vector(c)});
    }
    return out;
}

std::vector<MapCondition<KScalar>> hodge_condition_pairs(const Mhs& a, const Mhs& b, int shift) {
    std::vector<MapCondition<KScalar>> out;
    for (const auto& [q, step] : a.hodge_steps()) {
        const MatrixK target = b.hodge(q + shift);
        if (target.rows() == b.rank()) continue;
        const MatrixK ann = annihilator(target, b.rank());
        for (std::size_t s = 0; s < step.rows(); ++s)
            for (std::size_t c = 0; c < ann.rows(); ++c) out.push_back({step.row_vector(s), ann.row_vector(c)});
    }
    return out;
}

MatrixQ weight_conditions(const Mhs& a, const Mhs& b, int shift) {
    MatrixQ out(0, a.rank() * b.rank());
    for (const auto& c : weight_condition_pairs(a, b, shift))
        out.append_row(kron<Rational>(c.target, c.source));
    return out;
}

MatrixK hodge_conditions(const Mhs& a, const Mhs& b, int shift) {
    MatrixK out(0, a.rank() * b.rank());
    for (const auto& c : hodge_condition_pairs(a, b, shift))
        out.append_row(kron<KScalar>(c.target, c.source));
    return out;
}

Mhs internal_hom(const Mhs& a, const Mhs& b) {
    require_same_field(a, b);
    const std::size_t r = a.rank() * b.rank();
    if (r == 0 || !a.has_weights() || !b.has_weights() || !a.has_hodge() || !b.has_hodge())
        return Mhs(a.field(), r, {}, {});
    std::map<int, MatrixQ> weight;
    for (int n = b.weight_min() - a.weight_max() - 1; n <= b.weight_max() - a.weight_min(); ++n)
        weight.emplace(n, kernel(weight_conditions(a, b, n)));
    std::map<int, MatrixK> hodge;
    for (int p = b.hodge_min() - a.hodge_max() - 1; p <= b.hodge_max() - a.hodge_min() + 1; ++p)
        hodge.emplace(p, kernel(hodge_conditions(a, b, p)));
    return Mhs(a.field(), r, weight, hodge);
}

Mhs quotient_by_weight(const Mhs& h, int k) {
    const MatrixQ sub = h.weight(-k);
    if (sub.rows() == 0) return h;
    const std::size_t r = h.rank();
    MatrixZ ints(0, r);
    for (std::size_t i = 0; i < sub.rows(); ++i) ints.append_row(primitive_integer_row(sub.row(i)));
    const SmithForm snf = smith(ints);
    const std::size_t s = sub.rows();
    MatrixZ proj(r, r - s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = s; j < r; ++j) proj(i, j - s) = snf.right(i, j);
    const MatrixQ pq = to_q(proj);
    const MatrixK pk = to_k(proj);
    std::map<int, MatrixQ> weight;
    for (const auto& [w, step] : h.weight_steps()) weight.emplace(w, apply_right(step, pq));
    std::map<int, MatrixK> hodge;
    for (const auto& [p, step] : h.hodge_steps()) hodge.emplace(p, apply_right(step, pk));
    return Mhs(h.field(), r - s, weight, hodge);
}

GrProfile gr_profile(const Mhs& h) {
    GrProfile out;
    std::size_t prev = 0;
    for (const auto& [w, step] : h.weight_steps()) {
        if (step.rows() > prev) out[w] = step.rows() - prev;
        prev = step.rows();
    }
    return out;
}

Mhs direct_sum(std::span<const Mhs> parts, const FieldContext& field) {
    std::size_t r = 0;
    std::set<int> wkeys;
    std::set<int> pkeys;
    for (const auto& p : parts) {
        if (!(p.field() == field)) throw InputError("field context mismatch in direct sum");
        r += p.rank();
        for (const auto& [w, m] : p.weight_steps()) wkeys.insert(w);
        for (const auto& [q, m] : p.hodge_steps()) pkeys.insert(q);
    }
    std::map<int, MatrixQ> weight;
    for (int w : wkeys) {
        MatrixQ acc(0, r);
        std::size_t off = 0;
        for (const auto& p : parts) {
            const MatrixQ step = p.weight(w);
            for (std::size_t i = 0; i < step.rows(); ++i) acc.append_row(embed(step.row(i), off, r));
            off += p.rank();
        }
        weight.emplace(w, acc);
    }
    std::map<int, MatrixK> hodge;
    for (int q : pkeys) {
        MatrixK acc(0, r);
        std::size_t off = 0;
        for (const auto& p : parts) {
            const MatrixK step = p.hodge(q);
            for (std::size_t i = 0; i < step.rows(); ++i) acc.append_row(embed(step.row(i), off, r));
            off += p.rank();
        }
        hodge.emplace(q, acc);
    }
    return Mhs(field, r, weight, hodge);
}

Mhs permute(const Mhs& h, std::span<const std::size_t> perm) {
    if (perm.size() != h.rank()) throw InputError("permutation length mismatch");
    auto apply = [&](const auto& m) {
        std::decay_t<decltype(m)> out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, perm[j]) = m(i, j);
        return out;
    };
    std::map<int, MatrixQ> weight;
    for (const auto& [w, m] : h.weight_steps()) weight.emplace(w, apply(m));
    std::map<int, MatrixK> hodge;
    for (const auto& [p, m] : h.hodge_steps()) hodge.emplace(p, apply(m));
    return Mhs(h.field(), h.rank(), weight, hodge);
}

std::vector<std::size_t> tensor_swap_permutation(std::size_t rank_a, std::size_t rank_b) {
    std::vector<std::size_t> perm(rank_a * rank_b);
    for (std::size_t a = 0; a < rank_a; ++a)
        for (std::size_t b = 0; b < rank_b; ++b) perm[a * rank_b + b] = b * rank_a + a;
    return perm;
}

}  // namespace biext
