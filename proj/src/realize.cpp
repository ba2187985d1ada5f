#include "biext/realize.hpp"

namespace biext {

namespace {

long residue(const Integer& x, long n) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(n));
    return r.get_si();
}

void require_modulus(long n) {
    if (n < 2) throw InputError("modulus must be at least 2");
}

std::vector<KScalar> basis_vector(std::size_t n, std::size_t i) {
    std::vector<KScalar> v(n);
    v[i] = KScalar(1);
    return v;
}

MatrixK negate(const MatrixK& m) {
    MatrixK out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
    return out;
}

}  // namespace

Integer FiniteRealization::size() const {
    Integer s;
    mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(modulus), rank);
    return s;
}

std::vector<long> FiniteRealization::reduce(std::span<const Integer> v) const {
    if (v.size() != rank) throw InputError("vector length does not match the realization");
    std::vector<long> out;
    for (const auto& x : v) out.push_back(residue(x, modulus));
    return out;
}

FiniteRealization reduce_mod_n(const Mhs& h, long n) {
    require_modulus(n);
    return {n, h.rank()};
}

std::vector<long> FiniteMap::apply(const std::vector<std::vector<long>>& args) const {
    if (args.size() != source_ranks.size()) throw InputError("wrong number of arguments");
    std::vector<long> tensor{1};
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k].size() != source_ranks[k]) throw InputError("argument length mismatch");
        std::vector<long> next;
        next.reserve(tensor.size() * args[k].size());
        for (long t : tensor)
            for (long x : args[k]) next.push_back(static_cast<long>((static_cast<__int128>(t) * x) % modulus));
        tensor = std::move(next);
    }
    std::vector<long> out(target_rank);
    for (std::size_t c = 0; c < target_rank; ++c) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < tensor.size(); ++j)
            acc = (acc + static_cast<__int128>(coefficients[c * tensor.size() + j]) * tensor[j]) % modulus;
        out[c] = static_cast<long>(acc);
    }
    return out;
}

FiniteMap reduce_map_mod_n(const HomLattice& l, const MultilinearMap& phi, long n) {
    require_modulus(n);
    if (!l.contains(phi)) throw InputError("map is not in the Hom lattice");
    FiniteMap f{n, phi.source_ranks, phi.target_rank, {}};
    for (const auto& x : phi.coefficients.data()) f.coefficients.push_back(residue(x, n));
    return f;
}

FiniteMap reduce_further(const FiniteMap& f, long n) {
    require_modulus(n);
    if (f.modulus % n != 0) throw InputError("modulus does not divide the current modulus");
    FiniteMap out = f;
    out.modulus = n;
    for (auto& x : out.coefficients) x %= n;
    return out;
}

bool commute_check(const MultilinearMap& phi, const FiniteMap& reduced) {
    const long n = reduced.modulus;
    if (phi.source_ranks != reduced.source_ranks || phi.target_rank != reduced.target_rank) return false;
    const std::size_t l = phi.source_ranks.size();

    auto integral_value = [&](const std::vector<IntVector>& args) {
        IntVector tensor{Integer(1)};
        for (const auto& a : args) {
            IntVector next;
            for (const auto& t : tensor)
                for (const auto& x : a) next.push_back(t * x);
            tensor = std::move(next);
        }
        IntVector out(phi.target_rank);
        for (std::size_t c = 0; c < phi.target_rank; ++c)
            for (std::size_t j = 0; j < tensor.size(); ++j) out[c] += phi.coefficients(c, j) * tensor[j];
        return out;
    };
    auto check = [&](const std::vector<IntVector>& args) {
        std::vector<std::vector<long>> reduced_args;
        for (const auto& a : args) {
            std::vector<long> r;
            for (const auto& x : a) r.push_back(residue(x, n));
            reduced_args.push_back(std::move(r));
        }
        const IntVector value = integral_value(args);
        std::vector<long> lhs;
        for (const auto& x : value) lhs.push_back(residue(x, n));
        return lhs == reduced.apply(reduced_args);
    };

    // All basis tensors e_{i1} (x) ... (x) e_{il}.
    std::vector<std::size_t> idx(l, 0);
    for (;;) {
        std::vector<IntVector> args;
        for (std::size_t k = 0; k < l; ++k) {
            IntVector e(phi.source_ranks[k]);
            if (phi.source_ranks[k] == 0) break;
            e[idx[k]] = 1;
            args.push_back(std::move(e));
        }
        if (args.size() == l && !check(args)) return false;
        std::size_t k = 0;
        while (k < l && (phi.source_ranks[k] == 0 || ++idx[k] == phi.source_ranks[k])) {
            idx[k] = 0;
            ++k;
        }
        if (k == l) break;
    }

    // Sample arguments with entries of both signs and beyond the modulus.
    for (long seed = 1; seed <= 4; ++seed) {
        std::vector<IntVector> args;
        for (std::size_t k = 0; k < l; ++k) {
            IntVector a;
            for (std::size_t i = 0; i < phi.source_ranks[k]; ++i)
                a.emplace_back(((seed * 7 + static_cast<long>(k) * 5 + static_cast<long>(i) * 3) % 23) - 11);
            args.push_back(std::move(a));
        }
        if (!check(args)) return false;
    }
    return true;
}

DeRhamSpace de_rham(const Mhs& h) {
    DeRhamSpace d;
    d.rank = h.rank();
    d.hodge = h.hodge_steps();
    return d;
}

MatrixK de_rham_map(const HomLattice& l, const MultilinearMap& phi) {
    if (!l.contains(phi)) throw InputError("map is not in the Hom lattice");
    const MatrixK k = phi.to_k();
    for (const auto& [p, step] : l.tensor.hodge_steps()) {
        const MatrixK image = step.rows() ? multiply(step, transpose(k)) : MatrixK(0, k.rows());
        if (!is_subspace(image, l.target.hodge(p))) throw CheckFailure("de Rham map does not respect F^" + std::to_string(p));
    }
    return k;
}

std::vector<KScalar> curvature_form(const MatrixK& gamma1, const MatrixK& gamma2, std::span<const KScalar> t1a,
                                    std::span<const KScalar> t2a, std::span<const KScalar> t1b,
                                    std::span<const KScalar> t2b) {
    auto out = evaluate(gamma1, t1a, t2b);
    const auto b = evaluate(gamma2, t1b, t2a);
    const auto c = evaluate(gamma1, t1b, t2a);
    const auto d = evaluate(gamma2, t1a, t2b);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + b[i] - c[i] - d[i];
    return out;
}

CurvatureReport curvature(const HomLattice& l, const BiextData& b) {
    if (auto bad = check_biext(l, b)) throw InputError("biextension data violates " + *bad);
    const std::size_t ra = l.sources[0].rank();
    const std::size_t rb = l.sources[1].rank();
    CurvatureReport r;
    r.gamma1 = negate(b.phi1);
    r.gamma2 = negate(b.phi2);
    r.upsilon = MatrixK(l.target.rank(), ra * rb);
    const std::vector<KScalar> zero_a(ra), zero_b(rb);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < rb; ++j) {
            const auto v = curvature_form(r.gamma1, r.gamma2, basis_vector(ra, i), zero_b, zero_a, basis_vector(rb, j));
            for (std::size_t c = 0; c < v.size(); ++c) r.upsilon(c, i * rb + j) = v[c];
        }

    r.identity_holds = true;
    for (std::size_t i = 0; i < r.upsilon.rows(); ++i)
        for (std::size_t j = 0; j < r.upsilon.cols(); ++j)
            if (!(r.upsilon(i, j) == -(b.phi1(i, j) - b.phi2(i, j)))) r.identity_holds = false;

    r.expansion_holds = true;
    for (std::size_t i = 0; i < ra && r.expansion_holds; ++i)
        for (std::size_t j = 0; j < rb && r.expansion_holds; ++j)
            for (std::size_t k = 0; k < ra && r.expansion_holds; ++k)
                for (std::size_t m = 0; m < rb; ++m) {
                    const auto g1 = basis_vector(ra, i), g2 = basis_vector(rb, j);
                    const auto h1 = basis_vector(ra, k), h2 = basis_vector(rb, m);
                    const auto lhs = curvature_form(r.gamma1, r.gamma2, g1, g2, h1, h2);
                    const auto u1 = evaluate(r.upsilon, g1, h2);
                    const auto u2 = evaluate(r.upsilon, h1, g2);
                    for (std::size_t c = 0; c < lhs.size(); ++c)
                        if (!(lhs[c] == u1[c] - u2[c])) {
                            r.expansion_holds = false;
                            break;
                        }
                }
    return r;
}

}  // namespace biext
