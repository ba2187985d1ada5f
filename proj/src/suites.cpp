#include "biext/suites.hpp"

#include "biext/oracle.hpp"
#include "biext/realize.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace biext {

namespace {

constexpr std::size_t kMaxFailures = 8;
constexpr long kModuli[] = {2, 3, 4, 5, 12};
const char* const kCmModuli[] = {"w", "2*w", "1+w", "1/2+w", "-1+2*w"};

class Recorder {
  public:
    explicit Recorder(SuiteOutcome& out) : out_(out) {}
    void check(bool ok, const std::string& what) {
        ++out_.checks;
        if (!ok && out_.failures.size() < kMaxFailures) out_.failures.push_back(what);
        if (!ok && out_.failures.size() == kMaxFailures && what != out_.failures.back())
            out_.failures.back() = "... and more";
    }
    void instance() { ++out_.instances; }

  private:
    SuiteOutcome& out_;
};

KScalar small_entry(DeterministicRng& rng, const FieldContext& k) {
    switch (rng.range(0, 3)) {
        case 0: return KScalar(0);
        case 1: return KScalar(rng.rational(2));
        default: return rng.scalar(k, 2);
    }
}

/// Presentation with moduli from a short list so that isogenies and CM occur.
Mhs presentation(DeterministicRng& rng, const FieldContext& k, std::size_t r, std::size_t g, std::size_t t) {
    PeriodPresentation p;
    p.lattice_rank = r;
    p.torus_rank = t;
    for (std::size_t j = 0; j < g; ++j) p.elliptic_moduli.push_back(k.parse(kCmModuli[rng.range(0, 4)]));
    p.abelian_lifts = MatrixK(g, r);
    p.torus_lifts = MatrixK(t, r);
    p.extension_periods = MatrixK(t, 2 * g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < r; ++j) p.abelian_lifts(i, j) = small_entry(rng, k);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < r; ++j) p.torus_lifts(i, j) = small_entry(rng, k);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < 2 * g; ++j) p.extension_periods(i, j) = small_entry(rng, k);
    return build_from_periods(p, k);
}

Mhs random_one_motive(DeterministicRng& rng, const FieldContext& k, std::size_t max_rank) {
    for (;;) {
        const std::size_t r = rng.range(0, 1);
        const std::size_t g = rng.range(0, 1);
        const std::size_t t = rng.range(0, 1);
        const std::size_t n = r + 2 * g + t;
        if (n == 0 || n > max_rank) continue;
        return presentation(rng, k, r, g, t);
    }
}

std::size_t gr(const GrProfile& p, int w) {
    const auto it = p.find(w);
    return it == p.end() ? 0 : it->second;
}

const Mhs& pick(DeterministicRng& rng, const std::vector<const Mhs*>& from) {
    return *from[static_cast<std::size_t>(rng.range(0, static_cast<long>(from.size()) - 1))];
}

std::vector<const Mhs*> pool_up_to(const SuiteContext& ctx, std::size_t max_rank) {
    std::vector<const Mhs*> out;
    for (const auto& [name, h] : ctx.motives)
        if (h.rank() > 0 && h.rank() <= max_rank) out.push_back(&h);
    return out;
}

struct Named {
    std::string name;
    HomLattice lattice;
};

/// Bilinear instances: fixed CM and Kummer cases plus seeded draws from the pool.
std::vector<Named> bilinear_instances(const SuiteContext& ctx) {
    const FieldContext& k = ctx.field;
    const Mhs e = elliptic(k.omega(), k);
    const Mhs z1 = tate(1, k);
    std::vector<Named> out;
    out.push_back({"E(w) x E(w) -> Z(1)", hom_multilinear({e, e}, z1)});
    out.push_back({"K(1/2) x K(3) -> K(1/3)",
                   hom_multilinear({kummer(k.parse("1/2"), k), kummer(k.parse("3"), k)}, kummer(k.parse("1/3"), k))});
    out.push_back({"Z(0)^2 x E(w) -> E(w)", hom_multilinear({lattice_motive(2, k), e}, e)});
    out.push_back({"Z(0) x K(2) -> K(2)", hom_multilinear({tate(0, k), kummer(k.parse("2"), k)}, kummer(k.parse("2"), k))});
    out.push_back({"K(1/2) x K(1/2) -> Z(1)", hom_multilinear({kummer(k.parse("1/2"), k), kummer(k.parse("1/2"), k)}, z1)});
    out.push_back({"E(w) x E(w)* -> Z(1)", hom_multilinear({e, cartier_dual(e)}, z1)});
    DeterministicRng rng(ctx.seed * 1000003 + 11);
    const auto small = pool_up_to(ctx, 3);
    for (int i = 0; i < 4 && !small.empty(); ++i) {
        const Mhs& a = pick(rng, small);
        const Mhs& b = pick(rng, small);
        const Mhs& c = pick(rng, small);
        out.push_back({"pool draw " + std::to_string(i), hom_multilinear({a, b}, c)});
    }
    return out;
}

std::string where(const std::string& instance, std::size_t basis_index) {
    return instance + ", basis element " + std::to_string(basis_index);
}

// Criterion-level suites.

void suite_oracle(const SuiteContext& ctx, Recorder& rec) {
    const FieldContext& k = ctx.field;
    const Mhs e = elliptic(k.omega(), k);
    const Mhs e2 = elliptic(k.parse("2*w"), k);
    const Mhs kh = kummer(k.parse("1/2"), k);
    const Mhs k3 = kummer(k.parse("3"), k);
    const Mhs z0 = tate(0, k);
    const Mhs z1 = tate(1, k);
    std::vector<Named> cases;
    auto lin = [&](std::string n, const Mhs& a, const Mhs& b) { cases.push_back({std::move(n), hom_lattice(a, b)}); };
    lin("E(w) -> E(w)", e, e);
    lin("E(w) -> E(2w)", e, e2);
    lin("E(2w) -> E(w)", e2, e);
    lin("E(2w) -> E(2w)", e2, e2);
    lin("K(1/2) -> Z(1)", kh, z1);
    lin("K(1/2) -> K(1/2)", kh, kh);
    lin("K(1/2) -> K(3)", kh, k3);
    lin("Z(1) -> K(1/2)", z1, kh);
    lin("Z(0) -> Z(1)", z0, z1);
    lin("Z(0) -> K(3)", z0, k3);
    lin("E(w) -> E(w)*", e, cartier_dual(e));
    lin("Z(0)^3 -> Z(0)^3", lattice_motive(3, k), lattice_motive(3, k));
    lin("Z(1)^3 -> Z(1)^3", torus_motive(3, k), torus_motive(3, k));
    cases.push_back({"E(w) x E(w) -> Z(1)", hom_multilinear({e, e}, z1)});
    cases.push_back({"Z(0) x E(w) -> E(w)", hom_multilinear({z0, e}, e)});
    cases.push_back({"Z(0) x K(1/2) -> K(1/2)", hom_multilinear({z0, kh}, kh)});
    cases.push_back({"K(1/2) x K(3) -> K(1/3)", hom_multilinear({kh, k3}, kummer(k.parse("1/3"), k))});
    cases.push_back({"E(w) x E(2w) -> Z(1)", hom_multilinear({e, e2}, z1)});

    DeterministicRng rng(ctx.seed * 7919 + 3);
    const auto pool = pool_up_to(ctx, 3);
    for (std::uint64_t s = 0; cases.size() < 26; ++s) {
        if (s % 2 == 0 && !pool.empty()) {
            const Mhs& a = pick(rng, pool);
            const Mhs& b = pick(rng, pool);
            if (a.rank() * b.rank() <= kOracleMaxUnknowns) cases.push_back({"pool pair " + std::to_string(s), hom_lattice(a, b)});
            continue;
        }
        auto profile = [&](std::uint64_t seed) {
            return InstanceProfile{static_cast<std::size_t>(rng.range(0, 2)), static_cast<std::size_t>(rng.range(0, 1)),
                                   static_cast<std::size_t>(rng.range(0, 2)), 2, seed, true};
        };
        const Mhs a = build(random_motive(profile(ctx.seed * 31 + s), k), k);
        const Mhs b = build(random_motive(profile(ctx.seed * 37 + s), k), k);
        if (a.rank() == 0 || b.rank() == 0) continue;
        cases.push_back({"random pair " + std::to_string(s), hom_lattice(a, b)});
    }
    for (const auto& c : cases) {
        rec.instance();
        const OracleReport r = compare_with_oracle(c.lattice, 2);
        rec.check(r.equal(), c.name + ": oracle " + std::to_string(r.oracle_count) + " maps, lattice box " +
                                 std::to_string(r.lattice_count));
    }
    rec.check(cases.size() >= 20, "fewer than 20 oracle instances");
}

void suite_cm(const SuiteContext&, Recorder& rec) {
    const FieldContext k(1);
    const HomLattice l = hom_lattice(elliptic(k.omega(), k), elliptic(k.omega(), k));
    rec.instance();
    rec.check(l.rank() == 2, "rank of End(E(w)) is " + std::to_string(l.rank()));
    MatrixZ ij(2, 4);
    ij(0, 0) = 1;
    ij(0, 3) = 1;
    ij(1, 1) = 1;
    ij(1, 2) = -1;
    rec.check(l.lattice == hnf(ij), "End(E(w)) differs from span(I, J)");
}

void suite_pairing(const SuiteContext& ctx, Recorder& rec) {
    const FieldContext k(1);
    const Mhs e = elliptic(k.omega(), k);
    for (const auto& [name, h] : {std::pair<std::string, Mhs>{"E(w)", e}, {"K(1/2)", kummer(k.parse("1/2"), k)}}) {
        rec.instance();
        const WeilPairing p = weil_pairing(h);
        rec.check(p.in_lattice, name + ": pairing is not a morphism");
        rec.check(p.unimodular, name + ": pairing is not unimodular");
    }
    const MultilinearMap j = MultilinearMap::from_flat({2, 2}, 1, IntVector{0, 1, -1, 0});
    const MultilinearMap s = curry(j);
    rec.check(hom_lattice(e, cartier_dual(e)).contains(s), "J-induced map is not a morphism E -> E*");
    const MultilinearMap pulled = pullback_pairing(s);
    rec.check(!(pulled == MultilinearMap::zero({2, 2}, 1)), "pulled back pairing vanishes");
    rec.check(swap_factors(pulled) == Integer(-1) * pulled, "pulled back pairing is not antisymmetric");
    MatrixQ gram(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) gram(a, b) = Rational(pulled.coefficients(0, a * 2 + b));
    rec.check(rank(gram) == 2, "pulled back pairing is degenerate");

    for (const auto& [name, h] : ctx.motives) {
        rec.instance();
        const WeilPairing p = weil_pairing(h);
        rec.check(p.in_lattice && p.unimodular, name + ": Weil pairing is not a unimodular morphism");
    }
    DeterministicRng rng(ctx.seed * 17 + 5);
    const auto pool = pool_up_to(ctx, 3);
    for (int i = 0; i < 6 && !pool.empty(); ++i) {
        const Mhs& a = pick(rng, pool);
        const Mhs& b = pick(rng, pool);
        rec.instance();
        const auto basis = hom_lattice(a, b).basis();
        for (std::size_t n = 0; n < basis.size(); ++n)
            rec.check(adjoint_check(a, b, basis[n]).ok(), where("adjoint pair " + std::to_string(i), n));
    }
}

void suite_adjunction(const SuiteContext& ctx, Recorder& rec) {
    DeterministicRng rng(ctx.seed * 101 + 1);
    const FieldContext& k = ctx.field;
    for (int i = 0; i < 10; ++i) {
        const Mhs a = random_one_motive(rng, k, 3);
        const Mhs b = random_one_motive(rng, k, 2);
        const Mhs c = random_one_motive(rng, k, 2);
        rec.instance();
        const AdjunctionReport r = curry_adjunction(a, b, c);
        const std::string n = "triple " + std::to_string(i);
        rec.check(r.bilinear_rank == r.curried_rank, n + ": ranks differ");
        rec.check(r.images_span, n + ": curried lattice is not all of Hom(A, Hom(B, C))");
        rec.check(r.round_trip, n + ": uncurry does not invert curry");
        for (const Mhs* h : {&a, &b, &c})
            rec.check(hom_multilinear({tate(0, k), *h}, *h).rank() == hom_lattice(*h, *h).rank(),
                      n + ": unit law rank mismatch");
    }
}

void suite_modn(const SuiteContext& ctx, Recorder& rec) {
    std::vector<Named> cases = bilinear_instances(ctx);
    const FieldContext& k = ctx.field;
    cases.push_back({"E(w) -> E(w)", hom_lattice(elliptic(k.omega(), k), elliptic(k.omega(), k))});
    cases.push_back({"K(1/2) -> K(1/2)", hom_lattice(kummer(k.parse("1/2"), k), kummer(k.parse("1/2"), k))});
    for (const auto& c : cases) {
        rec.instance();
        const auto basis = c.lattice.basis();
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (long n : kModuli) {
                const FiniteMap f = reduce_map_mod_n(c.lattice, basis[i], n);
                rec.check(commute_check(basis[i], f), where(c.name, i) + ": reduction mod " + std::to_string(n));
                for (long m : {2L, 3L})
                    rec.check(reduce_further(reduce_map_mod_n(c.lattice, basis[i], n * m), n) == f,
                              where(c.name, i) + ": mod " + std::to_string(n * m) + " -> mod " + std::to_string(n));
            }
    }
}

void suite_curvature(const SuiteContext& ctx, Recorder& rec) {
    DeterministicRng rng(ctx.seed * 13 + 2);
    for (const auto& c : bilinear_instances(ctx)) {
        rec.instance();
        const auto basis = c.lattice.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const MatrixK dr = de_rham_map(c.lattice, basis[i]);
            const CurvatureReport r = curvature(c.lattice, biext_from_map(c.lattice, basis[i]));
            bool minus = r.upsilon.rows() == dr.rows() && r.upsilon.cols() == dr.cols();
            for (std::size_t a = 0; minus && a < dr.rows(); ++a)
                for (std::size_t b = 0; b < dr.cols(); ++b) minus = minus && r.upsilon(a, b) == -dr(a, b);
            rec.check(r.identity_holds && minus, where(c.name, i) + ": curvature is not minus Phi_K");
            rec.check(r.expansion_holds, where(c.name, i) + ": curvature expansion fails");
            MatrixK phi1(dr.rows(), dr.cols());
            for (std::size_t a = 0; a < dr.rows(); ++a)
                for (std::size_t b = 0; b < dr.cols(); ++b) phi1(a, b) = rng.scalar(ctx.field, 3);
            const CurvatureReport alt = curvature(c.lattice, biext_from_map(c.lattice, basis[i], phi1));
            rec.check(alt.upsilon == r.upsilon && alt.identity_holds, where(c.name, i) + ": curvature depends on the split");
        }
    }
}

void suite_weight(const SuiteContext& ctx, Recorder& rec) {
    for (const auto& c : bilinear_instances(ctx)) {
        rec.instance();
        const auto basis = c.lattice.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const WeightRespectReport r = weight_respect_check(c.lattice, basis[i]);
            rec.check(r.lands_in_w2, where(c.name, i) + ": W-1 x W-1 not mapped into W-2");
            rec.check(r.kills_mixed, where(c.name, i) + ": W-2 x W-1 + W-1 x W-2 not killed");
        }
    }
}

void suite_thmotimes(const SuiteContext& ctx, Recorder& rec) {
    const FieldContext& k = ctx.field;
    const Mhs e = elliptic(k.omega(), k);
    const ThmotimesReport fixed = thmotimes_rank_report({lattice_motive(1, k), e, e}, tate(1, k));
    rec.instance();
    rec.check(fixed.lhs_rank == 2 && fixed.rhs_rank == 2,
              "[Z(0), E(w), E(w)] -> Z(1): lhs " + std::to_string(fixed.lhs_rank) + ", rhs " +
                  std::to_string(fixed.rhs_rank));
    // One source carries the lattice part, the other two an elliptic part;
    // torus parts are drawn with at least one present among the sources.
    DeterministicRng rng(ctx.seed * 211 + 9);
    for (int i = 0; i < 5; ++i) {
        const std::size_t t1 = rng.range(0, 1);
        const std::size_t t2 = rng.range(0, 1);
        const std::size_t t3 = t1 + t2 > 0 ? rng.range(0, 1) : 1;
        const std::vector<Mhs> sources{presentation(rng, k, 1, rng.range(0, 1), t1), presentation(rng, k, 0, 1, t2),
                                       presentation(rng, k, 0, 1, t3)};
        const Mhs target = presentation(rng, k, rng.range(0, 1), rng.range(0, 1), 1);
        rec.instance();
        const ThmotimesReport r = thmotimes_rank_report(sources, target);
        rec.check(r.lhs_rank == r.rhs_rank, "random instance " + std::to_string(i) + ": lhs " +
                                                std::to_string(r.lhs_rank) + ", rhs " + std::to_string(r.rhs_rank));
        rec.check(r.lhs_rank > 0, "random instance " + std::to_string(i) + " has no trilinear maps");
    }
}

void suite_otimes(const SuiteContext& ctx, Recorder& rec) {
    const FieldContext& k = ctx.field;
    DeterministicRng rng(ctx.seed * 307 + 4);
    for (int i = 0; i < 3; ++i) {
        std::vector<Mhs> triple;
        for (int j = 0; j < 3; ++j) triple.push_back(kummer(rng.scalar(k, 3), k));
        rec.instance();
        const GrProfile s = gr_profile(sum_formula_motive(triple, 3, k));
        const GrProfile q = gr_profile(quotient_by_weight(tensor_all(triple, k), 3));
        rec.check(gr(q, 0) > 0 && gr(s, 0) == 3 * gr(q, 0),
                  "Kummer triple " + std::to_string(i) + ": Gr0 " + std::to_string(gr(s, 0)) + " vs 3 x " +
                      std::to_string(gr(q, 0)));
    }
    for (int i = 0; i < 3; ++i) {
        std::vector<Mhs> triple;
        const int elliptic_slot = static_cast<int>(rng.range(0, 2));
        for (int j = 0; j < 3; ++j)
            triple.push_back(presentation(rng, k, 1, j == elliptic_slot ? 1 : rng.range(0, 1), rng.range(0, 1)));
        rec.instance();
        const GrProfile s = gr_profile(sum_formula_motive(triple, 3, k));
        const GrProfile q = gr_profile(quotient_by_weight(tensor_all(triple, k), 3));
        rec.check(gr(q, -1) > 0 && gr(s, -1) == 2 * gr(q, -1),
                  "elliptic triple " + std::to_string(i) + ": Gr-1 " + std::to_string(gr(s, -1)) + " vs 2 x " +
                      std::to_string(gr(q, -1)));
        rec.check(gr(s, 0) == 3 * gr(q, 0), "elliptic triple " + std::to_string(i) + ": Gr0 multiplicity");
    }
}

void suite_copies(const SuiteContext& ctx, Recorder& rec) {
    for (const auto& [name, h] : ctx.motives) {
        rec.instance();
        for (std::size_t z : {0u, 1u, 3u})
            rec.check(gr_profile(tensor_weight0(h, z)) == scale(gr_profile(h), z),
                      name + ": profile of " + std::to_string(z) + " copies");
    }
}

void suite_solver(const SuiteContext& ctx, Recorder& rec) {
    const auto pool = pool_up_to(ctx, 4);
    for (const Mhs* a : pool)
        for (const Mhs* b : pool) {
            if (a->rank() * b->rank() > 16) continue;
            const HomLattice l = hom_lattice(*a, *b);
            rec.instance();
            rec.check(l.lattice.is_saturated(), "Hom lattice is not saturated");
            for (const auto& f : l.basis()) rec.check(respects_filtrations(l.tensor, l.target, f), "basis map breaks W or F");
        }
    for (const auto& c : bilinear_instances(ctx)) {
        rec.instance();
        const HomLattice swapped = hom_multilinear({c.lattice.sources[1], c.lattice.sources[0]}, c.lattice.target);
        rec.check(swapped.rank() == c.lattice.rank(), c.name + ": rank depends on the order of the factors");
        for (const auto& f : c.lattice.basis())
            rec.check(respects_filtrations(c.lattice.tensor, c.lattice.target, f), c.name + ": basis map breaks W or F");
    }
}

void suite_hodge(const SuiteContext& ctx, Recorder& rec) {
    const FieldContext& k = ctx.field;
    const auto pool = pool_up_to(ctx, 4);
    for (const auto& [name, h] : ctx.motives) {
        rec.instance();
        rec.check(validate_mhs(h, true).ok(), name + ": not a valid 1-motive structure");
        rec.check(tensor_mhs(tate(0, k), h) == h, name + ": Z(0) is not a left unit");
        rec.check(internal_hom(tate(0, k), h) == h, name + ": Hom(Z(0), -) is not the identity");
    }
    DeterministicRng rng(ctx.seed * 401 + 6);
    for (int i = 0; i < 8 && !pool.empty(); ++i) {
        const Mhs& a = pick(rng, pool);
        const Mhs& b = pick(rng, pool);
        rec.instance();
        const Mhs t = tensor_mhs(a, b);
        const std::string n = "pair " + std::to_string(i);
        rec.check(validate_mhs(t).ok(), n + ": tensor product fails validation");
        rec.check(validate_mhs(internal_hom(a, b)).ok(), n + ": internal hom fails validation");
        rec.check(validate_mhs(direct_sum(std::vector<Mhs>{a, b}, k)).ok(), n + ": direct sum fails validation");
        for (int q = 1; q <= 4; ++q)
            rec.check(validate_mhs(quotient_by_weight(t, q)).ok(), n + ": quotient by W-" + std::to_string(q));
        rec.check(gr_profile(t) == gr_profile(tensor_mhs(b, a)), n + ": tensor profile depends on the order");
    }
}

void suite_dual(const SuiteContext& ctx, Recorder& rec) {
    for (const auto& [name, h] : ctx.motives) {
        rec.instance();
        const Mhs d = cartier_dual(h);
        rec.check(validate_mhs(d, true).ok(), name + ": dual is not of 1-motive type");
        rec.check(cartier_dual(d) == h, name + ": double dual differs");
        const GrProfile p = gr_profile(h);
        const GrProfile q = gr_profile(d);
        rec.check(gr(q, 0) == gr(p, -2) && gr(q, -2) == gr(p, 0) && gr(q, -1) == gr(p, -1),
                  name + ": dual profile is not the weight reflection");
    }
}

using SuiteFn = void (*)(const SuiteContext&, Recorder&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r = {
        {"solver", suite_solver},       {"oracle", suite_oracle},   {"cm", suite_cm},
        {"pairing", suite_pairing},     {"adjunction", suite_adjunction}, {"modn", suite_modn},
        {"curvature", suite_curvature}, {"weight", suite_weight},   {"thmotimes", suite_thmotimes},
        {"otimes", suite_otimes},       {"copies", suite_copies},   {"hodge", suite_hodge},
        {"dual", suite_dual},
    };
    return r;
}

std::vector<std::pair<std::string, Mhs>> builtin_pool(const FieldContext& k, std::uint64_t seed) {
    std::vector<std::pair<std::string, Mhs>> pool = {
        {"E(w)", elliptic(k.omega(), k)},
        {"E(2w)", elliptic(k.parse("2*w"), k)},
        {"E(1/2+w)", elliptic(k.parse("1/2+w"), k)},
        {"K(1/2)", kummer(k.parse("1/2"), k)},
        {"K(3)", kummer(k.parse("3"), k)},
        {"K(w)", kummer(k.omega(), k)},
        {"K(0)", kummer(KScalar(0), k)},
        {"Z(0)", tate(0, k)},
        {"Z(1)", tate(1, k)},
        {"Z(0)^2", lattice_motive(2, k)},
        {"Z(1)^2", torus_motive(2, k)},
    };
    DeterministicRng rng(seed * 6151 + 8);
    for (int i = 0; i < 4; ++i) pool.emplace_back("random " + std::to_string(i), random_one_motive(rng, k, 4));
    for (int i = 0; i < 2; ++i)
        pool.emplace_back("generic " + std::to_string(i),
                          build(random_motive({1, 1, 1, 2, seed * 97 + static_cast<std::uint64_t>(i), false}, k), k));
    return pool;
}

}  // namespace

SuiteContext builtin_context(std::uint64_t seed, long d) {
    SuiteContext ctx{FieldContext(d), {}, seed};
    ctx.motives = builtin_pool(ctx.field, seed);
    return ctx;
}

SuiteContext file_context(const MotiveFile& file, std::uint64_t seed) {
    SuiteContext ctx = builtin_context(seed, file.field.d());
    for (const auto& [name, spec] : file.motives) {
        const Mhs h = file.motive(name);
        if (h.rank() > 0 && is_one_motive_type(h)) ctx.motives.emplace_back(name, h);
    }
    return ctx;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry()) n.push_back(k);
        return n;
    }();
    return names;
}

SuiteOutcome run_suite(const std::string& name, const SuiteContext& ctx) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw InputError("unknown suite \"" + name + "\"");
    SuiteOutcome out;
    out.name = name;
    Recorder rec(out);
    const auto start = std::chrono::steady_clock::now();
    try {
        it->second(ctx, rec);
    } catch (const std::exception& e) {
        out.failures.push_back(std::string("exception: ") + e.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> c = {
        {1, "oracle equivalence on >= 20 oracle-sized instances", "oracle", 60},
        {2, "CM endomorphisms of E(w)", "cm", 1},
        {3, "Weil pairing unimodular and antisymmetric pullback", "pairing", 1},
        {4, "currying adjunction on a 10-instance suite", "adjunction", 30},
        {5, "mod-n comparison and n*m -> n compatibility", "modn", 30},
        {6, "curvature identity", "curvature", 10},
        {7, "weight respect", "weight", 10},
        {8, "trilinear decomposition ranks", "thmotimes", 120},
        {9, "sum-formula multiplicities", "otimes", 10},
        {10, "copies scale graded profiles", "copies", 5},
    };
    return c;
}

}  // namespace biext
