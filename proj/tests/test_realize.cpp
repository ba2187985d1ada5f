#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "biext/realize.hpp"
#include "support.hpp"

using namespace biext;
using namespace biext::testing;

namespace {

const FieldContext K1(1);

Mhs E() { return elliptic(K1.omega(), K1); }

MultilinearMap Jpair() { return MultilinearMap::from_flat({2, 2}, 1, iv({0, 1, -1, 0})); }

std::vector<HomLattice> suite() {
    return {
        hom_multilinear({E(), E()}, tate(1, K1)),
        hom_multilinear({kummer(K1.parse("1/2"), K1), kummer(K1.parse("3"), K1)}, kummer(K1.parse("1/3"), K1)),
        hom_multilinear({lattice_motive(2, K1), E()}, E()),
        hom_multilinear({tate(0, K1), kummer(K1.parse("2"), K1)}, kummer(K1.parse("2"), K1)),
        hom_lattice(E(), elliptic(K1.parse("2*w"), K1)),
        hom_multilinear({lattice_motive(1, K1), E(), E()}, tate(1, K1)),
    };
}

}  // namespace

TEST_CASE("finite realizations") {
    CHECK(reduce_mod_n(tate(1, K1), 5).size() == 5);
    CHECK(reduce_mod_n(E(), 2).size() == 4);
    CHECK(reduce_mod_n(Mhs::zero(K1), 7).size() == 1);
    CHECK_THROWS_AS(reduce_mod_n(E(), 1), InputError);
    CHECK(reduce_mod_n(E(), 5).reduce(iv({-1, 12})) == std::vector<long>{4, 2});
}

TEST_CASE("reducing maps modulo n") {
    const HomLattice l = hom_multilinear({E(), E()}, tate(1, K1));
    const FiniteMap j5 = reduce_map_mod_n(l, Jpair(), 5);
    CHECK(j5.coefficients == std::vector<long>{0, 1, 4, 0});
    CHECK(commute_check(Jpair(), j5));
    const FiniteMap z = reduce_map_mod_n(l, MultilinearMap::zero({2, 2}, 1), 3);
    CHECK(z.coefficients == std::vector<long>{0, 0, 0, 0});
    for (long n : {2L, 3L, 7L}) {
        const FiniteMap m = reduce_map_mod_n(l, Integer(n) * Jpair(), n);
        CHECK(m.coefficients == std::vector<long>{0, 0, 0, 0});
    }
    CHECK_THROWS_AS(reduce_map_mod_n(l, MultilinearMap::from_flat({2, 2}, 1, iv({1, 0, 0, 0})), 5), InputError);
    // A wrong reduction is caught.
    FiniteMap wrong = j5;
    wrong.coefficients[1] = 2;
    CHECK_FALSE(commute_check(Jpair(), wrong));
}

TEST_CASE("reduction commutes with evaluation across the suite") {
    for (const auto& l : suite())
        for (const auto& phi : l.basis())
            for (long n : {2L, 3L, 4L, 5L, 12L}) {
                const FiniteMap f = reduce_map_mod_n(l, phi, n);
                CHECK(commute_check(phi, f));
                for (long m : {2L, 3L}) CHECK(reduce_further(reduce_map_mod_n(l, phi, n * m), n) == f);
                for (const auto& psi : l.basis()) CHECK(reduce_map_mod_n(l, phi + Integer(n) * psi, n) == f);
            }
}

TEST_CASE("de Rham realizations") {
    const DeRhamSpace d = de_rham(tate(1, K1));
    CHECK(d.rank == 1);
    CHECK(d.hodge.at(-1).rows() == 1);
    CHECK(d.hodge.count(0) == 0);
    const HomLattice ee = hom_lattice(E(), E());
    const MultilinearMap id = MultilinearMap::from_flat({2}, 2, iv({1, 0, 0, 1}));
    CHECK(de_rham_map(ee, id) == MatrixK::identity(2));
    const HomLattice l = hom_multilinear({E(), E()}, tate(1, K1));
    const MatrixK jk = de_rham_map(l, Jpair());
    const MatrixK f0 = l.tensor.hodge(0);
    REQUIRE(f0.rows() == 1);
    CHECK(evaluate(jk, E().hodge(0).row(0), E().hodge(0).row(0))[0].is_zero());
}

TEST_CASE("curvature") {
    const HomLattice l = hom_multilinear({E(), E()}, tate(1, K1));
    const CurvatureReport z = curvature(l, biext_from_map(l, MultilinearMap::zero({2, 2}, 1)));
    CHECK(z.upsilon == MatrixK(1, 4));
    CHECK(z.identity_holds);

    const CurvatureReport j = curvature(l, biext_from_map(l, Jpair()));
    CHECK(j.upsilon == mk(K1, {{"0", "-1", "1", "0"}}));
    CHECK(j.identity_holds);
    CHECK(j.expansion_holds);

    MatrixK phi1 = Jpair().to_k();
    phi1(0, 0) += K1.parse("2-w");
    phi1(0, 3) += K1.parse("1/2");
    const CurvatureReport alt = curvature(l, biext_from_map(l, Jpair(), phi1));
    CHECK(alt.upsilon == j.upsilon);
    CHECK(alt.identity_holds);
    CHECK_FALSE(alt.gamma1 == j.gamma1);
}

TEST_CASE("curvature is minus the de Rham map across the suite") {
    Rng rng(5);
    for (const auto& l : suite()) {
        if (l.sources.size() != 2) continue;
        for (const auto& phi : l.basis()) {
            const MatrixK dr = de_rham_map(l, phi);
            const CurvatureReport c = curvature(l, biext_from_map(l, phi));
            CHECK(c.identity_holds);
            CHECK(c.expansion_holds);
            for (std::size_t i = 0; i < dr.rows(); ++i)
                for (std::size_t j = 0; j < dr.cols(); ++j) CHECK(c.upsilon(i, j) == -dr(i, j));
            MatrixK phi1(dr.rows(), dr.cols());
            for (std::size_t i = 0; i < dr.rows(); ++i)
                for (std::size_t j = 0; j < dr.cols(); ++j) phi1(i, j) = rng.scalar(K1, 3);
            CHECK(curvature(l, biext_from_map(l, phi, phi1)).upsilon == c.upsilon);
        }
    }
}
