#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "biext/oracle.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace biext;
using namespace biext::testing;

namespace {

const FieldContext K1(1);

Mhs E() { return elliptic(K1.omega(), K1); }

std::set<BoxPoint> as_set(const std::vector<BoxPoint>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("enumeration of Z(1) endomorphisms") {
    const auto maps = brute_force_hom(tate(1, K1), tate(1, K1), 2);
    CHECK(as_set(maps) == std::set<BoxPoint>{BoxPoint({-2}), BoxPoint({-1}), BoxPoint({0}), BoxPoint({1}), BoxPoint({2})});
}

TEST_CASE("enumeration of CM endomorphisms") {
    const auto maps = brute_force_hom(E(), E(), 1);
    std::set<BoxPoint> expected;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b) expected.insert(BoxPoint({a, b, -b, a}));
    CHECK(maps.size() == 9);
    CHECK(as_set(maps) == expected);
}

TEST_CASE("enumeration between different twists") {
    CHECK(as_set(brute_force_hom(tate(0, K1), tate(1, K1), 2)) == std::set<BoxPoint>{BoxPoint({0})});
}

TEST_CASE("size guards") {
    const Mhs big = lattice_motive(4, K1);
    CHECK_THROWS_AS(brute_force_hom(big, big, 1), InputError);
    CHECK_THROWS_AS(brute_force_hom(E(), E(), 4), InputError);
    CHECK_THROWS_AS(brute_force_hom(E(), E(), -1), InputError);
    CHECK_NOTHROW(brute_force_hom(lattice_motive(3, K1), lattice_motive(3, K1), 0));
}

TEST_CASE("box points of a lattice") {
    const IntLattice l = IntLattice::span(mz({{1, 1}, {0, 2}}));
    std::set<BoxPoint> expected;
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y)
            if ((x + y) % 2 == 0) expected.insert(BoxPoint({x, y}));
    CHECK(as_set(lattice_box_points(l, 2)) == expected);
    CHECK(lattice_box_points(IntLattice(3), 2) == std::vector<BoxPoint>{BoxPoint({0, 0, 0})});
}

TEST_CASE("oracle agrees with the solver") {
    CHECK(compare_with_oracle(hom_lattice(E(), E()), 2).equal());
    CHECK(compare_with_oracle(hom_lattice(kummer(K1.parse("1/2"), K1), tate(1, K1)), 2).equal());
    CHECK(compare_with_oracle(hom_multilinear({E(), E()}, tate(1, K1)), 2).equal());
    const auto zero = compare_with_oracle(hom_lattice(tate(0, K1), tate(1, K1)), 2);
    CHECK(zero.equal());
    CHECK(zero.oracle_count == 1);
}

TEST_CASE("a corrupted lattice is detected") {
    HomLattice l = hom_lattice(E(), E());
    l.lattice = IntLattice::span(mz({{1, 0, 0, 1}}));
    auto r = compare_with_oracle(l, 1);
    CHECK_FALSE(r.equal());
    CHECK(r.missing.size() == 6);
    l.lattice = IntLattice::full(4);
    r = compare_with_oracle(l, 1);
    CHECK_FALSE(r.equal());
    CHECK(r.extra.size() == 81 - 9);
}

TEST_CASE("random motives") {
    InstanceProfile p{1, 1, 1, 2, 1, false};
    const MotiveSpec a = random_motive(p, K1);
    CHECK(a == random_motive(p, K1));
    CHECK(a.periods.lattice_rank == 1);
    CHECK(a.periods.genus() == 1);
    CHECK(a.periods.torus_rank == 1);
    const Mhs h = build(a, K1);
    CHECK(validate_mhs(h).ok());
    CHECK(validate_mhs(h, true).ok());

    p.seed = 2;
    CHECK_FALSE(random_motive(p, K1) == a);
    CHECK(build(random_motive({0, 0, 0, 2, 2, false}, K1), K1).rank() == 0);

    const MotiveSpec small = random_motive({2, 1, 2, 3, 5, true}, K1);
    CHECK(small.periods.rank() <= 3);
}

TEST_CASE("oracle agrees with the solver on random pairs") {
    const FieldContext k2(2);
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; checked < 12; ++seed) {
        DeterministicRng rng(seed * 7919);
        const FieldContext& k = seed % 2 ? K1 : k2;
        auto profile = [&](std::uint64_t s) {
            return InstanceProfile{static_cast<std::size_t>(rng.range(0, 2)), static_cast<std::size_t>(rng.range(0, 1)),
                                   static_cast<std::size_t>(rng.range(0, 2)), 2, s, true};
        };
        const Mhs a = build(random_motive(profile(seed), k), k);
        const Mhs b = build(random_motive(profile(seed + 1000), k), k);
        if (a.rank() * b.rank() == 0 || a.rank() * b.rank() > kOracleMaxUnknowns) continue;
        const auto r = compare_with_oracle(hom_lattice(a, b), 2);
        CHECK(r.equal());
        ++checked;
    }
}
