#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace biext;
using biext::testing::Rng;

TEST_CASE("rationals are kept in lowest terms") {
    const Rational q = make_rational(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(to_string(q) == "-3/2");
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK(to_string(parse_rational(" -7 ")) == "-7");
}

TEST_CASE("malformed rational literals are rejected") {
    for (const char* bad : {"", "1/", "/2", "1/0", "1/-2", "abc", "1.5", "--1", "2w"})
        CHECK_THROWS_AS(parse_rational(bad), InputError);
}

TEST_CASE("field parameter must be squarefree") {
    CHECK_NOTHROW(FieldContext(1));
    CHECK_NOTHROW(FieldContext(6));
    CHECK_THROWS_AS(FieldContext(4), InputError);
    CHECK_THROWS_AS(FieldContext(0), InputError);
    CHECK_THROWS_AS(FieldContext(-3), InputError);
}

TEST_CASE("scalar literal grammar") {
    const FieldContext k(1);
    CHECK(k.parse("w") == k.make(0, 1));
    CHECK(k.parse("-w") == k.make(0, -1));
    CHECK(k.parse("1/3+2*w") == k.make(make_rational(1, 3), 2));
    CHECK(k.parse("1/3-2/5*w") == k.make(make_rational(1, 3), make_rational(-2, 5)));
    CHECK(k.parse("-1/2*w") == k.make(0, make_rational(-1, 2)));
    CHECK(k.parse("7") == KScalar(7));
    CHECK(k.parse("-3/4+w") == k.make(make_rational(-3, 4), 1));
    for (const char* bad : {"", "w*2", "1+", "1/0+w", "x", "1+2w", "1**w"}) CHECK_THROWS_AS(k.parse(bad), InputError);
}

TEST_CASE("scalar printing round-trips through the parser") {
    const FieldContext k(5);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const KScalar x = rng.scalar(k, 9);
        CHECK(k.parse(to_string(x)) == x);
    }
    CHECK(to_string(k.make(0, 1)) == "w");
    CHECK(to_string(k.make(2, -1)) == "2-w");
    CHECK(to_string(k.make(make_rational(1, 2), 3)) == "1/2+3*w");
}

TEST_CASE("w squares to -d") {
    for (long d : {1L, 2L, 3L, 7L}) {
        const FieldContext k(d);
        CHECK(k.omega() * k.omega() == KScalar(-d));
    }
}

TEST_CASE("conjugation is an involutive field automorphism") {
    const FieldContext k(3);
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const KScalar x = rng.scalar(k, 6);
        const KScalar y = rng.scalar(k, 6);
        CHECK(conj(conj(x)) == x);
        CHECK(conj(x * y) == conj(x) * conj(y));
        CHECK(conj(x + y) == conj(x) + conj(y));
        CHECK((x * conj(x)).is_rational());
        CHECK(x.is_rational() == (x == conj(x)));
        if (!x.is_zero()) CHECK(x * x.inverse() == KScalar(1));
    }
}

TEST_CASE("scalars from different fields do not mix") {
    const KScalar a = FieldContext(1).omega();
    const KScalar b = FieldContext(2).omega();
    CHECK_THROWS_AS(a + b, InputError);
    CHECK_THROWS_AS(FieldContext(2).adopt(a), InputError);
    CHECK(FieldContext(2).adopt(KScalar(3)) == KScalar(3));
}

TEST_CASE("division by zero in K") { CHECK_THROWS(KScalar(0).inverse()); }
