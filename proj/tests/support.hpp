#pragma once

#include "biext/lattice.hpp"

#include <initializer_list>
#include <random>

namespace biext::testing {

inline MatrixZ mz(std::initializer_list<std::initializer_list<long>> rows) {
    MatrixZ m;
    std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    m = MatrixZ(0, cols);
    for (const auto& r : rows) {
        std::vector<Integer> v;
        for (long x : r) v.emplace_back(x);
        m.append_row(v);
    }
    return m;
}

inline MatrixQ mq(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    MatrixQ m(0, cols);
    for (const auto& r : rows) {
        std::vector<Rational> v;
        for (const char* x : r) v.push_back(parse_rational(x));
        m.append_row(v);
    }
    return m;
}

inline MatrixK mk(const FieldContext& f, std::initializer_list<std::initializer_list<const char*>> rows) {
    std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    MatrixK m(0, cols);
    for (const auto& r : rows) {
        std::vector<KScalar> v;
        for (const char* x : r) v.push_back(f.parse(x));
        m.append_row(v);
    }
    return m;
}

struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long range(long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Rational rational(long h) { return make_rational(range(-h, h), range(1, h)); }
    KScalar scalar(const FieldContext& f, long h) { return f.make(rational(h), rational(h)); }
    std::mt19937_64 gen;
};

inline IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace biext::testing
