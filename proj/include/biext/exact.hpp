#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP), and the
// imaginary quadratic field K = Q(w), w^2 = -d, that models complex periods.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace biext {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed input or violated preconditions (CLI exit code 2).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computed object fails an internal consistency check.
class CheckFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den = 1);
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Element re + im*w of K. `d` is 0 for elements created without a field
/// (they must be rational); otherwise it pins the field.
class KScalar {
  public:
    KScalar() = default;
    KScalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    KScalar(const Integer& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    KScalar(const Rational& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    KScalar(Rational re, Rational im, long d);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    long d() const { return d_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_rational() const { return sgn(im_) == 0; }
    KScalar conj() const;
    /// Field norm re^2 + d*im^2.
    Rational norm() const;
    KScalar inverse() const;

    KScalar& operator+=(const KScalar& o);
    KScalar& operator-=(const KScalar& o);
    KScalar& operator*=(const KScalar& o);
    KScalar& operator/=(const KScalar& o) { return *this *= o.inverse(); }
    KScalar operator-() const;

    friend KScalar operator+(KScalar a, const KScalar& b) { return a += b; }
    friend KScalar operator-(KScalar a, const KScalar& b) { return a -= b; }
    friend KScalar operator*(KScalar a, const KScalar& b) { return a *= b; }
    friend KScalar operator/(KScalar a, const KScalar& b) { return a /= b; }
    friend bool operator==(const KScalar& a, const KScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

  private:
    static long join(long a, long b);

    Rational re_;
    Rational im_;
    long d_ = 0;
};

std::string to_string(const KScalar& x);

/// The field K = Q(w) with w^2 = -d, d >= 1 squarefree.
class FieldContext {
  public:
    explicit FieldContext(long d = 1);

    long d() const { return d_; }
    KScalar omega() const { return KScalar(0, 1, d_); }
    KScalar make(const Rational& re, const Rational& im) const { return KScalar(re, im, d_); }
    /// Literal grammar: "a", "a+b*w", "a-b*w", "b*w", "w" with a, b of the
    /// form "p" or "p/q".
    KScalar parse(std::string_view text) const;
    /// Rebinds a scalar to this field; fails on a foreign nonzero w-part.
    KScalar adopt(const KScalar& x) const;

    friend bool operator==(const FieldContext& a, const FieldContext& b) { return a.d_ == b.d_; }

  private:
    long d_;
};

bool is_squarefree(long d);

// Small helpers so generic linear algebra can treat all scalar types alike.
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const KScalar& x) { return x.is_zero(); }
inline Rational inverse(const Rational& x) { return 1 / x; }
inline KScalar inverse(const KScalar& x) { return x.inverse(); }
inline KScalar conj(const KScalar& x) { return x.conj(); }

}  // namespace biext
