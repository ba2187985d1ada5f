#include "biext/exact.hpp"

#include <cctype>

namespace biext {

namespace {

bool parse_integer(std::string_view text, Integer& out) {
    if (text.empty()) return false;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) return false;
    for (std::size_t j = i; j < text.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw InputError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    text = trim(text);
    Integer num;
    Integer den = 1;
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num)) throw InputError("malformed rational literal '" + std::string(text) + "'");
    } else {
        auto den_text = text.substr(slash + 1);
        if (!parse_integer(text.substr(0, slash), num) || den_text.empty() || den_text[0] == '-' ||
            den_text[0] == '+' || !parse_integer(den_text, den))
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        if (sgn(den) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

KScalar::KScalar(Rational re, Rational im, long d) : re_(std::move(re)), im_(std::move(im)), d_(d) {
    if (d_ < 0) throw InputError("field parameter must be positive");
    if (d_ == 0 && sgn(im_) != 0) throw InputError("irrational scalar without a field");
}

long KScalar::join(long a, long b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw InputError("field context mismatch (d=" + std::to_string(a) + " vs d=" + std::to_string(b) + ")");
}

KScalar KScalar::conj() const {
    KScalar r = *this;
    r.im_ = -im_;
    return r;
}

Rational KScalar::norm() const { return re_ * re_ + Rational(d_) * im_ * im_; }

KScalar KScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in K");
    const Rational n = norm();
    KScalar r;
    r.re_ = re_ / n;
    r.im_ = -im_ / n;
    r.d_ = d_;
    return r;
}

KScalar& KScalar::operator+=(const KScalar& o) {
    d_ = join(d_, o.d_);
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

KScalar& KScalar::operator-=(const KScalar& o) {
    d_ = join(d_, o.d_);
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

KScalar& KScalar::operator*=(const KScalar& o) {
    d_ = join(d_, o.d_);
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - Rational(d_) * im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

KScalar KScalar::operator-() const {
    KScalar r = *this;
    r.re_ = -re_;
    r.im_ = -im_;
    return r;
}

std::string to_string(const KScalar& x) {
    if (x.is_rational()) return to_string(x.re());
    std::string im;
    if (x.im() == 1)
        im = "w";
    else if (x.im() == -1)
        im = "-w";
    else
        im = to_string(x.im()) + "*w";
    if (sgn(x.re()) == 0) return im;
    if (im[0] == '-') return to_string(x.re()) + im;
    return to_string(x.re()) + "+" + im;
}

bool is_squarefree(long d) {
    if (d < 1) return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

FieldContext::FieldContext(long d) : d_(d) {
    if (!is_squarefree(d)) throw InputError("field parameter d=" + std::to_string(d) + " is not a positive squarefree integer");
}

KScalar FieldContext::parse(std::string_view text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty scalar literal");
    if (s.back() != 'w') return KScalar(parse_rational(s));

    // Locate the sign that separates the rational part from the w-part.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size() - 1; i > 0; --i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
            split = i;
            break;
        }
    }
    Rational re = 0;
    std::string wpart = s;
    if (split != std::string::npos) {
        re = parse_rational(s.substr(0, split));
        wpart = s.substr(split);
    }
    wpart.pop_back();  // drop 'w'
    Rational im;
    if (wpart.empty() || wpart == "+") {
        im = 1;
    } else if (wpart == "-") {
        im = -1;
    } else {
        if (wpart.back() != '*') throw InputError("malformed scalar literal '" + std::string(text) + "'");
        wpart.pop_back();
        if (!wpart.empty() && wpart[0] == '+') wpart.erase(0, 1);
        im = parse_rational(wpart);
    }
    return KScalar(re, im, d_);
}

KScalar FieldContext::adopt(const KScalar& x) const {
    if (x.d() != 0 && x.d() != d_) throw InputError("scalar belongs to a different field");
    return KScalar(x.re(), x.im(), d_);
}

}  // namespace biext
