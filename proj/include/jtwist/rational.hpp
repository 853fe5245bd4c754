#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace jtwist {

using Rational = mpq_class;

/// Parse "a", "-a", "a/b" into an exact rational. Throws std::invalid_argument
/// on malformed input or zero denominator.
Rational parseRational(std::string_view s);

/// Canonical "a" or "a/b" rendering (denominator omitted when 1).
std::string toString(const Rational& r);

/// Element of Q(i): exact rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(long num, long den) : re(Rational(num, den)) { re.canonicalize(); }

    static GaussianRational unit() { return GaussianRational(1); }
    static GaussianRational imagUnit() { return GaussianRational(Rational(0), Rational(1)); }

    bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool isReal() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator*=(const Rational& s) {
        re *= s;
        im *= s;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator*(GaussianRational a, const Rational& s) { return a *= s; }
    friend GaussianRational operator*(const Rational& s, GaussianRational a) { return a *= s; }
    friend GaussianRational operator-(GaussianRational a) {
        a.re = -a.re;
        a.im = -a.im;
        return a;
    }

    /// Multiplicative inverse; throws std::domain_error on zero.
    GaussianRational inverse() const;

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// "0", "3/4", "-1/2", "i", "-i", "2/3i", "1/2+1/3i", "1/2-i"
    std::string str() const;
};

}  // namespace jtwist
