#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace rhq {

/// Arbitrary-precision rational; all curve/divisor coordinates are exact.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses "p/q" or "p" (optionally signed). Rejects zero denominators.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal '" + s + "' (expected \"p\" or \"p/q\")");
    }
}

/// Canonical "p/q" form; integers print without the denominator.
inline std::string to_fraction_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational pow_int(Rational base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0 cannot be raised to a negative power");
        base = Rational(denominator(base), numerator(base));
        e = -e;
    }
    Rational out(1);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

/// Gaussian rational: complex number with exact rational real/imaginary parts.
struct RatComplex {
    Rational re, im;

    RatComplex() : re(0), im(0) {}
    RatComplex(Rational r) : re(std::move(r)), im(0) {}  // NOLINT: implicit from Rational
    RatComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RatComplex(long r, long i) : re(r), im(i) {}

    bool is_real() const { return im == 0; }
    RatComplex conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator-(const RatComplex& a) { return {-a.re, -a.im}; }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RatComplex& a, const RatComplex& b) { return !(a == b); }

    RatComplex inverse() const {
        Rational n = norm();
        if (n == 0) throw std::domain_error("division by zero Gaussian rational");
        return {re / n, -im / n};
    }
    friend RatComplex operator/(const RatComplex& a, const RatComplex& b) {
        return a * b.inverse();
    }

    RatComplex pow(long e) const {
        RatComplex base = *this;
        if (e < 0) {
            base = inverse();
            e = -e;
        }
        RatComplex out(Rational(1));
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    std::string str() const {
        if (is_real()) return to_fraction_string(re);
        return to_fraction_string(re) + (im > 0 ? "+" : "") + to_fraction_string(im) + "i";
    }
};

/// Total order by (re, im); used for canonical sorting only.
inline bool lex_less(const RatComplex& a, const RatComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace rhq
