#pragma once

// Exact arithmetic substrate: big integers, rationals, Gaussian rationals.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace thimble {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline BigInt factorial_big(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt b = 1;
    for (unsigned j = 0; j < k; ++j) {
        b *= (n - j);
        b /= (j + 1);
    }
    return b;
}

inline Rat pow_rat(const Rat& base, long e) {
    Rat r = 1;
    Rat b = base;
    long n = e;
    if (n < 0) {
        if (base == 0) throw std::domain_error("pow_rat: zero to negative power");
        b = Rat(1) / base;
        n = -n;
    }
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// Element of Q(i).  Exact; comparison is exact equality.
struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(long r) : re(r) {}
    GaussRat(int r) : re(r) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        Rat n2 = o.norm2();
        if (n2 == 0) throw std::domain_error("GaussRat: division by zero");
        Rat r = (re * o.re + im * o.im) / n2;
        Rat i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline std::complex<double> to_complex(const GaussRat& g) {
    return {to_double(g.re), to_double(g.im)};
}

inline std::string to_string(const GaussRat& g) {
    std::string s = g.re.str();
    if (g.im != 0) {
        s += (g.im > 0 ? "+" : "-");
        Rat a = g.im > 0 ? g.im : Rat(-g.im);
        s += a.str() + "i";
    }
    return s;
}

}  // namespace thimble
