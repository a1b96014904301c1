#include <cmath>
#include <stdexcept>

#include "thimble/borel.hpp"

// Gauss hypergeometric evaluation for the germ parameter sets.  Strategy:
// direct series on |x| <= 0.9 (any parameters), logarithmic connection at 1
// for the c = a+b sets in use, Pfaff into the series disk when the mapped
// argument is small, the AGM identity for (1/2,1/2;1), and the generic
// two-term connection at infinity for (1/6,5/6;1).

namespace thimble {
namespace {

bool near(double u, double v) { return std::abs(u - v) < 1e-12; }

cplx series_2f1(double a, double b, double c, cplx x) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < 1200; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && n > 4) return sum;
    }
    if (std::abs(term) > 1e-12 * (1.0 + std::abs(sum)))
        throw std::runtime_error("hyp2f1: series did not converge");
    return sum;
}

// c = a + b log case, A&S 15.3.10, valid for |1-x| < 1:
//   F = P * sum_n ((a)_n (b)_n / (n!)^2) [h_n - Log(1-x)] (1-x)^n
// with P = 1/(Gamma(a)Gamma(b)) for c = 1 and
// h_n = 2 psi(n+1) - psi(a+n) - psi(b+n); the Euler constants cancel in h_0.
cplx log_connection(double a, double b, cplx x) {
    double pref, h;
    if (near(a + b, 1.0) && (near(a, 1.0 / 6) || near(b, 1.0 / 6))) {
        pref = 1.0 / (2.0 * M_PI);            // Gamma(1/6)Gamma(5/6) = 2 pi
        h = 3.0 * std::log(3.0) + 4.0 * std::log(2.0);
    } else if (near(a, 0.5) && near(b, 0.5)) {
        pref = 1.0 / M_PI;                    // Gamma(1/2)^2 = pi
        h = 4.0 * std::log(2.0);
    } else {
        throw std::invalid_argument("hyp2f1: log connection for model sets only");
    }
    const cplx u = 1.0 - x;
    const cplx L = std::log(u);
    cplx t = 1.0, sum = 0.0;
    for (int n = 0; n < 900; ++n) {
        const cplx add = t * (h - L);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && n > 4) break;
        t *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)) * u;
        h += 2.0 / (n + 1.0) - 1.0 / (a + n) - 1.0 / (b + n);
    }
    return pref * sum;
}

// F(1/2,1/2;1;x) = 1/agm(1, sqrt(1-x)) with the optimal-branch AGM.
cplx agm_2f1(cplx x) {
    cplx p = 1.0, q = std::sqrt(1.0 - x);
    for (int it = 0; it < 80; ++it) {
        const cplx pn = 0.5 * (p + q);
        cplx qn = std::sqrt(p * q);
        if (std::abs(pn - qn) > std::abs(pn + qn)) qn = -qn;
        p = pn;
        q = qn;
        if (std::abs(p - q) < 1e-17 * std::abs(p)) break;
    }
    return 1.0 / p;
}

// Two-term connection at infinity, nonintegral a-b; |1/x| < 1.
cplx infinity_connection(double a, double b, double c, cplx x) {
    const auto g = [](double v) { return std::tgamma(v); };
    const cplx lx = std::log(-x);
    const cplx t1 = g(c) * g(b - a) / (g(b) * g(c - a)) *
                    std::exp(-a * lx) *
                    series_2f1(a, a - c + 1.0, a - b + 1.0, 1.0 / x);
    const cplx t2 = g(c) * g(a - b) / (g(a) * g(c - b)) *
                    std::exp(-b * lx) *
                    series_2f1(b, b - c + 1.0, b - a + 1.0, 1.0 / x);
    return t1 + t2;
}

}  // namespace

cplx hyp2f1(double a, double b, double c, cplx x) {
    // Binomial case: the b = c series telescopes to (1-x)^{-a} exactly.
    if (near(c, b)) return std::exp(-a * std::log(1.0 - x));
    if (std::abs(x) <= 0.9) return series_2f1(a, b, c, x);

    const bool airy_set = near(c, 1.0) && ((near(a, 1.0 / 6) && near(b, 5.0 / 6)) ||
                                           (near(a, 5.0 / 6) && near(b, 1.0 / 6)));
    const bool bessel_set = near(c, 1.0) && near(a, 0.5) && near(b, 0.5);
    if (!airy_set && !bessel_set)
        throw std::invalid_argument(
            "hyp2f1: continuation implemented for the model parameter sets only");

    if (std::abs(1.0 - x) <= 0.8) return log_connection(a, b, x);

    const cplx y = x / (x - 1.0);
    if (std::abs(y) <= 0.9) {
        // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; y)
        return std::exp(-a * std::log(1.0 - x)) * series_2f1(a, c - b, c, y);
    }
    if (bessel_set) return agm_2f1(x);
    if (std::abs(x) >= 1.2) return infinity_connection(a, b, c, x);
    throw std::runtime_error("hyp2f1: argument outside implemented zones");
}

}  // namespace thimble
