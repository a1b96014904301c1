#include "thimble/series.hpp"

#include <cmath>
#include <stdexcept>

namespace thimble {
namespace {

void check_terms(int n) {
    if (n < 1 || n > kMaxSeriesTerms)
        throw std::invalid_argument("series: term count out of range");
}

void require_same_alpha(const PowerSeries& a, const PowerSeries& b) {
    if (!(a.alpha == b.alpha))
        throw std::invalid_argument("series: mismatched leading exponents");
}

}  // namespace

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    require_same_alpha(a, b);
    PowerSeries r;
    r.alpha = a.alpha;
    const int n = std::min(a.terms(), b.terms());
    r.coeffs.reserve(n);
    for (int m = 0; m < n; ++m) r.coeffs.push_back(a.coeffs[m] + b.coeffs[m]);
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    return a + (GaussRat(-1) * b);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r;
    r.alpha = a.alpha + b.alpha;
    const int n = std::min(a.terms(), b.terms());
    r.coeffs.assign(n, GaussRat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n && j < b.terms(); ++j)
            r.coeffs[i + j] = r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    return r;
}

PowerSeries operator*(const GaussRat& c, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& x : r.coeffs) x = c * x;
    return r;
}

PowerSeries series_exp(const PowerSeries& a) {
    if (!(a.alpha == Rat(0)))
        throw std::invalid_argument("series_exp: alpha must be 0");
    if (a.terms() > 0 && !a.coeffs[0].is_zero())
        throw std::invalid_argument("series_exp: nonzero constant term");
    const int n = a.terms();
    PowerSeries r;
    r.alpha = 0;
    r.coeffs.assign(n, GaussRat(0));
    if (n == 0) return r;
    r.coeffs[0] = GaussRat(1);
    for (int m = 1; m < n; ++m) {
        GaussRat acc(0);
        for (int k = 1; k <= m; ++k)
            acc = acc + GaussRat(k) * a.coeff(k) * r.coeffs[m - k];
        r.coeffs[m] = GaussRat(Rat(1, m)) * acc;
    }
    return r;
}

PowerSeries series_log(const PowerSeries& a) {
    if (!(a.alpha == Rat(0)))
        throw std::invalid_argument("series_log: alpha must be 0");
    if (a.terms() == 0 || !(a.coeffs[0] == GaussRat(1)))
        throw std::invalid_argument("series_log: constant term must be 1");
    const int n = a.terms();
    PowerSeries r;
    r.alpha = 0;
    r.coeffs.assign(n, GaussRat(0));
    for (int m = 1; m < n; ++m) {
        GaussRat acc = GaussRat(m) * a.coeffs[m];
        for (int k = 1; k < m; ++k)
            acc = acc - GaussRat(k) * r.coeffs[k] * a.coeffs[m - k];
        r.coeffs[m] = GaussRat(Rat(1, m)) * acc;
    }
    return r;
}

PowerSeries substitute_scaled(const PowerSeries& a, const GaussRat& lambda) {
    if (!(a.alpha == Rat(0)))
        throw std::invalid_argument("substitute_scaled: alpha must be 0");
    PowerSeries r = a;
    GaussRat pw(1);
    for (int m = 0; m < r.terms(); ++m) {
        r.coeffs[m] = pw * r.coeffs[m];
        pw = pw * lambda;
    }
    return r;
}

cplx evaluate_truncated(const PowerSeries& a, cplx hbar) {
    cplx sum = 0, pw = std::pow(hbar, to_double(a.alpha));
    for (int m = 0; m < a.terms(); ++m) {
        sum += to_complex(a.coeffs[m]) * pw;
        pw *= hbar;
    }
    return sum;
}

SeriesPair airy_phi(int terms) {
    check_terms(terms);
    SeriesPair r;
    r.plus.coeffs.reserve(terms);
    // c_m / c_{m-1} = prod_{j=6m-5}^{6m} j / (576 (2m-1)(2m) (3m-2)(3m-1)(3m))
    Rat c = 1;
    for (int m = 0; m < terms; ++m) {
        if (m > 0) {
            Rat num = 1;
            for (long j = 6L * m - 5; j <= 6L * m; ++j) num *= j;
            Rat den = Rat(576) * (2L * m - 1) * (2L * m) * (3L * m - 2) *
                      (3L * m - 1) * (3L * m);
            c *= num / den;
        }
        r.plus.coeffs.push_back(GaussRat(c));
    }
    r.minus = substitute_scaled(r.plus, GaussRat(-1));
    return r;
}

SeriesPair bessel_phi(int terms) {
    check_terms(terms);
    SeriesPair r;
    r.minus.coeffs.reserve(terms);
    // a_m / a_{m-1} = (2m-1)^2 / (8m)
    Rat a = 1;
    for (int m = 0; m < terms; ++m) {
        if (m > 0) a *= Rat((2L * m - 1) * (2L * m - 1), 8L * m);
        r.minus.coeffs.push_back(GaussRat(a));
    }
    r.plus = substitute_scaled(r.minus, GaussRat(-1));
    return r;
}

Rat bernoulli_number(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli_number: negative index");
    std::vector<Rat> b(n + 1);
    for (int m = 0; m <= n; ++m) {
        if (m == 0) {
            b[0] = 1;
            continue;
        }
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat acc = 0;
        for (int j = 0; j < m; ++j)
            acc += Rat(binomial_big(m + 1, j)) * b[j];
        b[m] = -acc / Rat(m + 1);
    }
    return b[n];
}

PowerSeries stirling_phi(int terms) {
    check_terms(terms);
    PowerSeries arg;
    arg.alpha = 0;
    arg.coeffs.assign(terms, GaussRat(0));
    for (int k = 1; 2 * k - 1 < terms; ++k) {
        Rat b2k = bernoulli_number(2 * k);
        arg.coeffs[2 * k - 1] = GaussRat(b2k / Rat(2L * k * (2L * k - 1)));
    }
    return series_exp(arg);
}

PowerSeries gamma_phi(int terms) {
    return substitute_scaled(stirling_phi(terms), GaussRat::i());
}

TransMonomial transmonomial(ModelKind kind, const std::string& label,
                            int terms) {
    const double spi = std::sqrt(M_PI);
    const double s2pi = std::sqrt(2.0 * M_PI);
    TransMonomial t;
    t.hbar_half_power = 1;
    switch (kind) {
        case ModelKind::airy: {
            auto pair = airy_phi(terms);
            if (label == "p+") {
                t.action = {-2.0 / 3.0, 0.0};
                t.gauss = {-spi, 0.0};
                t.series = pair.plus;
            } else if (label == "p-") {
                t.action = {2.0 / 3.0, 0.0};
                t.gauss = {0.0, -spi};
                t.series = pair.minus;
            } else {
                throw std::invalid_argument("transmonomial: bad airy label");
            }
            return t;
        }
        case ModelKind::bessel: {
            auto pair = bessel_phi(terms);
            if (label == "w+") {
                t.action = {1.0, 0.0};
                t.gauss = {s2pi, 0.0};
                t.series = pair.plus;
            } else if (label == "w-") {
                t.action = {-1.0, 0.0};
                t.gauss = {0.0, s2pi};
                t.series = pair.minus;
            } else {
                throw std::invalid_argument("transmonomial: bad bessel label");
            }
            return t;
        }
        case ModelKind::gamma: {
            if (label.rfind("p_", 0) != 0)
                throw std::invalid_argument("transmonomial: bad gamma label");
            const int n = std::stoi(label.substr(2));
            t.action = cplx(-2.0 * M_PI * n, -1.0);
            t.gauss = std::polar(s2pi, M_PI / 4.0);
            t.series = gamma_phi(terms);
            return t;
        }
    }
    throw std::logic_error("transmonomial: bad kind");
}

TransMonomial operator*(const TransMonomial& a, const TransMonomial& b) {
    TransMonomial r;
    r.action = a.action + b.action;
    r.gauss = a.gauss * b.gauss;
    r.series = a.series * b.series;
    r.hbar_half_power = a.hbar_half_power + b.hbar_half_power;
    return r;
}

cplx evaluate_truncated(const TransMonomial& t, double hbar) {
    return std::exp(-t.action / hbar) * t.gauss *
           std::pow(hbar, t.hbar_half_power / 2.0) *
           evaluate_truncated(t.series, cplx(hbar, 0.0));
}

cplx gelfand_leray_density(const Action& a, const CriticalPoint& p, cplx xi) {
    if (std::abs(xi) == 0.0)
        throw std::invalid_argument("gelfand_leray_density: xi must be nonzero");
    // March from a small Morse seed radially out to xi, tracking both
    // branches of A(z) - A(p) = t by Newton iteration.
    auto newton = [&](cplx z, cplx t) {
        for (int it = 0; it < 60; ++it) {
            const cplx f = eval_action(a, z) - p.value - t;
            const cplx df = eval_action_grad(a, z);
            if (std::abs(df) < 1e-12)
                throw std::runtime_error(
                    "gelfand_leray_density: branch hit a turning point");
            const cplx step = f / df;
            z -= step;
            // Near the saddle |df| ~ sqrt(t), so rounding noise in f keeps
            // the step from shrinking much below 1e-14; 1e-13 is reachable
            // and costs ~1e-11 relative accuracy in the density.
            if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) return z;
        }
        throw std::runtime_error("gelfand_leray_density: continuation stalled");
    };

    const int steps = std::max(6, static_cast<int>(std::abs(xi) / 0.05) + 1);
    const double sigma = orientation_sign(a, p);  // branch A leads the oriented thimble
    cplx za{}, zb{};
    for (int k = 1; k <= steps; ++k) {
        const cplx t = xi * (static_cast<double>(k) / steps);
        if (k == 1) {
            const cplx root = sigma * std::sqrt(2.0 * t / p.hessian);
            za = newton(p.position + root, t);
            zb = newton(p.position - root, t);
        } else {
            za = newton(za, t);
            zb = newton(zb, t);
        }
        if (std::abs(za - zb) < 1e-9)
            throw std::runtime_error(
                "gelfand_leray_density: branches collided");
    }
    return 1.0 / eval_action_grad(a, za) - 1.0 / eval_action_grad(a, zb);
}

}  // namespace thimble
