#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "thimble/borel.hpp"

namespace thimble {
namespace {

GaussRat rat_factorial(int m) { return GaussRat(Rat(factorial_big(m))); }

// Gamma(m+1/2) = (2m)! / (4^m m!) * sqrt(pi); this returns the rational part.
Rat half_gamma_rational(int m) {
    const BigInt four_m = BigInt(1) << (2 * m);
    return Rat(factorial_big(2 * m), factorial_big(m) * four_m);
}

// Numerator/denominator coefficient vectors of the diagonal [M/M] Pade
// approximant (same Toeplitz system as pade_poles, kept local on purpose:
// this form is a surrogate for evaluation, not a pole report).
void pade_coeffs(const std::vector<cplx>& c, int M, std::vector<cplx>& p,
                 std::vector<cplx>& q) {
    Eigen::MatrixXcd A(M, M);
    Eigen::VectorXcd rhs(M);
    for (int i = 1; i <= M; ++i) {
        for (int j = 1; j <= M; ++j) {
            const int k = M + i - j;
            A(i - 1, j - 1) = (k >= 0) ? c[k] : cplx(0.0);
        }
        rhs(i - 1) = -c[M + i];
    }
    const Eigen::VectorXcd b = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(rhs);
    q.assign(M + 1, cplx(0.0));
    q[0] = 1.0;
    for (int j = 1; j <= M; ++j) q[j] = b(j - 1);
    p.assign(M + 1, cplx(0.0));
    for (int k = 0; k <= M; ++k)
        for (int j = 0; j <= std::min(k, M); ++j) p[k] += q[j] * c[k - j];
}

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z) {
    cplx v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

BorelGerm borel_ordinary(const PowerSeries& s) {
    if (s.alpha != 0)
        throw std::invalid_argument("borel_ordinary: integer-power series required");
    BorelGerm g;
    g.alpha = 1;
    g.coeffs.resize(s.coeffs.size());
    for (int m = 0; m < s.terms(); ++m) g.coeffs[m] = s.coeffs[m] / rat_factorial(m);
    return g;
}

// Input is the integer-power series multiplying an external hbar^{1/2}
// (the transmonomial split), so term m transforms as hbar^{m+1/2}.
BorelGerm borel_shifted(const PowerSeries& s) {
    if (!(s.alpha == Rat(0)))
        throw std::invalid_argument("borel_shifted: integer-power series required");
    BorelGerm g;
    g.alpha = Rat(1, 2);
    g.sqrtpi_power = -1;
    g.coeffs.resize(s.coeffs.size());
    for (int m = 0; m < s.terms(); ++m)
        g.coeffs[m] = s.coeffs[m] / GaussRat(half_gamma_rational(m));
    return g;
}

PowerSeries inverse_borel(const BorelGerm& g) {
    PowerSeries s;
    s.coeffs.resize(g.coeffs.size());
    if (g.alpha == 1) {
        if (g.sqrtpi_power != 0)
            throw std::invalid_argument("inverse_borel: stray sqrt(pi) factor");
        s.alpha = 0;
        for (std::size_t m = 0; m < g.coeffs.size(); ++m)
            s.coeffs[m] = g.coeffs[m] * rat_factorial(static_cast<int>(m));
    } else if (g.alpha == Rat(1, 2)) {
        if (g.sqrtpi_power != -1)
            throw std::invalid_argument("inverse_borel: sqrt(pi) bookkeeping mismatch");
        s.alpha = 0;  // the hbar^{1/2} stays external, as on the way in
        for (std::size_t m = 0; m < g.coeffs.size(); ++m)
            s.coeffs[m] = g.coeffs[m] * GaussRat(half_gamma_rational(static_cast<int>(m)));
    } else {
        throw std::invalid_argument("inverse_borel: unsupported alpha");
    }
    return s;
}

BorelGerm model_germ(ModelKind kind, const std::string& label, int terms) {
    switch (kind) {
        case ModelKind::airy: {
            const SeriesPair pair = airy_phi(terms);
            const bool plus = label == "p+";
            if (!plus && label != "p-")
                throw std::invalid_argument("model_germ: unknown airy saddle " + label);
            BorelGerm g = borel_ordinary(plus ? pair.plus : pair.minus);
            g.closed_form = Hyp2F1Form{Rat(1, 6), Rat(5, 6), Rat(1),
                                       plus ? Rat(3, 4) : Rat(-3, 4)};
            g.known_singularities = {cplx(plus ? 4.0 / 3 : -4.0 / 3, 0.0)};
            return g;
        }
        case ModelKind::bessel: {
            const SeriesPair pair = bessel_phi(terms);
            const bool plus = label == "w+";
            if (!plus && label != "w-")
                throw std::invalid_argument("model_germ: unknown bessel saddle " + label);
            BorelGerm g = borel_ordinary(plus ? pair.plus : pair.minus);
            g.closed_form = Hyp2F1Form{Rat(1, 2), Rat(1, 2), Rat(1),
                                       plus ? Rat(-1, 2) : Rat(1, 2)};
            g.known_singularities = {cplx(plus ? -2.0 : 2.0, 0.0)};
            return g;
        }
        case ModelKind::gamma: {
            if (label.rfind("p_", 0) != 0)
                throw std::invalid_argument("model_germ: unknown gamma saddle " + label);
            // Every tower saddle carries the same series; only the
            // transmonomial prefactor differs.
            BorelGerm g = borel_ordinary(gamma_phi(terms));
            g.known_singularities.push_back(cplx(-2.0 * M_PI, 0.0));
            for (int m = 1; m <= 32; ++m)
                g.known_singularities.push_back(cplx(2.0 * M_PI * m, 0.0));
            return g;
        }
    }
    throw std::invalid_argument("model_germ: bad kind");
}

GermEvaluator::GermEvaluator(const BorelGerm& g) {
    alpha_ = to_double(g.alpha);
    prefactor_ = std::pow(M_PI, g.sqrtpi_power / 2.0);
    if (g.closed_form) {
        form_ = g.closed_form;
        if (g.coeffs.empty())
            throw std::invalid_argument("GermEvaluator: empty closed-form germ");
        prefactor_ *= to_complex(g.coeffs[0]);
        return;
    }
    const int n = static_cast<int>(g.coeffs.size());
    if (n == 0) throw std::invalid_argument("GermEvaluator: empty germ");
    taylor_.resize(n);
    for (int m = 0; m < n; ++m) taylor_[m] = to_complex(g.coeffs[m]);
    if (n < 8) {
        // Too short for a surrogate; treat as an entire polynomial.
        taylor_radius_ = std::numeric_limits<double>::infinity();
        return;
    }

    double dist = 0.0;
    for (const cplx& s : g.known_singularities) {
        const double d = std::abs(s);
        if (dist == 0.0 || d < dist) dist = d;
    }
    if (dist == 0.0) {
        const double tail = std::abs(taylor_.back());
        dist = tail > 0.0 ? std::pow(tail, -1.0 / (n - 1)) : 1.0;
    }
    taylor_radius_ = 0.55 * dist;

    pade_scale_ = dist;
    std::vector<cplx> rescaled(n);
    double pw = 1.0;
    for (int m = 0; m < n; ++m) {
        rescaled[m] = taylor_[m] * pw;
        pw *= pade_scale_;
    }
    pade_coeffs(rescaled, (n - 1) / 2, pade_num_, pade_den_);
}

cplx GermEvaluator::operator()(cplx xi) const {
    cplx power = 1.0;
    if (alpha_ != 1.0) power = std::pow(xi, alpha_ - 1.0);
    if (form_) {
        const cplx x = to_double(form_->scale) * xi;
        return prefactor_ * power *
               hyp2f1(to_double(form_->a), to_double(form_->b),
                      to_double(form_->c), x);
    }
    if (std::abs(xi) <= taylor_radius_) {
        cplx v = 0.0;
        for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) v = v * xi + *it;
        return prefactor_ * power * v;
    }
    const cplx w = xi / pade_scale_;
    return prefactor_ * power * poly_eval(pade_num_, w) / poly_eval(pade_den_, w);
}

cplx evaluate_germ(const BorelGerm& g, cplx xi) { return GermEvaluator(g)(xi); }

}  // namespace thimble
