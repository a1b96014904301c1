#pragma once

// Exact truncated power series in hbar, the saddle expansions of the three
// models, transmonomial bookkeeping, and the Gelfand-Leray density used to
// cross-check the Borel germs.

#include <string>
#include <vector>

#include "thimble/models.hpp"
#include "thimble/rational.hpp"

namespace thimble {

// coeffs[m] multiplies hbar^{m+alpha}.  alpha is 0 or 1/2 in this project.
struct PowerSeries {
    Rat alpha = 0;
    std::vector<GaussRat> coeffs;

    int terms() const { return static_cast<int>(coeffs.size()); }
    GaussRat coeff(int m) const {
        return (m >= 0 && m < terms()) ? coeffs[m] : GaussRat(0);
    }
    bool operator==(const PowerSeries& o) const {
        return alpha == o.alpha && coeffs == o.coeffs;
    }
};

inline constexpr int kMaxSeriesTerms = 64;

// Binary operations truncate to the shorter operand.
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const GaussRat& c, const PowerSeries& a);

// exp needs alpha = 0 and zero constant term; log needs constant term 1.
PowerSeries series_exp(const PowerSeries& a);
PowerSeries series_log(const PowerSeries& a);

// hbar -> lambda * hbar, coefficientwise; alpha must be 0.
PowerSeries substitute_scaled(const PowerSeries& a, const GaussRat& lambda);

cplx evaluate_truncated(const PowerSeries& a, cplx hbar);

// Saddle expansions.  Both Airy series share |c_m|; the minus series
// alternates (phi_-(h) = phi_+(-h)), and likewise for Bessel where the plus
// series is the alternating one.
struct SeriesPair {
    PowerSeries plus, minus;
};
SeriesPair airy_phi(int terms);
SeriesPair bessel_phi(int terms);
PowerSeries stirling_phi(int terms);
PowerSeries gamma_phi(int terms);

// Exact Bernoulli number B_n (B_1 = -1/2 convention).
Rat bernoulli_number(int n);

// e^{-action/hbar} * gauss * hbar^{hbar_half_power/2} * series(hbar).
struct TransMonomial {
    cplx action{};
    cplx gauss{};
    PowerSeries series;
    int hbar_half_power = 1;
};

TransMonomial transmonomial(ModelKind kind, const std::string& label,
                            int terms);
TransMonomial operator*(const TransMonomial& a, const TransMonomial& b);
cplx evaluate_truncated(const TransMonomial& t, double hbar);

// dz_A/dxi - dz_B/dxi for the two local solution branches of
// A(z) - A(p) = xi, continued radially from the Morse seed.
cplx gelfand_leray_density(const Action& a, const CriticalPoint& p, cplx xi);

}  // namespace thimble
