#include <cmath>
#include <stdexcept>
#include <vector>

#include "thimble/borel.hpp"

// Local variation at a Borel singularity: the difference between the two
// lateral continuations around omega, sampled on a circle and re-centered.
// Works in the hypergeometric variable x = scale*xi, where the singularity
// always sits at x = 1; continuation is by chained Taylor re-expansion using
// the hypergeometric ODE recurrence, so no branch bookkeeping is needed.

namespace thimble {
namespace {

constexpr int kLocalTerms = 60;
constexpr int kCirclePoints = 64;
constexpr int kOutTerms = 8;

struct LocalTaylor {
    cplx center;
    std::vector<cplx> u;
};

// Taylor coefficients at `center` of a solution of
//   x(1-x)u'' + [c-(a+b+1)x]u' - ab u = 0
// from the value u0 and derivative u1 there.
LocalTaylor local_taylor(double a, double b, double c, cplx center, cplx u0,
                         cplx u1) {
    LocalTaylor t;
    t.center = center;
    t.u.assign(kLocalTerms, cplx(0.0));
    t.u[0] = u0;
    t.u[1] = u1;
    const cplx B0 = center * (1.0 - center);
    const cplx B1 = 1.0 - 2.0 * center;
    const double B2 = -1.0;
    const cplx C0 = c - (a + b + 1.0) * center;
    const double C1 = -(a + b + 1.0);
    for (int k = 0; k + 2 < kLocalTerms; ++k) {
        t.u[k + 2] = -((B1 * static_cast<double>(k) + C0) * (k + 1.0) * t.u[k + 1] +
                       (B2 * k * (k - 1.0) + C1 * k - a * b) * t.u[k]) /
                     (B0 * (k + 2.0) * (k + 1.0));
    }
    return t;
}

void eval_taylor(const LocalTaylor& t, cplx x, cplx& val, cplx& der) {
    const cplx d = x - t.center;
    val = 0.0;
    der = 0.0;
    for (int k = kLocalTerms - 1; k >= 1; --k) {
        val = val * d + t.u[k];
        der = der * d + static_cast<double>(k) * t.u[k];
    }
    val = val * d + t.u[0];
}

cplx series_2f1_local(double a, double b, double c, cplx x) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < 400; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && n > 4) break;
    }
    return sum;
}

}  // namespace

BorelGerm variation(const BorelGerm& g, cplx omega, double radius) {
    if (!g.closed_form)
        throw std::invalid_argument(
            "variation: closed-form logarithmic germ required (pole-type and "
            "bare numeric germs are unsupported)");
    const Hyp2F1Form& f = *g.closed_form;
    if (f.c != f.a + f.b)
        throw std::invalid_argument("variation: germ is not of logarithmic type");
    if (g.coeffs.empty())
        throw std::invalid_argument("variation: empty germ");

    const double a = to_double(f.a), b = to_double(f.b), c = to_double(f.c);
    const double s = to_double(f.scale);
    if (std::abs(s * omega - 1.0) > 1e-6 * (1.0 + std::abs(omega)))
        throw std::invalid_argument("variation: omega is not this germ's singularity");

    const cplx lambda =
        to_complex(g.coeffs[0]) * std::pow(M_PI, g.sqrtpi_power / 2.0);
    const double rx = std::abs(s) * radius;
    if (rx <= 0.0 || rx >= 0.5)
        throw std::invalid_argument("variation: circle radius out of range");

    // Real-axis march from 0.3 to 1 - rx, step 0.4 x distance to {0, 1}.
    cplx center = 0.3;
    cplx u0 = series_2f1_local(a, b, c, center);
    cplx u1 = a * b / c * series_2f1_local(a + 1.0, b + 1.0, c + 1.0, center);
    const double goal = 1.0 - rx;
    while (std::abs(goal - center) > 1e-15) {
        const double dist = std::min(std::abs(center), std::abs(1.0 - center));
        const double len = std::min(0.4 * dist, std::abs(goal - center));
        const cplx next = center + len;
        const LocalTaylor t = local_taylor(a, b, c, center, u0, u1);
        eval_taylor(t, next, u0, u1);
        center = next;
    }

    std::vector<double> phis(kCirclePoints);
    for (int j = 0; j < kCirclePoints; ++j)
        phis[j] = -M_PI + 2.0 * M_PI * j / kCirclePoints;

    // One lateral branch continues counterclockwise from -pi, the other
    // clockwise from +pi; both start from the shared seed at x = 1 - rx.
    const auto march_circle = [&](bool ccw) {
        std::vector<cplx> out(kCirclePoints);
        cplx cc = goal, v0 = u0, v1 = u1;
        if (ccw) {
            for (int j = 0; j < kCirclePoints; ++j) {
                const cplx xj = 1.0 + rx * std::polar(1.0, phis[j]);
                const LocalTaylor t = local_taylor(a, b, c, cc, v0, v1);
                eval_taylor(t, xj, v0, v1);
                cc = xj;
                out[j] = v0;
            }
        } else {
            for (int j = kCirclePoints; j >= 0; --j) {
                const double ph = (j == kCirclePoints) ? M_PI : phis[j];
                const cplx xj = 1.0 + rx * std::polar(1.0, ph);
                const LocalTaylor t = local_taylor(a, b, c, cc, v0, v1);
                eval_taylor(t, xj, v0, v1);
                cc = xj;
                if (j < kCirclePoints) out[j] = v0;
            }
        }
        return out;
    };
    const std::vector<cplx> lower_first = march_circle(true);
    const std::vector<cplx> upper_first = march_circle(false);

    // DFT on the circle recovers the Taylor coefficients of the (analytic)
    // difference; re-center to the origin in the xi variable.
    BorelGerm out;
    out.alpha = 1;
    out.numeric_coeffs.resize(kOutTerms);
    double s_pow = 1.0;
    for (int m = 0; m < kOutTerms; ++m) {
        cplx acc = 0.0;
        for (int j = 0; j < kCirclePoints; ++j) {
            const cplx diff = lower_first[j] - upper_first[j];
            acc += diff * std::polar(1.0, -m * phis[j]);
        }
        acc /= static_cast<double>(kCirclePoints) * std::pow(rx, m);
        out.numeric_coeffs[m] = lambda * acc * s_pow;
        s_pow *= s;
    }
    return out;
}

std::vector<cplx> germ_taylor(const BorelGerm& g, int n) {
    std::vector<cplx> out;
    if (!g.numeric_coeffs.empty()) {
        const int k = std::min<int>(n, static_cast<int>(g.numeric_coeffs.size()));
        out.assign(g.numeric_coeffs.begin(), g.numeric_coeffs.begin() + k);
    } else {
        const int k = std::min<int>(n, static_cast<int>(g.coeffs.size()));
        out.reserve(k);
        const double pref = std::pow(M_PI, g.sqrtpi_power / 2.0);
        for (int m = 0; m < k; ++m) out.push_back(pref * to_complex(g.coeffs[m]));
    }
    return out;
}

cplx stokes_constant(ModelKind kind, const std::string& source_label,
                     cplx omega) {
    if (kind == ModelKind::gamma) {
        // Stirling tower: unit constant at 2 pi m for m = -1 and m >= 1.
        const double m_real = omega.real() / (2.0 * M_PI);
        const long m = std::lround(m_real);
        const bool on_lattice =
            std::abs(omega - cplx(2.0 * M_PI * m, 0.0)) < 1e-9 * (1.0 + std::abs(omega));
        if (on_lattice && (m == -1 || m >= 1)) return cplx(1.0, 0.0);
        throw std::domain_error("stokes_constant: no singularity of the gamma germ there");
    }

    const std::string target_label =
        kind == ModelKind::airy ? (source_label == "p+" ? "p-" : "p+")
                                : (source_label == "w+" ? "w-" : "w+");
    const BorelGerm source = model_germ(kind, source_label, 24);
    const BorelGerm target = model_germ(kind, target_label, 24);
    if (source.known_singularities.empty() ||
        std::abs(omega - source.known_singularities.front()) >
            1e-6 * (1.0 + std::abs(omega)))
        throw std::domain_error("stokes_constant: omega is not a germ singularity");

    double gap = std::abs(omega);
    for (const cplx& other : source.known_singularities) {
        const double d = std::abs(other - omega);
        if (d > 1e-9) gap = std::min(gap, d);
    }
    const BorelGerm var = variation(source, omega, 0.1 * gap);

    const std::vector<cplx> w = germ_taylor(var, 6);
    const std::vector<cplx> t = germ_taylor(target, 6);
    cplx num = 0.0;
    double den = 0.0;
    for (int m = 0; m < 6; ++m) {
        num += std::conj(t[m]) * w[m];
        den += std::norm(t[m]);
    }
    return num / den;
}

std::vector<SingularityRecord> singularity_records(
    ModelKind kind, const std::string& source_label) {
    std::vector<SingularityRecord> recs;
    switch (kind) {
        case ModelKind::airy: {
            const bool plus = source_label == "p+";
            const cplx omega(plus ? 4.0 / 3 : -4.0 / 3, 0.0);
            recs.push_back({omega, stokes_constant(kind, source_label, omega),
                            plus ? "p-" : "p+"});
            break;
        }
        case ModelKind::bessel: {
            const bool plus = source_label == "w+";
            const cplx omega(plus ? -2.0 : 2.0, 0.0);
            recs.push_back({omega, stokes_constant(kind, source_label, omega),
                            plus ? "w-" : "w+"});
            break;
        }
        case ModelKind::gamma: {
            const int n = std::stoi(source_label.substr(2));
            // Leading stretch of the tower; the lattice continues beyond.
            for (int m : {-1, 1, 2, 3, 4, 5, 6}) {
                const cplx omega(2.0 * M_PI * m, 0.0);
                recs.push_back({omega, cplx(1.0, 0.0),
                                "p_" + std::to_string(n - m)});
            }
            break;
        }
    }
    return recs;
}

}  // namespace thimble
