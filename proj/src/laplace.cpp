#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "thimble/laplace.hpp"
#include "thimble/series.hpp"

namespace thimble {
namespace {

constexpr double kRelQuad = 1e-12;   // panel agreement target
constexpr double kNudge = 1e-13;     // off-axis shift fixing the boundary value

struct GaussRule {
    std::array<double, 32> x, w;
};

// Gauss-Legendre nodes by Newton iteration on P_32.
const GaussRule& gl32() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = 32;
        for (int k = 0; k < n; ++k) {
            double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            r.x[k] = x;
            r.w[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

using Integrand = std::function<cplx(double)>;

cplx gl_panel(const Integrand& f, double a, double b) {
    const GaussRule& r = gl32();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0.0;
    for (int k = 0; k < 32; ++k) s += r.w[k] * f(mid + half * r.x[k]);
    return s * half;
}

cplx adapt_rec(const Integrand& f, double a, double b, cplx whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const cplx left = gl_panel(f, a, m);
    const cplx right = gl_panel(f, m, b);
    const double err = std::abs(left + right - whole);
    const double floor_err =
        1e-15 * (std::abs(left) + std::abs(right) + std::abs(whole));
    if (err <= tol || err <= floor_err) return left + right;
    if (depth <= 0) {
        std::ostringstream os;
        os << "quadrature panel did not converge; achieved error " << err
           << " against tolerance " << tol;
        throw std::runtime_error(os.str());
    }
    return adapt_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adapt_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

// A piece of the deformed ray: straight chunk or detour semicircle.
struct Piece {
    Integrand f;
    cplx rough{};
};

void add_straight(std::vector<Piece>& pieces, const std::function<cplx(cplx)>& g,
                  double hbar, cplx z0, cplx z1) {
    const double len = std::abs(z1 - z0);
    if (len < 1e-15) return;
    const int chunks = std::max(1, static_cast<int>(std::ceil(len / (4.0 * hbar))));
    for (int c = 0; c < chunks; ++c) {
        const cplx a = z0 + (z1 - z0) * (static_cast<double>(c) / chunks);
        const cplx b = z0 + (z1 - z0) * (static_cast<double>(c + 1) / chunks);
        Piece p;
        p.f = [g, hbar, a, b](double t) {
            const cplx xi = a + (b - a) * t;
            return std::exp(-xi / hbar) * g(xi) * (b - a);
        };
        pieces.push_back(std::move(p));
    }
}

void add_arc(std::vector<Piece>& pieces, const std::function<cplx(cplx)>& g,
             double hbar, cplx center, double radius, double phi0, double phi1) {
    const int chunks = 4;
    for (int c = 0; c < chunks; ++c) {
        const double a = phi0 + (phi1 - phi0) * c / chunks;
        const double b = phi0 + (phi1 - phi0) * (c + 1) / chunks;
        Piece p;
        p.f = [g, hbar, center, radius, a, b](double t) {
            const double phi = a + (b - a) * t;
            const cplx xi = center + radius * std::polar(1.0, phi);
            const cplx dxi = radius * cplx(0.0, 1.0) * std::polar(1.0, phi) * (b - a);
            return std::exp(-xi / hbar) * g(xi) * dxi;
        };
        pieces.push_back(std::move(p));
    }
}

cplx integrate_pieces(std::vector<Piece>& pieces) {
    cplx rough_total = 0.0;
    double rough_abs = 0.0;
    for (Piece& p : pieces) {
        p.rough = gl_panel(p.f, 0.0, 1.0);
        rough_total += p.rough;
        rough_abs += std::abs(p.rough);
    }
    const double ref = std::max(std::abs(rough_total), 1e-3 * rough_abs);
    int active = 0;
    for (const Piece& p : pieces)
        if (std::abs(p.rough) > 1e-17 * ref) ++active;
    const double tol = kRelQuad * std::max(ref, 1e-300) / std::max(active, 1);
    cplx total = 0.0;
    for (const Piece& p : pieces) {
        if (std::abs(p.rough) <= 1e-17 * ref) {
            total += p.rough;
            continue;
        }
        total += adapt_rec(p.f, 0.0, 1.0, p.rough, tol, 28);
    }
    return total;
}

std::vector<double> on_ray_singularities(const BorelGerm& g) {
    std::vector<double> out;
    for (const cplx& s : g.known_singularities)
        if (std::abs(s.imag()) <= 1e-9 * (1.0 + std::abs(s)) && s.real() > 1e-12)
            out.push_back(s.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

LateralRay make_lateral_ray(const BorelGerm& g, RaySide side, double hbar) {
    if (hbar <= 0) throw std::invalid_argument("make_lateral_ray: hbar must be positive");
    LateralRay ray;
    ray.side = side;

    const std::vector<double> sing = on_ray_singularities(g);
    double cutoff = 40.0 * hbar;
    double reach = 0.0;
    for (double s : sing)
        if (s <= 40.0 * hbar) reach = std::max(reach, s);
    cutoff = 40.0 * hbar + reach;
    // Keep the endpoint clear of any singularity.
    for (double s : sing)
        while (std::abs(cutoff - s) < 1e-3) cutoff += 3.7e-3;
    ray.cutoff = cutoff;

    if (!sing.empty()) {
        double gap = sing.front();
        for (std::size_t i = 1; i < sing.size(); ++i)
            gap = std::min(gap, sing[i] - sing[i - 1]);
        const double radius = 0.25 * gap;
        for (double s : sing)
            if (s + radius < cutoff) ray.detours.push_back({cplx(s, 0.0), radius});
    }
    return ray;
}

cplx lateral_laplace(const BorelGerm& g, const LateralRay& ray, double hbar) {
    if (hbar <= 0) throw std::invalid_argument("lateral_laplace: hbar must be positive");
    if (ray.cutoff <= 0) throw std::invalid_argument("lateral_laplace: ray cutoff not set");

    // Every detour must keep clear of the other known singularities.
    for (const Detour& d : ray.detours) {
        for (const cplx& s : g.known_singularities) {
            const double sep = std::abs(s - d.center);
            if (sep <= 1e-9 * (1.0 + std::abs(s))) continue;  // its own center
            if (sep - d.radius < 0.5 * d.radius)
                throw std::invalid_argument(
                    "lateral_laplace: detour passes too close to a singularity");
        }
        if (d.center.real() + d.radius >= ray.cutoff)
            throw std::invalid_argument("lateral_laplace: cutoff inside a detour");
    }

    const GermEvaluator ev(g);
    const double side_im = ray.side == RaySide::left ? -1.0 : 1.0;
    auto g_eval = [&ev, side_im](cplx xi) {
        return ev(xi + cplx(0.0, side_im * kNudge * (1.0 + std::abs(xi))));
    };

    std::vector<Piece> pieces;
    const double T = ray.cutoff;

    if (!g.closed_form && !ray.detours.empty()) {
        // No closed form to continue around small semicircles: offset the
        // whole middle stretch onto a parallel line on the side's half plane.
        const double depth =
            std::min(M_PI / 2.0, 0.5 * ray.detours.front().center.real());
        const cplx drop(0.0, side_im * depth);
        add_straight(pieces, g_eval, hbar, cplx(0.0, 0.0), drop);
        add_straight(pieces, g_eval, hbar, drop, cplx(T, 0.0) + drop);
        add_straight(pieces, g_eval, hbar, cplx(T, 0.0) + drop, cplx(T, 0.0));
    } else {
        std::vector<Detour> det = ray.detours;
        std::sort(det.begin(), det.end(), [](const Detour& a, const Detour& b) {
            return a.center.real() < b.center.real();
        });
        double at = 0.0;
        for (const Detour& d : det) {
            add_straight(pieces, g_eval, hbar, cplx(at, 0.0),
                         cplx(d.center.real() - d.radius, 0.0));
            if (ray.side == RaySide::left)
                add_arc(pieces, g_eval, hbar, d.center, d.radius, M_PI, 2.0 * M_PI);
            else
                add_arc(pieces, g_eval, hbar, d.center, d.radius, M_PI, 0.0);
            at = d.center.real() + d.radius;
        }
        add_straight(pieces, g_eval, hbar, cplx(at, 0.0), cplx(T, 0.0));
    }

    const cplx total = integrate_pieces(pieces);

    // Truncated-tail invariant at the cutoff.
    const double tail =
        std::exp(-T / hbar) * std::max(1.0, std::abs(g_eval(cplx(T, 0.0)))) * hbar;
    if (tail > 1e-14 * std::max(1.0, std::abs(total))) {
        std::ostringstream os;
        os << "lateral_laplace: cutoff " << T << " leaves a tail of order " << tail;
        throw std::runtime_error(os.str());
    }
    return total;
}

cplx contour_integral(const std::function<cplx(cplx)>& action,
                      const std::vector<cplx>& polyline, double hbar,
                      bool closed) {
    if (polyline.size() < 2)
        throw std::invalid_argument("contour_integral: need at least two points");
    if (hbar <= 0) throw std::invalid_argument("contour_integral: hbar must be positive");

    auto weight = [&](cplx z) {
        const cplx w = -action(z) / hbar;
        if (w.real() > 700.0)
            throw std::runtime_error(
                "contour_integral: integrand overflow; contour leaves the "
                "convergence region");
        return std::exp(w);
    };

    std::vector<Piece> pieces;
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
        const cplx a = polyline[k], b = polyline[k + 1];
        if (std::abs(b - a) < 1e-15) continue;
        Piece p;
        p.f = [&weight, a, b](double t) { return weight(a + (b - a) * t) * (b - a); };
        pieces.push_back(std::move(p));
    }
    if (pieces.empty())
        throw std::invalid_argument("contour_integral: degenerate polyline");
    const cplx total = integrate_pieces(pieces);

    if (!closed) {
        auto end_estimate = [&](cplx z, cplx znext) {
            const cplx dir = (znext - z) / std::abs(znext - z);
            const double h = 1e-5 * (1.0 + std::abs(z));
            const cplx grad = (action(z + h * dir) - action(z - h * dir)) / (2.0 * h);
            return hbar * std::abs(weight(z)) / std::max(std::abs(grad), 0.1);
        };
        const double est = end_estimate(polyline.front(), polyline[1]) +
                           end_estimate(polyline.back(), polyline[polyline.size() - 2]);
        if (est > 1e-10 * std::abs(total)) {
            std::ostringstream os;
            os << "contour_integral: cutoff too small; endpoint tail estimate "
               << est << " against " << std::abs(total);
            throw std::runtime_error(os.str());
        }
    }
    return total;
}

cplx thimble_integral(const Action& a, const FlowPath& path, double hbar) {
    if (path.points.size() < 2)
        throw std::invalid_argument("thimble_integral: empty path");
    std::vector<cplx> poly;
    poly.reserve(path.points.size());
    for (const PathNode& n : path.points) poly.push_back(n.z);
    const bool closed = a.domain == Domain::cylinder_2pi &&
                        domain_distance(a, poly.front(), poly.back()) < 1e-9;
    auto fn = [&a](cplx z) { return eval_action(a, z); };
    return contour_integral(fn, poly, hbar, closed);
}

cplx thimble_integral(const Action& a, const ThimblePair& pair, double hbar) {
    const FlowPath cycle =
        join_branches(pair.stable_b, pair.stable_a, PathKind::stable_branch);
    return thimble_integral(a, cycle, hbar);
}

LateralReport verify_thimble_equals_lateral(ModelKind model,
                                            const std::string& saddle,
                                            RaySide side,
                                            const std::vector<double>& hbar_grid) {
    LateralReport report;
    report.model = model;
    report.saddle = saddle;
    report.side = side;

    const Action a = make_action(model, model != ModelKind::airy);
    const CriticalPoint p = critical_point_by_label(a, saddle);
    const double theta = side == RaySide::left ? -0.1 : 0.1;

    IntegrationOptions opts;
    opts.f_cutoff = 30.0 + std::abs(p.value);
    opts.s_max = 1000.0;
    const ThimblePair pair = trace_thimble(a, theta, p, opts);

    const TransMonomial tm = transmonomial(model, saddle, 1);
    const BorelGerm germ = model_germ(model, saddle, 40);

    for (double hbar : hbar_grid) {
        const LateralRay ray = make_lateral_ray(germ, side, hbar);
        const cplx core = lateral_laplace(germ, ray, hbar);
        const cplx lateral = std::exp(-tm.action / hbar) * tm.gauss *
                             std::pow(hbar, 0.5 * tm.hbar_half_power) * core / hbar;
        const cplx th = thimble_integral(a, pair, hbar);
        LateralRow row;
        row.hbar = hbar;
        row.thimble = th;
        row.lateral = lateral;
        row.rel_dev = std::abs(th - lateral) /
                      std::max({std::abs(th), std::abs(lateral), 1e-300});
        report.max_rel_dev = std::max(report.max_rel_dev, row.rel_dev);
        report.rows.push_back(row);
    }
    return report;
}

std::vector<double> default_hbar_grid() { return {0.05, 0.08, 0.1, 0.15, 0.2}; }

std::vector<double> gamma_fit_hbar_grid() {
    std::vector<double> g(16);
    for (int i = 0; i < 16; ++i)
        g[i] = 0.4 * std::pow(3.0 / 0.4, i / 15.0);
    return g;
}

NumericFit fit_stokes_matrix_numeric(ModelKind model, double theta_star,
                                     const std::vector<double>& hbar_grid,
                                     const IndexWindow& w) {
    Action a = make_action(model);
    a.rotation *= std::polar(1.0, -theta_star);

    const bool tower = model == ModelKind::gamma;
    // Column sums over sources reach below any finite window; extending the
    // source basis keeps the reported block free of truncation bias.
    const int depth = 8;
    IndexWindow ext = w;
    if (tower) ext.n_min -= depth;

    std::vector<CriticalPoint> pts = critical_points(a, ext);
    std::stable_sort(pts.begin(), pts.end(),
                     [](const CriticalPoint& x, const CriticalPoint& y) {
                         return x.value.real() > y.value.real();
                     });
    const int n_ext = static_cast<int>(pts.size());

    std::vector<double> grid = hbar_grid;
    if (grid.empty()) grid = tower ? gamma_fit_hbar_grid() : default_hbar_grid();
    const int n_h = static_cast<int>(grid.size());

    // Trace once per saddle and side, integrate per hbar.
    std::vector<std::vector<cplx>> I_left(n_ext, std::vector<cplx>(n_h));
    std::vector<std::vector<cplx>> I_right(n_ext, std::vector<cplx>(n_h));
    for (int k = 0; k < n_ext; ++k) {
        IntegrationOptions opts;
        opts.f_cutoff = (tower ? 100.0 : 60.0) + std::abs(pts[k].value);
        opts.s_max = tower ? 3000.0 : 500.0;
        const ThimblePair below = trace_thimble(a, -0.1, pts[k], opts);
        const ThimblePair above = trace_thimble(a, 0.1, pts[k], opts);
        for (int r = 0; r < n_h; ++r) {
            I_left[k][r] = thimble_integral(a, below, grid[r]);
            I_right[k][r] = thimble_integral(a, above, grid[r]);
        }
    }

    // Window block of the extended basis.
    std::vector<int> window_slots;
    for (int k = 0; k < n_ext; ++k)
        if (!tower || pts[k].index >= w.n_min) window_slots.push_back(k);
    const int n_win = static_cast<int>(window_slots.size());

    NumericFit fit;
    for (int k : window_slots) fit.basis.push_back(pts[k].label);
    fit.raw_plus.assign(n_win, std::vector<cplx>(n_win, 0.0));
    fit.raw_minus.assign(n_win, std::vector<cplx>(n_win, 0.0));

    // Column-by-column restricted least squares: sources run from the column
    // slot up to `depth` slots earlier (all of them for the two-saddle models).
    auto solve_direction = [&](const std::vector<std::vector<cplx>>& sources,
                               const std::vector<std::vector<cplx>>& targets,
                               std::vector<std::vector<cplx>>& raw) {
        for (int jc = 0; jc < n_win; ++jc) {
            const int j = window_slots[jc];
            const int k_lo = tower ? std::max(0, j - depth) : 0;
            const int nk = j - k_lo + 1;
            Eigen::MatrixXcd A(n_h, nk);
            Eigen::VectorXcd b(n_h);
            for (int r = 0; r < n_h; ++r) {
                double norm = 0.0;
                for (int k = k_lo; k <= j; ++k)
                    norm = std::max(norm, std::abs(sources[k][r]));
                if (norm == 0.0) norm = 1.0;
                for (int k = k_lo; k <= j; ++k)
                    A(r, k - k_lo) = sources[k][r] / norm;
                b(r) = targets[j][r] / norm;
            }
            const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
            for (int k = k_lo; k <= j; ++k) {
                const auto slot = std::find(window_slots.begin(), window_slots.end(), k);
                if (slot == window_slots.end()) continue;
                const int kc = static_cast<int>(slot - window_slots.begin());
                raw[kc][jc] = x(k - k_lo);
            }
        }
    };
    solve_direction(I_right, I_left, fit.raw_plus);
    solve_direction(I_left, I_right, fit.raw_minus);

    // Round to Gaussian integers where the residual allows it.
    auto round_matrix = [&](const std::vector<std::vector<cplx>>& raw,
                            MatrixDirection dir) {
        StokesMatrix m;
        m.basis = fit.basis;
        m.side = MatrixSide::resurgent;
        m.direction = dir;
        m.entries.assign(n_win, std::vector<GaussRat>(n_win, GaussRat()));
        for (int i = 0; i < n_win; ++i)
            for (int j = 0; j < n_win; ++j) {
                const double re = std::round(raw[i][j].real());
                const double im = std::round(raw[i][j].imag());
                const double res = std::abs(raw[i][j] - cplx(re, im));
                fit.max_round_residual = std::max(fit.max_round_residual, res);
                m.entries[i][j] = GaussRat(Rat(static_cast<long long>(re)),
                                           Rat(static_cast<long long>(im)));
            }
        return m;
    };
    fit.plus = round_matrix(fit.raw_plus, MatrixDirection::plus);
    fit.minus = round_matrix(fit.raw_minus, MatrixDirection::minus);
    fit.rounded_ok = fit.max_round_residual <= 1e-3;
    return fit;
}

}  // namespace thimble
