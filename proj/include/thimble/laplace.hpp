#pragma once

// Laplace integration on both sides of a singular ray: lateral Borel sums
// with detours, direct thimble quadrature, the equality check between the
// two, and the numeric side of the jump matrices.

#include <functional>
#include <string>
#include <vector>

#include "thimble/borel.hpp"
#include "thimble/flow.hpp"
#include "thimble/models.hpp"
#include "thimble/wall.hpp"

namespace thimble {

// left passes below the positive real axis (the theta* - delta sum),
// right passes above.
enum class RaySide { left, right };

struct Detour {
    cplx center{};
    double radius = 0;
};

struct LateralRay {
    double direction = 0;  // germs arrive pre-rotated, so the ray is axis-aligned
    RaySide side = RaySide::right;
    std::vector<Detour> detours;
    double cutoff = 0;
};

// Detours around the on-ray entries of the germ's singularity table, radius
// a quarter of the smallest gap, cutoff far enough that the truncated tail
// is below 1e-14 of the result.
LateralRay make_lateral_ray(const BorelGerm& g, RaySide side, double hbar);

// (Borel-plane factor only.)  Integrates e^{-xi/hbar} g(xi) along the ray
// with the side's detours.  Closed-form germs collapse onto the axis with
// semicircles; table-tagged germs without a closed form take a rectangular
// offset path instead.  Throws if panels fail to converge or the cutoff
// tail is not negligible.
cplx lateral_laplace(const BorelGerm& g, const LateralRay& ray, double hbar);

// Adaptive Gauss-Legendre quadrature of e^{-action(z)/hbar} along a
// polyline contour.  closed = true skips the endpoint tail check (used for
// loops around the cylinder).
cplx contour_integral(const std::function<cplx(cplx)>& action,
                      const std::vector<cplx>& polyline, double hbar,
                      bool closed = false);

cplx thimble_integral(const Action& a, const FlowPath& path, double hbar);
cplx thimble_integral(const Action& a, const ThimblePair& pair, double hbar);

struct LateralRow {
    double hbar = 0;
    cplx thimble{};
    cplx lateral{};
    double rel_dev = 0;
};

struct LateralReport {
    ModelKind model = ModelKind::airy;
    std::string saddle;
    RaySide side = RaySide::right;
    std::vector<LateralRow> rows;
    double max_rel_dev = 0;
};

// Compares the thimble integral at theta = -+0.1 (left/right) against the
// lateral Borel sum of the saddle's asymptotic series, in the rotated frame
// where the wall sits at phase zero.
LateralReport verify_thimble_equals_lateral(ModelKind model,
                                            const std::string& saddle,
                                            RaySide side,
                                            const std::vector<double>& hbar_grid);

// Least-squares fit of I^< = I^> R+ (and the reverse) across the hbar grid,
// with entries rounded to Gaussian integers when every residual is below
// 1e-3; otherwise rounded_ok stays false and only the raw entries are
// meaningful.  The tower model is fit on a source basis extended below the
// reported window so the truncated column sums stay unbiased.
struct NumericFit {
    std::vector<std::string> basis;  // window labels, decreasing F order
    std::vector<std::vector<cplx>> raw_plus, raw_minus;
    StokesMatrix plus, minus;  // side = resurgent; valid when rounded_ok
    bool rounded_ok = false;
    double max_round_residual = 0;
};

NumericFit fit_stokes_matrix_numeric(ModelKind model, double theta_star,
                                     const std::vector<double>& hbar_grid,
                                     const IndexWindow& w = {});

// {0.05, 0.08, 0.1, 0.15, 0.2}
std::vector<double> default_hbar_grid();
// Wide geometric grid; the tower's neighbour hierarchy needs large hbar to
// separate distant entries and many points to keep the fit determined.
std::vector<double> gamma_fit_hbar_grid();

}  // namespace thimble
