#pragma once

// Exponential-integral models: action functions on the plane or the 2*pi*i
// cylinder, their critical data, and the phases at which distinct critical
// values line up.

#include <complex>
#include <string>
#include <vector>

namespace thimble {

using cplx = std::complex<double>;

enum class ModelKind { airy, bessel, gamma };
enum class Domain { plane, cylinder_2pi };

// rotation is a unit phase multiplying the raw action: A(z) = rotation * S(z).
// Identity by default; the gamma model is usually run pre-rotated by -i so its
// singular ray is the positive real axis.
struct Action {
    ModelKind kind = ModelKind::airy;
    Domain domain = Domain::plane;
    cplx rotation{1.0, 0.0};
};

// rotated = true pre-applies the model's Stokes phase (a -i factor for bessel
// and gamma) so the singular ray sits on the positive real axis.
Action airy_action();
Action bessel_action(bool rotated = false);
Action gamma_action(bool rotated = false);

Action make_action(ModelKind kind, bool rotated = false);

struct CriticalPoint {
    std::string label;   // "p+", "p-", "w+", "w-", "p_<n>"
    cplx position{};
    cplx value{};        // action value, rotation included
    cplx hessian{};      // second derivative, rotation included; never zero
    int index = 0;       // tower index for the gamma model, else 0
};

struct IndexWindow {
    int n_min = 0;
    int n_max = 0;
    bool contains(int n) const { return n >= n_min && n <= n_max; }
    int size() const { return n_max - n_min + 1; }
};

// Arguments with |Re| > kExpGuard are rejected for the exponential models.
inline constexpr double kExpGuard = 50.0;

cplx eval_action(const Action& a, cplx z);
cplx eval_action_grad(const Action& a, cplx z);
cplx eval_action_hess(const Action& a, cplx z);

// Sorted by (Im value, Re value); gradient vanishes to 1e-12 at each point.
// The window only matters for the gamma tower; {0, 0} keeps just p_0.
std::vector<CriticalPoint> critical_points(const Action& a,
                                           const IndexWindow& w = {});

CriticalPoint critical_point_by_label(const Action& a, const std::string& label,
                                      const IndexWindow& w = {});

// Phases theta in [0, 2*pi) where Im(e^{-i theta}(S(p)-S(q))) = 0 for some
// distinct pair of critical values; deduplicated to 1e-12.
std::vector<double> stokes_phases(const Action& a, const IndexWindow& w = {});

// True iff every distinct pair keeps |Im(e^{-i theta} dS)| > 1e-10.
bool is_regular_phase(const Action& a, double theta, const IndexWindow& w = {});

// F = Re(e^{-i theta} A), G = Im(e^{-i theta} A): descent value and conserved
// quantity of the associated flow.
double F_value(const Action& a, double theta, cplx z);
double G_value(const Action& a, double theta, cplx z);

// Orientation multiplier for the traced half-branch frame at p, fixed per
// model so thimble integrals reproduce the standard saddle normalizations.
double orientation_sign(const Action& a, const CriticalPoint& p);

// Distance respecting the cylinder identification w ~ w + 2*pi*i.
double domain_distance(const Action& a, cplx z1, cplx z2);

}  // namespace thimble
