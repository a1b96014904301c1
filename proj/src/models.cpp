#include "thimble/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thimble {

namespace {
constexpr double kPi = std::numbers::pi;

void check_exp_guard(ModelKind kind, cplx z) {
    if (kind == ModelKind::bessel || kind == ModelKind::gamma) {
        if (std::abs(z.real()) > kExpGuard)
            throw std::range_error("eval_action: |Re z| exceeds exponential guard");
    }
}
}  // namespace

Action airy_action() { return {ModelKind::airy, Domain::plane, {1.0, 0.0}}; }

Action bessel_action(bool rotated) {
    Action a{ModelKind::bessel, Domain::cylinder_2pi, {1.0, 0.0}};
    if (rotated) a.rotation = cplx(0.0, -1.0);
    return a;
}

Action gamma_action(bool rotated) {
    Action a{ModelKind::gamma, Domain::plane, {1.0, 0.0}};
    if (rotated) a.rotation = cplx(0.0, -1.0);
    return a;
}

Action make_action(ModelKind kind, bool rotated) {
    switch (kind) {
        case ModelKind::airy:
            return airy_action();
        case ModelKind::bessel:
            return bessel_action(rotated);
        case ModelKind::gamma:
            return gamma_action(rotated);
    }
    throw std::logic_error("make_action: bad kind");
}

cplx eval_action(const Action& a, cplx z) {
    check_exp_guard(a.kind, z);
    switch (a.kind) {
        case ModelKind::airy:
            return a.rotation * (z * z * z / 3.0 - z);
        case ModelKind::bessel:
            return a.rotation * std::sinh(z);
        case ModelKind::gamma:
            return a.rotation * (std::exp(z) - z);
    }
    throw std::logic_error("eval_action: bad kind");
}

cplx eval_action_grad(const Action& a, cplx z) {
    check_exp_guard(a.kind, z);
    switch (a.kind) {
        case ModelKind::airy:
            return a.rotation * (z * z - 1.0);
        case ModelKind::bessel:
            return a.rotation * std::cosh(z);
        case ModelKind::gamma:
            return a.rotation * (std::exp(z) - 1.0);
    }
    throw std::logic_error("eval_action_grad: bad kind");
}

cplx eval_action_hess(const Action& a, cplx z) {
    check_exp_guard(a.kind, z);
    switch (a.kind) {
        case ModelKind::airy:
            return a.rotation * (2.0 * z);
        case ModelKind::bessel:
            return a.rotation * std::sinh(z);
        case ModelKind::gamma:
            return a.rotation * std::exp(z);
    }
    throw std::logic_error("eval_action_hess: bad kind");
}

std::vector<CriticalPoint> critical_points(const Action& a, const IndexWindow& w) {
    std::vector<CriticalPoint> pts;
    switch (a.kind) {
        case ModelKind::airy: {
            pts.push_back({"p+", {1.0, 0.0}, a.rotation * cplx(-2.0 / 3.0, 0.0),
                           a.rotation * cplx(2.0, 0.0), 0});
            pts.push_back({"p-", {-1.0, 0.0}, a.rotation * cplx(2.0 / 3.0, 0.0),
                           a.rotation * cplx(-2.0, 0.0), 0});
            break;
        }
        case ModelKind::bessel: {
            pts.push_back({"w+", {0.0, kPi / 2}, a.rotation * cplx(0.0, 1.0),
                           a.rotation * cplx(0.0, 1.0), 0});
            pts.push_back({"w-", {0.0, -kPi / 2}, a.rotation * cplx(0.0, -1.0),
                           a.rotation * cplx(0.0, -1.0), 0});
            break;
        }
        case ModelKind::gamma: {
            for (int n = w.n_min; n <= w.n_max; ++n) {
                CriticalPoint p;
                p.label = "p_" + std::to_string(n);
                p.position = cplx(0.0, 2.0 * kPi * n);
                p.value = a.rotation * cplx(1.0, -2.0 * kPi * n);
                p.hessian = a.rotation;  // exp(2*pi*i*n) = 1
                p.index = n;
                pts.push_back(p);
            }
            break;
        }
    }
    std::stable_sort(pts.begin(), pts.end(),
                     [](const CriticalPoint& x, const CriticalPoint& y) {
                         if (x.value.imag() != y.value.imag())
                             return x.value.imag() < y.value.imag();
                         return x.value.real() < y.value.real();
                     });
    return pts;
}

CriticalPoint critical_point_by_label(const Action& a, const std::string& label,
                                      const IndexWindow& w) {
    IndexWindow ww = w;
    if (a.kind == ModelKind::gamma && label.rfind("p_", 0) == 0) {
        // Widen so tower labels resolve no matter the caller's window.
        int n = std::stoi(label.substr(2));
        ww.n_min = std::min(ww.n_min, n);
        ww.n_max = std::max(ww.n_max, n);
    }
    for (const auto& p : critical_points(a, ww))
        if (p.label == label) return p;
    throw std::invalid_argument("critical_point_by_label: no point labelled " + label);
}

std::vector<double> stokes_phases(const Action& a, const IndexWindow& w) {
    auto pts = critical_points(a, w);
    std::vector<double> phases;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            cplx d = pts[i].value - pts[j].value;
            if (std::abs(d) < 1e-14) continue;
            double t = std::arg(d);  // Im(e^{-i t} d) = 0 along t and t + pi
            for (double cand : {t, t + kPi}) {
                double c = std::fmod(cand, 2.0 * kPi);
                if (c < 0) c += 2.0 * kPi;
                if (c > 2.0 * kPi - 1e-12) c = 0.0;
                bool dup = false;
                for (double q : phases)
                    if (std::abs(q - c) < 1e-12) dup = true;
                if (!dup) phases.push_back(c);
            }
        }
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

bool is_regular_phase(const Action& a, double theta, const IndexWindow& w) {
    auto pts = critical_points(a, w);
    cplx u = std::polar(1.0, -theta);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            cplx d = pts[i].value - pts[j].value;
            if (std::abs(d) < 1e-14) continue;
            if (std::abs((u * d).imag()) <= 1e-10) return false;
        }
    return true;
}

double F_value(const Action& a, double theta, cplx z) {
    return (std::polar(1.0, -theta) * eval_action(a, z)).real();
}

double G_value(const Action& a, double theta, cplx z) {
    return (std::polar(1.0, -theta) * eval_action(a, z)).imag();
}

double orientation_sign(const Action& a, const CriticalPoint& p) {
    // Pinned so that integrating e^{-A/hbar} along the oriented stable line
    // through p reproduces the standard Gaussian prefactors used by the
    // formal-series normalization (see series.cpp transmonomial table).
    switch (a.kind) {
        case ModelKind::airy:
            return -1.0;
        case ModelKind::bessel:
            return p.label == "w+" ? 1.0 : -1.0;
        case ModelKind::gamma:
            return 1.0;
    }
    return 1.0;
}

double domain_distance(const Action& a, cplx z1, cplx z2) {
    if (a.domain == Domain::cylinder_2pi) {
        double dx = z1.real() - z2.real();
        double dy = std::remainder(z1.imag() - z2.imag(), 2.0 * kPi);
        return std::hypot(dx, dy);
    }
    return std::abs(z1 - z2);
}

}  // namespace thimble
