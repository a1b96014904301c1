#include "thimble/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thimble {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

cplx hermite(double t, double h, cplx z0, cplx f0, cplx z1, cplx f1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * z0 + (t3 - 2 * t2 + t) * h * f0 +
           (-2 * t3 + 3 * t2) * z1 + (t3 - t2) * h * f1;
}

void resample_dense(FlowPath& path, double ds,
                    const std::vector<cplx>& derivs) {
    path.dense.clear();
    if (path.points.empty()) return;
    path.dense.push_back(path.points.front());
    std::size_t seg = 0;
    const double s_end = path.points.back().s;
    for (double s = ds; s < s_end; s += ds) {
        while (seg + 2 < path.points.size() && path.points[seg + 1].s < s)
            ++seg;
        const auto& n0 = path.points[seg];
        const auto& n1 = path.points[seg + 1];
        const double h = n1.s - n0.s;
        if (h <= 0) continue;
        const double t = (s - n0.s) / h;
        path.dense.push_back(
            {s, hermite(t, h, n0.z, derivs[seg], n1.z, derivs[seg + 1])});
    }
    if (path.points.size() > 1) path.dense.push_back(path.points.back());
}

}  // namespace

double FlowPath::arclength() const {
    double len = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        len += std::abs(points[i].z - points[i - 1].z);
    return len;
}

FlowPath FlowPath::reversed() const {
    FlowPath out = *this;
    std::reverse(out.points.begin(), out.points.end());
    std::reverse(out.dense.begin(), out.dense.end());
    const double s_end = points.empty() ? 0 : points.back().s;
    for (auto& n : out.points) n.s = s_end - n.s;
    for (auto& n : out.dense) n.s = s_end - n.s;
    return out;
}

cplx flow_field(const Action& a, double theta, cplx z) {
    return -std::conj(std::polar(1.0, -theta) * eval_action_grad(a, z));
}

Frame local_frame(const Action& a, double theta, const CriticalPoint& p) {
    // Linearized field at p: v' = -conj(H) conj(v) with
    // H = e^{-i theta} A''(p).  The stable direction e^{i psi} satisfies
    // 2 psi = theta - arg A''(p) (mod 2 pi), a half angle defined only up
    // to pi.  Taking the principal branch per theta would flip the frame
    // exactly where arg H crosses +-pi, which for one saddle per model is
    // the wall itself; instead the branch is fixed at the wall phase and
    // continued linearly in theta, so traced orientations never jump while
    // crossing the wall.
    const double anchor = a.kind == ModelKind::airy ? 0.0 : M_PI / 2.0;
    double psi = (anchor - std::arg(p.hessian)) / 2.0;
    while (psi <= -M_PI / 2.0) psi += M_PI;
    while (psi > M_PI / 2.0) psi -= M_PI;
    psi += (theta - anchor) / 2.0;
    Frame f;
    f.stable_dir = std::polar(1.0, psi);
    f.unstable_dir = std::polar(1.0, psi + M_PI / 2.0);
    return f;
}

IntegrationResult integrate_flow(const Action& a, double theta, cplx z0,
                                 const IntegrationOptions& opts,
                                 const std::vector<CriticalPoint>& targets,
                                 bool reversed) {
    const double sign = reversed ? -1.0 : 1.0;
    auto field = [&](cplx z) { return sign * flow_field(a, theta, z); };

    IntegrationResult res;
    FlowPath& path = res.path;
    path.theta = theta;
    path.level_G = G_value(a, theta, z0);
    path.time_reversed = reversed;
    path.points.push_back({0.0, z0});

    std::vector<cplx> derivs;  // field at accepted nodes, for dense output

    double s = 0;
    cplx z = z0;
    cplx k1;
    try {
        k1 = field(z);
    } catch (const std::range_error&) {
        res.reason = StopReason::escaped;
        return res;
    }
    derivs.push_back(k1);

    auto check_capture = [&](cplx at) -> std::optional<int> {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (domain_distance(a, at, targets[i].position) <
                opts.capture_radius) {
                try {
                    if (std::abs(eval_action_grad(a, at)) < opts.capture_grad)
                        return static_cast<int>(i);
                } catch (const std::range_error&) {
                }
            }
        }
        return std::nullopt;
    };

    double h = std::min(opts.max_step, 1e-3);
    const double h_min = 1e-13;
    bool done = false;
    while (!done) {
        if (auto hit = check_capture(z)) {
            res.reason = StopReason::captured;
            res.captured_target = hit;
            break;
        }
        double f_here;
        try {
            f_here = F_value(a, theta, z);
        } catch (const std::range_error&) {
            res.reason = StopReason::escaped;
            break;
        }
        if (std::abs(f_here) > opts.f_cutoff) {
            res.reason = StopReason::escaped;
            break;
        }
        if (s >= opts.s_max) {
            res.reason = StopReason::reached_s_max;
            break;
        }
        h = std::min(h, opts.s_max - s + 1e-12);
        h = std::min(h, opts.max_step);

        // Attempt one adaptive step from (s, z) with FSAL k1.
        for (;;) {
            if (h < h_min) {
                res.reason = StopReason::step_underflow;
                done = true;
                break;
            }
            cplx k2, k3, k4, k5, k6, k7, z_new;
            bool eval_ok = true;
            try {
                k2 = field(z + h * (a21 * k1));
                k3 = field(z + h * (a31 * k1 + a32 * k2));
                k4 = field(z + h * (a41 * k1 + a42 * k2 + a43 * k3));
                k5 = field(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
                k6 = field(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                                    a65 * k5));
                z_new = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
                k7 = field(z_new);
            } catch (const std::range_error&) {
                eval_ok = false;
            }
            if (!eval_ok) {
                h *= 0.5;
                continue;
            }
            const cplx err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                      e6 * k6 + e7 * k7);
            const double sc =
                opts.abs_tol +
                opts.rel_tol * std::max(std::abs(z), std::abs(z_new));
            const double err = std::abs(err_vec) / sc;
            if (err <= 1.0) {
                s += h;
                z = z_new;
                k1 = k7;
                path.points.push_back({s, z});
                derivs.push_back(k7);
                const double fac =
                    err == 0 ? 5.0
                             : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                h = std::min(h * fac, opts.max_step);
                break;
            }
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
        }
        // Unconditional cap so pathological fields cannot loop forever.
        if (path.points.size() > 2000000) {
            res.reason = StopReason::step_underflow;
            break;
        }
    }

    if (opts.dense_ds > 0) resample_dense(path, opts.dense_ds, derivs);
    return res;
}

ThimblePair trace_thimble(const Action& a, double theta,
                          const CriticalPoint& p,
                          const IntegrationOptions& opts) {
    const Frame fr = local_frame(a, theta, p);
    const double sigma = orientation_sign(a, p);
    std::vector<CriticalPoint> others;
    for (const auto& q : critical_points(a))
        if (q.label != p.label) others.push_back(q);
    // Widen the index window so cylinder/tower models still expose the
    // neighbours a branch can terminate on.
    if (a.kind == ModelKind::gamma) {
        others.clear();
        IndexWindow w{p.index - 3, p.index + 3};
        for (const auto& q : critical_points(a, w))
            if (q.label != p.label) others.push_back(q);
    }

    auto launch = [&](cplx dir, bool stable) {
        const cplx z0 = p.position + opts.seed_eps * dir;
        auto r = integrate_flow(a, theta, z0, opts, others, stable);
        r.path.kind = stable ? PathKind::stable_branch : PathKind::unstable_branch;
        return r.path;
    };

    ThimblePair pair;
    pair.critical = p;
    pair.domain = a.domain;
    pair.theta = theta;
    pair.stable_a = launch(sigma * fr.stable_dir, true);
    pair.stable_b = launch(-sigma * fr.stable_dir, true);
    pair.unstable_c = launch(sigma * fr.unstable_dir, false);
    pair.unstable_d = launch(-sigma * fr.unstable_dir, false);
    return pair;
}

FlowPath reduce_cylinder(const Action& a, const FlowPath& path) {
    if (a.domain != Domain::cylinder_2pi) return path;
    FlowPath out = path;
    auto fold = [](std::vector<PathNode>& nodes, int* net) {
        int prev_k = 0;
        bool first = true;
        int first_k = 0;
        for (auto& n : nodes) {
            const int k = static_cast<int>(
                std::ceil((n.z.imag() - M_PI) / (2 * M_PI) - 1e-15));
            n.z = {n.z.real(), n.z.imag() - 2 * M_PI * k};
            if (first) {
                first_k = k;
                first = false;
            }
            prev_k = k;
        }
        if (net) *net = prev_k - first_k;
    };
    int net = 0;
    fold(out.points, &net);
    fold(out.dense, nullptr);
    out.wrap_count = net;
    return out;
}

FlowPath join_branches(const FlowPath& out_minus, const FlowPath& out_plus,
                       PathKind kind) {
    FlowPath joined;
    joined.theta = out_plus.theta;
    joined.level_G = out_plus.level_G;
    joined.kind = kind;
    joined.wrap_count = out_minus.wrap_count + out_plus.wrap_count;

    const FlowPath rev = out_minus.reversed();
    // Seeds sit at p -/+ eps * dir, so the bridge segment between the two
    // half-branches passes through the critical point in its interior; no
    // vertex is inserted there, which keeps pairings transversal at p.
    joined.points = rev.points;
    joined.points.insert(joined.points.end(), out_plus.points.begin(),
                         out_plus.points.end());

    double s = 0;
    for (std::size_t i = 0; i < joined.points.size(); ++i) {
        if (i > 0) s += std::abs(joined.points[i].z - joined.points[i - 1].z);
        joined.points[i].s = s;
    }

    joined.dense = rev.dense;
    joined.dense.insert(joined.dense.end(), out_plus.dense.begin(),
                        out_plus.dense.end());
    s = 0;
    for (std::size_t i = 0; i < joined.dense.size(); ++i) {
        if (i > 0) s += std::abs(joined.dense[i].z - joined.dense[i - 1].z);
        joined.dense[i].s = s;
    }
    return joined;
}

}  // namespace thimble
