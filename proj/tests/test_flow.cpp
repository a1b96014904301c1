#include <cmath>
#include <complex>

#include "doctest.h"
#include "thimble/flow.hpp"

using namespace thimble;

namespace {

// Composite Simpson over uniformly spaced dense nodes (odd count assumed
// handled by a trapezoid tail).
double simpson(const std::vector<double>& f, double h) {
    double acc = 0;
    std::size_t i = 0;
    for (; i + 2 < f.size(); i += 2) acc += (f[i] + 4 * f[i + 1] + f[i + 2]);
    acc *= h / 3.0;
    if (i + 1 < f.size()) acc += 0.5 * h * (f[i] + f[i + 1]);
    return acc;
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("flow field is the conjugated gradient") {
    const cplx z{0.7, -0.3};
    for (ModelKind kind : {ModelKind::airy, ModelKind::bessel, ModelKind::gamma}) {
        const Action a = make_action(kind);
        for (double theta : {0.0, 1.1}) {
            const cplx expect =
                -std::conj(std::polar(1.0, -theta) * eval_action_grad(a, z));
            CHECK(std::abs(flow_field(a, theta, z) - expect) < 1e-14);
        }
    }
}

TEST_CASE("local frame at the airy saddles") {
    const Action a = airy_action();
    const Frame fp = local_frame(a, 0.0, critical_point_by_label(a, "p+"));
    CHECK(std::abs(fp.stable_dir - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(fp.unstable_dir - cplx(0.0, 1.0)) < 1e-12);
    const Frame fm = local_frame(a, 0.0, critical_point_by_label(a, "p-"));
    CHECK(std::abs(fm.stable_dir - cplx(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(fm.unstable_dir - cplx(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("frame invariants for every model") {
    for (ModelKind kind : {ModelKind::airy, ModelKind::bessel, ModelKind::gamma}) {
        const Action a = make_action(kind);
        for (double theta : {0.25, 1.9}) {
            for (const auto& p : critical_points(a, {-1, 1})) {
                const Frame f = local_frame(a, theta, p);
                CHECK(std::abs(f.stable_dir) == doctest::Approx(1.0));
                CHECK(std::abs(f.unstable_dir - cplx(0, 1) * f.stable_dir) < 1e-12);
                // Along the stable direction the rotated action grows with a
                // real positive quadratic term.
                const cplx q = std::polar(1.0, -theta) * p.hessian * f.stable_dir *
                               f.stable_dir;
                CHECK(q.real() > 0.0);
                CHECK(std::abs(q.imag()) < 1e-10 * std::abs(q));
            }
            // Continuity across the wall, where a per-theta principal half
            // angle would flip the frame of one saddle per model.
            const double wall = kind == ModelKind::airy ? 0.0 : M_PI / 2;
            for (const auto& p : critical_points(a, {-1, 1})) {
                const cplx lo = local_frame(a, wall - 0.1, p).stable_dir;
                const cplx hi = local_frame(a, wall + 0.1, p).stable_dir;
                CHECK(std::abs(hi - lo) < 0.2);
            }
        }
    }
}

TEST_CASE("descent decreases F and conserves G") {
    const Action a = airy_action();
    IntegrationOptions opts;
    const cplx z0{0.5, 0.5};
    const double theta = 0.3;
    const IntegrationResult res = integrate_flow(a, theta, z0, opts);
    CHECK(res.reason == StopReason::escaped);
    REQUIRE(res.path.points.size() > 3);

    double prev = F_value(a, theta, res.path.points.front().z);
    const double g0 = G_value(a, theta, z0);
    double drift = 0;
    for (const auto& n : res.path.points) {
        const double f = F_value(a, theta, n.z);
        CHECK(f <= prev + 1e-12);
        prev = f;
        drift = std::max(drift, std::abs(G_value(a, theta, n.z) - g0));
    }
    CHECK(drift <= 1e-9 * (1.0 + res.path.arclength()));
}

TEST_CASE("F drop equals the integrated squared speed") {
    const Action a = bessel_action();
    IntegrationOptions opts;
    opts.max_step = 0.002;
    opts.dense_ds = 0.001;
    opts.f_cutoff = 10.0;
    const double theta = 0.4;
    const IntegrationResult res = integrate_flow(a, theta, cplx(0.3, 1.0), opts);
    REQUIRE(res.path.dense.size() > 10);

    // The resampler keeps the true endpoint, so the final interval is
    // usually partial; integrate over the uniformly spaced prefix only.
    std::size_t n = 1;
    while (n < res.path.dense.size() &&
           std::abs(res.path.dense[n].s - res.path.dense[n - 1].s -
                    opts.dense_ds) < 1e-7)
        ++n;
    if (n % 2 == 0) --n;  // even interval count for Simpson
    REQUIRE(n > 10);

    std::vector<double> speed2;
    for (std::size_t i = 0; i < n; ++i)
        speed2.push_back(std::norm(flow_field(a, theta, res.path.dense[i].z)));
    const double drop = F_value(a, theta, res.path.dense.front().z) -
                        F_value(a, theta, res.path.dense[n - 1].z);
    const double integral = simpson(speed2, opts.dense_ds);
    CHECK(std::abs(drop - integral) <= 1e-7 * std::max(1.0, drop));
}

TEST_CASE("capture at a downhill saddle") {
    const Action a = airy_action();
    const auto targets = critical_points(a);
    IntegrationOptions opts;
    const IntegrationResult down =
        integrate_flow(a, 0.0, cplx(0.5, 0.0), opts, targets);
    REQUIRE(down.reason == StopReason::captured);
    REQUIRE(down.captured_target.has_value());
    CHECK(targets[static_cast<std::size_t>(*down.captured_target)].label == "p+");

    const IntegrationResult up =
        integrate_flow(a, 0.0, cplx(0.5, 0.0), opts, targets, true);
    REQUIRE(up.reason == StopReason::captured);
    CHECK(targets[static_cast<std::size_t>(*up.captured_target)].label == "p-");
}

TEST_CASE("stop reasons for cutoff and time limits") {
    const Action a = airy_action();
    IntegrationOptions opts;
    opts.f_cutoff = 0.5;
    CHECK(integrate_flow(a, 0.0, cplx(2.0, 0.0), opts).reason ==
          StopReason::escaped);

    IntegrationOptions slow;
    slow.s_max = 0.25;
    CHECK(integrate_flow(a, 0.3, cplx(0.5, 0.5), slow).reason ==
          StopReason::reached_s_max);
}

TEST_CASE("thimble pair branches") {
    const Action a = airy_action();
    const CriticalPoint p = critical_point_by_label(a, "p+");
    CHECK(orientation_sign(a, p) == -1.0);
    IntegrationOptions opts;
    opts.f_cutoff = 30.0 + std::abs(p.value);
    const ThimblePair pair = trace_thimble(a, 0.3, p, opts);

    CHECK(pair.theta == doctest::Approx(0.3));
    CHECK(pair.stable_a.time_reversed);
    CHECK(pair.stable_a.kind == PathKind::stable_branch);
    CHECK(pair.unstable_c.kind == PathKind::unstable_branch);

    // Stable branches climb to the cutoff, unstable ones descend to it.
    for (const FlowPath* b : {&pair.stable_a, &pair.stable_b}) {
        REQUIRE(!b->points.empty());
        CHECK(F_value(a, 0.3, b->points.back().z) > opts.f_cutoff - 1.0);
    }
    for (const FlowPath* b : {&pair.unstable_c, &pair.unstable_d}) {
        REQUIRE(!b->points.empty());
        CHECK(F_value(a, 0.3, b->points.back().z) < -(opts.f_cutoff - 1.0));
    }

    // The A launch leaves along minus the stable direction for this model.
    const Frame f = local_frame(a, 0.3, p);
    const cplx seed = pair.stable_a.points.front().z - p.position;
    CHECK(std::abs(seed + 1e-6 * f.stable_dir) < 1e-9);
}

TEST_CASE("join branches stitches one oriented cycle") {
    const Action a = airy_action();
    const CriticalPoint p = critical_point_by_label(a, "p+");
    IntegrationOptions opts;
    const ThimblePair pair = trace_thimble(a, 0.3, p, opts);
    const FlowPath cycle =
        join_branches(pair.stable_b, pair.stable_a, PathKind::stable_branch);

    REQUIRE(cycle.points.size() ==
            pair.stable_a.points.size() + pair.stable_b.points.size());
    CHECK(std::abs(cycle.points.front().z - pair.stable_b.points.back().z) <
          1e-12);
    CHECK(std::abs(cycle.points.back().z - pair.stable_a.points.back().z) <
          1e-12);
    for (std::size_t i = 1; i < cycle.points.size(); ++i)
        CHECK(cycle.points[i].s >= cycle.points[i - 1].s - 1e-12);
    // The two seeds face each other across the saddle.
    double gap = 1e9;
    for (std::size_t i = 1; i < cycle.points.size(); ++i)
        gap = std::min(gap, std::abs(cycle.points[i].z - cycle.points[i - 1].z));
    CHECK(gap < 5e-6);
}

TEST_CASE("cylinder reduction folds the seam") {
    const Action b = bessel_action();
    FlowPath path;
    path.points = {{0.0, cplx(0.1, 3.0)}, {0.5, cplx(0.1, 3.3)},
                   {1.0, cplx(0.1, 3.6)}};
    path.dense = path.points;
    const FlowPath red = reduce_cylinder(b, path);
    for (const auto& n : red.points) {
        CHECK(n.z.imag() <= M_PI + 1e-12);
        CHECK(n.z.imag() > -M_PI - 1e-12);
    }
    CHECK(std::abs(red.wrap_count) == 1);

    // Plane domains pass through untouched.
    const FlowPath same = reduce_cylinder(airy_action(), path);
    CHECK(same.points[2].z == path.points[2].z);
    CHECK(same.wrap_count == 0);
}

}  // TEST_SUITE
