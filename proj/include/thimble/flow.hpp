#pragma once

// Descent-flow integration: z' = -conj(e^{-i theta} A'(z)).
// F = Re(e^{-i theta} A) strictly decreases along the flow,
// G = Im(e^{-i theta} A) is conserved.

#include <optional>
#include <vector>

#include "thimble/models.hpp"

namespace thimble {

enum class PathKind { generic, stable_branch, unstable_branch, connecting };

struct PathNode {
    double s = 0;
    cplx z{};
};

struct FlowPath {
    std::vector<PathNode> points;  // accepted integrator steps
    std::vector<PathNode> dense;   // Hermite resample at fixed ds for geometry
    double theta = 0;
    double level_G = 0;
    PathKind kind = PathKind::generic;
    int wrap_count = 0;        // net seam crossings after cylinder reduction
    bool time_reversed = false;  // true for stable branches (F increases in s)

    double arclength() const;
    FlowPath reversed() const;
};

struct IntegrationOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double max_step = 0.05;
    double f_cutoff = 30.0;      // escape when |F| exceeds this
    double s_max = 200.0;
    // Integrator noise in the conserved level turns into a sqrt-scale
    // position miss where the gradient vanishes (~2e-6 for 1e-12
    // tolerances), so the capture ball must sit above that floor.
    double capture_radius = 1e-5;
    double capture_grad = 1e-5;
    double seed_eps = 1e-6;
    double dense_ds = 0.01;
};

enum class StopReason { reached_s_max, escaped, captured, step_underflow };

struct IntegrationResult {
    FlowPath path;
    StopReason reason = StopReason::reached_s_max;
    std::optional<int> captured_target;  // index into the targets list
};

struct Frame {
    cplx stable_dir{};    // unit; argument in (-pi/2, pi/2]
    cplx unstable_dir{};  // stable rotated by +pi/2
};

// Thimble pair at p: stable half-branches A/B spanning the integration cycle
// A - B, unstable half-branches C/D spanning the dual cycle C - D.  The A and
// C launch directions carry the model's orientation sign.
struct ThimblePair {
    CriticalPoint critical;
    Domain domain = Domain::plane;
    double theta = 0;
    FlowPath stable_a, stable_b;
    FlowPath unstable_c, unstable_d;
};

cplx flow_field(const Action& a, double theta, cplx z);

Frame local_frame(const Action& a, double theta, const CriticalPoint& p);

// Integrates until s_max, escape (|F| > f_cutoff), or capture (within
// capture_radius of a target with |A'| < capture_grad).  reversed = true
// integrates the ascent field instead (used for stable branches).
IntegrationResult integrate_flow(const Action& a, double theta, cplx z0,
                                 const IntegrationOptions& opts,
                                 const std::vector<CriticalPoint>& targets = {},
                                 bool reversed = false);

ThimblePair trace_thimble(const Action& a, double theta, const CriticalPoint& p,
                          const IntegrationOptions& opts);

// Folds imaginary parts into (-pi, pi] and records net seam crossings.
// Identity on plane domains.
FlowPath reduce_cylinder(const Action& a, const FlowPath& path);

// Oriented integration cycle through p: reversed B then A (or reversed D then
// C), bridged across the seed gap at p.
FlowPath join_branches(const FlowPath& out_minus, const FlowPath& out_plus,
                       PathKind kind);

}  // namespace thimble
