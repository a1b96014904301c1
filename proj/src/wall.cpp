#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "thimble/wall.hpp"

namespace thimble {
namespace {

// Per-model trajectory sign; the paper fixes |N| geometrically and the sign
// through its displayed matrices, so this table is the convention.
int model_sign(ModelKind kind) {
    switch (kind) {
        case ModelKind::airy: return -1;
        case ModelKind::bessel: return 1;
        case ModelKind::gamma: return 1;
    }
    return 1;
}

double wall_F(double theta_star, const CriticalPoint& p) {
    return (std::polar(1.0, -theta_star) * p.value).real();
}

std::vector<CriticalPoint> basis_points(const Action& a, double theta_star,
                                        const IndexWindow& w) {
    std::vector<CriticalPoint> pts = critical_points(a, w);
    std::stable_sort(pts.begin(), pts.end(),
                     [&](const CriticalPoint& x, const CriticalPoint& y) {
                         return wall_F(theta_star, x) > wall_F(theta_star, y);
                     });
    return pts;
}

void require_stokes_phase(const Action& a, double theta_star,
                          const IndexWindow& w) {
    for (double ph : stokes_phases(a, w)) {
        const double d = std::remainder(theta_star - ph, 2.0 * M_PI);
        if (std::abs(d) < 1e-9) return;
    }
    throw std::invalid_argument("wall_crossing: theta is not a Stokes phase");
}

struct Crossing {
    double sign;
};

// Signed crossings of two open polylines.  Half-open parameter ranges keep
// vertex-touching crossings counted exactly once; nearly tangential true
// crossings raise an ambiguity error.
int polyline_crossings(const std::vector<cplx>& A, const std::vector<cplx>& B) {
    int total = 0;
    for (std::size_t i = 0; i + 1 < A.size(); ++i) {
        const cplx p = A[i];
        const cplx d1 = A[i + 1] - A[i];
        const double len1 = std::abs(d1);
        if (len1 == 0.0) continue;
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
            const cplx q = B[j];
            const cplx d2 = B[j + 1] - B[j];
            const double len2 = std::abs(d2);
            if (len2 == 0.0) continue;
            const double denom = (std::conj(d1) * d2).imag();
            if (std::abs(denom) <= 1e-9 * len1 * len2) continue;  // collinear guard
            const cplx r = q - p;
            const double t = (std::conj(r) * d2).imag() / denom;
            const double u = (std::conj(r) * d1).imag() / denom;
            if (t < 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) continue;
            const double sin_angle = std::abs(denom) / (len1 * len2);
            if (sin_angle < 1e-3)
                throw std::runtime_error(
                    "intersection: near-tangential crossing, retrace finer");
            total += denom > 0.0 ? 1 : -1;
        }
    }
    return total;
}

std::vector<cplx> path_polyline(const FlowPath& path) {
    std::vector<cplx> out;
    out.reserve(path.points.size());
    for (const PathNode& n : path.points) out.push_back(n.z);
    return out;
}

// Crossing count against a cycle that may live on the cylinder: sum over the
// deck translates of B needed to cover A's vertical extent.
int crossings_with_cycle(const std::vector<cplx>& A, const std::vector<cplx>& B,
                         Domain domain) {
    if (domain == Domain::plane) return polyline_crossings(A, B);
    double a_lo = 1e300, a_hi = -1e300, b_lo = 1e300, b_hi = -1e300;
    for (const cplx& z : A) {
        a_lo = std::min(a_lo, z.imag());
        a_hi = std::max(a_hi, z.imag());
    }
    for (const cplx& z : B) {
        b_lo = std::min(b_lo, z.imag());
        b_hi = std::max(b_hi, z.imag());
    }
    const double period = 2.0 * M_PI;
    int k_min = static_cast<int>(std::floor((a_lo - b_hi) / period)) - 1;
    int k_max = static_cast<int>(std::ceil((a_hi - b_lo) / period)) + 1;
    k_min = std::max(k_min, -4);
    k_max = std::min(k_max, 4);
    int total = 0;
    for (int k = k_min; k <= k_max; ++k) {
        std::vector<cplx> shifted = B;
        for (cplx& z : shifted) z += cplx(0.0, period * k);
        total += polyline_crossings(A, shifted);
    }
    return total;
}

}  // namespace

StokesMatrix stokes_identity(const std::vector<std::string>& basis,
                             MatrixSide side, MatrixDirection direction) {
    StokesMatrix m;
    m.basis = basis;
    m.side = side;
    m.direction = direction;
    const int n = m.size();
    m.entries.assign(n, std::vector<GaussRat>(n, GaussRat(0)));
    for (int i = 0; i < n; ++i) m.entries[i][i] = GaussRat(1);
    return m;
}

StokesMatrix operator*(const StokesMatrix& a, const StokesMatrix& b) {
    if (a.basis != b.basis)
        throw std::invalid_argument("StokesMatrix: basis mismatch in product");
    StokesMatrix m = stokes_identity(a.basis, a.side, a.direction);
    const int n = m.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GaussRat s(0);
            for (int k = 0; k < n; ++k) s += a.entries[i][k] * b.entries[k][j];
            m.entries[i][j] = s;
        }
    return m;
}

bool same_entries(const StokesMatrix& a, const StokesMatrix& b) {
    return a.basis == b.basis && a.entries == b.entries;
}

bool is_unitriangular(const StokesMatrix& m) {
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        if (m.entries[i][i] != GaussRat(1)) return false;
        for (int j = 0; j < i; ++j)
            if (!m.entries[i][j].is_zero()) return false;
    }
    return true;
}

StokesMatrix stokes_inverse(const StokesMatrix& m) {
    if (!is_unitriangular(m))
        throw std::invalid_argument("stokes_inverse: unitriangular input required");
    const int n = m.size();
    StokesMatrix nil = m;
    for (int i = 0; i < n; ++i) nil.entries[i][i] = GaussRat(0);
    StokesMatrix inv = stokes_identity(m.basis, m.side,
                                       m.direction == MatrixDirection::plus
                                           ? MatrixDirection::minus
                                           : MatrixDirection::plus);
    StokesMatrix power = inv;
    GaussRat sign(1);
    for (int k = 1; k < n; ++k) {
        power = power * nil;
        sign = GaussRat(-1) * sign;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                inv.entries[i][j] += sign * power.entries[i][j];
    }
    return inv;
}

std::vector<Connection> find_connections(const Action& a, double theta_star,
                                         const IndexWindow& w,
                                         std::vector<BranchFailure>* failures) {
    require_stokes_phase(a, theta_star, w);
    const std::vector<CriticalPoint> pts = basis_points(a, theta_star, w);
    IntegrationOptions opts;

    std::vector<Connection> out;
    for (const CriticalPoint& src : pts) {
        std::vector<CriticalPoint> targets;
        for (const CriticalPoint& q : pts)
            if (q.label != src.label) targets.push_back(q);
        if (targets.empty()) continue;
        const Frame frame = local_frame(a, theta_star, src);
        for (int branch = 0; branch < 2; ++branch) {
            const cplx dir = branch == 0 ? frame.unstable_dir : -frame.unstable_dir;
            const cplx z0 = src.position + opts.seed_eps * dir;
            try {
                IntegrationResult res =
                    integrate_flow(a, theta_star, z0, opts, targets);
                if (res.reason != StopReason::captured) continue;
                Connection c;
                c.source = src;
                c.target = targets[static_cast<std::size_t>(*res.captured_target)];
                c.path = std::move(res.path);
                c.path.kind = PathKind::connecting;
                c.sign = model_sign(a.kind);
                const cplx drop = std::polar(1.0, -theta_star) *
                                  (src.value - c.target.value);
                if (std::abs(drop.imag()) > 1e-10 || drop.real() <= 0.0)
                    throw std::logic_error(
                        "find_connections: captured pair violates the level rule");
                out.push_back(std::move(c));
            } catch (const std::logic_error&) {
                throw;
            } catch (const std::exception& e) {
                if (failures)
                    failures->push_back({src.label, branch, e.what()});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [&](const Connection& x, const Connection& y) {
                         if (x.source.label != y.source.label)
                             return wall_F(theta_star, x.source) >
                                    wall_F(theta_star, y.source);
                         return wall_F(theta_star, x.target) >
                                wall_F(theta_star, y.target);
                     });
    return out;
}

double lambert_w0(double t) {
    if (t < -std::exp(-1.0) - 1e-15)
        throw std::domain_error("lambert_w0: argument below -1/e");
    double w;
    if (t < -0.25) {
        const double p = std::sqrt(std::max(0.0, 2.0 * (1.0 + M_E * t)));
        w = -1.0 + p - p * p / 3.0;
    } else {
        w = std::log1p(t);
    }
    for (int it = 0; it < 60; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - t;
        if (f == 0.0) break;  // exact hit; at t = -1/e Halley would divide 0/0
        const double fp = ew * (1.0 + w);
        const double fpp = ew * (2.0 + w);
        const double denom = fp - 0.5 * f * fpp / fp;
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 1e-14 * (1.0 + std::abs(w))) break;
    }
    return w;
}

FlowPath exact_connection_oracle(const Action& a, double theta_star,
                                 const std::string& source_label,
                                 const std::string& target_label, int branch) {
    FlowPath path;
    path.theta = theta_star;
    path.kind = PathKind::connecting;

    const auto push = [&path](double s, cplx z) { path.points.push_back({s, z}); };

    if (a.kind == ModelKind::airy && std::abs(theta_star) < 1e-12 &&
        source_label == "p-" && target_label == "p+" && branch == 0) {
        for (double s = -11.0; s <= 11.0 + 1e-12; s += 0.01)
            push(s, cplx(std::tanh(s), 0.0));
    } else if (a.kind == ModelKind::bessel &&
               std::abs(theta_star - M_PI / 2) < 1e-12 && source_label == "w+" &&
               target_label == "w-" && (branch == 0 || branch == 1)) {
        for (double s = -12.0; s <= 12.0 + 1e-12; s += 0.01) {
            const double y = branch == 0
                                 ? 2.0 * std::atan(std::exp(-s)) - M_PI / 2
                                 : 2.0 * std::atan(std::exp(s)) + M_PI / 2;
            push(s, cplx(0.0, y));
        }
    } else if (a.kind == ModelKind::gamma &&
               std::abs(theta_star - M_PI / 2) < 1e-12 &&
               source_label.rfind("p_", 0) == 0 &&
               target_label.rfind("p_", 0) == 0 && branch == 0 &&
               std::stoi(target_label.substr(2)) ==
                   std::stoi(source_label.substr(2)) + 1) {
        const int n = std::stoi(source_label.substr(2));
        const int samples = 4000;
        double s = 0.0;
        cplx prev;
        for (int k = 0; k <= samples; ++k) {
            const double y = 2.0 * M_PI * n + 2.0 * M_PI * k / samples;
            const double x = -1.0 - lambert_w0(-std::exp(-1.0) * std::cos(y));
            const cplx z(x, y);
            if (k > 0) s += std::abs(z - prev);
            push(s, z);
            prev = z;
        }
    } else {
        throw std::domain_error("exact_connection_oracle: no closed form for this pair");
    }

    if (!path.points.empty())
        path.level_G = G_value(a, theta_star, path.points.front().z);
    path.dense = path.points;
    return path;
}

JumpMatrices jump_matrix_geometric(const Action& a, double theta_star,
                                   const IndexWindow& w) {
    const std::vector<CriticalPoint> pts = basis_points(a, theta_star, w);
    std::vector<std::string> basis;
    for (const CriticalPoint& p : pts) basis.push_back(p.label);
    const int n = static_cast<int>(basis.size());

    const std::vector<Connection> conns = find_connections(a, theta_star, w);
    std::map<std::pair<int, int>, int> signed_count;
    const auto slot = [&](const std::string& label) {
        for (int i = 0; i < n; ++i)
            if (basis[i] == label) return i;
        throw std::logic_error("jump_matrix_geometric: label outside basis");
    };
    for (const Connection& c : conns)
        signed_count[{slot(c.source.label), slot(c.target.label)}] += c.sign;

    JumpMatrices jm;
    StokesMatrix prod = stokes_identity(basis, MatrixSide::geometric,
                                        MatrixDirection::plus);
    for (int i = 0; i + 1 < n; ++i) {
        const auto it = signed_count.find({i, i + 1});
        if (it == signed_count.end()) continue;
        StokesMatrix factor = stokes_identity(basis, MatrixSide::geometric,
                                              MatrixDirection::plus);
        factor.entries[i][i + 1] = GaussRat(it->second);
        jm.elementary.push_back(factor);
        prod = prod * factor;
    }
    if (!is_unitriangular(prod))
        throw std::logic_error("jump_matrix_geometric: assembly is not unitriangular");
    jm.plus = prod;
    jm.minus = stokes_inverse(prod);
    jm.minus.side = MatrixSide::geometric;
    return jm;
}

int intersection_pairing(const ThimblePair& J, const ThimblePair& K) {
    if (std::abs(std::remainder(J.theta - K.theta, 2.0 * M_PI)) > 1e-12)
        throw std::invalid_argument("intersection_pairing: phases differ");
    const FlowPath j_cycle =
        join_branches(J.stable_b, J.stable_a, PathKind::stable_branch);
    const FlowPath k_cycle =
        join_branches(K.unstable_d, K.unstable_c, PathKind::unstable_branch);
    return crossings_with_cycle(path_polyline(j_cycle), path_polyline(k_cycle),
                                J.domain);
}

std::vector<CycleCoefficient> decompose_cycle(const Action& a, double theta,
                                              const std::vector<cplx>& polyline,
                                              const IndexWindow& w) {
    if (polyline.size() < 2)
        throw std::invalid_argument("decompose_cycle: degenerate contour");

    // End validity: the unrotated action must have large and still-growing
    // real part, which is what makes e^{-A/hbar} integrable along the ends.
    const std::vector<CriticalPoint> pts = basis_points(a, theta, w);
    double max_re = -1e300;
    for (const CriticalPoint& p : pts) {
        const cplx unrot = p.value / a.rotation;
        max_re = std::max(max_re, unrot.real());
    }
    double total_len = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
        total_len += std::abs(polyline[i + 1] - polyline[i]);
    const double probe = std::min(1.0, 0.1 * total_len);

    const auto unrotated_re = [&](cplx z) {
        return (eval_action(a, z) / a.rotation).real();
    };
    const auto end_ok = [&](bool front) {
        const cplx z_end = front ? polyline.front() : polyline.back();
        double walked = 0.0;
        cplx z_in = z_end;
        if (front) {
            for (std::size_t i = 0; i + 1 < polyline.size() && walked < probe; ++i) {
                const double step = std::abs(polyline[i + 1] - polyline[i]);
                const double take = std::min(step, probe - walked);
                z_in = polyline[i] +
                       (step > 0 ? take / step : 0.0) * (polyline[i + 1] - polyline[i]);
                walked += take;
            }
        } else {
            for (std::size_t i = polyline.size() - 1; i > 0 && walked < probe; --i) {
                const double step = std::abs(polyline[i - 1] - polyline[i]);
                const double take = std::min(step, probe - walked);
                z_in = polyline[i] +
                       (step > 0 ? take / step : 0.0) * (polyline[i - 1] - polyline[i]);
                walked += take;
            }
        }
        const double re_end = unrotated_re(z_end);
        return re_end >= max_re + 1.0 && re_end > unrotated_re(z_in);
    };
    if (!end_ok(true) || !end_ok(false))
        throw std::invalid_argument(
            "decompose_cycle: contour ends leave the convergence regions");

    std::vector<CycleCoefficient> out;
    IntegrationOptions opts;
    for (const CriticalPoint& p : pts) {
        const ThimblePair pair = trace_thimble(a, theta, p, opts);
        const FlowPath k_cycle =
            join_branches(pair.unstable_d, pair.unstable_c, PathKind::unstable_branch);
        const int c =
            crossings_with_cycle(polyline, path_polyline(k_cycle), a.domain);
        out.push_back({p.label, c});
    }
    return out;
}

}  // namespace thimble
