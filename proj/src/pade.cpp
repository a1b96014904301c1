#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "thimble/borel.hpp"

// Rational approximation utilities: diagonal Pade poles/residues and the
// branch-point locator built on the second logarithmic derivative f''/f'.
// Branch points of f become simple poles of f''/f', which Pade resolves far
// better than it resolves the branch cuts of f itself.

namespace thimble {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

std::vector<cplx> polynomial_roots(const std::vector<cplx>& q) {
    // q holds q_0..q_deg with q_deg != 0; companion-matrix eigenvalues.
    const int deg = static_cast<int>(q.size()) - 1;
    if (deg < 1) return {};
    MatrixXcd comp = MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -q[i] / q[deg];
    Eigen::ComplexEigenSolver<MatrixXcd> es(comp, false);
    std::vector<cplx> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

cplx poly_eval(const std::vector<cplx>& p, cplx z) {
    cplx v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

PadePoles pade_poles(const std::vector<cplx>& taylor, int order) {
    const int M = order;
    if (M < 1 || static_cast<int>(taylor.size()) < 2 * M + 1)
        throw std::invalid_argument("pade_poles: need 2*order+1 coefficients");
    const auto& c = taylor;

    // Denominator from the Toeplitz system sum_j b_j c_{M+i-j} = -c_{M+i}.
    MatrixXcd A(M, M);
    VectorXcd rhs(M);
    for (int i = 1; i <= M; ++i) {
        for (int j = 1; j <= M; ++j) {
            const int k = M + i - j;
            A(i - 1, j - 1) = (k >= 0) ? c[k] : cplx(0.0);
        }
        rhs(i - 1) = -c[M + i];
    }
    const VectorXcd b = Eigen::PartialPivLU<MatrixXcd>(A).solve(rhs);

    std::vector<cplx> q(M + 1);
    q[0] = 1.0;
    for (int j = 1; j <= M; ++j) q[j] = b(j - 1);
    std::vector<cplx> p(M + 1);
    for (int k = 0; k <= M; ++k) {
        cplx s = 0.0;
        for (int j = 0; j <= std::min(k, M); ++j) s += q[j] * c[k - j];
        p[k] = s;
    }

    double qmax = 0.0;
    for (const auto& v : q) qmax = std::max(qmax, std::abs(v));
    int deg = M;
    while (deg > 0 && std::abs(q[deg]) < 1e-14 * qmax) --deg;
    q.resize(deg + 1);

    std::vector<cplx> qprime(deg);
    for (int j = 1; j <= deg; ++j) qprime[j - 1] = static_cast<double>(j) * q[j];

    PadePoles out;
    out.poles = polynomial_roots(q);
    out.residues.reserve(out.poles.size());
    for (const cplx& z : out.poles)
        out.residues.push_back(poly_eval(p, z) / poly_eval(qprime, z));
    return out;
}

SingularityEstimate locate_singularities(const BorelGerm& g, int n_coeffs,
                                         int pade_order) {
    const int N = std::min<int>(n_coeffs, static_cast<int>(g.coeffs.size()));
    if (N < 8) throw std::invalid_argument("locate_singularities: too few coefficients");
    std::vector<cplx> c(N);
    for (int m = 0; m < N; ++m) c[m] = to_complex(g.coeffs[m]);

    std::vector<cplx> fp(N - 1), fpp(N - 2);
    for (int m = 0; m < N - 1; ++m) fp[m] = (m + 1.0) * c[m + 1];
    for (int m = 0; m < N - 2; ++m) fpp[m] = (m + 1.0) * fp[m + 1];
    if (std::abs(fp[0]) < 1e-300)
        throw std::invalid_argument("locate_singularities: vanishing first derivative");

    const int nh = N - 2;
    std::vector<cplx> h(nh);
    for (int m = 0; m < nh; ++m) {
        cplx s = fpp[m];
        for (int j = 1; j <= m; ++j) s -= fp[j] * h[m - j];
        h[m] = s / fp[0];
    }

    // Rescale so the nearest singularity sits near |w| = 1 (root test on the
    // germ itself; a plain ratio test oscillates for conjugate pairs).
    const double tail = std::abs(c[N - 1]);
    const double rho = tail > 0.0 ? std::pow(tail, -1.0 / (N - 1)) : 1.0;
    std::vector<cplx> hw(nh);
    double scale_pow = 1.0;
    for (int m = 0; m < nh; ++m) {
        hw[m] = h[m] * scale_pow;
        scale_pow *= rho;
    }

    const int M = pade_order > 0 ? pade_order : (N - 3) / 2;
    if (2 * M + 1 > nh || M < 2)
        throw std::invalid_argument("locate_singularities: order too large for data");
    const PadePoles full = pade_poles(hw, M);
    const PadePoles check = pade_poles(hw, M - 1);

    SingularityEstimate est;
    for (std::size_t i = 0; i < full.poles.size(); ++i) {
        if (std::abs(full.residues[i]) < 1e-8) continue;  // spurious Froissart pair
        double move = 1e300;
        for (const cplx& z0 : check.poles)
            move = std::min(move, std::abs(full.poles[i] - z0));
        if (move > 1e-2 * (1.0 + std::abs(full.poles[i]))) continue;
        est.locations.push_back(full.poles[i] * rho);
    }
    std::sort(est.locations.begin(), est.locations.end(),
              [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    est.inconclusive = est.locations.empty();
    return est;
}

}  // namespace thimble
