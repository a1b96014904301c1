#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thimble/laplace.hpp"

using namespace thimble;

namespace {

BorelGerm unit_germ() {
    BorelGerm g;
    g.coeffs = {GaussRat(1)};
    return g;
}

// g(xi) = 1/(1 - xi): a pure pole on the ray at xi = 1.
BorelGerm pole_germ() {
    BorelGerm g;
    g.coeffs = {GaussRat(1)};
    g.closed_form = Hyp2F1Form{Rat(1), Rat(1), Rat(1), Rat(1)};
    g.known_singularities = {cplx(1, 0)};
    return g;
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_SUITE("laplace") {

TEST_CASE("trivial germ integrates to hbar on either side") {
    const BorelGerm g = unit_germ();
    for (double hbar : {0.07, 0.3}) {
        for (RaySide side : {RaySide::left, RaySide::right}) {
            const LateralRay ray = make_lateral_ray(g, side, hbar);
            CHECK(ray.detours.empty());
            CHECK(ray.cutoff == doctest::Approx(40 * hbar).epsilon(1e-12));
            CHECK(rel(lateral_laplace(g, ray, hbar), cplx(hbar, 0)) < 1e-12);
        }
    }
}

TEST_CASE("ray layout around on-axis singularities") {
    const BorelGerm ga = model_germ(ModelKind::airy, "p+", 24);
    const LateralRay ra = make_lateral_ray(ga, RaySide::right, 0.1);
    CHECK(ra.cutoff == doctest::Approx(4.0 + 4.0 / 3).epsilon(1e-9));
    REQUIRE(ra.detours.size() == 1);
    CHECK(std::abs(ra.detours[0].center - cplx(4.0 / 3, 0)) < 1e-12);
    CHECK(ra.detours[0].radius == doctest::Approx(1.0 / 3).epsilon(1e-9));

    // The mirror germ is singular on the negative axis only.
    const BorelGerm gm = model_germ(ModelKind::airy, "p-", 24);
    CHECK(make_lateral_ray(gm, RaySide::left, 0.1).detours.empty());

    // Tower lattice step exceeds the hbar = 0.1 cutoff.
    const BorelGerm gg = model_germ(ModelKind::gamma, "p_0", 24);
    const LateralRay rg = make_lateral_ray(gg, RaySide::right, 0.1);
    CHECK(rg.detours.empty());
    CHECK(rg.cutoff == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("side difference across a pole is the residue term") {
    const BorelGerm g = pole_germ();
    for (double hbar : {0.3, 0.5}) {
        const cplx right =
            lateral_laplace(g, make_lateral_ray(g, RaySide::right, hbar), hbar);
        const cplx left =
            lateral_laplace(g, make_lateral_ray(g, RaySide::left, hbar), hbar);
        const cplx want = cplx(0, 2 * M_PI) * std::exp(-1.0 / hbar);
        CHECK(rel(right - left, want) < 1e-10);
    }
}

TEST_CASE("tail truncation is detected") {
    const BorelGerm g = unit_germ();
    LateralRay ray = make_lateral_ray(g, RaySide::right, 0.3);
    ray.cutoff = 0.5;
    CHECK_THROWS_AS(lateral_laplace(g, ray, 0.3), std::runtime_error);
}

TEST_CASE("detours must clear the singularity table") {
    BorelGerm g = pole_germ();
    g.known_singularities = {cplx(1, 0), cplx(1.2, 0)};
    LateralRay ray;
    ray.side = RaySide::right;
    ray.detours = {Detour{cplx(1, 0), 0.5}};
    ray.cutoff = 40 * 0.3 + 1.2;
    CHECK_THROWS_AS(lateral_laplace(g, ray, 0.3), std::invalid_argument);
}

TEST_CASE("gaussian contour reproduces the closed form") {
    const auto action = [](cplx z) { return 0.5 * z * z; };
    const std::vector<cplx> line = {cplx(-10, 0), cplx(10, 0)};
    for (double hbar : {1.0, 0.5}) {
        const cplx want(std::sqrt(2 * M_PI * hbar), 0);
        CHECK(rel(contour_integral(action, line, hbar), want) < 1e-10);
    }
}

TEST_CASE("real-line tower integral matches the factorial value") {
    const Action a = gamma_action();
    const auto action = [&a](cplx z) { return eval_action(a, z); };
    const std::vector<cplx> line = {cplx(-30, 0), cplx(25, 0)};
    const double hbar = 1.0 / 6;
    const double want = std::pow(hbar, 6) * 120.0;
    CHECK(rel(contour_integral(action, line, hbar), cplx(want, 0)) < 1e-6);
}

TEST_CASE("closed cylinder loop gives the Bessel value") {
    const auto action = [](cplx w) { return -std::sinh(w); };
    const std::vector<cplx> seam = {cplx(0, -M_PI), cplx(0, M_PI)};
    const cplx got = contour_integral(action, seam, 1.0, true);
    double j0 = 0, term = 1;
    for (int k = 1; k <= 30; ++k) {
        j0 += term;
        term *= -0.25 / (k * static_cast<double>(k));
    }
    CHECK(rel(got, cplx(0, 2 * M_PI * j0)) < 1e-8);
}

TEST_CASE("one-sided sums differ by the subdominant integral") {
    // S^< I_+ - S^> I_+ = -S I_-, with the right side unambiguous because
    // the mirror germ has no singularity on the positive axis.
    const double hbar = 0.1;
    const auto row = [&](const std::string& saddle, RaySide side) {
        const auto rep =
            verify_thimble_equals_lateral(ModelKind::airy, saddle, side, {hbar});
        REQUIRE(rep.rows.size() == 1);
        return rep.rows[0].lateral;
    };
    const cplx minus_left = row("p-", RaySide::left);
    const cplx minus_right = row("p-", RaySide::right);
    CHECK(std::abs(minus_left - minus_right) < 1e-12 * std::abs(minus_right));

    const cplx jump = row("p+", RaySide::left) - row("p+", RaySide::right);
    CHECK(rel(jump, -minus_right) < 1e-6);
}

TEST_CASE("tower jump resums the geometric series of lower integrals") {
    // S^< I_0 - S^> I_0 = S^> I_{-1} / (1 - e^{-2 pi}): consecutive tower
    // integrals are exact e^{-2 pi / hbar} copies of each other.
    const double hbar = 1.0;
    const auto row = [&](const std::string& saddle, RaySide side) {
        const auto rep =
            verify_thimble_equals_lateral(ModelKind::gamma, saddle, side, {hbar});
        REQUIRE(rep.rows.size() == 1);
        return rep.rows[0].lateral;
    };
    const cplx jump = row("p_0", RaySide::left) - row("p_0", RaySide::right);
    const cplx want = row("p_-1", RaySide::right) / (1.0 - std::exp(-2 * M_PI));
    CHECK(rel(jump, want) < 5e-3);
}

TEST_CASE("thimble quadrature equals the lateral sum") {
    const auto ra = verify_thimble_equals_lateral(ModelKind::airy, "p+",
                                                  RaySide::right, {0.1, 0.2});
    CHECK(ra.max_rel_dev < 1e-6);
    const auto rb =
        verify_thimble_equals_lateral(ModelKind::bessel, "w+", RaySide::left, {0.1});
    CHECK(rb.max_rel_dev < 1e-6);
    const auto rg =
        verify_thimble_equals_lateral(ModelKind::gamma, "p_0", RaySide::right, {0.1});
    CHECK(rg.max_rel_dev < 1e-5);
}

TEST_CASE("numeric fit of the line-model matrices rounds to the geometric ones") {
    const NumericFit fit =
        fit_stokes_matrix_numeric(ModelKind::airy, 0.0, default_hbar_grid());
    REQUIRE(fit.rounded_ok);
    const JumpMatrices geom = jump_matrix_geometric(airy_action(), 0.0);
    CHECK(same_entries(fit.plus, geom.plus));
    CHECK(same_entries(fit.minus, geom.minus));
    CHECK(fit.max_round_residual < 1e-3);
}

}  // TEST_SUITE
