#pragma once

// Borel transforms, hypergeometric germ evaluation, Pade singularity
// location, and local variation (alien derivative data) at a singularity.

#include <optional>
#include <string>
#include <vector>

#include "thimble/models.hpp"
#include "thimble/rational.hpp"
#include "thimble/series.hpp"

namespace thimble {

// Closed form germ(xi) = coeffs[0] * F(a, b; c; scale * xi).
struct Hyp2F1Form {
    Rat a, b, c;
    Rat scale;
};

// Value pi^{sqrtpi_power/2} * sum_m coeffs[m] xi^{m+alpha-1}.  The ordinary
// transform has alpha = 1 (plain powers xi^m), the shifted transform keeps
// alpha = 1/2 with the Gamma(m+1/2) rationals folded in and one 1/sqrt(pi).
struct BorelGerm {
    std::vector<GaussRat> coeffs;
    Rat alpha = 1;
    int sqrtpi_power = 0;
    std::optional<Hyp2F1Form> closed_form;
    std::vector<cplx> known_singularities;
    // Floating-point coefficient channel for germs produced numerically
    // (variation output); empty for exact germs.
    std::vector<cplx> numeric_coeffs;
};

// Complex Taylor coefficients from whichever channel is populated.
std::vector<cplx> germ_taylor(const BorelGerm& g, int n);

BorelGerm borel_ordinary(const PowerSeries& s);
BorelGerm borel_shifted(const PowerSeries& s);
PowerSeries inverse_borel(const BorelGerm& g);

// Ordinary germ of the saddle series, with closed-form tag and singularity
// table attached (gamma has no closed form).
BorelGerm model_germ(ModelKind kind, const std::string& label, int terms);

// Principal-branch evaluation; boundary values on the cut follow the sign of
// Im x.  Series everywhere on |x| <= 0.9 for any parameters; the analytic
// continuation zones are implemented for the model parameter sets only.
cplx hyp2f1(double a, double b, double c, cplx x);

// Reusable evaluator: closed form when tagged, else Taylor inside half the
// singularity distance and a diagonal Pade surrogate beyond.
class GermEvaluator {
  public:
    explicit GermEvaluator(const BorelGerm& g);
    cplx operator()(cplx xi) const;

  private:
    std::optional<Hyp2F1Form> form_;
    double alpha_ = 1.0;
    cplx prefactor_{1.0, 0.0};
    std::vector<cplx> taylor_;
    double taylor_radius_ = 0;
    std::vector<cplx> pade_num_, pade_den_;
    double pade_scale_ = 1.0;
};

cplx evaluate_germ(const BorelGerm& g, cplx xi);

// Poles of the diagonal Pade approximant of f''/f' (the branch point shows
// as a near-simple pole there), Froissart-filtered by residue magnitude and
// stability between consecutive orders, sorted by modulus.
struct SingularityEstimate {
    std::vector<cplx> locations;
    bool inconclusive = false;
};
SingularityEstimate locate_singularities(const BorelGerm& g, int n_coeffs,
                                         int pade_order = -1);

struct PadePoles {
    std::vector<cplx> poles;
    std::vector<cplx> residues;
};
PadePoles pade_poles(const std::vector<cplx>& taylor, int order);

// Difference of the continuations below and above the cut, sampled on a
// circle of the given radius about omega and re-centered to the origin.
// Requires a closed-form log-type germ (c = a + b); pole germs are rejected.
BorelGerm variation(const BorelGerm& g, cplx omega, double radius);

// The factor c with (alien derivative at omega) source = c * target series.
cplx stokes_constant(ModelKind kind, const std::string& source_label,
                     cplx omega);

struct SingularityRecord {
    cplx omega{};
    cplx stokes{};
    std::string target;
};
std::vector<SingularityRecord> singularity_records(
    ModelKind kind, const std::string& source_label);

}  // namespace thimble
