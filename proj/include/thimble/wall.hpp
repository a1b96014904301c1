#pragma once

// Connecting trajectories at Stokes phases, jump (Stokes) matrices, and the
// homological bookkeeping: intersection pairing and cycle decomposition.

#include <string>
#include <vector>

#include "thimble/flow.hpp"
#include "thimble/models.hpp"
#include "thimble/rational.hpp"

namespace thimble {

// A direct downhill trajectory between two saddles on a common Stokes line.
// The source has the higher F at the wall; sign is the model's orientation
// convention fixed by the displayed matrices.
struct Connection {
    CriticalPoint source;
    CriticalPoint target;
    FlowPath path;
    int sign = 1;
};

enum class MatrixSide { geometric, resurgent };
enum class MatrixDirection { plus, minus };

// Unitriangular on the basis of saddle labels ordered by decreasing F at the
// wall.  Entries are exact Gaussian rationals; row index = source basis slot,
// column index = target (right multiplication on row vectors of integrals).
struct StokesMatrix {
    std::vector<std::string> basis;
    std::vector<std::vector<GaussRat>> entries;
    MatrixSide side = MatrixSide::geometric;
    MatrixDirection direction = MatrixDirection::plus;

    int size() const { return static_cast<int>(basis.size()); }
    const GaussRat& entry(int i, int j) const { return entries[i][j]; }
};

StokesMatrix stokes_identity(const std::vector<std::string>& basis,
                             MatrixSide side, MatrixDirection direction);
StokesMatrix operator*(const StokesMatrix& a, const StokesMatrix& b);
bool same_entries(const StokesMatrix& a, const StokesMatrix& b);
bool is_unitriangular(const StokesMatrix& m);
// Exact inverse via the nilpotent expansion; requires unitriangularity.
StokesMatrix stokes_inverse(const StokesMatrix& m);

struct BranchFailure {
    std::string source;
    int branch = 0;
    std::string message;
};

// Launches both downhill half-branches of every saddle in the window and
// records captures.  Only direct (unbroken) trajectories appear because a
// capture terminates the branch.  Ordering: by source, then target, then
// launch branch.  Integration failures are reported through `failures`
// (when given) without aborting the sweep.
std::vector<Connection> find_connections(const Action& a, double theta_star,
                                         const IndexWindow& w = {},
                                         std::vector<BranchFailure>* failures = nullptr);

// Closed-form trajectories: the tanh line, the two arctan arcs on the
// cylinder (branch 0 descends, branch 1 wraps the other way), and the
// Lambert arc of the tower.  Unsupported pairs raise a not-available error.
FlowPath exact_connection_oracle(const Action& a, double theta_star,
                                 const std::string& source_label,
                                 const std::string& target_label,
                                 int branch = 0);

// Principal real branch, Halley iteration to 1e-14.
double lambert_w0(double t);

// plus/minus composite matrices plus the nearest-neighbor elementary
// factors (ordered along the basis) they are assembled from.
struct JumpMatrices {
    StokesMatrix plus;
    StokesMatrix minus;
    std::vector<StokesMatrix> elementary;
};
JumpMatrices jump_matrix_geometric(const Action& a, double theta_star,
                                   const IndexWindow& w = {});

// Signed crossing count of the integration cycle of J with the dual cycle
// of K, both traced at the same regular phase.  Self-pairing is +1.
int intersection_pairing(const ThimblePair& J, const ThimblePair& K);

struct CycleCoefficient {
    std::string label;
    int coeff = 0;
};

// Coefficients of a contour in the thimble basis at phase theta, one entry
// per saddle in the window ordered by decreasing F.  The contour must enter
// the F -> +infinity end regions (checked on the unrotated action).
std::vector<CycleCoefficient> decompose_cycle(const Action& a, double theta,
                                              const std::vector<cplx>& polyline,
                                              const IndexWindow& w = {});

}  // namespace thimble
