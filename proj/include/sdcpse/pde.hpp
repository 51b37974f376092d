#ifndef SDCPSE_PDE_HPP_
#define SDCPSE_PDE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "sdcpse/errors.hpp"
#include "sdcpse/linalg.hpp"
#include "sdcpse/point_cloud.hpp"
#include "sdcpse/surface_operator.hpp"

namespace sdcpse {

// Implicit operator system: Dirichlet rows are identity rows with the
// prescribed value on the right-hand side; known-value columns are folded
// into the rhs.
struct SparseSystem {
    SparseMatrix matrix;
    Vector rhs;
    std::vector<std::pair<std::size_t, double>> dirichlet;
};

// Assembles Q f = rhs_field for an even-order surface operator. Row p gets
// eta_S(x_p,x_s) * scale(p) off the diagonal and minus their sum on it.
SparseSystem assemble_poisson(const SurfaceOperator& sop, const std::vector<double>& rhs_field,
                              const std::vector<std::pair<std::size_t, double>>& dirichlet);

// Solves the assembled system with restarted GMRES after signed-diagonal
// row scaling (each row divided by its own diagonal). The raw assembled
// system mixes operator rows of magnitude 1/h^2 with unit Dirichlet rows,
// which leaves eigenvalues on both sides of zero and stalls restarted
// GMRES; scaling makes every diagonal +1. The returned residual_norm is
// the unscaled ||A x - b||_2, verified against rtol * ||b||_2.
GmresResult solve_poisson(const SparseSystem& system, const GmresOptions& opts = {});

// Mirror-image bookkeeping for no-flux boundaries on the square graph
// surface: each ghost copies the field value of its interior source.
struct GhostMap {
    std::vector<std::size_t> ghosts;   // indices of ghost points in the augmented cloud
    std::vector<std::size_t> sources;  // interior source per ghost
};

// Reflects every interior point within the mirror band of a domain edge
// across that edge (corner points across both edges and the corner). The
// band is twice the operator support so ghost neighborhoods stay complete.
// Throws ConfigError if the curved bump region reaches into the band.
std::pair<SurfacePointCloud, GhostMap> build_ghosts(const SurfacePointCloud& cloud,
                                                    const BumpSurfaceSpec& spec, double rc);

// field[ghost] = field[source]: even extension, zero normal derivative.
void sync_ghosts(std::vector<double>& field, const GhostMap& map);

// Fixed-step Dormand-Prince 5(4). The embedded 4th-order estimate is
// computed but not used for step control. `rhs` must perform any ghost
// synchronization itself; it is called once per stage. Throws BlowUpError
// on non-finite values.
using RhsFunction = std::function<std::vector<double>(const std::vector<double>&)>;
std::vector<double> dopri5_integrate(std::vector<double> initial, const RhsFunction& rhs,
                                     double dt, double t_final);

}  // namespace sdcpse

#endif
