#ifndef SDCPSE_SURFACE_OPERATOR_HPP_
#define SDCPSE_SURFACE_OPERATOR_HPP_

#include <cmath>
#include <optional>
#include <vector>

#include "sdcpse/dcpse.hpp"
#include "sdcpse/multi_index.hpp"
#include "sdcpse/point_cloud.hpp"

namespace sdcpse {

// Scaled distance vectors of the virtual normally-extended neighborhood of
// one surface point: one group per surface neighbor s_i (the point itself
// plus its normal copies), then a final group with the normal copies of the
// center point.
struct SurfaceNeighborhood {
    std::size_t center = 0;
    std::vector<std::vector<Vec3>> groups;  // entries are d / epsilon
    double dn = 0.0;
    int nn = 0;
    double rc = 0.0;
    double epsilon = 0.0;
};

// For each surface neighbor s_i of p: d = x_p - x_s_i - i*dn*n_s_i for
// i in [-nn, nn], kept when |d| <= rc; final group d = -i*dn*n_p for
// i in [-nn, nn] without 0, same filter. Stored divided by epsilon.
SurfaceNeighborhood build_surface_neighborhood(const SurfacePointCloud& cloud, std::size_t p,
                                               const NeighborList& nbrs, double dn, int nn,
                                               double rc, double epsilon);

struct SurfaceOperatorParams {
    int r = 2;                  // requested convergence order
    double rc = 0.0;            // operator support radius
    std::optional<double> dn;   // normal spacing; default: average_spacing(x_p)
    std::optional<int> nn;      // layers per side; default: round(rc / dn)
    double eps_factor = 1.0;    // epsilon(x_p) = average_spacing(x_p) * eps_factor
    bool skip_ghosts = false;   // ghost-labeled points get no operator (never evaluated)
};

// Reduced surface kernels eta_S for every point: per neighbor one value,
// plus the self value last. No extended points are stored.
struct SurfaceOperator {
    std::vector<std::vector<std::size_t>> neighbors;  // N_S(x_p) per point
    std::vector<std::vector<double>> kernel_values;   // |N_S|+1 values, self last
    std::vector<double> epsilon;
    int order = 0;
    int r = 0;
    int dim = 0;

    bool odd() const { return order % 2 != 0; }
    // The eps^-(|alpha|+d) prefactor of the operator at point p.
    double scale(std::size_t p) const { return std::pow(epsilon[p], -(order + dim)); }
};

// Algorithm: per point, build the embedding-space DC-PSE kernel over all
// flattened neighborhood entries, evaluate it at each entry, and accumulate
// per-group sums into the surface kernel values. Construction is
// independent per point and runs in parallel.
SurfaceOperator build_surface_operator(const SurfacePointCloud& cloud,
                                       const DifferentialOperator& op,
                                       const SurfaceOperatorParams& params);

// Q f(x_p) over all points. The self term is skipped for even orders
// (it vanishes identically) and contributes 2 f(x_p) eta_S(x_p,x_p) for odd.
std::vector<double> evaluate_surface_operator(const std::vector<double>& field,
                                              const SurfaceOperator& sop);
double evaluate_surface_operator_at(const std::vector<double>& field, const SurfaceOperator& sop,
                                    std::size_t p);

using Mat3 = std::array<Vec3, 3>;  // row-major 3x3

// Embedded shape tensor grad_S n: row i is the surface gradient of normal
// component n_i, computed with three first-derivative surface operators.
std::vector<Mat3> shape_tensor(const SurfacePointCloud& cloud, const SurfaceOperatorParams& params);

struct CurvatureResult {
    std::vector<double> mean;   // H = 0.5 trace(grad_S n), outward normals
    std::vector<double> gauss;  // K = product of the two largest-|lambda| eigenvalues
};

// Throws IllConditionedShapeError when an eigenvalue pair is complex far
// beyond discretization noise.
CurvatureResult curvatures(const std::vector<Mat3>& shapes);

// Real parts of the eigenvalues (descending by magnitude) and the imaginary
// magnitude of the complex pair, zero if all eigenvalues are real.
struct Eigen3 {
    std::array<double, 3> real;
    double imag = 0.0;
};
Eigen3 eigenvalues_3x3(const Mat3& m);

}  // namespace sdcpse

#endif
