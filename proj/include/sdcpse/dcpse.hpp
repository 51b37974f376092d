#ifndef SDCPSE_DCPSE_HPP_
#define SDCPSE_DCPSE_HPP_

#include <limits>
#include <vector>

#include "sdcpse/multi_index.hpp"
#include "sdcpse/point_cloud.hpp"

namespace sdcpse {

// Polynomial coefficients of one collocation point's kernel
// eta(z) = (sum_g a_g z^g) exp(-|z|^2), z = (x_p - x_q) / epsilon.
struct KernelCoefficients {
    std::vector<MultiIndex> basis;  // graded lexicographic, b_min..order+r-1
    std::vector<double> coeffs;     // a_g per basis entry
    double epsilon = 0.0;
    int order = 0;                  // |alpha|
    int r = 0;                      // requested convergence order
    int dim = 0;                    // embedding dimension
    double cutoff = std::numeric_limits<double>::infinity();

    bool odd() const { return order % 2 != 0; }
};

// Determines the kernel coefficients from the discrete moment conditions
// over the given neighbor offsets (x_p - x_q). The moment system
//   sum_g a_g M[b][g] = rhs[b],  M[b][g] = eps^-d sum_q z_q^(b+g) e^(-|z_q|^2)
// with rhs[b] = (-1)^|alpha| b! when b is a term of op and 0 otherwise is
// solved with full pivoting; consistent rank-deficient systems (symmetric
// stencils) are accepted, and the recomputed moments are verified to 1e-9
// relative afterwards. Failure of that check raises
// DegenerateDistributionError tagged with point_id.
KernelCoefficients build_kernel(const std::vector<Vec3>& offsets,
                                const DifferentialOperator& op, double epsilon, int r,
                                double cutoff = std::numeric_limits<double>::infinity(),
                                std::size_t point_id = 0);

// Same, but the offsets are already divided by epsilon (Algorithm-style
// scaled distances).
KernelCoefficients build_kernel_scaled(const std::vector<Vec3>& scaled_offsets,
                                       const DifferentialOperator& op, double epsilon, int r,
                                       double cutoff = std::numeric_limits<double>::infinity(),
                                       std::size_t point_id = 0);

// Kernel value for an unscaled offset x_p - x_q; exact zero beyond the
// recorded cutoff radius.
double evaluate_kernel(const KernelCoefficients& k, const Vec3& offset);

// Kernel value for z = (x_p - x_q)/epsilon (no cutoff test).
double evaluate_kernel_scaled(const KernelCoefficients& k, const Vec3& z);

// Discrete moments Z^b = eps^-d sum_q z_q^b eta(z_q) of the kernel over the
// given scaled offsets, one per basis entry. Recomputed by direct summation;
// used to verify the moment conditions independently of the linear solve.
std::vector<double> compute_discrete_moments(const KernelCoefficients& k,
                                             const std::vector<Vec3>& scaled_offsets);

// Discrete DC-PSE operator at point p:
//   Q f(x_p) = eps^-(|alpha|+d) sum_q (f(x_q) +/- f(x_p)) eta((x_p-x_q)/eps)
// with + for odd and - for even operator order. The eps^-d factor is the
// quadrature volume normalization of the kernel.
double apply_operator(const std::vector<double>& field, std::size_t p,
                      const KernelCoefficients& k, const std::vector<std::size_t>& neighbors,
                      const std::vector<Vec3>& positions);

}  // namespace sdcpse

#endif
