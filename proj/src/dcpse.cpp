#include "sdcpse/dcpse.hpp"

#include <cmath>
#include <limits>

#include "sdcpse/errors.hpp"
#include "sdcpse/linalg.hpp"

namespace sdcpse {

namespace {

// Powers z_i^k for k = 0..max_deg, per component.
struct PowerTable {
    double pw[3][16];
    PowerTable(const Vec3& z, int dim, int max_deg) {
        for (int i = 0; i < dim; ++i) {
            pw[i][0] = 1.0;
            for (int k = 1; k <= max_deg; ++k) pw[i][k] = pw[i][k - 1] * z[i];
        }
    }
};

double squared_norm(const Vec3& z, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += z[i] * z[i];
    return s;
}

}  // namespace

KernelCoefficients build_kernel_scaled(const std::vector<Vec3>& scaled_offsets,
                                       const DifferentialOperator& op, double epsilon, int r,
                                       double cutoff, std::size_t point_id) {
    if (scaled_offsets.empty())
        throw IsolatedPointError(point_id);
    if (epsilon <= 0.0) throw ConfigError("build_kernel: epsilon must be positive");

    KernelCoefficients k;
    k.basis = basis_multi_indices(op.order(), r, op.dim());
    k.epsilon = epsilon;
    k.order = op.order();
    k.r = r;
    k.dim = op.dim();
    k.cutoff = cutoff;

    const std::size_t n = k.basis.size();
    const int max_deg = op.order() + r - 1;
    const double vol = std::pow(epsilon, -k.dim);

    // M[b][g] = eps^-d sum_q z^(b+g) e^(-|z|^2): rank-one updates with the
    // basis monomial vector.
    DenseMatrix m(n, n);
    std::vector<double> mono(n);
    for (const auto& z : scaled_offsets) {
        const PowerTable pw(z, k.dim, max_deg);
        for (std::size_t g = 0; g < n; ++g) {
            double v = 1.0;
            for (int i = 0; i < k.dim; ++i) v *= pw.pw[i][k.basis[g].exponents[i]];
            mono[g] = v;
        }
        const double w = vol * std::exp(-squared_norm(z, k.dim));
        for (std::size_t b = 0; b < n; ++b) {
            const double wb = w * mono[b];
            for (std::size_t g = b; g < n; ++g) m(b, g) += wb * mono[g];
        }
    }
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t g = 0; g < b; ++g) m(b, g) = m(g, b);

    const double sign = op.odd() ? -1.0 : 1.0;
    Vector rhs(n, 0.0);
    double rhs_scale = 1.0;
    for (const auto& term : op.terms) {
        for (std::size_t b = 0; b < n; ++b)
            if (k.basis[b] == term) rhs[b] += sign * static_cast<double>(term.factorial());
        rhs_scale = std::max(rhs_scale, static_cast<double>(term.factorial()));
    }

    double norm_m_inf = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
        double row = 0.0;
        for (std::size_t g = 0; g < n; ++g) row += std::abs(m(b, g));
        norm_m_inf = std::max(norm_m_inf, row);
    }

    k.coeffs = solve_full_pivot(m, rhs).x;

    // Postcondition: the discrete moment conditions hold. This catches both
    // genuinely degenerate distributions (inconsistent systems, which leave
    // O(rhs) residuals) and solutions polluted beyond use. The second term
    // is the backward-error allowance of the elimination itself.
    double norm_a_1 = 0.0;
    for (double a : k.coeffs) norm_a_1 += std::abs(a);
    const double tol =
        1e-9 * rhs_scale + 1e3 * std::numeric_limits<double>::epsilon() * norm_m_inf * norm_a_1;

    const std::vector<double> z = compute_discrete_moments(k, scaled_offsets);
    for (std::size_t b = 0; b < n; ++b)
        if (std::abs(z[b] - rhs[b]) > tol)
            throw DegenerateDistributionError(
                point_id, "moment condition for " + k.basis[b].to_string() + " violated by " +
                              std::to_string(std::abs(z[b] - rhs[b])));
    return k;
}

KernelCoefficients build_kernel(const std::vector<Vec3>& offsets, const DifferentialOperator& op,
                                double epsilon, int r, double cutoff, std::size_t point_id) {
    std::vector<Vec3> scaled(offsets.size());
    for (std::size_t q = 0; q < offsets.size(); ++q)
        for (int i = 0; i < 3; ++i) scaled[q][i] = offsets[q][i] / epsilon;
    return build_kernel_scaled(scaled, op, epsilon, r, cutoff, point_id);
}

double evaluate_kernel_scaled(const KernelCoefficients& k, const Vec3& z) {
    double poly = 0.0;
    for (std::size_t g = 0; g < k.basis.size(); ++g)
        poly += k.coeffs[g] * k.basis[g].monomial(z);
    return poly * std::exp(-squared_norm(z, k.dim));
}

double evaluate_kernel(const KernelCoefficients& k, const Vec3& offset) {
    if (std::sqrt(squared_norm(offset, k.dim)) > k.cutoff) return 0.0;
    Vec3 z{offset[0] / k.epsilon, offset[1] / k.epsilon, offset[2] / k.epsilon};
    return evaluate_kernel_scaled(k, z);
}

std::vector<double> compute_discrete_moments(const KernelCoefficients& k,
                                             const std::vector<Vec3>& scaled_offsets) {
    const double vol = std::pow(k.epsilon, -k.dim);
    std::vector<double> z(k.basis.size(), 0.0);
    for (const auto& zq : scaled_offsets) {
        const double eta = evaluate_kernel_scaled(k, zq);
        for (std::size_t b = 0; b < k.basis.size(); ++b)
            z[b] += vol * k.basis[b].monomial(zq) * eta;
    }
    return z;
}

double apply_operator(const std::vector<double>& field, std::size_t p,
                      const KernelCoefficients& k, const std::vector<std::size_t>& neighbors,
                      const std::vector<Vec3>& positions) {
    const double sign = k.odd() ? 1.0 : -1.0;
    const double fp = field[p];
    double sum = 0.0;
    for (std::size_t q : neighbors) {
        Vec3 offset{positions[p][0] - positions[q][0], positions[p][1] - positions[q][1],
                    positions[p][2] - positions[q][2]};
        sum += (field[q] + sign * fp) * evaluate_kernel(k, offset);
    }
    return sum * std::pow(k.epsilon, -(k.order + k.dim));
}

}  // namespace sdcpse
