#include "sdcpse/surface_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sdcpse/errors.hpp"

namespace sdcpse {

namespace {

double norm(const Vec3& v, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

}  // namespace

SurfaceNeighborhood build_surface_neighborhood(const SurfacePointCloud& cloud, std::size_t p,
                                               const NeighborList& nbrs, double dn, int nn,
                                               double rc, double epsilon) {
    if (dn <= 0.0) throw ConfigError("surface neighborhood: dn must be positive");
    if (nn < 1) throw ConfigError("surface neighborhood: nn must be >= 1");

    SurfaceNeighborhood out;
    out.center = p;
    out.dn = dn;
    out.nn = nn;
    out.rc = rc;
    out.epsilon = epsilon;

    const int dim = cloud.dim;
    const Vec3& xp = cloud.positions[p];
    for (std::size_t s : nbrs.neighbors[p]) {
        std::vector<Vec3> group;
        const Vec3& xs = cloud.positions[s];
        const Vec3& ns = cloud.normals[s];
        for (int i = -nn; i <= nn; ++i) {
            Vec3 d{0, 0, 0};
            for (int c = 0; c < dim; ++c)
                d[c] = xp[c] - xs[c] - static_cast<double>(i) * dn * ns[c];
            if (norm(d, dim) <= rc) {
                for (int c = 0; c < dim; ++c) d[c] /= epsilon;
                group.push_back(d);
            }
        }
        out.groups.push_back(std::move(group));
    }

    // Normal copies of the center point itself.
    std::vector<Vec3> self_group;
    const Vec3& np = cloud.normals[p];
    for (int i = -nn; i <= nn; ++i) {
        if (i == 0) continue;
        Vec3 d{0, 0, 0};
        for (int c = 0; c < dim; ++c) d[c] = -static_cast<double>(i) * dn * np[c];
        if (norm(d, dim) <= rc) {
            for (int c = 0; c < dim; ++c) d[c] /= epsilon;
            self_group.push_back(d);
        }
    }
    out.groups.push_back(std::move(self_group));

    bool any = false;
    for (const auto& g : out.groups) any = any || !g.empty();
    if (!any) throw IsolatedPointError(p);
    return out;
}

SurfaceOperator build_surface_operator(const SurfacePointCloud& cloud,
                                       const DifferentialOperator& op,
                                       const SurfaceOperatorParams& params) {
    if (op.dim() != cloud.dim)
        throw ConfigError("surface operator: operator terms must span the embedding dimension");
    if (params.rc <= 0.0) throw ConfigError("surface operator: rc must be positive");

    const std::size_t n = cloud.size();
    const NeighborList nbrs = build_neighbor_list(cloud, params.rc);

    SurfaceOperator sop;
    sop.neighbors.resize(n);
    sop.kernel_values.resize(n);
    sop.epsilon.assign(n, 0.0);
    sop.order = op.order();
    sop.r = params.r;
    sop.dim = cloud.dim;

    // kind: 0 ok, 1 isolated point, 2 degenerate distribution
    std::vector<int> err_kind(n, 0);
    std::vector<std::string> err_msg(n);

#pragma omp parallel for schedule(dynamic, 16)
    for (long long pi = 0; pi < static_cast<long long>(n); ++pi) {
        const auto p = static_cast<std::size_t>(pi);
        if (params.skip_ghosts && cloud.labels[p] == PointLabel::ghost) continue;
        try {
            if (nbrs.neighbors[p].empty()) throw IsolatedPointError(p);
            const double spacing = average_spacing(cloud, p, nbrs);
            const double eps = spacing * params.eps_factor;
            const double dn = params.dn.value_or(spacing);
            const int nn = params.nn.value_or(
                std::max(1, static_cast<int>(std::llround(params.rc / dn))));

            const SurfaceNeighborhood hood =
                build_surface_neighborhood(cloud, p, nbrs, dn, nn, params.rc, eps);

            std::vector<Vec3> flat;
            for (const auto& g : hood.groups) flat.insert(flat.end(), g.begin(), g.end());
            const KernelCoefficients kernel =
                build_kernel_scaled(flat, op, eps, params.r, params.rc, p);

            std::vector<double> values(hood.groups.size(), 0.0);
            for (std::size_t g = 0; g < hood.groups.size(); ++g)
                for (const auto& z : hood.groups[g])
                    values[g] += evaluate_kernel_scaled(kernel, z);

            sop.neighbors[p] = nbrs.neighbors[p];
            sop.kernel_values[p] = std::move(values);
            sop.epsilon[p] = eps;
        } catch (const IsolatedPointError& e) {
            err_kind[p] = 1;
            err_msg[p] = e.what();
        } catch (const NumericError& e) {
            err_kind[p] = 2;
            err_msg[p] = e.what();
        }
    }

    for (std::size_t p = 0; p < n; ++p) {
        if (err_kind[p] == 1) throw IsolatedPointError(p);
        if (err_kind[p] == 2) throw DegenerateDistributionError(p, err_msg[p]);
    }
    return sop;
}

double evaluate_surface_operator_at(const std::vector<double>& field, const SurfaceOperator& sop,
                                    std::size_t p) {
    if (sop.kernel_values[p].empty()) return 0.0;  // skipped (ghost) point
    const double sign = sop.odd() ? 1.0 : -1.0;
    const double fp = field[p];
    const auto& nb = sop.neighbors[p];
    const auto& eta = sop.kernel_values[p];
    double sum = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) sum += (field[nb[i]] + sign * fp) * eta[i];
    if (sop.odd()) sum += 2.0 * fp * eta.back();  // self term vanishes for even orders
    return sum * sop.scale(p);
}

std::vector<double> evaluate_surface_operator(const std::vector<double>& field,
                                              const SurfaceOperator& sop) {
    std::vector<double> out(sop.neighbors.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < static_cast<long long>(out.size()); ++p)
        out[p] = evaluate_surface_operator_at(field, sop, static_cast<std::size_t>(p));
    return out;
}

std::vector<Mat3> shape_tensor(const SurfacePointCloud& cloud,
                               const SurfaceOperatorParams& params) {
    if (cloud.dim != 3) throw ConfigError("shape tensor requires a 3D embedding");

    std::array<std::vector<double>, 3> normal_component;
    for (int c = 0; c < 3; ++c) {
        normal_component[c].resize(cloud.size());
        for (std::size_t p = 0; p < cloud.size(); ++p)
            normal_component[c][p] = cloud.normals[p][c];
    }

    std::vector<Mat3> shapes(cloud.size());
    for (int axis = 0; axis < 3; ++axis) {
        const SurfaceOperator deriv =
            build_surface_operator(cloud, DifferentialOperator::derivative(axis, 3), params);
        for (int c = 0; c < 3; ++c) {
            const std::vector<double> grad = evaluate_surface_operator(normal_component[c], deriv);
            for (std::size_t p = 0; p < cloud.size(); ++p) shapes[p][c][axis] = grad[p];
        }
    }
    return shapes;
}

Eigen3 eigenvalues_3x3(const Mat3& m) {
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double c1 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                      m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);

    // Depressed cubic x^3 + p x + q with lambda = x + tr/3.
    const double p = c1 - tr * tr / 3.0;
    const double q = -2.0 * tr * tr * tr / 27.0 + tr * c1 / 3.0 - det;
    const double shift = tr / 3.0;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;

    Eigen3 out{};
    if (disc >= 0.0) {
        // Three real roots, trigonometric form.
        if (p >= 0.0) {  // p ~ 0: triple root
            out.real = {shift, shift, shift};
        } else {
            const double rho = 2.0 * std::sqrt(-p / 3.0);
            const double arg = std::clamp(3.0 * q / (p * rho), -1.0, 1.0);
            const double theta = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                out.real[k] = rho * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0) + shift;
        }
    } else {
        // One real root via Cardano; the conjugate pair follows by deflation:
        // x^2 + x1 x + (p + x1^2) = 0.
        const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double x1 = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
        const double pair_real = -x1 / 2.0;
        out.real = {x1 + shift, pair_real + shift, pair_real + shift};
        out.imag = 0.5 * std::sqrt(std::max(0.0, 3.0 * x1 * x1 + 4.0 * p));
    }
    std::sort(out.real.begin(), out.real.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    return out;
}

CurvatureResult curvatures(const std::vector<Mat3>& shapes) {
    CurvatureResult res;
    res.mean.reserve(shapes.size());
    res.gauss.reserve(shapes.size());
    for (std::size_t p = 0; p < shapes.size(); ++p) {
        const Mat3& m = shapes[p];
        double frob = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) frob += m[i][j] * m[i][j];
        frob = std::sqrt(frob);

        const Eigen3 eig = eigenvalues_3x3(m);
        // Discretization noise splits near-equal principal curvatures into a
        // conjugate pair with small imaginary part; only a pair far outside
        // that regime marks an unusable tensor.
        if (eig.imag > 0.25 * std::max(frob, 1e-300)) throw IllConditionedShapeError(p);

        res.mean.push_back(0.5 * (m[0][0] + m[1][1] + m[2][2]));
        res.gauss.push_back(eig.real[0] * eig.real[1]);
    }
    return res;
}

}  // namespace sdcpse
