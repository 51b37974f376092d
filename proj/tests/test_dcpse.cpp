#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sdcpse/bench/norms.hpp"
#include "sdcpse/dcpse.hpp"
#include "sdcpse/errors.hpp"

using namespace sdcpse;

namespace {

// Stencil weight of neighbor q: the coefficient multiplying f(x_q) in the
// discrete operator.
double stencil_weight(const KernelCoefficients& k, const Vec3& offset) {
    return evaluate_kernel(k, offset) * std::pow(k.epsilon, -(k.order + k.dim));
}

std::vector<Vec3> random_offsets(std::mt19937& rng, int dim, std::size_t count, double radius) {
    std::uniform_real_distribution<double> uni(-radius, radius);
    std::vector<Vec3> out;
    while (out.size() < count) {
        Vec3 v{uni(rng), dim >= 2 ? uni(rng) : 0.0, dim == 3 ? uni(rng) : 0.0};
        double n2 = 0.0;
        for (int i = 0; i < dim; ++i) n2 += v[i] * v[i];
        if (n2 > 0.01 * radius * radius && n2 <= radius * radius) out.push_back(v);
    }
    return out;
}

double mean_l1(const std::vector<Vec3>& offsets, int dim) {
    double s = 0.0;
    for (const auto& o : offsets) {
        double l1 = 0.0;
        for (int i = 0; i < dim; ++i) l1 += std::abs(o[i]);
        s += l1;
    }
    return s / static_cast<double>(offsets.size());
}

}  // namespace

TEST_CASE("1D second-derivative stencil reduces to the central difference") {
    const double h = 0.1;
    const std::vector<Vec3> offsets{{-h, 0, 0}, {h, 0, 0}};
    const DifferentialOperator d2({MultiIndex{2}});
    for (const double eps : {h, 1.3 * h}) {
        const KernelCoefficients k = build_kernel(offsets, d2, eps, 2);
        const double w_minus = stencil_weight(k, {-h, 0, 0});
        const double w_plus = stencil_weight(k, {h, 0, 0});
        CHECK(std::abs(w_minus - 1.0 / (h * h)) <= 1e-10 / (h * h));
        CHECK(std::abs(w_plus - 1.0 / (h * h)) <= 1e-10 / (h * h));
        // center weight is minus the sum for even operators
        CHECK(std::abs(-(w_minus + w_plus) - (-2.0 / (h * h))) <= 1e-10 / (h * h));
    }
}

TEST_CASE("2D Laplacian stencil reduces to the five-point formula") {
    const double h = 0.05;
    const std::vector<Vec3> offsets{{-h, 0, 0}, {h, 0, 0}, {0, -h, 0}, {0, h, 0}};
    const KernelCoefficients k =
        build_kernel(offsets, DifferentialOperator::laplacian(2), h, 2);
    for (const auto& o : offsets)
        CHECK(std::abs(stencil_weight(k, o) - 1.0 / (h * h)) <= 1e-10 / (h * h));
}

TEST_CASE("collinear points cannot support a perpendicular derivative") {
    std::vector<Vec3> offsets;
    for (int i = 1; i <= 20; ++i) offsets.push_back({0.05 * i, 0.0, 0.0});
    const DifferentialOperator ddy = DifferentialOperator::derivative(1, 2);
    CHECK_THROWS_AS(build_kernel(offsets, ddy, 0.3, 2, 2.0, 17), DegenerateDistributionError);
    try {
        build_kernel(offsets, ddy, 0.3, 2, 2.0, 17);
    } catch (const DegenerateDistributionError& e) {
        CHECK(e.point_index == 17);
    }
}

TEST_CASE("evaluate_kernel") {
    std::mt19937 rng(1);
    const auto offsets = random_offsets(rng, 2, 20, 0.5);
    const double eps = mean_l1(offsets, 2);
    const KernelCoefficients k =
        build_kernel(offsets, DifferentialOperator::laplacian(2), eps, 2, 0.5);

    SUBCASE("compact support: zero beyond the cutoff") {
        CHECK(evaluate_kernel(k, {0.51, 0.0, 0.0}) == 0.0);
        CHECK(evaluate_kernel(k, {0.4, 0.4, 0.0}) == 0.0);
    }
    SUBCASE("even operators have no constant term, so eta(0) = 0") {
        CHECK(evaluate_kernel(k, {0.0, 0.0, 0.0}) == 0.0);
    }
    SUBCASE("matches a term-by-term polynomial-times-Gaussian oracle") {
        const Vec3 z{0.5, 0.5, 0.0};
        double expected = 0.0;
        for (std::size_t g = 0; g < k.basis.size(); ++g) {
            double mono = 1.0;
            for (int i = 0; i < 2; ++i)
                for (int e = 0; e < k.basis[g].exponents[i]; ++e) mono *= z[i];
            expected += k.coeffs[g] * mono;
        }
        expected *= std::exp(-(z[0] * z[0] + z[1] * z[1]));
        CHECK(evaluate_kernel_scaled(k, z) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("apply_operator on 1D grids") {
    const double h = 0.01;
    // positions: a 7-point grid, center at index 3
    std::vector<Vec3> positions;
    for (int i = 0; i <= 6; ++i) positions.push_back({static_cast<double>(i - 3) * h, 0, 0});
    const std::vector<std::size_t> nbrs{2, 4};
    const std::vector<Vec3> offsets{{h, 0, 0}, {-h, 0, 0}};  // x_p - x_q

    SUBCASE("constant field under an even operator is exactly zero") {
        const KernelCoefficients k = build_kernel(offsets, DifferentialOperator({MultiIndex{2}}),
                                                  h, 2);
        const std::vector<double> f(positions.size(), 3.7);
        CHECK(apply_operator(f, 3, k, nbrs, positions) == 0.0);
    }
    SUBCASE("second derivative of x^2 is 2") {
        const KernelCoefficients k = build_kernel(offsets, DifferentialOperator({MultiIndex{2}}),
                                                  h, 2);
        std::vector<double> f;
        for (const auto& p : positions) f.push_back(p[0] * p[0]);
        CHECK(apply_operator(f, 3, k, nbrs, positions) == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("first derivative of x is 1") {
        const KernelCoefficients k = build_kernel(offsets, DifferentialOperator({MultiIndex{1}}),
                                                  h, 2);
        std::vector<double> f;
        for (const auto& p : positions) f.push_back(p[0]);
        CHECK(apply_operator(f, 3, k, nbrs, positions) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("moment conditions verified on random neighborhoods") {
    std::mt19937 rng(2024);
    const std::vector<DifferentialOperator> ops{
        DifferentialOperator::laplacian(2), DifferentialOperator::laplacian(3),
        DifferentialOperator::derivative(0, 2), DifferentialOperator::derivative(2, 3)};
    for (int trial = 0; trial < 25; ++trial) {
        for (const auto& op : ops) {
            const int dim = op.dim();
            const auto offsets = random_offsets(rng, dim, dim == 2 ? 25 : 45, 0.4);
            const double eps = mean_l1(offsets, dim);
            const KernelCoefficients k = build_kernel(offsets, op, eps, 2);

            std::vector<Vec3> scaled(offsets.size());
            for (std::size_t q = 0; q < offsets.size(); ++q)
                for (int i = 0; i < 3; ++i) scaled[q][i] = offsets[q][i] / eps;
            const auto moments = compute_discrete_moments(k, scaled);
            for (std::size_t b = 0; b < k.basis.size(); ++b) {
                double target = 0.0;
                for (const auto& term : op.terms)
                    if (k.basis[b] == term)
                        target += (op.odd() ? -1.0 : 1.0) *
                                  static_cast<double>(term.factorial());
                CHECK(std::abs(moments[b] - target) <= 1e-9 * 2.0);
            }
        }
    }
}

TEST_CASE("polynomial exactness up to degree |alpha| + r - 1") {
    std::mt19937 rng(99);
    const Vec3 center{0.3, -0.2, 0.1};
    for (const auto& op :
         {DifferentialOperator::laplacian(2), DifferentialOperator::derivative(1, 2),
          DifferentialOperator::laplacian(3)}) {
        const int dim = op.dim();
        const int r = 2;
        const auto offsets = random_offsets(rng, dim, dim == 2 ? 30 : 50, 0.35);
        const double eps = mean_l1(offsets, dim);
        const KernelCoefficients k = build_kernel(offsets, op, eps, r);

        std::vector<Vec3> positions{center};
        std::vector<std::size_t> nbrs;
        for (const auto& o : offsets) {
            nbrs.push_back(positions.size());
            positions.push_back({center[0] - o[0], center[1] - o[1], center[2] - o[2]});
        }

        for (int deg = 0; deg <= op.order() + r - 1; ++deg) {
            for (const auto& mono : multi_indices_of_degree(deg, dim)) {
                std::vector<double> f;
                for (const auto& pos : positions) f.push_back(mono.monomial(pos));

                // analytic D^alpha monomial at the center, summed over terms
                double expected = 0.0;
                for (const auto& term : op.terms) {
                    double coef = 1.0;
                    MultiIndex reduced = mono;
                    bool vanishes = false;
                    for (int i = 0; i < dim && !vanishes; ++i) {
                        int e = mono.exponents[i];
                        for (int d = 0; d < term.exponents[i]; ++d) {
                            if (e == 0) { vanishes = true; break; }
                            coef *= e--;
                        }
                        reduced.exponents[i] = e;
                    }
                    if (!vanishes) expected += coef * reduced.monomial(center);
                }
                const double got = apply_operator(f, 0, k, nbrs, positions);
                CHECK(std::abs(got - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST_CASE("second derivative converges at order >= r - 0.3 on perturbed grids") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    std::vector<sdcpse::bench::ConvergenceRecord> records;
    for (const std::size_t n : {51UL, 101UL, 201UL}) {
        const double h = 1.0 / static_cast<double>(n - 1);
        std::vector<Vec3> positions;
        for (std::size_t i = 0; i < n; ++i) {
            double x = static_cast<double>(i) * h;
            if (i > 0 && i + 1 < n) x += jitter(rng) * h;
            positions.push_back({x, 0, 0});
        }
        const double rc = 3.1 * h;
        double linf = 0.0;
        for (std::size_t p = 5; p + 5 < n; ++p) {
            std::vector<std::size_t> nbrs;
            std::vector<Vec3> offsets;
            for (std::size_t q = 0; q < n; ++q) {
                if (q == p) continue;
                const double d = positions[p][0] - positions[q][0];
                if (std::abs(d) <= rc) {
                    nbrs.push_back(q);
                    offsets.push_back({d, 0, 0});
                }
            }
            const double eps = mean_l1(offsets, 1);
            const KernelCoefficients k =
                build_kernel(offsets, DifferentialOperator({MultiIndex{2}}), eps, 2, rc);
            std::vector<double> f;
            for (const auto& pos : positions) f.push_back(std::sin(pos[0]));
            const double got = apply_operator(f, p, k, nbrs, positions);
            linf = std::max(linf, std::abs(got + std::sin(positions[p][0])));
        }
        records.push_back({"grid", n, h, 2, 3.1, h, 0, 1.0, linf, linf, 0.0});
    }
    const auto [l2_order, linf_order] = sdcpse::bench::fit_convergence_order(records);
    CHECK(linf_order >= 1.7);
}
