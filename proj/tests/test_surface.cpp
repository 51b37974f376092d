#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sdcpse/bench/reference_fields.hpp"
#include "sdcpse/errors.hpp"
#include "sdcpse/surface_operator.hpp"

using namespace sdcpse;

namespace {

// Reference route for the reduction identity: explicitly materialize the
// normally-extended points of every surface neighbor (and of the center),
// give them constantly-extended field values, and evaluate plain flat-space
// DC-PSE over that embedding cloud.
double flat_dcpse_on_materialized_cloud(const SurfacePointCloud& cloud, std::size_t p,
                                        const NeighborList& nbrs, const DifferentialOperator& op,
                                        double dn, int nn, double rc, double epsilon, int r,
                                        const std::vector<double>& field) {
    std::vector<Vec3> positions{cloud.positions[p]};
    std::vector<double> values{field[p]};
    const int dim = cloud.dim;

    auto add_copies = [&](std::size_t s, bool include_surface_point) {
        for (int i = -nn; i <= nn; ++i) {
            if (i == 0 && !include_surface_point) continue;
            Vec3 x{0, 0, 0};
            for (int c = 0; c < 3; ++c)
                x[c] = cloud.positions[s][c] + static_cast<double>(i) * dn * cloud.normals[s][c];
            double d2 = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double d = cloud.positions[p][c] - x[c];
                d2 += d * d;
            }
            if (std::sqrt(d2) <= rc) {
                positions.push_back(x);
                values.push_back(field[s]);  // constant normal extension
            }
        }
    };
    for (std::size_t s : nbrs.neighbors[p]) add_copies(s, true);
    add_copies(p, false);

    std::vector<std::size_t> neighbor_idx;
    std::vector<Vec3> offsets;
    for (std::size_t q = 1; q < positions.size(); ++q) {
        neighbor_idx.push_back(q);
        offsets.push_back({positions[0][0] - positions[q][0], positions[0][1] - positions[q][1],
                           positions[0][2] - positions[q][2]});
    }
    const KernelCoefficients kernel = build_kernel(offsets, op, epsilon, r, rc, p);
    return apply_operator(values, 0, kernel, neighbor_idx, positions);
}

void check_reduction_identity(const SurfacePointCloud& cloud, const DifferentialOperator& op,
                              double dn, int nn, double rc, int r,
                              const std::vector<double>& field) {
    const NeighborList nbrs = build_neighbor_list(cloud, rc);
    SurfaceOperatorParams params;
    params.r = r;
    params.rc = rc;
    params.dn = dn;
    params.nn = nn;
    const SurfaceOperator sop = build_surface_operator(cloud, op, params);
    const std::vector<double> reduced = evaluate_surface_operator(field, sop);

    double scale = 0.0;
    std::vector<double> flat(cloud.size());
    for (std::size_t p = 0; p < cloud.size(); ++p) {
        const double eps = average_spacing(cloud, p, nbrs);
        flat[p] = flat_dcpse_on_materialized_cloud(cloud, p, nbrs, op, dn, nn, rc, eps, r, field);
        scale = std::max(scale, std::abs(flat[p]));
    }
    for (std::size_t p = 0; p < cloud.size(); ++p)
        CHECK(std::abs(reduced[p] - flat[p]) <= 1e-12 * scale);
}

SurfacePointCloud flat_line_cloud(std::size_t n, double h) {
    SurfacePointCloud c;
    c.dim = 2;
    for (std::size_t i = 0; i < n; ++i) {
        c.positions.push_back({static_cast<double>(i) * h, 0.0, 0.0});
        c.normals.push_back({0.0, 1.0, 0.0});
    }
    c.labels.assign(n, PointLabel::interior);
    return c;
}

SurfacePointCloud plane_cloud(std::size_t side, double h) {
    SurfacePointCloud c;
    c.dim = 3;
    for (std::size_t j = 0; j < side; ++j)
        for (std::size_t i = 0; i < side; ++i) {
            c.positions.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h, 0.0});
            c.normals.push_back({0.0, 0.0, 1.0});
        }
    c.labels.assign(side * side, PointLabel::interior);
    return c;
}

}  // namespace

TEST_CASE("surface neighborhood on a flat line") {
    const double h = 0.1;
    const auto cloud = flat_line_cloud(5, h);
    const NeighborList nbrs = build_neighbor_list(cloud, 1.5 * h);
    // center point 2 has neighbors 1 and 3 within 1.5h
    const SurfaceNeighborhood hood =
        build_surface_neighborhood(cloud, 2, nbrs, h, 1, 1.5 * h, 1.0);

    REQUIRE(hood.groups.size() == nbrs.neighbors[2].size() + 1);
    // Each surface neighbor at distance h contributes (h,0) and (h,+-dn),
    // all with |d| <= 1.5h.
    CHECK(hood.groups[0].size() == 3);
    CHECK(hood.groups[1].size() == 3);
    for (const auto& d : hood.groups[0])
        CHECK(std::abs(d[0]) == doctest::Approx(h));
    // The self group holds only vectors along the normal with length dn..nn*dn.
    const auto& self = hood.groups.back();
    CHECK(self.size() == 2);
    for (const auto& d : self) {
        CHECK(d[0] == 0.0);
        CHECK(std::abs(d[1]) == doctest::Approx(h));
    }
}

TEST_CASE("self group is always normal copies of the center") {
    const auto cloud = generate_circle(64);
    const double dn = 3.0 / 63.0;
    const double rc = 4.1 * dn;
    const NeighborList nbrs = build_neighbor_list(cloud, rc);
    for (std::size_t p = 0; p < cloud.size(); p += 7) {
        const double eps = average_spacing(cloud, p, nbrs);
        const SurfaceNeighborhood hood = build_surface_neighborhood(cloud, p, nbrs, dn, 4, rc, eps);
        const auto& self = hood.groups.back();
        for (const auto& d : self) {
            // parallel to n_p, length a multiple of dn within rc (scaled by eps)
            const double len = std::hypot(d[0], d[1]) * eps;
            const double along =
                (d[0] * cloud.normals[p][0] + d[1] * cloud.normals[p][1]) * eps;
            CHECK(std::abs(std::abs(along) - len) <= 1e-12);
            CHECK(len <= rc + 1e-15);
            const double ratio = len / dn;
            CHECK(std::abs(ratio - std::round(ratio)) <= 1e-9);
        }
    }
}

TEST_CASE("total entry count matches a materialized brute-force count on the circle") {
    const std::size_t n = 64;
    const auto cloud = generate_circle(n);
    const double dn = 3.0 / static_cast<double>(n - 1);
    const int nn = 4;
    const double rc = 4.1 * dn;
    const NeighborList nbrs = build_neighbor_list(cloud, rc);

    for (std::size_t p = 0; p < n; p += 5) {
        const double eps = average_spacing(cloud, p, nbrs);
        const SurfaceNeighborhood hood = build_surface_neighborhood(cloud, p, nbrs, dn, nn, rc, eps);
        std::size_t total = 0;
        for (const auto& g : hood.groups) total += g.size();

        // oracle: materialize extended positions, count all within rc
        std::size_t expected = 0;
        auto count_copies = [&](std::size_t s, bool with_surface) {
            for (int i = -nn; i <= nn; ++i) {
                if (i == 0 && !with_surface) continue;
                Vec3 x{0, 0, 0};
                for (int c = 0; c < 2; ++c)
                    x[c] = cloud.positions[s][c] + static_cast<double>(i) * dn * cloud.normals[s][c];
                const double dx = cloud.positions[p][0] - x[0];
                const double dy = cloud.positions[p][1] - x[1];
                if (std::sqrt(dx * dx + dy * dy) <= rc) ++expected;
            }
        };
        for (std::size_t s : nbrs.neighbors[p]) count_copies(s, true);
        count_copies(p, false);
        CHECK(total == expected);
    }
}

TEST_CASE("reduction identity: surface operator equals flat DC-PSE on the extended cloud") {
    SUBCASE("unit circle, Laplace-Beltrami") {
        const std::size_t n = 128;
        const auto cloud = generate_circle(n);
        const double dn = 3.0 / static_cast<double>(n - 1);
        std::vector<double> f(n);
        for (std::size_t p = 0; p < n; ++p)
            f[p] = std::sin(3.0 * std::atan2(cloud.positions[p][1], cloud.positions[p][0]));
        check_reduction_identity(cloud, DifferentialOperator::laplacian(2), dn, 4, 4.1 * dn, 2, f);
    }
    SUBCASE("unit circle, odd operator d/dx") {
        const std::size_t n = 96;
        const auto cloud = generate_circle(n);
        const double dn = 3.0 / static_cast<double>(n - 1);
        std::vector<double> f(n);
        for (std::size_t p = 0; p < n; ++p) f[p] = cloud.positions[p][0] * cloud.positions[p][1];
        check_reduction_identity(cloud, DifferentialOperator::derivative(0, 2), dn, 4, 4.1 * dn, 2,
                                 f);
    }
    SUBCASE("unit sphere, Laplace-Beltrami") {
        const std::size_t n = 500;
        const auto cloud = generate_fibonacci_sphere(n);
        const double dn = 0.8 / (std::cbrt(static_cast<double>(n)) - 1.0);
        std::vector<double> f(n);
        for (std::size_t p = 0; p < n; ++p) f[p] = bench::spherical_harmonic_y40(cloud.positions[p]);
        check_reduction_identity(cloud, DifferentialOperator::laplacian(3), dn, 2, 2.9 * dn, 2, f);
    }
}

TEST_CASE("even-operator evaluation ignores the self kernel value") {
    const auto cloud = generate_circle(64);
    const double dn = 3.0 / 63.0;
    SurfaceOperatorParams params;
    params.r = 2;
    params.rc = 4.1 * dn;
    params.dn = dn;
    params.nn = 4;
    SurfaceOperator sop = build_surface_operator(cloud, DifferentialOperator::laplacian(2), params);
    std::vector<double> f(cloud.size());
    for (std::size_t p = 0; p < cloud.size(); ++p) f[p] = cloud.positions[p][0];
    const std::vector<double> before = evaluate_surface_operator(f, sop);
    for (auto& vals : sop.kernel_values) vals.back() = 1e9;  // poison the self value
    const std::vector<double> after = evaluate_surface_operator(f, sop);
    CHECK(before == after);
}

TEST_CASE("Laplace-Beltrami of a constant field is exactly zero") {
    const auto cloud = generate_fibonacci_sphere(300);
    const double dn = 0.8 / (std::cbrt(300.0) - 1.0);
    SurfaceOperatorParams params;
    params.r = 2;
    params.rc = 2.9 * dn;
    params.dn = dn;
    params.nn = 2;
    const SurfaceOperator sop =
        build_surface_operator(cloud, DifferentialOperator::laplacian(3), params);
    const std::vector<double> f(cloud.size(), 42.0);
    for (double v : evaluate_surface_operator(f, sop)) CHECK(v == 0.0);
}

TEST_CASE("odd operator annihilates constants through the moment conditions") {
    const auto cloud = generate_circle(128);
    const double dn = 3.0 / 127.0;
    SurfaceOperatorParams params;
    params.r = 2;
    params.rc = 4.1 * dn;
    params.dn = dn;
    params.nn = 4;
    const SurfaceOperator sop =
        build_surface_operator(cloud, DifferentialOperator::derivative(0, 2), params);
    const std::vector<double> f(cloud.size(), 5.0);
    for (double v : evaluate_surface_operator(f, sop)) CHECK(std::abs(v) <= 1e-8 * 5.0);
}

TEST_CASE("circle Laplace-Beltrami converges at second order between 512 and 1024") {
    auto linf_at = [](std::size_t n) {
        const auto cloud = generate_circle(n);
        const double dn = 3.0 / static_cast<double>(n - 1);
        SurfaceOperatorParams params;
        params.r = 2;
        params.rc = 4.1 * dn;
        params.dn = dn;
        params.nn = 4;
        const SurfaceOperator sop =
            build_surface_operator(cloud, DifferentialOperator::laplacian(2), params);
        std::vector<double> f(n);
        for (std::size_t p = 0; p < n; ++p) f[p] = cloud.positions[p][0] + cloud.positions[p][1];
        const std::vector<double> lb = evaluate_surface_operator(f, sop);
        double linf = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            linf = std::max(linf, std::abs(lb[p] + f[p]));
        return linf;
    };
    const double e512 = linf_at(512), e1024 = linf_at(1024);
    CHECK(e1024 < e512);
    CHECK(e512 / e1024 == doctest::Approx(4.0).epsilon(0.45));
}

TEST_CASE("shape tensor") {
    SUBCASE("plane: zero matrix") {
        const auto cloud = plane_cloud(12, 0.1);
        SurfaceOperatorParams params;
        params.r = 2;
        params.rc = 0.25;
        const auto shapes = shape_tensor(cloud, params);
        for (const auto& s : shapes)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(std::abs(s[i][j]) <= 1e-8);
    }
    SUBCASE("sphere: projector I - n n^T, eigenvalues {1,1,~0}") {
        const std::size_t n = 3000;
        const auto cloud = generate_fibonacci_sphere(n);
        const double dn = 0.8 / (std::cbrt(static_cast<double>(n)) - 1.0);
        SurfaceOperatorParams params;
        params.r = 2;
        params.rc = 2.9 * dn;
        params.dn = dn;
        params.nn = 2;
        const auto shapes = shape_tensor(cloud, params);

        const NeighborList nbrs = build_neighbor_list(cloud, params.rc);
        const double h = mean_spacing(cloud, nbrs);
        for (std::size_t p = 0; p < n; p += 97) {
            const auto& nrm = cloud.normals[p];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double expected = (i == j ? 1.0 : 0.0) - nrm[i] * nrm[j];
                    CHECK(std::abs(shapes[p][i][j] - expected) <= 15.0 * h * h);
                }
            const Eigen3 eig = eigenvalues_3x3(shapes[p]);
            CHECK(std::abs(eig.real[2]) <= 0.1 * std::abs(eig.real[0]));
        }
    }
}

TEST_CASE("curvatures") {
    SUBCASE("plane: H = 0, K = 0") {
        const auto cloud = plane_cloud(12, 0.1);
        SurfaceOperatorParams params;
        params.r = 2;
        params.rc = 0.25;
        const auto curv = curvatures(shape_tensor(cloud, params));
        for (std::size_t p = 0; p < cloud.size(); ++p) {
            CHECK(std::abs(curv.mean[p]) <= 1e-8);
            CHECK(std::abs(curv.gauss[p]) <= 1e-8);
        }
    }
    SUBCASE("unit sphere: H = K = 1 within O(h^2)") {
        const std::size_t n = 3000;
        const auto cloud = generate_fibonacci_sphere(n);
        const double dn = 0.8 / (std::cbrt(static_cast<double>(n)) - 1.0);
        SurfaceOperatorParams params;
        params.r = 2;
        params.rc = 2.9 * dn;
        params.dn = dn;
        params.nn = 2;
        const auto curv = curvatures(shape_tensor(cloud, params));
        const double h = mean_spacing(cloud, build_neighbor_list(cloud, params.rc));
        for (std::size_t p = 0; p < n; ++p) {
            CHECK(std::abs(curv.mean[p] - 1.0) <= 5.0 * h * h);
            CHECK(std::abs(curv.gauss[p] - 1.0) <= 5.0 * h * h);
        }
    }
    SUBCASE("garbage matrix with a strong rotation part raises") {
        Mat3 bad{Vec3{0.0, -1.0, 0.0}, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 0.0}};
        CHECK_THROWS_AS(curvatures({bad}), IllConditionedShapeError);
    }
}

TEST_CASE("eigenvalues_3x3 on a known diagonalizable matrix") {
    const Mat3 m{Vec3{2.0, 1.0, 0.0}, Vec3{1.0, 2.0, 0.0}, Vec3{0.0, 0.0, 5.0}};
    const Eigen3 eig = eigenvalues_3x3(m);  // eigenvalues 5, 3, 1
    CHECK(eig.imag == 0.0);
    CHECK(eig.real[0] == doctest::Approx(5.0));
    CHECK(eig.real[1] == doctest::Approx(3.0));
    CHECK(eig.real[2] == doctest::Approx(1.0));
}

TEST_CASE("operators must span the embedding dimension") {
    const auto cloud = generate_circle(32);
    SurfaceOperatorParams params;
    params.r = 2;
    params.rc = 0.5;
    CHECK_THROWS_AS(build_surface_operator(cloud, DifferentialOperator::laplacian(3), params),
                    ConfigError);
}
