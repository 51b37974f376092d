#include "sdcpse/bench/normals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "sdcpse/errors.hpp"
#include "sdcpse/surface_operator.hpp"

namespace sdcpse::bench {

namespace {

// Eigenvector of a symmetric 3x3 (or padded 2x2) matrix for a known
// eigenvalue, via the largest cross product of rows of (A - lambda I).
Vec3 symmetric_eigenvector(const Mat3& a, double lambda, int dim) {
    if (dim == 2) {
        // (A - lambda I) v = 0 in 2D: v is perpendicular to the larger row.
        const double r0[2] = {a[0][0] - lambda, a[0][1]};
        const double r1[2] = {a[1][0], a[1][1] - lambda};
        const double n0 = r0[0] * r0[0] + r0[1] * r0[1];
        const double n1 = r1[0] * r1[0] + r1[1] * r1[1];
        const double* r = n0 >= n1 ? r0 : r1;
        const double len = std::sqrt(r[0] * r[0] + r[1] * r[1]);
        if (len == 0.0) return {1.0, 0.0, 0.0};
        return {-r[1] / len, r[0] / len, 0.0};
    }
    Mat3 m = a;
    for (int i = 0; i < 3; ++i) m[i][i] -= lambda;
    Vec3 best{0, 0, 0};
    double best_len = -1.0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const Vec3 c{m[i][1] * m[j][2] - m[i][2] * m[j][1],
                     m[i][2] * m[j][0] - m[i][0] * m[j][2],
                     m[i][0] * m[j][1] - m[i][1] * m[j][0]};
        const double len = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        if (len > best_len) {
            best_len = len;
            best = c;
        }
    }
    const double len = std::sqrt(best_len);
    if (len == 0.0) return {0.0, 0.0, 1.0};
    return {best[0] / len, best[1] / len, best[2] / len};
}

}  // namespace

std::vector<Vec3> estimate_normals(const std::vector<Vec3>& positions, int dim, std::size_t k) {
    if (k < 5) throw ConfigError("estimate_normals: need k >= 5 neighbors");
    const std::size_t n = positions.size();
    if (n <= k) throw ConfigError("estimate_normals: cloud smaller than k");

    auto dist2 = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = positions[a][i] - positions[b][i];
            s += d * d;
        }
        return s;
    };

    // k nearest neighbors by partial sort. Fine at the cloud sizes we load.
    std::vector<std::vector<std::size_t>> knn(n);
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t p = 0; p < n; ++p) {
        cand.clear();
        for (std::size_t q = 0; q < n; ++q)
            if (q != p) cand.emplace_back(dist2(p, q), q);
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        knn[p].reserve(k);
        for (std::size_t i = 0; i < k; ++i) knn[p].push_back(cand[i].second);
    }

    std::vector<Vec3> normals(n);
    for (std::size_t p = 0; p < n; ++p) {
        Vec3 mean{0, 0, 0};
        for (std::size_t q : knn[p])
            for (int i = 0; i < dim; ++i) mean[i] += positions[q][i];
        for (int i = 0; i < dim; ++i) mean[i] /= static_cast<double>(k);

        Mat3 cov{Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}};
        for (std::size_t q : knn[p])
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    cov[i][j] += (positions[q][i] - mean[i]) * (positions[q][j] - mean[j]);

        double lambda_min, surface_spread, lambda_max;
        if (dim == 2) {
            const double half_tr = 0.5 * (cov[0][0] + cov[1][1]);
            const double det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
            const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
            lambda_min = half_tr - disc;
            lambda_max = half_tr + disc;
            surface_spread = lambda_max;  // a curve needs one well-spread direction
        } else {
            Eigen3 eig = eigenvalues_3x3(cov);
            std::sort(eig.real.begin(), eig.real.end());
            lambda_min = eig.real[0];
            surface_spread = eig.real[1];
            lambda_max = eig.real[2];
        }

        // Collinear neighborhood: no well-defined tangent plane.
        if (surface_spread <= 1e-12 * std::max(lambda_max, 1e-300) || lambda_max <= 0.0)
            throw NumericError("estimate_normals: degenerate (collinear) neighborhood at point " +
                               std::to_string(p));
        normals[p] = symmetric_eigenvector(cov, lambda_min, dim);
    }

    // Greedy orientation along a BFS spanning forest of the k-NN graph.
    std::vector<char> visited(n, 0);
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        std::queue<std::size_t> frontier;
        frontier.push(seed);
        visited[seed] = 1;
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop();
            for (std::size_t q : knn[p]) {
                if (visited[q]) continue;
                double dot = 0.0;
                for (int i = 0; i < dim; ++i) dot += normals[p][i] * normals[q][i];
                if (dot < 0.0)
                    for (int i = 0; i < dim; ++i) normals[q][i] = -normals[q][i];
                visited[q] = 1;
                frontier.push(q);
            }
        }
    }

    // Global flip: majority should point away from the centroid.
    Vec3 centroid{0, 0, 0};
    for (const auto& p : positions)
        for (int i = 0; i < dim; ++i) centroid[i] += p[i];
    for (int i = 0; i < dim; ++i) centroid[i] /= static_cast<double>(n);
    std::ptrdiff_t outward = 0;
    for (std::size_t p = 0; p < n; ++p) {
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += normals[p][i] * (positions[p][i] - centroid[i]);
        outward += dot >= 0.0 ? 1 : -1;
    }
    if (outward < 0)
        for (auto& nr : normals)
            for (int i = 0; i < dim; ++i) nr[i] = -nr[i];
    return normals;
}

}  // namespace sdcpse::bench
