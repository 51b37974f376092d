#include "sdcpse/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sdcpse/errors.hpp"

namespace sdcpse {

namespace {

double dist2(const Vec3& a, const Vec3& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double norm(const Vec3& v, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

}  // namespace

void SurfacePointCloud::validate() const {
    if (dim != 2 && dim != 3)
        throw ConfigError("point cloud: embedding dimension must be 2 or 3");
    if (normals.size() != positions.size() || labels.size() != positions.size())
        throw ConfigError("point cloud: positions, normals and labels must have equal length");

    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const auto& p : positions)
        for (int i = 0; i < dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    double diameter = 0.0;
    for (int i = 0; i < dim; ++i) diameter += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    diameter = std::sqrt(diameter);

    for (std::size_t p = 0; p < normals.size(); ++p)
        if (std::abs(norm(normals[p], dim) - 1.0) > 1e-12)
            throw ConfigError("point cloud: normal " + std::to_string(p) + " is not unit length");

    if (positions.size() < 2) return;

    // Near-duplicate scan: sort lexicographically, compare within an
    // x-window of the coincidence tolerance.
    const double tol = 1e-12 * std::max(diameter, 1e-300);
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return positions[a][0] < positions[b][0];
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (positions[order[j]][0] - positions[order[i]][0] > tol) break;
            if (dist2(positions[order[i]], positions[order[j]], dim) <= tol * tol)
                throw ConfigError("point cloud: points " + std::to_string(order[i]) + " and " +
                                  std::to_string(order[j]) + " coincide");
        }
    }
}

NeighborList build_neighbor_list(const SurfacePointCloud& cloud, double cutoff) {
    if (cutoff <= 0.0) throw ConfigError("neighbor list: cutoff must be positive");
    const std::size_t n = cloud.size();
    NeighborList list;
    list.cutoff = cutoff;
    list.neighbors.assign(n, {});
    if (n < 2) return list;

    const int dim = cloud.dim;
    Vec3 lo{0, 0, 0};
    std::array<std::size_t, 3> ncell{1, 1, 1};
    for (int i = 0; i < dim; ++i) {
        double mn = 1e300, mx = -1e300;
        for (const auto& p : cloud.positions) {
            mn = std::min(mn, p[i]);
            mx = std::max(mx, p[i]);
        }
        lo[i] = mn;
        ncell[i] = static_cast<std::size_t>((mx - mn) / cutoff) + 1;
    }
    const auto cell_of = [&](const Vec3& p) {
        std::array<std::size_t, 3> c{0, 0, 0};
        for (int i = 0; i < dim; ++i) {
            auto k = static_cast<long>((p[i] - lo[i]) / cutoff);
            c[i] = static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(ncell[i]) - 1));
        }
        return (c[2] * ncell[1] + c[1]) * ncell[0] + c[0];
    };

    std::vector<std::vector<std::size_t>> cells(ncell[0] * ncell[1] * ncell[2]);
    for (std::size_t p = 0; p < n; ++p) cells[cell_of(cloud.positions[p])].push_back(p);

    const double r2 = cutoff * cutoff;
    for (std::size_t p = 0; p < n; ++p) {
        std::array<long, 3> c{0, 0, 0};
        for (int i = 0; i < dim; ++i)
            c[i] = std::clamp<long>(static_cast<long>((cloud.positions[p][i] - lo[i]) / cutoff), 0,
                                    static_cast<long>(ncell[i]) - 1);
        const long zlo = dim == 3 ? c[2] - 1 : 0, zhi = dim == 3 ? c[2] + 1 : 0;
        for (long cz = zlo; cz <= zhi; ++cz) {
            if (cz < 0 || cz >= static_cast<long>(ncell[2])) continue;
            for (long cy = c[1] - 1; cy <= c[1] + 1; ++cy) {
                if (cy < 0 || cy >= static_cast<long>(ncell[1])) continue;
                for (long cx = c[0] - 1; cx <= c[0] + 1; ++cx) {
                    if (cx < 0 || cx >= static_cast<long>(ncell[0])) continue;
                    const std::size_t idx =
                        (static_cast<std::size_t>(cz) * ncell[1] + static_cast<std::size_t>(cy)) *
                            ncell[0] +
                        static_cast<std::size_t>(cx);
                    for (std::size_t q : cells[idx]) {
                        if (q == p) continue;
                        if (dist2(cloud.positions[p], cloud.positions[q], dim) <= r2)
                            list.neighbors[p].push_back(q);
                    }
                }
            }
        }
        std::sort(list.neighbors[p].begin(), list.neighbors[p].end());
    }
    return list;
}

double average_spacing(const SurfacePointCloud& cloud, std::size_t p, const NeighborList& nbrs) {
    const auto& nb = nbrs.neighbors[p];
    if (nb.empty()) throw IsolatedPointError(p);
    double sum = 0.0;
    for (std::size_t q : nb) {
        double l1 = 0.0;
        for (int i = 0; i < cloud.dim; ++i) l1 += std::abs(cloud.positions[p][i] - cloud.positions[q][i]);
        sum += l1;
    }
    return sum / static_cast<double>(nb.size());
}

double mean_spacing(const SurfacePointCloud& cloud, const NeighborList& nbrs) {
    double sum = 0.0;
    for (std::size_t p = 0; p < cloud.size(); ++p) sum += average_spacing(cloud, p, nbrs);
    return sum / static_cast<double>(cloud.size());
}

SurfacePointCloud generate_circle(std::size_t n) {
    if (n < 3) throw ConfigError("generate_circle: need at least 3 points");
    SurfacePointCloud cloud;
    cloud.dim = 2;
    cloud.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        cloud.positions.push_back({std::cos(theta), std::sin(theta), 0.0});
    }
    cloud.normals = cloud.positions;
    cloud.labels.assign(n, PointLabel::interior);
    return cloud;
}

SurfacePointCloud generate_fibonacci_sphere(std::size_t n) {
    if (n < 10) throw ConfigError("generate_fibonacci_sphere: need at least 10 points");
    SurfacePointCloud cloud;
    cloud.dim = 3;
    cloud.positions.reserve(n);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        cloud.positions.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
    cloud.normals = cloud.positions;
    cloud.labels.assign(n, PointLabel::interior);
    return cloud;
}

Vec3 ellipsoid_normal(double a, double b, double c, const Vec3& pos) {
    Vec3 g{pos[0] / (a * a), pos[1] / (b * b), pos[2] / (c * c)};
    const double len = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    return {g[0] / len, g[1] / len, g[2] / len};
}

SurfacePointCloud generate_ellipsoid(double a, double b, double c, std::size_t n) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw ConfigError("generate_ellipsoid: semi-axes must be positive");
    SurfacePointCloud cloud = generate_fibonacci_sphere(n);
    for (std::size_t i = 0; i < n; ++i) {
        cloud.positions[i][0] *= a;
        cloud.positions[i][1] *= b;
        cloud.positions[i][2] *= c;
        cloud.normals[i] = ellipsoid_normal(a, b, c, cloud.positions[i]);
    }
    return cloud;
}

double BumpSurfaceSpec::cutoff_gaussian(double d) {
    if (d >= 0.975) return 0.0;
    return std::exp(-1.0 / (1.0 - d * d));
}

double BumpSurfaceSpec::cutoff_gaussian_derivative(double d) {
    if (d >= 0.975) return 0.0;
    const double om = 1.0 - d * d;
    return -2.0 * d / (om * om) * std::exp(-1.0 / om);
}

double BumpSurfaceSpec::height(double x, double y) const {
    const double dx = x - bump_center[0], dy = y - bump_center[1];
    return bump_height * cutoff_gaussian(std::sqrt(dx * dx + dy * dy) / bump_radius);
}

std::array<double, 2> BumpSurfaceSpec::gradient(double x, double y) const {
    const double dx = x - bump_center[0], dy = y - bump_center[1];
    const double rho = std::sqrt(dx * dx + dy * dy);
    const double d = rho / bump_radius;
    if (rho == 0.0 || d >= 0.975) return {0.0, 0.0};
    const double dz_drho = bump_height * cutoff_gaussian_derivative(d) / bump_radius;
    return {dz_drho * dx / rho, dz_drho * dy / rho};
}

double BumpSurfaceSpec::initial_field(const Vec3& surface_point) const {
    const double r = std::sqrt(surface_point[0] * surface_point[0] +
                               surface_point[1] * surface_point[1] +
                               surface_point[2] * surface_point[2]);
    return cutoff_gaussian(r / init_sigma) / (init_sigma * init_sigma);
}

std::array<double, 4> bump_box(const BumpSurfaceSpec& spec) {
    return {spec.bump_center[0] - spec.bump_radius, spec.bump_center[0] + spec.bump_radius,
            spec.bump_center[1] - spec.bump_radius, spec.bump_center[1] + spec.bump_radius};
}

namespace {

void push_bump_point(SurfacePointCloud& cloud, const BumpSurfaceSpec& spec, double x, double y) {
    const auto grad = spec.gradient(x, y);
    Vec3 nrm{-grad[0], -grad[1], 1.0};
    const double len = std::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
    cloud.positions.push_back({x, y, spec.height(x, y)});
    cloud.normals.push_back({nrm[0] / len, nrm[1] / len, nrm[2] / len});
    cloud.labels.push_back(PointLabel::interior);
}

}  // namespace

SurfacePointCloud generate_bump_surface(const BumpSurfaceSpec& spec, double h) {
    if (h <= 0.0) throw ConfigError("generate_bump_surface: spacing must be positive");
    SurfacePointCloud cloud;
    cloud.dim = 3;

    const double w = spec.domain_half_width;
    const auto box = bump_box(spec);
    const double edge_tol = 1e-9 * h;

    // Regular cell-centered grid over the square, skipping the open bump
    // box. Cell-centering keeps points off the mirror walls, which makes
    // the method-of-images reflection an exact involution and the discrete
    // diffusion mass-conserving on the uniform part.
    const auto n_side = static_cast<std::size_t>(std::llround(2.0 * w / h));
    for (std::size_t j = 0; j < n_side; ++j) {
        const double y = -w + (static_cast<double>(j) + 0.5) * h;
        for (std::size_t i = 0; i < n_side; ++i) {
            const double x = -w + (static_cast<double>(i) + 0.5) * h;
            const bool inside_box = x > box[0] + edge_tol && x < box[1] - edge_tol &&
                                    y > box[2] + edge_tol && y < box[3] - edge_tol;
            if (!inside_box) push_bump_point(cloud, spec, x, y);
        }
    }

    // Denser fill of the bump box at half the grid spacing: a golden-angle
    // spiral with area-equalized radii over the curved disc, plus a regular
    // half-spacing grid in the flat box corners.
    const double hb = 0.5 * h;
    const double disc_radius = 0.975 * spec.bump_radius;

    const std::size_t n_table = 4096;
    std::vector<double> cum_area(n_table + 1, 0.0);  // surface area inside radius rho
    const double drho = disc_radius / static_cast<double>(n_table);
    auto slope2 = [&](double rho) {
        const double s =
            spec.bump_height * BumpSurfaceSpec::cutoff_gaussian_derivative(rho / spec.bump_radius) /
            spec.bump_radius;
        return s * s;
    };
    for (std::size_t k = 1; k <= n_table; ++k) {
        const double r0 = static_cast<double>(k - 1) * drho, r1 = static_cast<double>(k) * drho;
        const double g0 = std::sqrt(1.0 + slope2(r0)) * r0;
        const double g1 = std::sqrt(1.0 + slope2(r1)) * r1;
        cum_area[k] = cum_area[k - 1] + std::numbers::pi * (g0 + g1) * drho;  // 2*pi * trapezoid
    }
    const double disc_area = cum_area[n_table];
    const auto radius_at_area = [&](double s) {
        auto it = std::lower_bound(cum_area.begin(), cum_area.end(), s);
        const auto k = static_cast<std::size_t>(std::distance(cum_area.begin(), it));
        if (k == 0) return 0.0;
        const double t = (s - cum_area[k - 1]) / (cum_area[k] - cum_area[k - 1]);
        return (static_cast<double>(k - 1) + t) * drho;
    };

    const auto n_disc = static_cast<std::size_t>(std::llround(disc_area / (hb * hb)));
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < n_disc; ++k) {
        const double s = (static_cast<double>(k) + 0.5) / static_cast<double>(n_disc) * disc_area;
        const double rho = radius_at_area(s);
        const double phi = golden_angle * static_cast<double>(k);
        push_bump_point(cloud, spec, spec.bump_center[0] + rho * std::cos(phi),
                        spec.bump_center[1] + rho * std::sin(phi));
    }

    // Box corners outside the disc, with a small guard ring against
    // near-coincidence with the spiral rim.
    const double guard = disc_radius + 0.35 * hb;
    const auto n_inner = static_cast<std::size_t>(std::llround((box[1] - box[0]) / hb));
    for (std::size_t j = 1; j < n_inner; ++j) {
        const double y = box[2] + static_cast<double>(j) * hb;
        for (std::size_t i = 1; i < n_inner; ++i) {
            const double x = box[0] + static_cast<double>(i) * hb;
            const double dx = x - spec.bump_center[0], dy = y - spec.bump_center[1];
            if (dx * dx + dy * dy > guard * guard) push_bump_point(cloud, spec, x, y);
        }
    }

    return cloud;
}

}  // namespace sdcpse
