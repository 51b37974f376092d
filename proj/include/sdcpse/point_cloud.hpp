#ifndef SDCPSE_POINT_CLOUD_HPP_
#define SDCPSE_POINT_CLOUD_HPP_

#include <array>
#include <cstddef>
#include <vector>

namespace sdcpse {

using Vec3 = std::array<double, 3>;  // 2D clouds keep z = 0

enum class PointLabel : unsigned char { interior, dirichlet, ghost };

// Collocation points on (or discretizing) a surface: positions plus unit
// normals in the embedding space. Immutable by convention once built.
struct SurfacePointCloud {
    int dim = 3;  // embedding dimension, 2 or 3
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<PointLabel> labels;

    std::size_t size() const { return positions.size(); }

    // Checks sizes, unit normals (1e-12) and rejects coincident points
    // (tolerance 1e-12 x bounding-box diameter). Throws ConfigError.
    void validate() const;
};

// Fixed-radius neighbor lists: q in neighbors[p] iff |x_p - x_q| <= cutoff
// and q != p. Ties at exactly the cutoff are included.
struct NeighborList {
    double cutoff = 0.0;
    std::vector<std::vector<std::size_t>> neighbors;
};

// Cell-list search with cell edge = cutoff; result identical to the
// brute-force O(N^2) scan.
NeighborList build_neighbor_list(const SurfacePointCloud& cloud, double cutoff);

// Arithmetic mean of the L1 distances from point p to its neighbors.
// Throws IsolatedPointError when the neighborhood is empty.
double average_spacing(const SurfacePointCloud& cloud, std::size_t p,
                       const NeighborList& nbrs);

// Mean of average_spacing over all points (the resolution measure h).
double mean_spacing(const SurfacePointCloud& cloud, const NeighborList& nbrs);

// Unit circle, equi-angular points theta_i = 2*pi*i/n, outward normals.
SurfacePointCloud generate_circle(std::size_t n);

// Unit sphere, golden-angle spiral, outward normals.
SurfacePointCloud generate_fibonacci_sphere(std::size_t n);

// Fibonacci sphere scaled by the semi-axes; normals from the implicit form.
SurfacePointCloud generate_ellipsoid(double a, double b, double c, std::size_t n);

// Outward unit normal of x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 at a surface point.
Vec3 ellipsoid_normal(double a, double b, double c, const Vec3& pos);

// Graph surface z = u(x,y) with an isolated radial bump, used by the
// diffusion benchmark.
struct BumpSurfaceSpec {
    double bump_height = 1.0;                  // alpha >= 0
    std::array<double, 2> bump_center{-0.5, 0.0};
    double bump_radius = 0.25;
    double domain_half_width = 2.0;            // square [-w, w]^2
    double init_sigma = 0.2;

    // zeta(d) = exp(-1/(1-d^2)) for d < 0.975, else 0.
    static double cutoff_gaussian(double d);
    static double cutoff_gaussian_derivative(double d);

    double height(double x, double y) const;               // u(x, y)
    std::array<double, 2> gradient(double x, double y) const;  // (du/dx, du/dy)

    // Initial field of the diffusion benchmark, sigma^-2 zeta(|x_S|/sigma).
    double initial_field(const Vec3& surface_point) const;
};

// Regular grid of spacing h outside the bump box, denser quasi-uniform
// placement (golden-angle spiral over the bump disc, half-spacing grid in
// the box corners) inside, lifted to the graph. All points labeled interior.
SurfacePointCloud generate_bump_surface(const BumpSurfaceSpec& spec, double h);

// Axis-aligned bounding box of the bump region, [-0.75,-0.25]x[-0.25,0.25]
// for the default spec.
std::array<double, 4> bump_box(const BumpSurfaceSpec& spec);

}  // namespace sdcpse

#endif
