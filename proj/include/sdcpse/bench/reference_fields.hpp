#ifndef SDCPSE_BENCH_REFERENCE_FIELDS_HPP_
#define SDCPSE_BENCH_REFERENCE_FIELDS_HPP_

#include <functional>
#include <string>

#include "sdcpse/point_cloud.hpp"

namespace sdcpse::bench {

// Analytic test field together with the analytic result of the operator
// applied to it (the Laplace-Beltrami for the trig/harmonic fields, the
// Poisson right-hand side for the solver cases).
struct ReferencePair {
    std::function<double(const Vec3&)> field;
    std::function<double(const Vec3&)> operator_result;
};

// name: circle_trig | sphere_Y40 | circle_poisson | sphere_poisson | bump_init
ReferencePair reference_fields(const std::string& name);

// Spherical harmonic Y_40 on the unit sphere, (3/16) sqrt(1/pi)
// (35 cos^4 t - 30 cos^2 t + 3) with t the polar angle (cos t = z).
double spherical_harmonic_y40(const Vec3& pos);

// Analytic mean and Gauss curvature of the ellipsoid
// x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 at a surface point.
double ellipsoid_mean_curvature(double a, double b, double c, const Vec3& pos);
double ellipsoid_gauss_curvature(double a, double b, double c, const Vec3& pos);

}  // namespace sdcpse::bench

#endif
