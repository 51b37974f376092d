#include "sdcpse/bench/reference_fields.hpp"

#include <cmath>
#include <numbers>

#include "sdcpse/errors.hpp"

namespace sdcpse::bench {

double spherical_harmonic_y40(const Vec3& pos) {
    const double z = pos[2];
    return 3.0 / 16.0 * std::sqrt(1.0 / std::numbers::pi) *
           (35.0 * z * z * z * z - 30.0 * z * z + 3.0);
}

namespace {

// Parameter angles of a point on the ellipsoid:
// x = a cos(u) sin(v), y = b sin(u) sin(v), z = c cos(v).
std::pair<double, double> ellipsoid_angles(double a, double b, double c, const Vec3& pos) {
    const double cv = std::clamp(pos[2] / c, -1.0, 1.0);
    const double v = std::acos(cv);
    const double sv = std::sin(v);
    if (sv < 1e-14) return {0.0, v};  // pole: u is arbitrary there
    return {std::atan2(pos[1] / (b * sv), pos[0] / (a * sv)), v};
}

}  // namespace

double ellipsoid_mean_curvature(double a, double b, double c, const Vec3& pos) {
    const auto [u, v] = ellipsoid_angles(a, b, c, pos);
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    const double bracket = a2 * b2 * cv * cv + c2 * (b2 * cu * cu + a2 * su * su) * sv * sv;
    const double numer = a * b * c *
                         (3.0 * (a2 + b2) + 2.0 * c2 + (a2 + b2 - 2.0 * c2) * std::cos(2.0 * v) -
                          2.0 * (a2 - b2) * std::cos(2.0 * u) * sv * sv);
    return numer / (8.0 * std::pow(bracket, 1.5));
}

double ellipsoid_gauss_curvature(double a, double b, double c, const Vec3& pos) {
    const auto [u, v] = ellipsoid_angles(a, b, c, pos);
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    const double bracket = a2 * b2 * cv * cv + c2 * (b2 * cu * cu + a2 * su * su) * sv * sv;
    return a2 * b2 * c2 / (bracket * bracket);
}

ReferencePair reference_fields(const std::string& name) {
    if (name == "circle_trig") {
        // f(theta) = sin(theta) + cos(theta) = y + x on the unit circle.
        return {[](const Vec3& p) { return p[0] + p[1]; },
                [](const Vec3& p) { return -(p[0] + p[1]); }};
    }
    if (name == "sphere_Y40") {
        return {[](const Vec3& p) { return spherical_harmonic_y40(p); },
                [](const Vec3& p) { return -20.0 * spherical_harmonic_y40(p); }};
    }
    if (name == "circle_poisson") {
        // Solution f(theta) = sin(2 theta) = 2xy on the unit circle;
        // the right-hand side is its Laplace-Beltrami, -4 sin(2 theta).
        return {[](const Vec3& p) { return 2.0 * p[0] * p[1]; },
                [](const Vec3& p) { return -8.0 * p[0] * p[1]; }};
    }
    if (name == "sphere_poisson") {
        return {[](const Vec3& p) { return spherical_harmonic_y40(p); },
                [](const Vec3& p) { return -20.0 * spherical_harmonic_y40(p); }};
    }
    if (name == "bump_init") {
        return {[](const Vec3& p) { return BumpSurfaceSpec{}.initial_field(p); },
                [](const Vec3&) { return 0.0; }};
    }
    throw ConfigError("unknown reference field: " + name);
}

}  // namespace sdcpse::bench
