#ifndef SDCPSE_BENCH_EXPERIMENTS_HPP_
#define SDCPSE_BENCH_EXPERIMENTS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sdcpse/bench/norms.hpp"
#include "sdcpse/linalg.hpp"
#include "sdcpse/point_cloud.hpp"

namespace sdcpse::bench {

struct ExperimentConfig {
    std::string experiment;
    std::vector<std::size_t> resolutions;
    int order = 2;              // requested convergence order r
    double rc_factor = 2.9;     // r_c = rc_factor * dn
    std::optional<double> dn_override;
    std::optional<int> nn_override;
    double eps_factor = 1.0;
    GmresOptions gmres;
    double alpha = 0.0;         // bump height
    double dt = 1e-4;
    double t_final = 1.0;
    double spacing = 0.03125;   // bump grid spacing h
    std::string output_path;
    std::string input_path;
    bool estimate_normals_flag = false;
    std::size_t knn = 12;
};

// Experiment defaults: resolution ladders, support factors, layer counts
// and normal-spacing rules as used in the convergence studies.
ExperimentConfig default_config(const std::string& experiment);

// Normal spacing for a resolution under the experiment's rule
// (circle 3/(N-1); sphere 0.8/(cbrt(N)-1); ellipsoid 3/(sqrt(N)-1)).
double default_normal_spacing(const std::string& experiment, std::size_t n_points);

std::vector<ConvergenceRecord> run_circle_lb(const ExperimentConfig& cfg);
std::vector<ConvergenceRecord> run_sphere_lb(const ExperimentConfig& cfg);
std::vector<ConvergenceRecord> run_circle_poisson(const ExperimentConfig& cfg);
std::vector<ConvergenceRecord> run_sphere_poisson(const ExperimentConfig& cfg);

struct EllipsoidCurvatureResult {
    std::vector<ConvergenceRecord> mean;
    std::vector<ConvergenceRecord> gauss;
};
EllipsoidCurvatureResult run_ellipsoid_curvature(const ExperimentConfig& cfg);

struct BunnyCurvatureResult {
    SurfacePointCloud cloud;
    std::vector<double> mean;
    std::vector<double> gauss;
};
BunnyCurvatureResult run_bunny_curvature(const ExperimentConfig& cfg);

struct BumpDiffusionResult {
    std::vector<double> times;
    std::vector<double> f_x0;
    std::vector<double> f_x1;
    double probe_distance_x0 = 0.0;
    double probe_distance_x1 = 0.0;
    std::size_t n_points = 0;  // surface points, ghosts excluded
    std::size_t n_ghosts = 0;
    double h = 0.0;
    double peak_x0() const;
    double peak_x1() const;
};
BumpDiffusionResult run_bump_diffusion(const ExperimentConfig& cfg);

}  // namespace sdcpse::bench

#endif
