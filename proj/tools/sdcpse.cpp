#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdcpse/bench/experiments.hpp"
#include "sdcpse/bench/io.hpp"
#include "sdcpse/bench/norms.hpp"
#include "sdcpse/errors.hpp"

namespace {

using namespace sdcpse;
using namespace sdcpse::bench;

struct CliOptions {
    std::vector<std::size_t> np;
    int order = 0;
    double rc_factor = 0.0;
    double dn = 0.0;
    int nn = -1;
    double eps_factor = 0.0;
    double alpha = -1.0;
    double dt = 0.0;
    double t_final = -1.0;
    double h = 0.0;
    std::string out;
    std::string input;
    bool estimate_normals = false;
};

ExperimentConfig build_config(const std::string& experiment, const CliOptions& o) {
    ExperimentConfig cfg = default_config(experiment);
    if (!o.np.empty()) cfg.resolutions = o.np;
    if (o.order > 0) cfg.order = o.order;
    if (o.rc_factor > 0.0) cfg.rc_factor = o.rc_factor;
    if (o.dn > 0.0) cfg.dn_override = o.dn;
    if (o.nn >= 0) cfg.nn_override = o.nn;
    if (o.eps_factor > 0.0) cfg.eps_factor = o.eps_factor;
    if (o.alpha >= 0.0) cfg.alpha = o.alpha;
    if (o.dt > 0.0) cfg.dt = o.dt;
    if (o.t_final >= 0.0) cfg.t_final = o.t_final;
    if (o.h > 0.0) cfg.spacing = o.h;
    if (!o.out.empty()) cfg.output_path = o.out;
    cfg.input_path = o.input;
    cfg.estimate_normals_flag = o.estimate_normals;
    return cfg;
}

void print_records(const std::vector<ConvergenceRecord>& records) {
    for (const auto& r : records)
        std::printf("%-24s N=%-7zu h=%-10.4g L2=%-12.5g Linf=%-12.5g (%.2fs)\n",
                    r.experiment.c_str(), r.n_points, r.h, r.l2, r.linf, r.wall_time_s);
    if (records.size() >= 3) {
        const auto [o2, oinf] = fit_convergence_order(records);
        std::printf("fitted order: L2 %.2f, Linf %.2f\n", o2, oinf);
    }
}

int run(const std::string& experiment, const CliOptions& o) {
    const ExperimentConfig cfg = build_config(experiment, o);

    if (experiment == "circle-lb" || experiment == "sphere-lb" ||
        experiment == "circle-poisson" || experiment == "sphere-poisson") {
        std::vector<ConvergenceRecord> records;
        if (experiment == "circle-lb") records = run_circle_lb(cfg);
        else if (experiment == "sphere-lb") records = run_sphere_lb(cfg);
        else if (experiment == "circle-poisson") records = run_circle_poisson(cfg);
        else records = run_sphere_poisson(cfg);
        print_records(records);
        save_records(records, cfg.output_path);
        std::printf("wrote %s\n", cfg.output_path.c_str());
        return 0;
    }
    if (experiment == "ellipsoid-curvature") {
        const EllipsoidCurvatureResult res = run_ellipsoid_curvature(cfg);
        print_records(res.mean);
        print_records(res.gauss);
        std::vector<ConvergenceRecord> all = res.mean;
        all.insert(all.end(), res.gauss.begin(), res.gauss.end());
        save_records(all, cfg.output_path);
        std::printf("wrote %s\n", cfg.output_path.c_str());
        return 0;
    }
    if (experiment == "bunny-curvature") {
        const BunnyCurvatureResult res = run_bunny_curvature(cfg);
        save_point_scalars(res.cloud, {"H", "K"}, {res.mean, res.gauss}, cfg.output_path);
        std::printf("computed curvature at %zu points, wrote %s\n", res.cloud.size(),
                    cfg.output_path.c_str());
        return 0;
    }
    if (experiment == "bump-diffusion") {
        const BumpDiffusionResult res = run_bump_diffusion(cfg);
        save_time_series(res.times, res.f_x0, res.f_x1, cfg.alpha, cfg.output_path);
        std::printf("alpha=%.2f N=%zu (+%zu ghosts) h=%.4g peak(x0)=%.6g peak(x1)=%.6g\n",
                    cfg.alpha, res.n_points, res.n_ghosts, res.h, res.peak_x0(), res.peak_x1());
        std::printf("wrote %s\n", cfg.output_path.c_str());
        return 0;
    }
    throw ConfigError("unknown experiment: " + experiment);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface DC-PSE benchmark driver"};
    app.require_subcommand(1);

    const std::vector<std::string> experiments = {
        "circle-lb",          "circle-poisson", "sphere-lb",     "sphere-poisson",
        "ellipsoid-curvature", "bunny-curvature", "bump-diffusion"};

    CliOptions o;
    for (const auto& name : experiments) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--np", o.np, "point counts (repeatable)");
        sub->add_option("--order", o.order, "convergence order r");
        sub->add_option("--rc-factor", o.rc_factor, "operator support factor: r_c = F * dn");
        sub->add_option("--dn", o.dn, "normal spacing (overrides the per-experiment rule)");
        sub->add_option("--nn", o.nn, "normal layers per side");
        sub->add_option("--eps-factor", o.eps_factor, "kernel width factor over mean spacing");
        sub->add_option("--alpha", o.alpha, "bump height");
        sub->add_option("--dt", o.dt, "time step");
        sub->add_option("--tfinal", o.t_final, "final time");
        sub->add_option("--h", o.h, "grid spacing of the bump surface");
        sub->add_option("--out", o.out, "output CSV path");
        sub->add_option("--input", o.input, "input point cloud (csv or ply)");
        sub->add_flag("--estimate-normals", o.estimate_normals,
                      "estimate normals when the input file has none");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
