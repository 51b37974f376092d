#ifndef SDCPSE_BENCH_IO_HPP_
#define SDCPSE_BENCH_IO_HPP_

#include <string>
#include <vector>

#include "sdcpse/bench/norms.hpp"
#include "sdcpse/dcpse.hpp"
#include "sdcpse/point_cloud.hpp"

namespace sdcpse::bench {

// A parsed point file; normals may be absent (estimate them before use).
struct LoadedCloud {
    int dim = 3;
    bool has_normals = false;
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<PointLabel> labels;

    // Throws ConfigError when normals are missing.
    SurfacePointCloud cloud() const;
};

// CSV (header x,y[,z],nx,ny[,nz][,label]) or ASCII PLY with nx,ny,nz vertex
// properties; chosen by file extension. Non-unit normals within 1e-3 of
// unit length are renormalized with a warning on stderr, anything further
// off is rejected. Malformed rows raise ParseError naming the line.
LoadedCloud load_point_cloud(const std::string& path);

// Round-trips through load_point_cloud losslessly (17 significant digits).
void save_point_cloud(const SurfacePointCloud& cloud, const std::string& path);

// Convergence CSV:
// experiment,N_p,h,order_r,rc_factor,dn,N_n,eps_factor,L2,Linf,wall_time_s
void save_records(const std::vector<ConvergenceRecord>& records, const std::string& path);

// Time series CSV: t,f_at_x0,f_at_x1,alpha
void save_time_series(const std::vector<double>& times, const std::vector<double>& f_x0,
                      const std::vector<double>& f_x1, double alpha, const std::string& path);

// Per-point scalar CSV (e.g. curvature output): x,y,z followed by the
// named columns.
void save_point_scalars(const SurfacePointCloud& cloud,
                        const std::vector<std::string>& column_names,
                        const std::vector<std::vector<double>>& columns, const std::string& path);

// Debug dump of kernel coefficients: point,basis,coefficient rows.
void dump_kernels(const std::vector<KernelCoefficients>& kernels, const std::string& path);

}  // namespace sdcpse::bench

#endif
