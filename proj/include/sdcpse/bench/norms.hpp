#ifndef SDCPSE_BENCH_NORMS_HPP_
#define SDCPSE_BENCH_NORMS_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace sdcpse::bench {

// One resolution of a convergence study, with every parameter that went
// into it so any row of the output CSV is reproducible on its own.
struct ConvergenceRecord {
    std::string experiment;
    std::size_t n_points = 0;
    double h = 0.0;  // mean average spacing
    int order_r = 2;
    double rc_factor = 0.0;
    double dn = 0.0;
    int nn = 0;
    double eps_factor = 1.0;
    double l2 = 0.0;    // root-mean-square of the absolute errors
    double linf = 0.0;  // max absolute error
    double wall_time_s = 0.0;
};

// (L2, Linf) of numeric - analytic. L2 carries the 1/N normalization, so it
// never exceeds Linf. Ghost/Dirichlet entries are the caller's business.
std::pair<double, double> error_norms(const std::vector<double>& numeric,
                                      const std::vector<double>& analytic);

// Least-squares slopes of log10(error) against log10(h), one per norm:
// (L2 slope, Linf slope). Needs >= 3 records with distinct h and positive
// errors.
std::pair<double, double> fit_convergence_order(const std::vector<ConvergenceRecord>& records);

}  // namespace sdcpse::bench

#endif
