#include "sdcpse/bench/norms.hpp"

#include <cmath>
#include <set>

#include "sdcpse/errors.hpp"

namespace sdcpse::bench {

std::pair<double, double> error_norms(const std::vector<double>& numeric,
                                      const std::vector<double>& analytic) {
    if (numeric.size() != analytic.size())
        throw ConfigError("error_norms: vectors must have equal length");
    if (numeric.empty()) throw ConfigError("error_norms: empty input");
    double sum2 = 0.0, linf = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double e = std::abs(numeric[i] - analytic[i]);
        sum2 += e * e;
        linf = std::max(linf, e);
    }
    return {std::sqrt(sum2 / static_cast<double>(numeric.size())), linf};
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::pair<double, double> fit_convergence_order(const std::vector<ConvergenceRecord>& records) {
    std::set<double> distinct;
    for (const auto& r : records) distinct.insert(r.h);
    if (records.size() < 3 || distinct.size() < 3)
        throw ConfigError("fit_convergence_order: need at least 3 records with distinct h");

    std::vector<double> lh, l2, linf;
    for (const auto& r : records) {
        if (r.h <= 0.0 || r.l2 <= 0.0 || r.linf <= 0.0)
            throw ConfigError("fit_convergence_order: h and errors must be positive");
        lh.push_back(std::log10(r.h));
        l2.push_back(std::log10(r.l2));
        linf.push_back(std::log10(r.linf));
    }
    return {slope(lh, l2), slope(lh, linf)};
}

}  // namespace sdcpse::bench
