#include "sdcpse/pde.hpp"

#include <algorithm>
#include <cmath>

namespace sdcpse {

SparseSystem assemble_poisson(const SurfaceOperator& sop, const std::vector<double>& rhs_field,
                              const std::vector<std::pair<std::size_t, double>>& dirichlet) {
    if (sop.odd()) throw ConfigError("assemble_poisson: operator must have even order");
    if (dirichlet.empty())
        throw ConfigError("assemble_poisson: need at least one Dirichlet point "
                          "(system is singular up to constants otherwise)");

    const std::size_t n = sop.neighbors.size();
    std::vector<double> pin_value(n, 0.0);
    std::vector<char> pinned(n, 0);
    for (const auto& [idx, value] : dirichlet) {
        pinned[idx] = 1;
        pin_value[idx] = value;
    }

    std::vector<std::size_t> rows, cols;
    Vector values;
    Vector rhs(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        if (pinned[p]) {
            rows.push_back(p);
            cols.push_back(p);
            values.push_back(1.0);
            rhs[p] = pin_value[p];
            continue;
        }
        const double scale = sop.scale(p);
        double diag = 0.0;
        rhs[p] = rhs_field[p];
        for (std::size_t i = 0; i < sop.neighbors[p].size(); ++i) {
            const std::size_t s = sop.neighbors[p][i];
            const double c = sop.kernel_values[p][i] * scale;
            diag -= c;
            if (pinned[s]) {
                rhs[p] -= c * pin_value[s];  // fold the known value into the rhs
            } else {
                rows.push_back(p);
                cols.push_back(s);
                values.push_back(c);
            }
        }
        rows.push_back(p);
        cols.push_back(p);
        values.push_back(diag);
    }

    SparseSystem sys;
    sys.matrix = SparseMatrix::from_triplets(n, std::move(rows), std::move(cols), std::move(values));
    sys.rhs = std::move(rhs);
    sys.dirichlet = dirichlet;
    return sys;
}

GmresResult solve_poisson(const SparseSystem& system, const GmresOptions& opts) {
    const SparseMatrix& a = system.matrix;
    const std::size_t n = a.size();
    const auto& rp = a.row_pointers();
    const auto& ci = a.column_indices();
    const auto& av = a.values();

    Vector diag(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
            if (ci[k] == i && av[k] != 0.0) diag[i] = av[k];

    std::vector<std::size_t> rows, cols;
    Vector vals;
    rows.reserve(a.nonzeros());
    cols.reserve(a.nonzeros());
    vals.reserve(a.nonzeros());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            rows.push_back(i);
            cols.push_back(ci[k]);
            vals.push_back(av[k] / diag[i]);
        }
    const SparseMatrix scaled =
        SparseMatrix::from_triplets(n, std::move(rows), std::move(cols), std::move(vals));
    Vector scaled_rhs(n);
    for (std::size_t i = 0; i < n; ++i) scaled_rhs[i] = system.rhs[i] / diag[i];

    const double target = opts.rtol * norm2(system.rhs);
    GmresResult result;
    GmresOptions inner = opts;
    for (inner.rtol = 1e-2 * opts.rtol;; inner.rtol *= 1e-2) {
        result = gmres(scaled, scaled_rhs, inner);
        Vector r = a.multiply(result.x);
        for (std::size_t i = 0; i < n; ++i) r[i] -= system.rhs[i];
        result.residual_norm = norm2(r);
        if (result.residual_norm <= target) return result;
        if (inner.rtol < 1e-15) throw IterativeSolveError(result.residual_norm, result.iterations);
    }
}

std::pair<SurfacePointCloud, GhostMap> build_ghosts(const SurfacePointCloud& cloud,
                                                    const BumpSurfaceSpec& spec, double rc) {
    if (cloud.dim != 3) throw ConfigError("build_ghosts: expected a graph-surface cloud");
    const double w = spec.domain_half_width;
    const double band = 2.0 * rc;

    SurfacePointCloud out = cloud;
    GhostMap map;
    const std::size_t n = cloud.size();
    for (std::size_t p = 0; p < n; ++p) {
        const double x = cloud.positions[p][0], y = cloud.positions[p][1];
        const double z = cloud.positions[p][2];

        std::vector<double> xs{x}, ys{y};
        if (x > w - band && w - x > 0.0) xs.push_back(2.0 * w - x);
        if (x < -w + band && x + w > 0.0) xs.push_back(-2.0 * w - x);
        if (y > w - band && w - y > 0.0) ys.push_back(2.0 * w - y);
        if (y < -w + band && y + w > 0.0) ys.push_back(-2.0 * w - y);
        if (xs.size() == 1 && ys.size() == 1) continue;

        if (std::abs(z) > 0.0)
            throw ConfigError("build_ghosts: bump region reaches the mirror band; "
                              "reflection of curved surface parts is not supported");

        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                if (ix == 0 && iy == 0) continue;  // the original point
                map.ghosts.push_back(out.positions.size());
                map.sources.push_back(p);
                out.positions.push_back({xs[ix], ys[iy], 0.0});
                out.normals.push_back({0.0, 0.0, 1.0});
                out.labels.push_back(PointLabel::ghost);
            }
        }
    }
    return {std::move(out), std::move(map)};
}

void sync_ghosts(std::vector<double>& field, const GhostMap& map) {
    for (std::size_t g = 0; g < map.ghosts.size(); ++g)
        field[map.ghosts[g]] = field[map.sources[g]];
}

std::vector<double> dopri5_integrate(std::vector<double> y, const RhsFunction& rhs, double dt,
                                     double t_final) {
    if (dt <= 0.0) throw ConfigError("dopri5: dt must be positive");
    if (t_final < 0.0) throw ConfigError("dopri5: t_final must be non-negative");
    if (t_final == 0.0) return y;

    // Classic Dormand-Prince 5(4) tableau.
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384,      0.0,      500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const std::size_t n = y.size();
    std::vector<std::vector<double>> k(7);
    std::vector<double> stage(n);

    const auto whole_steps = static_cast<std::size_t>(std::floor(t_final / dt + 1e-12));
    const double remainder = t_final - static_cast<double>(whole_steps) * dt;

    std::size_t step_index = 0;
    auto advance = [&](double h) {
        for (int s = 0; s < 7; ++s) {
            stage = y;
            for (int j = 0; j < s; ++j) {
                if (a[s][j] == 0.0) continue;
                const double c = h * a[s][j];
                for (std::size_t i = 0; i < n; ++i) stage[i] += c * k[j][i];
            }
            k[s] = rhs(stage);
        }
        double err2 = 0.0;  // embedded 4th-order estimate, unused for control
        for (std::size_t i = 0; i < n; ++i) {
            double dy5 = 0.0, dy4 = 0.0;
            for (int s = 0; s < 7; ++s) {
                dy5 += b5[s] * k[s][i];
                dy4 += b4[s] * k[s][i];
            }
            y[i] += h * dy5;
            const double e = h * (dy5 - dy4);
            err2 += e * e;
        }
        (void)err2;
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(y[i])) throw BlowUpError(step_index);
        ++step_index;
    };

    for (std::size_t s = 0; s < whole_steps; ++s) advance(dt);
    if (remainder > 1e-12 * dt) advance(remainder);
    return y;
}

}  // namespace sdcpse
