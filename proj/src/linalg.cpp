#include "sdcpse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdcpse/errors.hpp"

namespace sdcpse {

double norm2(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Vector DenseMatrix::multiply(const Vector& x) const {
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector lu_solve(DenseMatrix a, Vector b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw ConfigError("lu_solve: matrix must be square and match the rhs");

    double max_pivot = 0.0, min_pivot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        const double p = std::abs(a(k, k));
        max_pivot = std::max(max_pivot, p);
        min_pivot = (k == 0) ? p : std::min(min_pivot, p);
        if (p == 0.0 || min_pivot < 1e-12 * max_pivot)
            throw SingularMatrixError("lu_solve: pivot ratio below 1e-12 at step " +
                                      std::to_string(k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            if (m == 0.0) continue;
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
            b[i] -= m * b[k];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

FullPivotResult solve_full_pivot(DenseMatrix a, Vector b, double pivot_tol) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw ConfigError("solve_full_pivot: matrix must be square and match the rhs");

    std::vector<std::size_t> col_of(n);   // col_of[k]: original column eliminated at step k
    std::iota(col_of.begin(), col_of.end(), 0);

    double first_pivot = 0.0;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a(i, j)) > best) { best = std::abs(a(i, j)); pr = i; pc = j; }
        if (k == 0) first_pivot = best;
        if (best == 0.0 || best < pivot_tol * first_pivot) break;
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pr, j));
            std::swap(b[k], b[pr]);
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pc));
            std::swap(col_of[k], col_of[pc]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            if (m == 0.0) continue;
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
            b[i] -= m * b[k];
        }
        ++rank;
    }

    Vector xp(n, 0.0);  // solution in permuted column order; free variables stay 0
    for (std::size_t i = rank; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * xp[j];
        xp[i] = s / a(i, i);
    }
    FullPivotResult res;
    res.rank = rank;
    res.complete = (rank == n);
    res.x.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) res.x[col_of[k]] = xp[k];
    return res;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n,
                                         std::vector<std::size_t> rows,
                                         std::vector<std::size_t> cols,
                                         Vector values) {
    if (rows.size() != cols.size() || rows.size() != values.size())
        throw ConfigError("from_triplets: inconsistent triplet arrays");

    SparseMatrix m;
    m.n_ = n;
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return rows[i] != rows[j] ? rows[i] < rows[j] : cols[i] < cols[j];
    });

    m.row_ptr_.assign(n + 1, 0);
    std::size_t prev_row = n, prev_col = n;
    for (std::size_t t : order) {
        if (rows[t] >= n || cols[t] >= n)
            throw ConfigError("from_triplets: index out of range");
        if (rows[t] == prev_row && cols[t] == prev_col) {
            m.values_.back() += values[t];  // duplicate entry: accumulate
            continue;
        }
        m.col_idx_.push_back(cols[t]);
        m.values_.push_back(values[t]);
        m.row_ptr_[rows[t] + 1] = m.col_idx_.size();
        prev_row = rows[t];
        prev_col = cols[t];
    }
    for (std::size_t i = 0; i < n; ++i)
        m.row_ptr_[i + 1] = std::max(m.row_ptr_[i + 1], m.row_ptr_[i]);
    return m;
}

Vector SparseMatrix::multiply(const Vector& x) const {
    Vector y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            s += values_[k] * x[col_idx_[k]];
        y[i] = s;
    }
    return y;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            d(i, col_idx_[k]) += values_[k];
    return d;
}

GmresResult gmres(const SparseMatrix& a, const Vector& b, const GmresOptions& opts) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ConfigError("gmres: rhs size mismatch");
    const int m = std::max(1, opts.restart);
    const double bnorm = norm2(b);
    const double target = std::max(opts.rtol * bnorm, opts.atol);

    GmresResult out;
    out.x.assign(n, 0.0);
    if (bnorm == 0.0) return out;

    std::vector<Vector> v(m + 1, Vector(n, 0.0));
    DenseMatrix h(m + 1, m);
    Vector cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);

    std::size_t total_it = 0;
    double resid = bnorm;
    while (total_it < opts.max_iterations) {
        // r = b - A x
        Vector r = a.multiply(out.x);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        resid = norm2(r);
        if (resid <= target) { out.residual_norm = resid; return out; }

        const double beta = resid;
        for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        int k = 0;
        for (; k < m && total_it < opts.max_iterations; ++k, ++total_it) {
            Vector w = a.multiply(v[k]);
            for (int j = 0; j <= k; ++j) {           // modified Gram-Schmidt
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += w[i] * v[j][i];
                h(j, k) = dot;
                for (std::size_t i = 0; i < n; ++i) w[i] -= dot * v[j][i];
            }
            h(k + 1, k) = norm2(w);
            if (h(k + 1, k) > 0.0)
                for (std::size_t i = 0; i < n; ++i) v[k + 1][i] = w[i] / h(k + 1, k);

            for (int j = 0; j < k; ++j) {            // apply stored rotations
                const double t = cs[j] * h(j, k) + sn[j] * h(j + 1, k);
                h(j + 1, k) = -sn[j] * h(j, k) + cs[j] * h(j + 1, k);
                h(j, k) = t;
            }
            const double denom = std::hypot(h(k, k), h(k + 1, k));
            if (denom == 0.0) { cs[k] = 1.0; sn[k] = 0.0; }
            else { cs[k] = h(k, k) / denom; sn[k] = h(k + 1, k) / denom; }
            h(k, k) = cs[k] * h(k, k) + sn[k] * h(k + 1, k);
            h(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            resid = std::abs(g[k + 1]);
            if (resid <= target) { ++k; ++total_it; break; }
        }

        // y = H^{-1} g, x += V y
        Vector y(k, 0.0);
        for (int i = k; i-- > 0;) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= h(i, j) * y[j];
            y[i] = (h(i, i) != 0.0) ? s / h(i, i) : 0.0;
        }
        for (int j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) out.x[i] += y[j] * v[j][i];
        out.iterations = total_it;

        if (resid <= target) {
            Vector rr = a.multiply(out.x);   // trust only the true residual
            for (std::size_t i = 0; i < n; ++i) rr[i] = b[i] - rr[i];
            out.residual_norm = norm2(rr);
            if (out.residual_norm <= target) return out;
        }
    }

    Vector rr = a.multiply(out.x);
    for (std::size_t i = 0; i < n; ++i) rr[i] = b[i] - rr[i];
    out.residual_norm = norm2(rr);
    if (out.residual_norm <= target) return out;
    throw IterativeSolveError(out.residual_norm, out.iterations);
}

}  // namespace sdcpse
