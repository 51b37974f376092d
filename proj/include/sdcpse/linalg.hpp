#ifndef SDCPSE_LINALG_HPP_
#define SDCPSE_LINALG_HPP_

#include <cstddef>
#include <vector>

namespace sdcpse {

using Vector = std::vector<double>;

// Row-major dense matrix. Just big enough for the per-point moment systems.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    Vector multiply(const Vector& x) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vector data_;
};

// Solves A x = b by LU with partial (row) pivoting.
// Throws SingularMatrixError when the pivot ratio min|U_kk|/max|U_kk|
// falls below 1e-12.
Vector lu_solve(DenseMatrix a, Vector b);

struct FullPivotResult {
    Vector x;             // solution with free variables set to zero
    std::size_t rank;     // numerical rank at the pivot threshold
    bool complete;        // false if elimination stopped early (rank deficient)
};

// Gaussian elimination with full pivoting. Rank-deficient systems do not
// throw: remaining variables are zeroed and elimination stops, leaving the
// caller to decide whether the returned x actually solves its system.
// Symmetric stencil configurations produce exactly such consistent
// rank-deficient moment systems, so this is the solver DC-PSE construction
// uses, with a residual check on top.
FullPivotResult solve_full_pivot(DenseMatrix a, Vector b, double pivot_tol = 1e-12);

// Compressed sparse row matrix, fixed after construction.
class SparseMatrix {
public:
    SparseMatrix() = default;

    // Builds from (row, col, value) triplets; duplicates are summed,
    // column indices end up sorted and unique per row.
    static SparseMatrix from_triplets(std::size_t n,
                                      std::vector<std::size_t> rows,
                                      std::vector<std::size_t> cols,
                                      Vector values);

    std::size_t size() const { return n_; }
    std::size_t nonzeros() const { return values_.size(); }

    Vector multiply(const Vector& x) const;
    DenseMatrix to_dense() const;

    const std::vector<std::size_t>& row_pointers() const { return row_ptr_; }
    const std::vector<std::size_t>& column_indices() const { return col_idx_; }
    const Vector& values() const { return values_; }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    Vector values_;
};

struct GmresOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    int restart = 30;
    std::size_t max_iterations = 10000;
};

struct GmresResult {
    Vector x;
    std::size_t iterations = 0;
    double residual_norm = 0.0;
};

// Restarted GMRES without preconditioning (modified Gram-Schmidt + Givens).
// Throws IterativeSolveError, carrying the final residual, when the target
// max(rtol*|b|, atol) is not reached within max_iterations.
GmresResult gmres(const SparseMatrix& a, const Vector& b, const GmresOptions& opts = {});

double norm2(const Vector& v);
double norm_inf(const Vector& v);

}  // namespace sdcpse

#endif
