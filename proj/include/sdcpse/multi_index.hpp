#ifndef SDCPSE_MULTI_INDEX_HPP_
#define SDCPSE_MULTI_INDEX_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sdcpse {

// Multi-index (a1,...,ad) of per-coordinate derivative orders, d <= 3.
// Unused trailing components are zero.
struct MultiIndex {
    std::array<int, 3> exponents{0, 0, 0};
    int dim = 0;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> e);
    MultiIndex(const std::array<int, 3>& e, int d) : exponents(e), dim(d) {}

    int order() const { return exponents[0] + exponents[1] + exponents[2]; }

    // Product of per-component factorials. Exact for order() <= 12.
    std::int64_t factorial() const;

    // Monomial x^a = prod_i x_i^(a_i) evaluated on the first dim components.
    double monomial(const std::array<double, 3>& x) const;

    bool operator==(const MultiIndex& o) const {
        return dim == o.dim && exponents == o.exponents;
    }

    std::string to_string() const;
};

// All multi-indices of the given degree in `dim` dimensions, ordered by
// descending leading exponents: (2,0),(1,1),(0,2).
std::vector<MultiIndex> multi_indices_of_degree(int degree, int dim);

// Basis for a DC-PSE kernel of derivative order |a| and convergence order r:
// every multi-index b with b_min <= |b| <= |a|+r-1, graded lexicographic.
// b_min is 0 for odd |a| (the zeroth moment must be constrained) and
// 1 for even |a| (the f_q - f_p prefactor cancels the constant anyway).
std::vector<MultiIndex> basis_multi_indices(int order, int r, int dim);

// A linear differential operator as a sum of same-order multi-indices,
// e.g. the 2D Laplacian (2,0)+(0,2).
struct DifferentialOperator {
    std::vector<MultiIndex> terms;

    explicit DifferentialOperator(std::vector<MultiIndex> t);

    int order() const { return terms.front().order(); }
    int dim() const { return terms.front().dim; }
    bool odd() const { return order() % 2 != 0; }

    // Sum of pure second derivatives in `dim` dimensions.
    static DifferentialOperator laplacian(int dim);
    // First derivative along the given axis.
    static DifferentialOperator derivative(int axis, int dim);
};

}  // namespace sdcpse

#endif
