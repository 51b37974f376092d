#include "sdcpse/multi_index.hpp"

#include <cmath>
#include <stdexcept>

#include "sdcpse/errors.hpp"

namespace sdcpse {

MultiIndex::MultiIndex(std::initializer_list<int> e) {
    if (e.size() < 1 || e.size() > 3)
        throw ConfigError("multi-index must have 1 to 3 components");
    dim = static_cast<int>(e.size());
    int i = 0;
    for (int v : e) {
        if (v < 0) throw ConfigError("multi-index exponents must be non-negative");
        exponents[i++] = v;
    }
}

std::int64_t MultiIndex::factorial() const {
    std::int64_t f = 1;
    for (int i = 0; i < dim; ++i)
        for (int k = 2; k <= exponents[i]; ++k) f *= k;
    return f;
}

double MultiIndex::monomial(const std::array<double, 3>& x) const {
    double m = 1.0;
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < exponents[i]; ++k) m *= x[i];
    return m;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        if (i) s += ",";
        s += std::to_string(exponents[i]);
    }
    return s + ")";
}

std::vector<MultiIndex> multi_indices_of_degree(int degree, int dim) {
    std::vector<MultiIndex> out;
    if (dim == 1) {
        out.push_back(MultiIndex({{degree, 0, 0}}, 1));
    } else if (dim == 2) {
        for (int a = degree; a >= 0; --a)
            out.push_back(MultiIndex({{a, degree - a, 0}}, 2));
    } else {
        for (int a = degree; a >= 0; --a)
            for (int b = degree - a; b >= 0; --b)
                out.push_back(MultiIndex({{a, b, degree - a - b}}, 3));
    }
    return out;
}

std::vector<MultiIndex> basis_multi_indices(int order, int r, int dim) {
    if (order < 1) throw ConfigError("operator order must be >= 1");
    if (r < 1) throw ConfigError("convergence order must be >= 1");
    if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2 or 3");
    const int beta_min = (order % 2 == 0) ? 1 : 0;
    std::vector<MultiIndex> basis;
    for (int deg = beta_min; deg <= order + r - 1; ++deg) {
        auto level = multi_indices_of_degree(deg, dim);
        basis.insert(basis.end(), level.begin(), level.end());
    }
    return basis;
}

DifferentialOperator::DifferentialOperator(std::vector<MultiIndex> t) : terms(std::move(t)) {
    if (terms.empty()) throw ConfigError("differential operator needs at least one term");
    const int ord = terms.front().order();
    const int d = terms.front().dim;
    if (ord < 1) throw ConfigError("operator order must be >= 1");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].order() != ord)
            throw ConfigError("all operator terms must share the same order");
        if (terms[i].dim != d)
            throw ConfigError("all operator terms must share the same dimension");
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i] == terms[j])
                throw ConfigError("operator terms must be pairwise distinct");
    }
}

DifferentialOperator DifferentialOperator::laplacian(int dim) {
    std::vector<MultiIndex> terms;
    for (int axis = 0; axis < dim; ++axis) {
        std::array<int, 3> e{0, 0, 0};
        e[axis] = 2;
        terms.push_back(MultiIndex(e, dim));
    }
    return DifferentialOperator(std::move(terms));
}

DifferentialOperator DifferentialOperator::derivative(int axis, int dim) {
    if (axis < 0 || axis >= dim) throw ConfigError("derivative axis out of range");
    std::array<int, 3> e{0, 0, 0};
    e[axis] = 1;
    return DifferentialOperator({MultiIndex(e, dim)});
}

}  // namespace sdcpse
