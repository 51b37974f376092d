#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcpse/errors.hpp"
#include "sdcpse/multi_index.hpp"

using namespace sdcpse;

TEST_CASE("factorial and monomial") {
    CHECK(MultiIndex{2}.factorial() == 2);
    CHECK(MultiIndex{2, 0}.factorial() == 2);
    CHECK(MultiIndex{3, 2, 1}.factorial() == 12);
    CHECK(MultiIndex{12}.factorial() == 479001600);
    CHECK(MultiIndex{2, 1}.monomial({3.0, 4.0, 0.0}) == doctest::Approx(36.0));
    CHECK(MultiIndex{0, 0, 3}.monomial({3.0, 4.0, 2.0}) == doctest::Approx(8.0));
}

TEST_CASE("basis for even 1D second derivative, r=2") {
    const auto basis = basis_multi_indices(2, 2, 1);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0] == MultiIndex{1});
    CHECK(basis[1] == MultiIndex{2});
    CHECK(basis[2] == MultiIndex{3});
}

TEST_CASE("basis for odd 1D first derivative includes the constant") {
    const auto basis = basis_multi_indices(1, 2, 1);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0] == MultiIndex{0});
    CHECK(basis[1] == MultiIndex{1});
    CHECK(basis[2] == MultiIndex{2});
}

TEST_CASE("2D basis counts multi-indices per degree") {
    const auto basis = basis_multi_indices(2, 2, 2);
    CHECK(basis.size() == 9);  // degrees 1..3 in 2D: 2 + 3 + 4
    // graded ordering
    for (std::size_t i = 1; i < basis.size(); ++i)
        CHECK(basis[i - 1].order() <= basis[i].order());
}

TEST_CASE("3D basis size for r=4 Laplacian kernels") {
    CHECK(basis_multi_indices(2, 4, 3).size() == 55);  // degrees 1..5: 3+6+10+15+21
}

TEST_CASE("operator validation") {
    CHECK_THROWS_AS(DifferentialOperator({}), ConfigError);
    CHECK_THROWS_AS(DifferentialOperator({MultiIndex{2, 0}, MultiIndex{1, 0}}), ConfigError);
    CHECK_THROWS_AS(DifferentialOperator({MultiIndex{2, 0}, MultiIndex{2, 0}}), ConfigError);

    const auto lap = DifferentialOperator::laplacian(2);
    CHECK(lap.order() == 2);
    CHECK(lap.dim() == 2);
    CHECK_FALSE(lap.odd());
    CHECK(DifferentialOperator::derivative(1, 3).odd());
}
