#include <doctest.h>

#include "ainf/structure.hpp"

using namespace ainf;

TEST_CASE("p=2 n=2 addition polynomials match the hand expansion") {
    const auto& sc = StructurePolyCache::get(2, 2);
    // S_0 = X_0 + Y_0
    IntPoly s0 = IntPoly::variable(4, 0) + IntPoly::variable(4, 2);
    CHECK(sc.add_poly(0) == s0);
    // S_1 = X_1 + Y_1 - X_0 Y_0, from (X_0+Y_0)^2 + 2 S_1 = X_0^2 + 2X_1 + Y_0^2 + 2Y_1
    IntPoly s1 = IntPoly::variable(4, 1) + IntPoly::variable(4, 3) -
                 IntPoly::variable(4, 0) * IntPoly::variable(4, 2);
    CHECK(sc.add_poly(1) == s1);
}

TEST_CASE("p=3 n=1 addition polynomial") {
    const auto& sc = StructurePolyCache::get(3, 1);
    CHECK(sc.add_poly(0) == IntPoly::variable(2, 0) + IntPoly::variable(2, 1));
}

TEST_CASE("carry polynomials are weighted degree 1") {
    const auto& sc = StructurePolyCache::get(2, 2);
    // c_1(X, Y) = X^(1/2) Y^(1/2): mod-2 reduction of -X_0 Y_0, exponents halved
    const auto& c1 = sc.teich_add_carry(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].ex == Rat(1, 2));
    CHECK(c1[0].ey == Rat(1, 2));
    CHECK(c1[0].coeff == 1);
}

TEST_CASE("ghost certification for the acceptance grid") {
    for (int p : {2, 3})
        for (int n = 1; n <= 4; ++n) {
            const auto& sc = StructurePolyCache::get(p, n);
            CHECK_NOTHROW(sc.certify());
        }
}

TEST_CASE("symbolic cap enforced") {
    CHECK_THROWS_AS(StructurePolyCache::get(2, 8), ResourceBound);
}
