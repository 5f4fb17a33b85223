#include <doctest.h>

#include <algorithm>

#include "chambercross/oracle.hpp"
#include "chambercross/presets.hpp"
#include "chambercross/wallcross.hpp"

using namespace chambercross;

TEST_CASE("brute count")
{
    auto a2 = preset("A2");
    CHECK(brute_count(a2, {2, 1}) == 3);
    CHECK(brute_count(a2, {0, 0}) == 1);
    CHECK(brute_count(a2, {-1, 0}) == 0);
    auto b2 = preset("B2");
    CHECK(brute_count(b2, {1, 1}) == 3);

    // ordering of the vectors does not matter
    IntMatrix rev(b2.vectors.rbegin(), b2.vectors.rend());
    BruteCounter fwd(b2), bwd(rev, b2.positive);
    for (long x = 0; x <= 5; ++x)
        for (long y = -x; y <= 5; ++y)
            CHECK(fwd.count({x, y}) == bwd.count({x, y}));
}

TEST_CASE("brute count difference equation")
{
    auto a3 = preset("A3");
    BruteCounter full(a3);
    for (std::size_t i = 0; i < a3.size(); ++i) {
        IntMatrix rest = a3.vectors;
        rest.erase(rest.begin() + static_cast<long>(i));
        BruteCounter part(rest, a3.positive);
        for (IntVec a : {IntVec{3, 1, 2}, IntVec{4, -1, 0}, IntVec{2, 2, -1}}) {
            IntVec b = a;
            for (std::size_t k = 0; k < b.size(); ++k)
                b[k] -= a3.vectors[i][k];
            CHECK(full.count(a) - full.count(b) == part.count(a));
        }
    }
}

TEST_CASE("K+")
{
    IntVec E{1, 0};
    CHECK(kplus({{1, 0}, {1, 1}}, E, {0, 0}) == 1);
    CHECK(kplus({{1, 0}, {-1, 1}}, E, {0, 0}) == 0);
    for (long n = -2; n <= 3; ++n)
        CHECK(kplus({{1, 1}}, E, {n, n}) == (n >= 0 ? 1 : 0));
}

TEST_CASE("convolution")
{
    IntVec E{1, 0};
    IntMatrix psi{{1, 0}, {1, -1}};
    WallFrame fr = normal_frame(E);
    QuasiPoly one(MultiPoly(1, 1));
    CHECK(convolve_C(one, psi, fr, E, {2, 1}) == 3);
    CHECK(convolve_C(one, {{1, 1}}, fr, E, {3, 3}) == 1);
    CHECK(convolve_C(one, {{1, 0}, {-1, 1}}, fr, E, {0, 4}) == 0);

    // agreement with Para on a grid, with a quasi-polynomial on the wall
    IntVec E3{0, 0, 1};
    IntMatrix psi3{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 0, -1}, {0, 1, -1}};
    WallFrame fr3 = normal_frame(E3);
    auto q = parse_quasi("1/4*(a1+a2)^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)", 2);
    auto Q = para(extend_from_wall(q, fr3), psi3, E3);
    KPlus kernel(psi3, E3);
    for (long a1 = -1; a1 <= 2; ++a1)
        for (long a3 = 0; a3 <= 3; ++a3)
            CHECK(convolve_C(q, kernel, fr3, {a1, 1, a3}) == Q.evaluate({a1, 1, a3}));
}

TEST_CASE("dilation volume")
{
    auto b2 = preset("B2");
    CHECK(volume_dilation(b2, {2, -1}, 2) == Rational(1, 4));
    CHECK(volume_dilation(validate_config({{1, 0}, {0, 1}}), {1, 1}, 1) == 1);
    Solver solver;
    auto a2 = preset("A2");
    auto sol = solver.solve(a2);
    auto id = sol->complex.locate(RatVec{2, 1});
    REQUIRE(id);
    CHECK(volume_dilation(a2, {2, 1}, 1) == sol->volume[*id].evaluate(IntVec{2, 1}).to_rational());
}
