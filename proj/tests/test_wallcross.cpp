#include <doctest.h>

#include "chambercross/presets.hpp"
#include "chambercross/wallcross.hpp"

using namespace chambercross;

namespace {

MultiPoly P(const char* s, std::size_t r)
{
    return parse_poly(s, r);
}

QuasiPoly Q(const char* s, std::size_t r)
{
    return parse_quasi(s, r);
}

std::size_t chamber_at(const ChamberSolution& sol, std::initializer_list<long> point)
{
    auto id = sol.complex.locate(to_rational(IntVec(point)));
    REQUIRE(id);
    REQUIRE(*id != 0);
    return *id;
}

} // namespace

TEST_CASE("pol")
{
    CHECK(pol(MultiPoly(2, 1), {{1, 0}, {1, 1}, {1, -1}}, {1, 0}) == P("1/2*a1^2", 2));
    CHECK(pol(MultiPoly(2, 1), {{1, 0}, {1, -1}, {0, 1}}, {1, -1}) == P("-1/4*(a1-a2)^2", 2));
    CHECK(pol(MultiPoly(2, 1), {{1, 1}}, {1, 0}) == MultiPoly(2, 1));
}

TEST_CASE("par")
{
    CHECK(par(MultiPoly(2, 1), {{1, 0}, {1, -1}}, {1, 0}) == P("1 + a1", 2));
    CHECK(par(MultiPoly(2, 1), {{0, 1}, {1, -1}}, {0, 1}) == P("-a2", 2));
    IntMatrix psi{{0, 0, 1}, {1, 0, -1}, {0, 1, -1}};
    CHECK(par(P("a1 + a2 + 1", 3), psi, {0, 0, 1}, true) ==
          P("1/6*a3*(a3-1)*(2*a3+3*a2+3*a1+5)", 3));
}

TEST_CASE("para")
{
    auto q = para(QuasiPoly(MultiPoly(2, 1)), {{1, 0}, {1, -1}, {0, 1}}, {1, -1}, true);
    CHECK(q.terms().size() == 2);
    for (long a1 = -4; a1 <= 4; ++a1) {
        for (long a2 = -4; a2 <= 4; ++a2) {
            Rational t = a2 - a1;
            Rational want = (a1 + a2) % 2 == 0 ? Rational(-t * (t - 2) / 4) : Rational(-(t - 1) * (t - 1) / 4);
            CHECK(q.evaluate({a1, a2}) == want);
        }
    }

    // all <psi, E> = +-1: Para agrees with Par
    IntMatrix psi{{0, 0, 1}, {1, 0, -1}, {0, 1, -1}};
    auto p = P("a1 + a2 + 1", 3);
    CHECK(para(QuasiPoly(p), psi, {0, 0, 1}) == QuasiPoly(par(p, psi, {0, 0, 1})));
    CHECK(para(QuasiPoly(MultiPoly(1, 1)), {{1}}, {1}) == QuasiPoly(MultiPoly(1, 1)));
}

TEST_CASE("functional properties")
{
    IntMatrix psi{{1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, -1}, {2, 1, -1}};
    IntVec E{0, 0, 1};
    auto p = P("a1^2 - 3*a1*a2 + 2", 3);
    auto full = pol(p, psi, E);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        IntMatrix rest = psi;
        rest.erase(rest.begin() + static_cast<long>(i));
        CHECK(directional_derivative(to_rational(psi[i]), full) == pol(p, rest, E));
        CHECK(difference_apply(to_rational(psi[i]), par(p, psi, E)) == par(p, rest, E));
    }
    // derivative along the wall commutes
    RatVec w{1, -2, 0};
    CHECK(directional_derivative(w, full) == pol(directional_derivative(w, p), psi, E));

    // scaling a vector by c divides Pol by c
    IntMatrix scaled = psi;
    for (auto& x : scaled[0])
        x *= 3;
    CHECK(pol(p, scaled, E) == pol(p, psi, E) * Cyclotomic(Rational(1, 3)));

    // restriction to the wall
    MultiPoly on_wall = pol(p, psi, E).substitute(
        {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1), MultiPoly(3)});
    CHECK(on_wall.is_zero());
    CHECK(pol(p, {{1, 1, 1}}, E).substitute({MultiPoly::variable(3, 0), MultiPoly::variable(3, 1),
                                              MultiPoly(3)}) == p);
}

TEST_CASE("Para difference property")
{
    auto q = Q("1/4*(a1+a2)^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)", 3);
    IntMatrix psi{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 0, -1}, {0, 1, -1}};
    IntVec E{0, 0, 1};
    auto full = para(q, psi, E);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        IntMatrix rest = psi;
        rest.erase(rest.begin() + static_cast<long>(i));
        CHECK(difference_apply(psi[i], full) == para(q, rest, E));
    }
}

TEST_CASE("compute_G and Todd")
{
    auto b2 = preset("B2");
    auto G = compute_G(b2);
    REQUIRE(G.size() == 2);
    CHECK(G[1] == Shift{Rational(1, 2), Rational(1, 2)});
    CHECK(compute_G(preset("A3")).size() == 1);
    CHECK(compute_G(validate_config({{1, 0}, {0, 1}})).size() == 1);

    auto c = todd_coefficients(Cyclotomic(1), 4);
    CHECK(c[1] == Cyclotomic(Rational(1, 2)));
    CHECK(c[2] == Cyclotomic(Rational(1, 12)));
    auto m = todd_coefficients(Cyclotomic(-1), 2);
    CHECK(m[0] == Cyclotomic(0));
    CHECK(m[1] == Cyclotomic(Rational(1, 2)));

    CHECK(todd_apply({}, {Shift{}}, MultiPoly(0, 7)) == QuasiPoly(MultiPoly(0, 7)));
    CHECK(todd_apply(b2.vectors, G, P("1/4*(a1+a2)^2", 2)) ==
          Q("1/4*a1^2 + 1/2*a1*a2 + 1/4*a2^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)", 2));
}

TEST_CASE("sweep of A2 and B2")
{
    Solver solver;
    auto a2 = solver.solve(preset("A2"));
    REQUIRE(a2->volume.size() == 3);
    auto c1 = chamber_at(*a2, {1, 2}), c2 = chamber_at(*a2, {2, -1});
    CHECK(a2->partition[c1] == Q("1 + a1", 2));
    CHECK(a2->partition[c2] == Q("1 + a1 + a2", 2));

    auto b2 = solver.solve(preset("B2"));
    REQUIRE(b2->volume.size() == 4);
    // c1 between e2 and e1 + e2, c2 between e1 + e2 and e1, c3 between e1 and e1 - e2
    auto d1 = chamber_at(*b2, {1, 3}), d2 = chamber_at(*b2, {3, 1}), d3 = chamber_at(*b2, {3, -1});
    CHECK(b2->volume[d1] == P("1/2*a1^2", 2));
    CHECK(b2->volume[d2] == P("1/4*(a1+a2)^2 - 1/2*a2^2", 2));
    CHECK(b2->volume[d3] == P("1/4*(a1+a2)^2", 2));
    CHECK(b2->partition[d1] == Q("1/2*(a1+2)*(a1+1)", 2));
    CHECK(b2->partition[d2] ==
          Q("1/4*a1^2 + 1/2*a1*a2 - 1/4*a2^2 + a1 + 1/2*a2 + 7/8 + 1/8*E(2)^(a1+a2)", 2));
    CHECK(b2->partition[d3] ==
          Q("1/4*a1^2 + 1/2*a1*a2 + 1/4*a2^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)", 2));
    CHECK(b2->verified_jumps == 1);

    auto G = compute_G(b2->complex.config);
    for (std::size_t c = 1; c < b2->volume.size(); ++c)
        CHECK(todd_apply(b2->complex.config.vectors, G, b2->volume[c]) == b2->partition[c]);
}

TEST_CASE("A3 jump and nice chamber")
{
    Solver solver;
    auto a3 = solver.solve(preset("A3"));
    CHECK(a3->volume.size() == 8);
    auto c1 = chamber_at(*a3, {7, -1, -2}), c2 = chamber_at(*a3, {5, -1, 2});
    CHECK(a3->partition[c2] - a3->partition[c1] == Q("1/6*a3*(a3-1)*(2*a3+3*a2+3*a1+5)", 3));
    auto nice = chamber_at(*a3, {9, 5, 2});
    CHECK(a3->partition[nice] == Q("1/6*(a1+2)*(a1+1)*(a1+3*a2+3)", 3));
    for (std::size_t c = 1; c < a3->volume.size(); ++c)
        CHECK(todd_apply(a3->complex.config.vectors, {Shift(3, 0)}, a3->volume[c]) == a3->partition[c]);
}

TEST_CASE("B3 jumps")
{
    Solver solver;
    auto b3 = solver.solve(preset("B3"));
    auto c1 = chamber_at(*b3, {7, -2, -4}), c2 = chamber_at(*b3, {7, -2, 4}),
         c3 = chamber_at(*b3, {4, 1, 2});
    CHECK(b3->volume[c2] - b3->volume[c1] == P("1/1440*a3^4*(30*a1*a2+15*a1^2+15*a2^2+2*a3^2)", 3));
    CHECK(b3->volume[c3] - b3->volume[c2] == P("-1/96*a2^4*(a1^2+2*a1*a3-a3^2)", 3));
    CHECK(b3->partition[c2] - b3->partition[c1] ==
          Q("1/2880*a3*(a3-1)*(a3+2)*(a3+1)*(4*a3^2+4*a3+30*a1^2+60*a2*a1+30*a2^2+441+240*a1+240*a2)"
            " + 1/128*E(2)^(a1+a2) + 1/384*E(2)^(a1+a2+a3)*(2*a3+1)*(2*a3^2+2*a3-3)",
            3));
}

TEST_CASE("wall recursion with a proper sublattice")
{
    // the wall a2 = 0 carries (2, 0) only: index 2 in Gamma0
    auto cfg = validate_config({{2, 0}, {1, 1}, {0, 1}});
    Solver solver;
    auto sol = solver.solve(cfg);
    auto c = chamber_at(*sol, {3, 1});
    // k = number of (x, y, z) with 2x + y = a1, y + z = a2
    for (long a1 = 1; a1 <= 6; ++a1) {
        for (long a2 = 0; a2 < a1; ++a2) {
            long count = 0;
            for (long y = 0; y <= a2; ++y)
                if ((a1 - y) >= 0 && (a1 - y) % 2 == 0)
                    ++count;
            CHECK(sol->partition[c].evaluate({a1, a2}) == count);
        }
    }
}
