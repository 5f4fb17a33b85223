#include <doctest.h>

#include "chambercross/jets.hpp"

using namespace chambercross;

namespace {

Cyclotomic at(const FactorJet& j, int e, const Monomial& m = {})
{
    const Cyclotomic* c = j.find(e, m);
    return c ? *c : Cyclotomic();
}

Monomial x(std::size_t i, std::uint16_t k = 1)
{
    Monomial m;
    m.exp[i] = k;
    return m;
}

} // namespace

TEST_CASE("todd series")
{
    auto t = todd_series(6);
    CHECK(t[0] == 1);
    CHECK(t[1] == ratio(1, 2));
    CHECK(t[2] == ratio(1, 12));
    CHECK(t[3] == 0);
    CHECK(t[4] == ratio(-1, 720));
    CHECK(t[5] == 0);
    CHECK(t[6] == ratio(1, 30240));
}

TEST_CASE("geometric series at zeta = -1 is the logistic function")
{
    auto b = geometric_series(Cyclotomic(-1), 3);
    CHECK(b[0] == Cyclotomic(ratio(1, 2)));
    CHECK(b[1] == Cyclotomic(ratio(1, 4)));
    CHECK(b[2] == Cyclotomic(0));
    CHECK(b[3] == Cyclotomic(ratio(-1, 48)));
    CHECK_THROWS_AS(geometric_series(Cyclotomic(1), 2), MathError);
}

TEST_CASE("geometric series times its denominator is one")
{
    auto zeta = Cyclotomic::root_of_unity(1, 5);
    unsigned n = 6;
    auto b = geometric_series(zeta, n);
    // (1 - zeta e^{-t}) * sum b_k t^k
    std::vector<Cyclotomic> f(n + 1);
    Rational fact = 1;
    for (unsigned k = 0; k <= n; ++k) {
        if (k > 0)
            fact *= k;
        Rational v = Rational(1) / fact;
        f[k] = (k == 0 ? Cyclotomic(1) : Cyclotomic(0)) - zeta * Cyclotomic(k % 2 ? Rational(-v) : v);
    }
    for (unsigned m = 0; m <= n; ++m) {
        Cyclotomic s;
        for (unsigned k = 0; k <= m; ++k)
            s += f[k] * b[m - k];
        CHECK(s == Cyclotomic(m == 0 ? 1 : 0));
    }
}

TEST_CASE("exponential jet")
{
    auto j = jet_exp_linear({1, 0}, 1, 2);
    auto a1 = MultiPoly::variable(2, 0);
    auto a2 = MultiPoly::variable(2, 1);
    REQUIRE(j.find(2, {}) != nullptr);
    CHECK(*j.find(2, {}) == a1 * a1 * Cyclotomic(ratio(1, 2)));
    CHECK(*j.find(1, x(1)) == a1 * a2);
    CHECK(*j.find(0, x(0)) == a1);
    CHECK(j.find(2, x(0)) == nullptr);
}

TEST_CASE("inverse linear factor")
{
    auto j = jet_inverse_linear({0, 1}, {0, 1}, 1);
    CHECK(at(j, -1) == Cyclotomic(1));
    CHECK(at(j, -2, x(1)) == Cyclotomic(-1));
    CHECK(j.pole() == 1);
    auto h = jet_inverse_linear({2, 0}, {1, 0}, 0);
    CHECK(at(h, -1) == Cyclotomic(ratio(1, 2)));
    CHECK_THROWS_AS(jet_inverse_linear({0, 1}, {1, 0}, 1), MathError);

    // three factors of the B2 exterior wall: constant part z^-3
    FactorJet p(2, 0, 0, kExactForever);
    p.add(0, {}, 1);
    for (RatVec psi : {RatVec{1, 0}, RatVec{1, 1}, RatVec{1, -1}})
        p = p * jet_inverse_linear(psi, {1, 0}, 0);
    CHECK(p.coeffs().size() == 1);
    CHECK(at(p, -3) == Cyclotomic(1));
}

TEST_CASE("geometric factor")
{
    auto j = jet_geometric_factor(1, {1}, {1}, 0, 4);
    CHECK(at(j, -1) == Cyclotomic(1));
    CHECK(at(j, 0) == Cyclotomic(ratio(1, 2)));
    CHECK(at(j, 1) == Cyclotomic(ratio(1, 12)));
    CHECK(at(j, 2) == Cyclotomic(0));
    CHECK(at(j, 3) == Cyclotomic(ratio(-1, 720)));
    auto k = jet_geometric_factor(1, {3}, {1}, 0, 2);
    CHECK(at(k, -1) == Cyclotomic(ratio(1, 3)));
    auto m = jet_geometric_factor(-1, {1}, {1}, 0, 2);
    CHECK(m.pole() == 0);
    CHECK(at(m, 0) == Cyclotomic(ratio(1, 2)));
    CHECK(at(m, 1) == Cyclotomic(ratio(1, 4)));
}

TEST_CASE("residues")
{
    auto a1 = MultiPoly::variable(2, 0);
    RatVec E{1, 0};
    std::vector<ResidueFactor> b2;
    for (RatVec psi : {RatVec{1, 0}, RatVec{1, 1}, RatVec{1, -1}})
        b2.push_back({psi, true, 1});
    CHECK(residue(MultiPoly(2, 1), b2, E, true) == a1 * a1 * Cyclotomic(ratio(1, 2)));
    CHECK(residue(MultiPoly(2, 1), {{{1, 0}, true, 1}}, E) == MultiPoly(2, 1));

    // P = x2 against 1/(z + x2): coefficient of x2 z^-1 is zero
    FactorJet f = jet_inverse_linear({0, 1}, {0, 1}, 1);
    NumeratorJet one(2, 1, 0, kExactForever);
    one.add(0, {}, MultiPoly(2, 1));
    CHECK(residue_apply(MultiPoly::variable(2, 1), {f}, one).is_zero());

    // A2 exterior jump: Par(1, {(1,-1), (1,0)}, e1) = 1 + a1
    std::vector<ResidueFactor> a2{{{1, -1}, false, 1}, {{1, 0}, false, 1}};
    CHECK(residue(MultiPoly(2, 1), a2, E, true) == a1 + MultiPoly(2, 1));
}

TEST_CASE("residue depends only on the restriction to the wall")
{
    // P and P + E * Q give the same residue
    RatVec E{1, -1};
    std::vector<ResidueFactor> psi{{{1, 0}, false, 1}, {{1, -1}, false, 1}, {{0, 1}, false, 1}};
    auto P = parse_poly("a1*a2 + 3*a2^2 - 1", 2);
    auto Q = parse_poly("(a1 - a2)*(a1 + 5*a2)", 2);
    CHECK(residue(P, psi, E, true) == residue(P + Q, psi, E, true));
}
