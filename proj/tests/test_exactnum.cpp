#include <doctest.h>

#include "chambercross/exactnum.hpp"

using namespace chambercross;

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    for (unsigned m = 1; m <= 30; ++m)
        CHECK(cyclotomic_polynomial(m).size() == euler_phi(m) + 1);
}

TEST_CASE("rational helpers")
{
    CHECK(floor(ratio(-7, 2)) == -4);
    CHECK(frac(ratio(-7, 2)) == ratio(1, 2));
    CHECK(frac(Rational(5)) == 0);
    CHECK(lcm(4, 6) == 12);
    CHECK(parse_rational("-3/6") == ratio(-1, 2));
    CHECK(to_string(ratio(4, 2)) == "2");
}

TEST_CASE("roots of unity")
{
    auto z = Cyclotomic::root_of_unity(1, 5);
    Cyclotomic sum;
    for (long k = 0; k < 5; ++k)
        sum += Cyclotomic::root_of_unity(k, 5);
    CHECK(sum.is_zero());
    Cyclotomic p = 1;
    for (int i = 0; i < 5; ++i)
        p *= z;
    CHECK(p.is_one());
    CHECK(Cyclotomic::root_of_unity(2, 4) == Cyclotomic(-1));
    CHECK(Cyclotomic::root_of_unity(3, 6).is_rational());
    CHECK(Cyclotomic::exp_2pi_i(ratio(7, 2)) == Cyclotomic(-1));
}

TEST_CASE("mixed orders and inverse")
{
    auto i = Cyclotomic::root_of_unity(1, 4);
    auto w = Cyclotomic::root_of_unity(1, 3);
    auto x = i + w;
    CHECK(x.order() == 12);
    CHECK((x - w) == i);
    auto inv = x.inverse();
    CHECK((inv * x).is_one());
    CHECK_THROWS_AS(Cyclotomic().inverse(), DivisionByZero);
    // 1 - zeta_3 has norm 3
    auto a = Cyclotomic(1) - w;
    auto b = Cyclotomic(1) - w * w;
    CHECK(a * b == Cyclotomic(3));
}

TEST_CASE("galois conjugation")
{
    auto z = Cyclotomic::root_of_unity(1, 12);
    CHECK(z.galois(5) == Cyclotomic::root_of_unity(5, 12));
    CHECK(z.galois(-1) == Cyclotomic::root_of_unity(11, 12));
    auto x = z * z + Cyclotomic(Rational(1, 3)) * z;
    CHECK((x * x.inverse()).galois(7).is_one());
    CHECK(x.galois(7) * z.galois(7) == (x * z).galois(7));
    // the sum over all conjugates is rational
    Cyclotomic trace;
    for (long k : {1, 5, 7, 11})
        trace += z.galois(k);
    CHECK(trace == Cyclotomic(0));
    CHECK(Cyclotomic(Rational(2, 3)).galois(5) == Cyclotomic(Rational(2, 3)));
    CHECK_THROWS_AS(z.galois(4), MathError);
}

TEST_CASE("string round trip")
{
    auto x = Cyclotomic::root_of_unity(1, 8) * Cyclotomic(ratio(1, 2)) - Cyclotomic(3);
    CHECK(parse_cyclotomic(x.str()) == x);
    CHECK(Cyclotomic(ratio(-2, 3)).str() == "-2/3");
}
