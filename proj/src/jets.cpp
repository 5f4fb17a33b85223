#include "chambercross/jets.hpp"

#include <algorithm>

namespace chambercross {

namespace {

using LinearPowers = std::vector<std::map<Monomial, Rational, GrlexGreater>>;

// powers[j] = <psi, x>^j for j <= order.
LinearPowers linear_powers(const RatVec& psi, unsigned order)
{
    LinearPowers powers(order + 1);
    powers[0][Monomial{}] = 1;
    for (unsigned j = 1; j <= order; ++j) {
        for (const auto& [m, c] : powers[j - 1]) {
            for (std::size_t i = 0; i < psi.size(); ++i) {
                if (psi[i] == 0)
                    continue;
                Monomial n = m;
                ++n.exp[i];
                powers[j][n] += c * psi[i];
            }
        }
        std::erase_if(powers[j], [](const auto& t) { return t.second == 0; });
    }
    return powers;
}

Rational pairing_with_wall(const RatVec& psi, const RatVec& E)
{
    if (psi.size() != E.size())
        throw ValidationError("vector and wall normal have different ranks");
    Rational d = dot(psi, E);
    if (d == 0)
        throw MathError("vector lies in the wall: <psi, E> = 0");
    return d;
}

// Adds c * t^n, t = d z + <psi, x>, to the jet.
void add_power(FactorJet& jet, const Cyclotomic& c, unsigned n, const Rational& d,
               const LinearPowers& lp)
{
    if (c.is_zero())
        return;
    Integer binom = 1;
    for (unsigned j = 0; j <= n && j < lp.size(); ++j) {
        if (j > 0) {
            binom *= n - j + 1;
            binom /= j;
        }
        Rational dpow = 1;
        for (unsigned k = 0; k < n - j; ++k)
            dpow *= d;
        Cyclotomic scale = c * Cyclotomic(Rational(binom) * dpow);
        for (const auto& [m, coef] : lp[j])
            jet.add(static_cast<int>(n - j), m, scale * Cyclotomic(coef));
    }
}

Integer factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace

std::vector<Rational> todd_series(unsigned n)
{
    // (1 - e^{-z}) / z = sum_k (-1)^k z^k / (k+1)!
    std::vector<Rational> f(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        Rational v(1);
        v /= Rational(factorial(k + 1));
        f[k] = (k % 2) ? Rational(-v) : v;
    }
    std::vector<Rational> t(n + 1);
    t[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        Rational s = 0;
        for (unsigned k = 1; k <= m; ++k)
            s += f[k] * t[m - k];
        t[m] = -s;
    }
    return t;
}

std::vector<Cyclotomic> geometric_series(const Cyclotomic& zeta, unsigned n)
{
    if (zeta.is_one())
        throw MathError("geometric series needs zeta != 1");
    // 1 - zeta e^{-t} = (1 - zeta) - zeta sum_{k>=1} (-t)^k / k!
    std::vector<Cyclotomic> f(n + 1);
    f[0] = Cyclotomic(1) - zeta;
    for (unsigned k = 1; k <= n; ++k) {
        Rational v(1);
        v /= Rational(factorial(k));
        f[k] = zeta * Cyclotomic(k % 2 ? v : Rational(-v));
    }
    Cyclotomic inv0 = f[0].inverse();
    std::vector<Cyclotomic> b(n + 1);
    b[0] = inv0;
    for (unsigned m = 1; m <= n; ++m) {
        Cyclotomic s;
        for (unsigned k = 1; k <= m; ++k)
            s += f[k] * b[m - k];
        b[m] = -(inv0 * s);
    }
    return b;
}

NumeratorJet jet_exp_linear(const RatVec& E, unsigned order, int exact_limit)
{
    std::size_t r = E.size();
    NumeratorJet jet(r, order, 0, exact_limit);
    MultiPoly aE = MultiPoly::linear(E);
    // x-part: a^m / m! for |m| <= order, enumerated degree by degree.
    std::vector<std::pair<Monomial, MultiPoly>> xpart{{Monomial{}, MultiPoly(r, 1)}};
    std::vector<std::pair<Monomial, MultiPoly>> frontier = xpart;
    for (unsigned deg = 1; deg <= order; ++deg) {
        std::map<Monomial, MultiPoly, GrlexGreater> next;
        for (const auto& [m, p] : frontier) {
            // extend only at or after the last used variable to avoid duplicates
            std::size_t last = 0;
            for (std::size_t i = 0; i < r; ++i)
                if (m.exp[i] > 0)
                    last = i;
            for (std::size_t i = last; i < r; ++i) {
                Monomial n = m;
                ++n.exp[i];
                Rational inv(1);
                inv /= n.exp[i];
                next.emplace(n, p * MultiPoly::variable(r, i) * Cyclotomic(inv));
            }
        }
        frontier.assign(next.begin(), next.end());
        xpart.insert(xpart.end(), frontier.begin(), frontier.end());
    }
    MultiPoly zpow(r, 1);
    for (int j = 0; j <= exact_limit; ++j) {
        if (j > 0)
            zpow = zpow * aE * Cyclotomic(Rational(1, 1) / j);
        for (const auto& [m, p] : xpart)
            if (j + static_cast<int>(m.degree()) <= exact_limit)
                jet.add(j, m, zpow * p);
    }
    return jet;
}

FactorJet jet_inverse_linear(const RatVec& psi, const RatVec& E, unsigned order)
{
    Rational d = pairing_with_wall(psi, E);
    FactorJet jet(psi.size(), order, 1, kExactForever);
    auto lp = linear_powers(psi, order);
    // 1/(dz + l) = sum_k (-l)^k / (dz)^{k+1}
    Rational dk = d;
    for (unsigned k = 0; k <= order; ++k) {
        Rational scale = (k % 2 ? Rational(-1) : Rational(1)) / dk;
        for (const auto& [m, c] : lp[k])
            jet.add(-static_cast<int>(k) - 1, m, Cyclotomic(c * scale));
        dk *= d;
    }
    return jet;
}

FactorJet jet_geometric_factor(const Cyclotomic& zeta, const RatVec& psi, const RatVec& E,
                               unsigned order, int exact_limit)
{
    Rational d = pairing_with_wall(psi, E);
    auto lp = linear_powers(psi, order);
    if (zeta.is_one()) {
        // (1/t) Todd(t) = 1/t + sum_{n>=1} t_n t^{n-1}
        FactorJet jet = jet_inverse_linear(psi, E, order);
        FactorJet out(psi.size(), order, 1, exact_limit);
        for (const auto& [e, s] : jet.coeffs())
            for (const auto& [m, c] : s)
                out.add(e, m, c);
        if (exact_limit >= 0) {
            auto t = todd_series(static_cast<unsigned>(exact_limit) + 1);
            for (unsigned n = 1; n < t.size(); ++n)
                add_power(out, t[n], n - 1, d, lp);
        }
        return out;
    }
    FactorJet out(psi.size(), order, 0, exact_limit);
    if (exact_limit >= 0) {
        auto b = geometric_series(zeta, static_cast<unsigned>(exact_limit));
        for (unsigned n = 0; n < b.size(); ++n)
            add_power(out, b[n], n, d, lp);
    }
    return out;
}

MultiPoly residue_apply(const MultiPoly& P, const std::vector<FactorJet>& factors,
                        const NumeratorJet& numerator)
{
    std::size_t r = numerator.rank();
    if (P.rank() != r)
        throw ValidationError("operator rank differs from jet rank");
    if (P.is_zero())
        return MultiPoly(r);
    int D = P.degree();

    FactorJet F(r, numerator.order(), 0, kExactForever);
    F.add(0, Monomial{}, 1);
    for (const auto& f : factors)
        F = F * f;

    if (F.order() < static_cast<unsigned>(D) || numerator.order() < static_cast<unsigned>(D) ||
        F.exact_limit() < D - 1 || numerator.exact_limit() < D - 1 + F.pole())
        throw InternalError("residue truncation insufficient for an operator of degree " +
                            std::to_string(D));

    MultiPoly out(r);
    for (const auto& [m, Pm] : P.terms()) {
        MultiPoly acc(r);
        for (const auto& [e1, s1] : F.coeffs()) {
            for (const auto& [m1, c1] : s1) {
                Monomial rest;
                bool fits = true;
                for (std::size_t i = 0; i < kMaxVars; ++i) {
                    if (m1.exp[i] > m.exp[i]) {
                        fits = false;
                        break;
                    }
                    rest.exp[i] = static_cast<std::uint16_t>(m.exp[i] - m1.exp[i]);
                }
                if (!fits)
                    continue;
                if (const MultiPoly* n = numerator.find(-1 - e1, rest))
                    acc += *n * c1;
            }
        }
        out += acc * (Pm * Cyclotomic(Rational(m.factorial())));
    }
    return out;
}

namespace {

MultiPoly residue_at(const MultiPoly& P, const std::vector<ResidueFactor>& factors,
                     const RatVec& E, unsigned order, int exact)
{
    std::vector<FactorJet> jets;
    jets.reserve(factors.size());
    for (const auto& f : factors) {
        if (f.linear)
            jets.push_back(jet_inverse_linear(f.psi, E, order));
        else
            jets.push_back(jet_geometric_factor(f.zeta, f.psi, E, order, exact));
    }
    return residue_apply(P, jets, jet_exp_linear(E, order, exact));
}

} // namespace

MultiPoly residue(const MultiPoly& P, const std::vector<ResidueFactor>& factors,
                  const RatVec& E, bool recheck)
{
    if (P.rank() != E.size())
        throw ValidationError("operator rank differs from wall normal rank");
    if (P.is_zero())
        return MultiPoly(E.size());
    unsigned order = static_cast<unsigned>(P.degree());
    int exact = static_cast<int>(factors.size()) + P.degree();
    MultiPoly out = residue_at(P, factors, E, order, exact);
    if (recheck && residue_at(P, factors, E, order + 1, exact + 1) != out)
        throw InternalError("residue changed when the truncation was raised");
    return out;
}

} // namespace chambercross
