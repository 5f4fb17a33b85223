#pragma once

// Residue engine: Laurent series in z whose coefficients are truncated jets
// in x = (x1..xr).
//
// Every series handled here is graded by the weight e + |m| of the term
// z^e x^m, since t = d z + <psi, x> has weight 1. A LaurentJet records
//   pole        : no term has weight below -pole,
//   exact_limit : every term of weight <= exact_limit is exact,
//   order       : x-degree truncation.
// Products add poles and lose exactness by the partner's pole.

#include <climits>
#include <map>
#include <vector>

#include "chambercross/polyalg.hpp"

namespace chambercross {

inline constexpr int kExactForever = INT_MAX / 4;

template <class C>
using JetSeries = std::map<Monomial, C, GrlexGreater>;

template <class C>
class LaurentJet {
public:
    LaurentJet(std::size_t rank, unsigned order, int pole, int exact_limit)
        : rank_(rank), order_(order), pole_(pole), exact_(exact_limit)
    {
    }

    std::size_t rank() const { return rank_; }
    unsigned order() const { return order_; }
    int pole() const { return pole_; }
    int exact_limit() const { return exact_; }
    const std::map<int, JetSeries<C>>& coeffs() const { return coeffs_; }

    /// Lowest and highest stored z-exponent (0, -1 when empty).
    int lower() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    int upper() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    const C* find(int e, const Monomial& m) const
    {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end())
            return nullptr;
        auto jt = it->second.find(m);
        return jt == it->second.end() ? nullptr : &jt->second;
    }

    void add(int e, const Monomial& m, const C& c)
    {
        if (c.is_zero() || m.degree() > order_ || e + static_cast<int>(m.degree()) > exact_)
            return;
        auto& series = coeffs_[e];
        auto [it, inserted] = series.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                series.erase(it);
                if (series.empty())
                    coeffs_.erase(e);
            }
        }
    }

    friend LaurentJet operator*(const LaurentJet& a, const LaurentJet& b)
    {
        int exact = std::min(a.exact_ - b.pole_, b.exact_ - a.pole_);
        exact = std::min(exact, kExactForever);
        LaurentJet r(a.rank_, std::min(a.order_, b.order_), a.pole_ + b.pole_, exact);
        for (const auto& [ea, sa] : a.coeffs_) {
            for (const auto& [ma, ca] : sa) {
                int wa = ea + static_cast<int>(ma.degree());
                for (const auto& [eb, sb] : b.coeffs_) {
                    for (const auto& [mb, cb] : sb) {
                        if (ma.degree() + mb.degree() > r.order_)
                            continue;
                        if (wa + eb + static_cast<int>(mb.degree()) > exact)
                            continue;
                        r.add(ea + eb, ma * mb, ca * cb);
                    }
                }
            }
        }
        return r;
    }

private:
    std::size_t rank_;
    unsigned order_;
    int pole_;
    int exact_;
    std::map<int, JetSeries<C>> coeffs_;
};

using FactorJet = LaurentJet<Cyclotomic>;
using NumeratorJet = LaurentJet<MultiPoly>;

/// t_0..t_n of z / (1 - e^{-z}).
std::vector<Rational> todd_series(unsigned n);
/// b_0..b_n of 1 / (1 - zeta e^{-t}), zeta != 1.
std::vector<Cyclotomic> geometric_series(const Cyclotomic& zeta, unsigned n);

/// e^{<a, x>} e^{<a, E> z}, coefficients polynomials in a.
NumeratorJet jet_exp_linear(const RatVec& E, unsigned order, int exact_limit);
/// 1 / (d z + <psi, x>) with d = <psi, E>.
FactorJet jet_inverse_linear(const RatVec& psi, const RatVec& E, unsigned order);
/// 1 / (1 - zeta e^{-t}), t = d z + <psi, x>.
FactorJet jet_geometric_factor(const Cyclotomic& zeta, const RatVec& psi, const RatVec& E,
                               unsigned order, int exact_limit);

/// sum_m P_m m! [x^m z^-1] (numerator * prod factors).
/// Throws InternalError when the truncation cannot support the result.
MultiPoly residue_apply(const MultiPoly& P, const std::vector<FactorJet>& factors,
                        const NumeratorJet& numerator);

/// One denominator factor of a residue functional.
struct ResidueFactor {
    RatVec psi;
    bool linear = false; // <psi, x + zE> instead of 1 - zeta e^{-<psi, x + zE>}
    Cyclotomic zeta = 1;
};

/// Res_{z=0} (P(d_x) e^{<a, x + zE>} / prod factors)|_{x=0} with the default
/// truncation (order deg P, exact limit |factors| + deg P). With
/// `recheck`, recomputes at order + 1 and limit + 1 and throws InternalError
/// on any difference.
MultiPoly residue(const MultiPoly& P, const std::vector<ResidueFactor>& factors,
                  const RatVec& E, bool recheck = false);

} // namespace chambercross
