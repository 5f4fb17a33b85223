#pragma once

// Sparse multivariate polynomials and quasi-polynomials over Cyclotomic.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chambercross/exactnum.hpp"

namespace chambercross {

inline constexpr std::size_t kMaxVars = 8;
/// Coset tables larger than this are not built for display or checks.
inline constexpr std::size_t kMaxCosets = 4096;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto e : exp)
            d += e;
        return d;
    }
    Monomial operator*(const Monomial& o) const
    {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            m.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
        return m;
    }
    /// Product of exp[i]! over all variables.
    Integer factorial() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, largest first: display and iteration order.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        unsigned da = a.degree(), db = b.degree();
        if (da != db)
            return da > db;
        return a.exp > b.exp;
    }
};

/// A linear form on Q^r, used for pairings, directions and wall normals.
struct LinearForm {
    RatVec coeffs;

    LinearForm() = default;
    explicit LinearForm(RatVec c) : coeffs(std::move(c)) {}
    explicit LinearForm(const IntVec& c) : coeffs(to_rational(c)) {}

    std::size_t rank() const { return coeffs.size(); }
    bool is_zero() const;
    Rational operator()(const RatVec& v) const { return dot(coeffs, v); }
    Rational operator()(const IntVec& v) const { return dot(coeffs, v); }
};

class MultiPoly {
public:
    using Terms = std::map<Monomial, Cyclotomic, GrlexGreater>;

    explicit MultiPoly(std::size_t rank = 0);
    MultiPoly(std::size_t rank, const Cyclotomic& constant);

    static MultiPoly variable(std::size_t rank, std::size_t index);
    /// sum_i c_i a_i (+ constant)
    static MultiPoly linear(const RatVec& coeffs, const Rational& constant = 0);
    static MultiPoly monomial(std::size_t rank, const Monomial& m, const Cyclotomic& c = 1);

    std::size_t rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    bool is_rational() const;
    MultiPoly homogeneous_part(unsigned d) const;
    Cyclotomic coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Cyclotomic& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Cyclotomic& c);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Cyclotomic& c) { return a *= c; }
    friend MultiPoly operator*(const Cyclotomic& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly pow(unsigned n) const;

    /// Exact substitution; throws ValidationError on rank mismatch.
    Cyclotomic evaluate(const RatVec& point) const;
    Cyclotomic evaluate(const IntVec& point) const { return evaluate(to_rational(point)); }

    MultiPoly partial(std::size_t i) const;
    /// Coefficientwise Galois conjugation zeta -> zeta^k.
    MultiPoly galois(long k) const;
    /// lcm of the coefficient field orders.
    unsigned long field_order() const;

    /// p(images[0], ..., images[r-1]); all images share one rank.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const;
    /// p(L b) where L has rank() rows of length new_rank.
    MultiPoly compose(const RatMatrix& map, std::size_t new_rank) const;
    /// p(a - gamma).
    MultiPoly translate(const RatVec& gamma) const;
    /// Same polynomial viewed in more variables (new ones unused).
    MultiPoly with_rank(std::size_t new_rank) const;

    std::string str(std::string_view var = "a") const;

private:
    std::size_t rank_;
    Terms terms_;
};

/// Applies the constant-coefficient operator op(d/da) to target.
MultiPoly diff_apply(const MultiPoly& op, const MultiPoly& target);
/// d(v) = sum_i v_i d/da_i.
MultiPoly directional_derivative(const RatVec& direction, const MultiPoly& p);
/// f(a) - f(a - gamma).
MultiPoly difference_apply(const RatVec& gamma, const MultiPoly& p);

/// Character exponent y in Q^r / Z^r, entries canonical in [0, 1).
using Shift = RatVec;
Shift reduce_shift(const RatVec& y);
bool is_zero_shift(const Shift& y);
/// lcm of the denominators of y.
unsigned long shift_order(const Shift& y);

/// e^{2 i pi <y, a>} at an integral point.
Cyclotomic character_value(const Shift& y, const IntVec& a);

struct CosetPolynomial {
    IntVec representative; // entries in [0, period)
    MultiPoly poly;
};

/// sum_y e^{2 i pi <y, a>} P_y(a); the shift (character) form is canonical.
class QuasiPoly {
public:
    using Terms = std::map<Shift, MultiPoly>;

    explicit QuasiPoly(std::size_t rank = 0);
    explicit QuasiPoly(const MultiPoly& p);

    static QuasiPoly character(const Shift& y);
    /// Built from cosets h + M Z^r; inverse of cosets().
    static QuasiPoly from_cosets(std::size_t rank, unsigned period,
                                 const std::vector<CosetPolynomial>& cosets);

    std::size_t rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_polynomial() const;
    /// lcm of the shift denominators; 1 for a polynomial.
    unsigned period() const;
    int degree() const;
    /// P_0; zero when absent.
    MultiPoly polynomial_part() const;

    void add_term(const Shift& y, const MultiPoly& p);

    QuasiPoly& operator+=(const QuasiPoly& o);
    QuasiPoly& operator-=(const QuasiPoly& o);
    QuasiPoly& operator*=(const Cyclotomic& c);
    QuasiPoly operator-() const;
    friend QuasiPoly operator+(QuasiPoly a, const QuasiPoly& b) { return a += b; }
    friend QuasiPoly operator-(QuasiPoly a, const QuasiPoly& b) { return a -= b; }
    friend QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b);
    friend QuasiPoly operator*(QuasiPoly a, const Cyclotomic& c) { return a *= c; }
    friend bool operator==(const QuasiPoly& a, const QuasiPoly& b) = default;

    Cyclotomic evaluate_exact(const IntVec& a) const;
    /// Throws InternalError when the value is not rational.
    Rational evaluate(const IntVec& a) const;

    /// K(a - gamma) for integral gamma.
    QuasiPoly translate(const IntVec& gamma) const;
    /// K(L b) for a rational matrix L (rank() rows, new_rank columns):
    /// each shift y becomes L^T y.
    QuasiPoly compose(const RatMatrix& map, std::size_t new_rank) const;

    /// One polynomial per coset of Z^r / M Z^r, M = period().
    std::vector<CosetPolynomial> cosets() const;
    /// period^rank, saturating at SIZE_MAX.
    std::size_t coset_count() const;

    /// Terms `E(M)^(n1*a1 + ...)*(P)`; re-parses with parse_quasi.
    std::string str(std::string_view var = "a") const;
    /// One line per coset: `a = (h1,...) mod M: P`.
    std::string coset_str(std::string_view var = "a") const;

private:
    std::size_t rank_;
    Terms terms_;
};

QuasiPoly difference_apply(const IntVec& gamma, const QuasiPoly& k);

/// Parses the output of MultiPoly::str / QuasiPoly::str (and ordinary
/// arithmetic expressions in a1..ar, rationals, E(M), E(M)^k, E(M)^(linear)).
QuasiPoly parse_quasi(std::string_view text, std::size_t rank, std::string_view var = "a");
MultiPoly parse_poly(std::string_view text, std::size_t rank, std::string_view var = "a");

} // namespace chambercross
