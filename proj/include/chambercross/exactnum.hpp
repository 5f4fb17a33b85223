#pragma once

// Exact scalars: GMP rationals and elements of cyclotomic fields Q(zeta_M).

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chambercross/errors.hpp"

namespace chambercross {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<long>;
using IntMatrix = std::vector<IntVec>; // row-major
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>; // row-major

/// n/d in canonical form (mpq_class(n, d) does not canonicalize).
Rational ratio(long n, long d);

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

RatVec to_rational(const IntVec& v);
Rational dot(const RatVec& a, const RatVec& b);
Rational dot(const RatVec& a, const IntVec& b);
long dot(const IntVec& a, const IntVec& b);

/// Floor of a rational, as a Rational with denominator 1.
Rational floor(const Rational& q);
/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

unsigned long lcm(unsigned long a, unsigned long b);
unsigned euler_phi(unsigned m);

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
/// Computed once per m and shared; safe under concurrent lookup.
const std::vector<long>& cyclotomic_polynomial(unsigned m);

/// An element of Q(zeta_M) in the power basis 1, zeta, ..., zeta^{phi(M)-1}.
///
/// Values are kept reduced modulo the M-th cyclotomic polynomial. Rational
/// values are always stored at order 1, so `is_rational` is a constant-time
/// check. Binary operations promote both operands to lcm of the orders.
class Cyclotomic {
public:
    Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
    Cyclotomic(const Rational& q) : order_(1), coeffs_{q} {} // NOLINT(implicit)
    Cyclotomic(long v) : order_(1), coeffs_{Rational(v)} {}  // NOLINT(implicit)
    Cyclotomic(int v) : Cyclotomic(static_cast<long>(v)) {}  // NOLINT(implicit)

    /// zeta_M^k = e^{2 i pi k / M}.
    static Cyclotomic root_of_unity(long k, unsigned m);
    /// e^{2 i pi q} for a rational q.
    static Cyclotomic exp_2pi_i(const Rational& q);

    unsigned order() const { return order_; }
    const RatVec& coeffs() const { return coeffs_; }

    bool is_zero() const { return order_ == 1 && coeffs_[0] == 0; }
    bool is_one() const { return order_ == 1 && coeffs_[0] == 1; }
    bool is_rational() const { return order_ == 1; }
    std::optional<Rational> to_rational() const;

    /// The same element written over Q(zeta_m); m must be a multiple of order().
    Cyclotomic promoted(unsigned m) const;

    Cyclotomic inverse() const;
    /// The automorphism zeta -> zeta^k; k must be coprime to order().
    Cyclotomic galois(long k) const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    /// `E(M)^k` combinations, highest power first, e.g. `1/2*E(4)^1 - 3`.
    std::string str() const;

private:
    Cyclotomic(unsigned order, RatVec coeffs);
    static Cyclotomic from_exponents(unsigned order, const RatVec& by_exponent);
    void normalize();

    unsigned order_;
    RatVec coeffs_;
};

Cyclotomic parse_cyclotomic(std::string_view text);

} // namespace chambercross
