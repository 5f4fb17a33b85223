#pragma once

// Integer lattice tools (Hermite and Smith forms, unimodular frames) and exact
// Fourier-Motzkin feasibility.

#include <optional>
#include <vector>

#include "chambercross/exactnum.hpp"

namespace chambercross {

/// Narrowing with an overflow check.
long to_long(const Integer& v);
long to_long(const Rational& v);

Integer det(const IntMatrix& m);
Rational det(const RatMatrix& m);
std::size_t rank(const IntMatrix& rows);
/// Throws MathError when singular.
RatMatrix inverse(const RatMatrix& m);
RatMatrix to_rational(const IntMatrix& m);
RatMatrix transpose(const RatMatrix& m);
IntMatrix transpose(const IntMatrix& m);
RatVec mat_vec(const RatMatrix& m, const RatVec& v);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);

/// Primitive integer multiple of a rational vector (sign preserved).
IntVec primitive(const RatVec& v);
long content(const IntVec& v);

/// Basis rows of the Z-span of `rows`, in Hermite normal form.
IntMatrix hermite_basis(const IntMatrix& rows);

/// Smith form of a square nonsingular S: U S V = diag(d), d_i | d_{i+1},
/// U and V unimodular.
struct SmithForm {
    IntMatrix U, V;
    IntVec diagonal;
};
SmithForm smith_form(const IntMatrix& s);

/// Shifts y in Q^k / Z^k with <y, s> integral for every row s of S.
/// There are |det S| of them, zero first.
std::vector<RatVec> dual_quotient(const IntMatrix& s);

/// Unimodular U with E U = (1, 0, ..., 0) for a primitive E. Column 0 is
/// F with <E, F> = 1; the remaining columns span Z^r cap E^perp.
IntMatrix unimodular_completion(const IntVec& E);

/// Integer normal to r - 1 vectors in Z^r (cofactor vector; zero when they
/// are dependent). Not reduced.
IntVec cofactor_normal(const IntMatrix& rows, std::size_t r);

/// c . x >= b  or  c . x = b.
struct LinearConstraint {
    RatVec coeffs;
    Rational bound;
};

/// A point satisfying every inequality (>=) and equality, or nothing.
/// Back-substitution takes the midpoint of each bounded range.
std::optional<RatVec> fm_feasible(std::size_t nvars, const std::vector<LinearConstraint>& ineqs,
                                  const std::vector<LinearConstraint>& eqs = {});

} // namespace chambercross
