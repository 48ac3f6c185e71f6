#pragma once

/*
 * Exact linear algebra over polynomial and rational entries.
 *
 * solve_linear uses fraction-free (Bareiss) elimination: determinants are
 * computed with exact divisions only, and the solution comes out as
 * numerator/denominator pairs with the system determinant as the common
 * denominator. Every solve is re-verified by substitution.
 */

#include <optional>
#include <vector>

#include "csl/poly.hpp"

namespace csl {

struct SingularSystem : NotContact {
    explicit SingularSystem(Poly det)
        : NotContact("linear system is identically singular"), determinant(std::move(det)) {}
    Poly determinant;
};

struct PolyFraction {
    Poly num;
    Poly den{Rational(1)};

    bool is_zero() const { return num.is_zero(); }
    PolyFraction reduced() const;

    PolyFraction operator+(const PolyFraction& o) const;
    PolyFraction operator-(const PolyFraction& o) const;
    PolyFraction operator*(const PolyFraction& o) const;
    friend bool operator==(const PolyFraction& a, const PolyFraction& b) {
        return (a.num * b.den) == (b.num * a.den);
    }
};

using PolyMatrix = std::vector<std::vector<Poly>>;

// Bareiss fraction-free determinant
Poly bareiss_determinant(PolyMatrix m);

// unique solution of the square system M x = b over the fraction field;
// throws SingularSystem when det(M) is identically zero
std::vector<PolyFraction> solve_linear(const PolyMatrix& M, const std::vector<Poly>& b);

// exact rational linear systems: returns a particular solution of A x = b
// with all free variables set to zero (pivot columns are chosen greedily
// left to right, so order columns by preference), or nullopt if inconsistent
using RatMatrix = std::vector<std::vector<Rational>>;
std::optional<std::vector<Rational>> solve_rational(RatMatrix A, std::vector<Rational> b);

struct RationalSolution {
    std::vector<Rational> x;
    std::vector<bool> pivot;  // per column; a non-pivot column means freedom
    bool unique() const {
        for (bool p : pivot)
            if (!p) return false;
        return true;
    }
};
std::optional<RationalSolution> solve_rational_full(RatMatrix A, std::vector<Rational> b);

} // namespace csl
