#pragma once

/*
 * Sparse multivariate polynomials over the exact rationals.
 *
 * A Monomial maps variable ids to positive exponents (stored as a sorted
 * sparse vector); a Poly maps monomials to nonzero rational coefficients.
 * Monomials compare by total degree first, then lexicographically on the
 * exponent vector, so Poly's term map is ordered by a genuine monomial
 * order and the leading term is the last entry.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csl/rational.hpp"

namespace csl {

using VarId = int;

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<VarId, int>> exps);
    static Monomial var(VarId v, int exp = 1);

    bool is_one() const { return e_.empty(); }
    int degree() const;
    int degree_in(VarId v) const;
    const std::vector<std::pair<VarId, int>>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divide(const Monomial& o) const;  // o / *this, caller checks divides
    Monomial erase_var(VarId v) const;

    // graded lexicographic order (x0 > x1 > ...)
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string str(const std::vector<std::string>& names) const;

private:
    std::vector<std::pair<VarId, int>> e_;
};

class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(int c) : Poly(Rational(c)) {}
    static Poly var(VarId v, int exp = 1);
    static Poly term(const Rational& c, const Monomial& m);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    Rational constant_value() const;  // requires is_constant
    Rational constant_term() const;
    const TermMap& terms() const { return t_; }
    int total_degree() const;
    int degree_in(VarId v) const;
    std::vector<VarId> variables() const;
    std::optional<VarId> single_variable() const;  // set if poly uses exactly one variable

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const { Poly r(*this); return r += o; }
    Poly operator-(const Poly& o) const { Poly r(*this); return r -= o; }
    Poly operator*(const Poly& o) const;
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly scale(const Rational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) { return a.t_ < b.t_; }

    Rational eval(const std::map<VarId, Rational>& point) const;
    Poly eval_partial(const std::map<VarId, Rational>& point) const;
    Poly substitute(VarId v, const Poly& replacement) const;
    Poly derivative(VarId v) const;

    // leading term w.r.t. the monomial order; poly must be nonzero
    std::pair<Monomial, Rational> leading() const;
    // exact division; nullopt when o does not divide *this
    std::optional<Poly> divide_exact(const Poly& divisor) const;
    // gcd of coefficients (positive), 0 for the zero poly
    Rational content() const;
    // gcd of all monomials
    Monomial monomial_gcd() const;

    void add_term(const Monomial& m, const Rational& c);  // merges, drops zeros

    std::string str(const std::vector<std::string>& names) const;

private:
    TermMap t_;
};

// dense univariate view, coefficients ascending by degree
std::vector<Rational> to_univariate(const Poly& p, VarId v);
Poly from_univariate(const std::vector<Rational>& coeffs, VarId v);

} // namespace csl
