#pragma once

/*
 * Exact sign analysis of a univariate rational polynomial on an interval,
 * via Sturm sequences. HasZero verdicts carry an isolating interval of
 * width <= 2^-30 * (hi - lo) whose zero content is certified either by an
 * exact endpoint zero or by a Sturm variation count >= 1 together with the
 * exactly evaluated endpoint signs.
 */

#include <string>
#include <vector>

#include "csl/poly.hpp"

namespace csl {

enum class SturmVerdict { StrictlyPositive, StrictlyNegative, HasZero };

struct SturmResult {
    SturmVerdict verdict;
    // only for HasZero
    Rational lo, hi;          // isolating interval, possibly degenerate
    Rational value_lo, value_hi;  // exact values of p at the endpoints
    int root_count = 0;       // distinct roots of p in the queried interval
    std::string note;

    bool is_strict_sign() const { return verdict != SturmVerdict::HasZero; }
    int sign() const { return verdict == SturmVerdict::StrictlyPositive ? 1 : -1; }
};

// p given as dense coefficients, ascending degree; throws ZeroPolynomial
SturmResult sturm_sign_on_interval(const std::vector<Rational>& p, const Rational& lo, const Rational& hi);
SturmResult sturm_sign_on_interval(const Poly& p, VarId v, const Rational& lo, const Rational& hi);

// number of distinct real roots in (lo, hi]
int sturm_root_count(const std::vector<Rational>& p, const Rational& lo, const Rational& hi);

Rational eval_univariate(const std::vector<Rational>& p, const Rational& x);

} // namespace csl
