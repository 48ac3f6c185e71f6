#pragma once

/*
 * Auditable verdicts for nonvanishing claims. A certificate is exact proof
 * (nonzero constant, or a sign bound), exact refutation (a rational point on
 * the relation variety that zeroes the quantity, or an exact sign-change
 * interval), or an honest NumericUnrefuted that claims nothing.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csl/chart.hpp"

namespace csl {

enum class CertStatus { CertifiedConstant, CertifiedSign, Refuted, NumericUnrefuted };

struct IntervalWitness {
    Rational lo, hi;            // exact rational endpoints
    Rational value_lo, value_hi;  // exact values, opposite signs unless an endpoint is a zero
    std::string variable;       // what the interval parametrizes
};

struct Certificate {
    CertStatus status = CertStatus::NumericUnrefuted;
    Rational constant_value;  // CertifiedConstant
    int sign = 0;             // CertifiedSign
    bool conditional = false;  // rests on an assumed, unverified hint
    std::string method;

    // coefficient-bound data: |noise sum| < |constant part|
    Rational bound_constant, bound_noise;

    std::map<VarId, Rational> witness_point;
    std::optional<IntervalWitness> witness_interval;

    unsigned long long samples = 0;
    Rational min_abs;

    std::vector<std::string> trace;

    bool certified() const {
        return (status == CertStatus::CertifiedConstant || status == CertStatus::CertifiedSign) && !conditional;
    }
    std::string status_str() const;
};

// |auxiliary| <= bound claim used by the sign-certificate ladder
struct BoundHint {
    Poly auxiliary;
    Rational lo = Rational(-1), hi = Rational(1);
    bool assumed = false;  // user vouches; certificate becomes conditional
    std::string name = "u";
    bool verified = false;
    std::string justification;
};

// checks that the auxiliary is a diagonal bilinear pairing of two distinct
// relation groups, so |u| <= max|coeff| by Cauchy-Schwarz; widens nothing
bool verify_hint(BoundHint& hint, const Chart& chart);

struct CheckOptions {
    unsigned long long grid_points = 10000;
};

} // namespace csl
