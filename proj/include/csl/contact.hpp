#pragma once

/*
 * Contact-form machinery: exact volume coefficients, Reeb vector fields,
 * and nonvanishing certificates.
 *
 * On an ambient chart the volume coefficient is the scalar c with
 * w ^ (dw)^n = c * (full generator wedge); in sphere mode the ambient trick
 * w ^ (dw)^n ^ iota = c * (dx1 ^ ... ^ dxm) is used, iota = sum(x dx).
 *
 * Reeb fields are found in two stages. First a polynomial solution modulo
 * the chart relations is sought by linear algebra over the normal-form
 * monomial basis with escalating degree; free coordinates are preferred
 * over the abstract-dual and multiplier components, which are set to zero
 * when underdetermined. When no polynomial representative exists, the
 * defining system is solved over the fraction field by fraction-free
 * Cramer elimination and the result is kept as numerator/denominator with
 * the system determinant as common denominator. Both routes re-verify the
 * defining equations by substitution.
 */

#include "csl/certificate.hpp"
#include "csl/form.hpp"

namespace csl {

struct VolumeReport {
    Poly coefficient;   // normal form
    GenTuple reference;  // the ordered top-degree generator wedge used as unit
    int power = 0;      // the n in w ^ (dw)^n
    bool sphere_mode = false;
    std::string reference_str(const ChartPtr& chart) const;
};

VolumeReport volume_coefficient(const DiffForm& omega);

struct ReebField {
    VectorField numerator;
    Poly denominator{Rational(1)};
    std::optional<Poly> multiplier;  // sphere mode: R . dw = (multiplier/denominator) * iota
    std::string route;               // "polynomial" or "fraction"

    bool polynomial() const { return denominator == Poly(Rational(1)); }
    // requires polynomial()
    const VectorField& field() const;
};

ReebField reeb_field(const DiffForm& omega);

Certificate nonvanishing_certificate(const Poly& coefficient, const ChartPtr& chart,
                                     const std::vector<BoundHint>& hints = {},
                                     const CheckOptions& opts = {});

} // namespace csl
