#pragma once

/*
 * Graded exterior algebra elements over a Chart, with polynomial
 * coefficients kept in normal form, plus vector fields in the frame dual
 * to the chart's 1-form generator basis.
 */

#include <optional>
#include <string>

#include "csl/chart.hpp"

namespace csl {

class VectorField;

class DiffForm {
public:
    DiffForm() = default;
    static DiffForm zero(ChartPtr c) { return DiffForm(std::move(c), {}); }
    static DiffForm scalar(ChartPtr c, Poly p);
    static DiffForm generator(ChartPtr c, int gen_index);
    static DiffForm from_components(ChartPtr c, FormData data);

    const ChartPtr& chart() const { return chart_; }
    const FormData& components() const { return c_; }
    Poly component(const GenTuple& t) const;
    bool is_zero() const { return c_.empty(); }
    bool is_homogeneous() const;
    // degree of a homogeneous form; zero form reports 0
    int degree() const;
    int max_degree() const;

    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator-(const DiffForm& o) const;
    DiffForm operator-() const;
    DiffForm scale(const Poly& p) const;
    DiffForm scale(const Rational& r) const { return scale(Poly(r)); }

    friend bool operator==(const DiffForm& a, const DiffForm& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    DiffForm(ChartPtr c, FormData d) : chart_(std::move(c)), c_(std::move(d)) {}
    ChartPtr chart_;
    FormData c_;
    friend DiffForm wedge(const DiffForm&, const DiffForm&);
    friend DiffForm ext_d(const DiffForm&);
    friend DiffForm contract(const VectorField&, const DiffForm&);
};

class VectorField {
public:
    VectorField() = default;
    VectorField(ChartPtr c, std::map<int, Poly> coeffs);
    static VectorField dual(ChartPtr c, int gen_index);  // the frame vector dual to a generator

    const ChartPtr& chart() const { return chart_; }
    const std::map<int, Poly>& coefficients() const { return c_; }
    Poly coefficient(int gen) const;
    bool is_zero() const { return c_.empty(); }

    VectorField operator+(const VectorField& o) const;
    VectorField scale(const Poly& p) const;
    VectorField scale(const Rational& r) const { return scale(Poly(r)); }
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.c_ == b.c_; }

    bool tangent_to_sphere = false;  // set by the Reeb solver on sphere charts

    std::string str() const;

private:
    ChartPtr chart_;
    std::map<int, Poly> c_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm wpow(const DiffForm& a, unsigned n);  // a ^ a ^ ... ^ a
DiffForm ext_d(const DiffForm& a);
DiffForm contract(const VectorField& v, const DiffForm& a);

// exact multilinear alternating evaluation at a relation-satisfying point
Rational evaluate_at(const DiffForm& a, const std::map<VarId, Rational>& point,
                     const std::vector<VectorField>& frame);

// Equality of forms modulo the chart relations and their differential
// consequences. The rewrite v_pivot * dv_pivot -> -sum(w * dw) runs to a
// fixpoint; a surviving residue is retried after multiplying every
// coefficient by pivot variables (denominator clearing, sound because the
// sphere varieties are irreducible). `equal` is authoritative; when it is
// false, `conclusive` tells refutation (exact nonzero witness evaluation)
// apart from an honest "could not reduce".
struct FormEqResult {
    bool equal = false;
    DiffForm residue;
    bool cleared = false;  // equality established only after pivot clearing
    bool conclusive = false;
    std::map<VarId, Rational> witness;  // valid when conclusive && !equal
    std::string note;

    explicit operator bool() const { return equal; }
};

FormEqResult form_eq(const DiffForm& a, const DiffForm& b);
// same reduction applied to a single form against zero
FormEqResult form_is_zero(const DiffForm& a);

// interior sum iota = sum(v * dv) over a relation group whose variables
// carry coordinate differentials
DiffForm group_iota(const ChartPtr& c, const RelationGroup& g);

} // namespace csl
