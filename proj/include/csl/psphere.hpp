#pragma once

/*
 * Families of contact forms parametrized by the unit sphere: the family
 * {sum lambda_i w_i : sum lambda_i^2 = 1} over p+1 generator 1-forms.
 * Checks: the whole family is contact (with certificates), tautness
 * (lambda-free volume coefficient), roundness (the pairwise Reeb criteria),
 * the odd-dimension obstruction that rules such families out on manifolds
 * of dimension 4n+1, and the two degree-7 cross-check systems.
 */

#include "csl/contact.hpp"
#include "csl/sturm.hpp"

namespace csl {

struct PSphereSpec {
    ChartPtr chart;
    std::vector<DiffForm> generators;  // degree-1 forms on `chart`
    // optional: base variables b_i pairing with the family coefficients,
    // declaring the bound |sum lambda_i b_i| <= 1 for the certificate ladder
    std::vector<VarId> lambda_pairing;
    std::vector<BoundHint> hints;  // extra hints over the base chart

    int p() const { return (int)generators.size() - 1; }
};

struct LambdaExtension {
    ChartPtr chart;               // base chart plus a fresh unit group lambda_1..lambda_{p+1}
    std::vector<VarId> lambda;
    DiffForm omega_lambda;        // sum lambda_i * w_i
    std::vector<BoundHint> hints;
};

LambdaExtension extend_with_lambda(const PSphereSpec& spec);
// move a form to a chart that extends its own chart by extra variables
DiffForm transplant(const DiffForm& f, const ChartPtr& to);

Certificate psphere_check(const PSphereSpec& spec, const CheckOptions& opts = {});

struct TautnessReport {
    Poly lambda_coefficient;  // volume coefficient of the generic member, normal form
    Poly lambda_free_part;
    Poly residual;            // lambda-dependent part; zero iff taut
    bool taut = false;
    std::vector<VarId> lambda_vars;
    ChartPtr chart;           // the lambda-extended chart (for printing)
    std::optional<bool> dim3_cross_check;  // pairwise two-identity criterion
};

TautnessReport taut_check(const PSphereSpec& spec);

struct RoundnessReport {
    bool round = false;
    std::vector<ReebField> reeb;
    std::map<std::pair<int, int>, Poly> cond_i_residues;       // i<j, scalar
    std::map<std::pair<int, int>, FormEqResult> cond_ii_residues;  // i<=j, 1-form
    std::optional<std::pair<int, int>> first_failure;
    std::string first_failure_condition;
};

RoundnessReport round_check(const PSphereSpec& spec);

struct ObstructionReport {
    std::map<VarId, Rational> point;
    std::vector<VectorField> frame;
    ChartPtr circle_chart;  // two variables (c, s) with the unit relation
    Poly circle_poly;       // the family top-coefficient restricted to lambda = (c, s)
    bool all_odd = false;   // every monomial of odd total degree
    std::optional<SturmResult> zero;  // isolating interval in the half-angle variable
    std::optional<std::pair<Rational, Rational>> exact_zero_cs;
    bool refutes = false;   // the pair admits no contact circle
    std::string note;
};

// default point/frame: origin-like point (group pivots at 1), coordinate frame
ObstructionReport odd_dim_obstruction(const PSphereSpec& spec);
ObstructionReport odd_dim_obstruction(const PSphereSpec& spec, const std::map<VarId, Rational>& point,
                                      const std::vector<VectorField>& frame);

struct SystemReport {
    std::vector<FormEqResult> residues;
    std::vector<std::string> labels;
    bool all_zero = false;
};

// the four degree-7 tautness identities of a pair
SystemReport taut7_check(const PSphereSpec& spec);
// the two degree-6 consequences of (taut and round); necessary only
SystemReport roundtaut7_necessary(const PSphereSpec& spec);

struct IndependenceReport {
    Certificate minor_certificate;  // on the sum of squared 2x2 minors
    bool independent = false;
    bool dependent = false;  // exact witness of linear dependence
    Poly minor_sum;
};

IndependenceReport reeb_independence_check(const PSphereSpec& spec, const CheckOptions& opts = {});

// equality of k-forms as forms on the chart's manifold (sphere mode wedges
// with iota when that decides top-minus-one degrees exactly)
FormEqResult manifold_form_is_zero(const DiffForm& a);

} // namespace csl
