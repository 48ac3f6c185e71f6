#pragma once

/*
 * Ready-made charts, forms and matrix families: the quaternionic sphere
 * triples, flat torus circles, circle-bundle circles with an abstract
 * connection form, the seven-dimensional counterexample pairs, and the
 * anticommuting antisymmetric matrix families that seed contact spheres on
 * S^{4n-1}. Also the symbolic verification of the bundle volume identity
 * and its scalar reduction.
 */

#include <optional>

#include "csl/psphere.hpp"

namespace csl {

// largest k such that S^{n-1} admits k pointwise independent unit vector
// fields of the matrix kind: n = odd * 2^(c+4d) with c <= 3, k = 2^c + 8d - 1
int rho(long long n);

using IntMatrix = std::vector<std::vector<Int>>;

struct HurwitzRadonFamily {
    int m = 0;                      // matrix size, even
    std::vector<IntMatrix> matrices;  // rho(m) of them

    int count() const { return (int)matrices.size(); }
};

// throws InternalError naming the broken invariant
void validate_family(const HurwitzRadonFamily& fam);

// construction: Cayley-Dickson left multiplications for m in {2,4,8}, one
// antisymmetric doubling step for 16, Bott-style periodicity above, odd
// factors by blocks; validate_family runs on every result
HurwitzRadonFamily hurwitz_radon_family(int m);

std::string family_to_json(const HurwitzRadonFamily& fam);
HurwitzRadonFamily family_from_json(const std::string& text);

// sphere-mode family w_i = <A_i x, dx> on the unit sphere of R^m
PSphereSpec matrix_contact_sphere(const HurwitzRadonFamily& fam);

struct BundleModel {
    ChartPtr chart;
    VarId sin_var = -1, cos_var = -1;
    int angle_gen = -1, base_gen = -1, connection_gen = -1;
    Rational curvature;  // f with d(alpha) = f * dt1 ^ dt2
    Rational scale;      // k, nonzero with k * f <= 0
};

BundleModel make_bundle_model(const Rational& curvature, const Rational& scale);
// the invariant circle w1 = cos dt2 + k sin alpha, w2 = -sin dt2 + k cos alpha
PSphereSpec torus_bundle_circle(const Rational& curvature, const Rational& scale);

// the flat 3-torus circle with winding n
PSphereSpec t3_circle(int n);

// symbolic identity: the volume expansion of the bundle sphere triple over
// three unit functions, against an abstract connection differential
FormEqResult lemma2_verify();
// scalar reduction of the same right-hand side after expressing every base
// 2-form as a multiple of the base area; checks against
// k * (1 + k f F^2 + F (l1 C1 + l2 C2 + l3 C3)) ^ alpha
FormEqResult expr3_reduction_verify();

struct ExampleEntry {
    std::string name;
    std::string description;
    PSphereSpec spec;
    std::optional<Rational> expect_constant;  // psphere certificate value
    std::optional<int> expect_sign;
    bool expect_certified = true;  // false: the family check must refute
    std::optional<bool> expect_taut;
    std::optional<bool> expect_round;
    std::string provenance;
};

const std::vector<ExampleEntry>& example_catalog();
const ExampleEntry* find_example(const std::string& name);

struct ScanReport {
    Rational minimum;
    std::map<VarId, Rational> argmin_point;
    std::vector<Rational> argmin_lambda;
    bool zero_found = false;
    std::map<VarId, Rational> zero_point;
    std::vector<Rational> zero_direction;  // unnormalized rational direction
    unsigned long long points_scanned = 0;
};

// falsification scan of |sum l_i f_i| + |components of sum l_i df_i| over
// exact grids; a zero refutes, a positive minimum proves nothing
ScanReport invariant_nondegeneracy_scan(const std::vector<Poly>& functions, const ChartPtr& chart,
                                        int grid_density = 100);

} // namespace csl
