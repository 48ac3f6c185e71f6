#include "doctest.h"

#include "csl/constructions.hpp"

#include "gen.hpp"

using namespace csl;

TEST_CASE("rho values") {
    CHECK(rho(4) == 3);
    CHECK(rho(8) == 7);
    CHECK(rho(12) == 3);
    CHECK(rho(16) == 8);
    CHECK(rho(32) == 9);
    CHECK(rho(2) == 1);
    CHECK(rho(1) == 0);
    CHECK_THROWS_AS(rho(0), InputError);
}

TEST_CASE("rho ignores odd factors, 50 pairs") {
    cslt::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        long long n = 1 + (rng() % 256);
        long long odd = 2 * (rng() % 12) + 1;
        CHECK(rho(odd * n) == rho(n));
    }
}

TEST_CASE("matrix families validate for m in {2, 4, 8, 16, 12, 32}") {
    for (int m : {2, 4, 8, 16, 12, 32}) {
        auto fam = hurwitz_radon_family(m);  // validation is part of construction
        CHECK(fam.count() == rho(m));
        CHECK((int)fam.matrices[0].size() == m);
    }
    CHECK_THROWS_AS(hurwitz_radon_family(3), InputError);
}

TEST_CASE("m=2 family is the rotation generator") {
    auto fam = hurwitz_radon_family(2);
    REQUIRE(fam.count() == 1);
    CHECK(fam.matrices[0][0][0] == 0);
    CHECK(fam.matrices[0][0][1] == -1);
    CHECK(fam.matrices[0][1][0] == 1);
    CHECK(fam.matrices[0][1][1] == 0);
}

TEST_CASE("m=4 family acts like quaternion left multiplications") {
    auto fam = hurwitz_radon_family(4);
    REQUIRE(fam.count() == 3);
    // A1 x = (-x2, x1, -x4, x3)
    std::vector<Int> x{7, 11, 13, 17};
    auto apply = [&](const IntMatrix& A) {
        std::vector<Int> y(4, Int(0));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) y[r] += A[r][c] * x[c];
        return y;
    };
    auto a1 = apply(fam.matrices[0]);
    CHECK(a1 == std::vector<Int>{-11, 7, -17, 13});
    // A1 A2 = A3 up to sign (quaternion algebra)
    IntMatrix prod(4, std::vector<Int>(4, Int(0)));
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) prod[i][j] += fam.matrices[0][i][k] * fam.matrices[1][k][j];
    bool plus = true, minus = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            plus = plus && prod[i][j] == fam.matrices[2][i][j];
            minus = minus && prod[i][j] == -fam.matrices[2][i][j];
        }
    CHECK((plus || minus));
}

TEST_CASE("unit combinations of a family are orthogonal, 20 exact samples") {
    auto fam = hurwitz_radon_family(8);
    std::vector<VarId> ids{0, 1, 2, 3, 4, 5, 6};
    for (unsigned long long n = 1; n <= 20; ++n) {
        auto lam = rational_sphere_point(ids, 31 * n);
        // M = sum l_i A_i; check M^T M = I and M^T = -M over exact rationals
        int m = fam.m;
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m, Rational(0)));
        for (int i = 0; i < fam.count(); ++i)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    if (fam.matrices[i][r][c] != 0) M[r][c] += lam[i] * Rational(fam.matrices[i][r][c]);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                CHECK(M[r][c] == -M[c][r]);
                Rational dot(0);
                for (int k = 0; k < m; ++k) dot += M[k][r] * M[k][c];
                CHECK(dot == (r == c ? Rational(1) : Rational(0)));
            }
    }
}

TEST_CASE("family JSON round-trip and shape") {
    auto fam = hurwitz_radon_family(4);
    std::string js = family_to_json(fam);
    auto back = family_from_json(js);
    CHECK(back.m == 4);
    CHECK(back.matrices == fam.matrices);
    CHECK(js.find("\"m\":4") != std::string::npos);
    CHECK(js.find("\"matrices\":[[") != std::string::npos);
    // corrupted matrices fail validation on load
    std::string bad = js;
    auto pos = bad.find("[0,");
    bad.replace(pos, 3, "[5,");
    CHECK_THROWS(family_from_json(bad));
}

TEST_CASE("matrix contact sphere generators pair to delta_ij modulo the sphere") {
    auto fam = hurwitz_radon_family(8);
    auto spec = matrix_contact_sphere(fam);
    auto ch = spec.chart;
    std::vector<ReebField> reeb;
    for (auto& w : spec.generators) reeb.push_back(reeb_field(w));
    for (size_t i = 0; i < spec.generators.size(); ++i) {
        for (size_t j = 0; j < spec.generators.size(); ++j) {
            Poly pairing;
            for (auto& [g, c] : reeb[j].numerator.coefficients())
                pairing += spec.generators[i].component({g}) * c;
            CHECK(ch->nf(pairing) == (i == j ? Poly(1) : Poly(0)));
        }
    }
}

TEST_CASE("matrix sphere contraction pairing is antisymmetric") {
    auto fam = hurwitz_radon_family(16);
    auto spec = matrix_contact_sphere(fam);
    // R_i . dw_j = -R_j . dw_i for i != j, exactly (not only modulo relations)
    auto d0 = ext_d(spec.generators[0]);
    auto d1 = ext_d(spec.generators[1]);
    ReebField r0 = reeb_field(spec.generators[0]);
    ReebField r1 = reeb_field(spec.generators[1]);
    CHECK(contract(r0.numerator, d1) == -contract(r1.numerator, d0));
}

TEST_CASE("bundle model honors its precondition") {
    CHECK_THROWS_AS(torus_bundle_circle(Rational(1), Rational(1)), InputError);
    CHECK_THROWS_AS(torus_bundle_circle(Rational(-1), Rational(0)), InputError);
    CHECK_NOTHROW(torus_bundle_circle(Rational(0), Rational(-2)));
}

TEST_CASE("the bundle-sphere volume identity verifies") {
    auto res = lemma2_verify();
    CHECK(res.equal);
    CHECK(res.residue.is_zero());
}

TEST_CASE("the scalar reduction of the identity verifies") {
    auto res = expr3_reduction_verify();
    CHECK(res.equal);
    CHECK(res.residue.is_zero());
}

TEST_CASE("catalog lookups") {
    CHECK(find_example("s3-quaternionic"));
    CHECK(find_example("t3-circle(2)"));
    CHECK(find_example("no-such-entry") == nullptr);
    // transcription spot checks
    auto e = find_example("r7-round-not-taut");
    REQUIRE(e);
    // w2 = -(x5+x6) dx3 - x5 dx4 + (x1+x3) dx6 + x1 dx7 - dx2
    const DiffForm& w2 = e->spec.generators[1];
    CHECK(w2.component({2}) == -(Poly::var(4) + Poly::var(5)));
    CHECK(w2.component({3}) == -Poly::var(4));
    CHECK(w2.component({5}) == Poly::var(0) + Poly::var(2));
    CHECK(w2.component({6}) == Poly::var(0));
    CHECK(w2.component({1}) == Poly(-1));
}

TEST_CASE("nondegeneracy scan") {
    SUBCASE("flat torus functions have scan minimum 1") {
        auto spec = t3_circle(1);
        auto ch = spec.chart;
        // functions (sin, cos) of the first angle
        auto rep = invariant_nondegeneracy_scan({Poly::var(0), Poly::var(1)}, ch, 40);
        CHECK_FALSE(rep.zero_found);
        CHECK(rep.minimum == Rational(1));
    }
    SUBCASE("dependent functions are refuted in an integer direction") {
        auto spec = t3_circle(1);
        auto rep = invariant_nondegeneracy_scan({Poly::var(0), Poly::var(0)}, spec.chart, 40);
        CHECK(rep.zero_found);
        // the zero direction is proportional to (1, -1)
        REQUIRE(rep.zero_direction.size() == 2);
        CHECK(rep.zero_direction[0] == -rep.zero_direction[1]);
    }
    SUBCASE("empty function list is rejected") {
        auto spec = t3_circle(1);
        CHECK_THROWS_AS(invariant_nondegeneracy_scan({}, spec.chart, 10), InputError);
    }
}
