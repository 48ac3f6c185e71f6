#include "doctest.h"

#include "csl/constructions.hpp"
#include "csl/psphere.hpp"

#include "gen.hpp"

using namespace csl;

TEST_CASE("family certificates across the catalog examples") {
    SUBCASE("quaternionic triple is certified constant 2") {
        auto e = find_example("s3-quaternionic");
        REQUIRE(e);
        auto cert = psphere_check(e->spec);
        CHECK(cert.status == CertStatus::CertifiedConstant);
        CHECK(cert.constant_value == Rational(2));
    }
    SUBCASE("flat torus circles are certified constant -n") {
        for (int n : {1, 2, 5}) {
            auto cert = psphere_check(t3_circle(n));
            CHECK(cert.status == CertStatus::CertifiedConstant);
            CHECK(cert.constant_value == Rational(-n));
        }
    }
    SUBCASE("bundle circle with curvature certifies negative via the pairing hint") {
        auto cert = psphere_check(torus_bundle_circle(Rational(-1), Rational(1)));
        CHECK(cert.status == CertStatus::CertifiedSign);
        CHECK(cert.sign == -1);
        CHECK(cert.method == "sturm-hint");
    }
    SUBCASE("seven-dimensional round pair certifies by coefficient bound") {
        auto e = find_example("r7-round-not-taut");
        REQUIRE(e);
        auto cert = psphere_check(e->spec);
        CHECK(cert.status == CertStatus::CertifiedSign);
        CHECK(cert.sign == 1);
        CHECK(cert.method == "coefficient-bound");
    }
    SUBCASE("seven-dimensional taut pair is certified constant 6") {
        auto e = find_example("r7-taut-not-round");
        REQUIRE(e);
        auto cert = psphere_check(e->spec);
        CHECK(cert.status == CertStatus::CertifiedConstant);
        CHECK(cert.constant_value == Rational(6));
    }
    SUBCASE("five-dimensional pair is refuted") {
        auto e = find_example("r5-obstructed-pair");
        REQUIRE(e);
        auto cert = psphere_check(e->spec);
        CHECK(cert.status == CertStatus::Refuted);
    }
}

TEST_CASE("tautness verdicts and the lambda coefficient") {
    SUBCASE("bundle coefficient has the closed form k(k f u^2 - 1)") {
        for (auto [f, k] : {std::pair{Rational(-1), Rational(1)}, {Rational(-2), Rational(3)}}) {
            auto spec = torus_bundle_circle(f, k);
            auto rep = taut_check(spec);
            CHECK_FALSE(rep.taut);
            // expand k(kfu^2 - 1) with u = l1 s + l2 c on the extended chart
            auto ext = extend_with_lambda(spec);
            Poly u = Poly::var(ext.lambda[0]) * Poly::var(spec.lambda_pairing[0]) +
                     Poly::var(ext.lambda[1]) * Poly::var(spec.lambda_pairing[1]);
            Poly expect = ext.chart->nf((u * u).scale(k * k * f) - Poly(k));
            CHECK(rep.lambda_coefficient == expect);
        }
    }
    SUBCASE("flat bundle is taut with coefficient -k") {
        auto rep = taut_check(torus_bundle_circle(Rational(0), Rational(1)));
        CHECK(rep.taut);
        CHECK(rep.lambda_coefficient == Poly(-1));
        CHECK(rep.dim3_cross_check.has_value());
        CHECK(*rep.dim3_cross_check);
    }
    SUBCASE("taut examples") {
        CHECK(taut_check(find_example("s3-quaternionic")->spec).taut);
        CHECK(taut_check(find_example("r7-taut-not-round")->spec).taut);
        CHECK(taut_check(t3_circle(2)).taut);
    }
    SUBCASE("non-taut examples carry a residual") {
        auto rep = taut_check(find_example("r7-round-not-taut")->spec);
        CHECK_FALSE(rep.taut);
        CHECK_FALSE(rep.residual.is_zero());
        // frozen from the independent expansion: 12 - 6 l1^2
        CHECK(rep.lambda_free_part == Poly(12));
    }
}

TEST_CASE("roundness verdicts") {
    SUBCASE("quaternionic triple is round") {
        auto rep = round_check(find_example("s3-quaternionic")->spec);
        CHECK(rep.round);
        for (auto& [ij, p] : rep.cond_i_residues) CHECK(p.is_zero());
        for (auto& [ij, r] : rep.cond_ii_residues) CHECK(r.equal);
    }
    SUBCASE("flat torus circle is round") {
        CHECK(round_check(t3_circle(1)).round);
        CHECK(round_check(t3_circle(2)).round);
    }
    SUBCASE("round-not-taut pair is round") { CHECK(round_check(find_example("r7-round-not-taut")->spec).round); }
    SUBCASE("taut-not-round pair fails condition i with residue x3") {
        auto rep = round_check(find_example("r7-taut-not-round")->spec);
        CHECK_FALSE(rep.round);
        REQUIRE(rep.first_failure.has_value());
        CHECK(*rep.first_failure == std::pair<int, int>{1, 2});
        CHECK(rep.first_failure_condition == "i");
        CHECK(rep.cond_i_residues.at({1, 2}) == Poly::var(2));  // x3
    }
    SUBCASE("curved bundle circle is not round") {
        auto rep = round_check(torus_bundle_circle(Rational(-1), Rational(1)));
        CHECK_FALSE(rep.round);
    }
    SUBCASE("flat bundle circle is round") {
        CHECK(round_check(torus_bundle_circle(Rational(0), Rational(1))).round);
    }
}

TEST_CASE("round vs taut agree in dimension 3 across the catalog") {
    for (auto& e : example_catalog()) {
        int dim = e.spec.chart->mode == ChartMode::Sphere
                      ? (int)e.spec.chart->groups[e.spec.chart->sphere_group].vars.size() - 1
                      : e.spec.chart->dimension();
        if (dim != 3) continue;
        INFO(e.name);
        CHECK(taut_check(e.spec).taut == round_check(e.spec).round);
    }
}

TEST_CASE("round families satisfy Reeb linearity at exact lambda samples") {
    for (auto& e : example_catalog()) {
        if (!e.expect_round || !*e.expect_round) continue;
        if (e.name == "hr-sphere(8)") continue;  // covered by the acceptance suite
        INFO(e.name);
        auto& spec = e.spec;
        std::vector<ReebField> base;
        for (auto& w : spec.generators) base.push_back(reeb_field(w));
        std::vector<VarId> ids;
        for (size_t i = 0; i < spec.generators.size(); ++i) ids.push_back((VarId)i);
        for (unsigned long long n = 1; n <= 20; ++n) {
            auto lam = rational_sphere_point(ids, 7 * n + 1);
            DiffForm combo = DiffForm::zero(spec.chart);
            VectorField expect(spec.chart, {});
            for (size_t i = 0; i < spec.generators.size(); ++i) {
                combo = combo + spec.generators[i].scale(lam[(VarId)i]);
                expect = expect + base[i].field().scale(lam[(VarId)i]);
            }
            auto R = reeb_field(combo);
            REQUIRE(R.polynomial());
            CHECK(R.field() == expect);
        }
    }
}

TEST_CASE("odd-dimension obstruction") {
    auto e = find_example("r5-obstructed-pair");
    REQUIRE(e);
    SUBCASE("default point and frame produce the expected odd cubic") {
        auto rep = odd_dim_obstruction(e->spec);
        CHECK(rep.all_odd);
        CHECK(rep.refutes);
        // brute-force derivation: 2(c+s)^2(c-s) at the origin frame
        Poly c = Poly::var(0), s = Poly::var(1);
        Poly expect = ((c + s) * (c + s) * (c - s)).scale(Rational(2));
        CHECK(rep.circle_poly == rep.circle_chart->nf(expect));
        REQUIRE(rep.zero.has_value());
        CHECK(rep.zero->hi - rep.zero->lo <= Rational{Int(2), Int(1) << 30});
    }
    SUBCASE("circle polynomial at (1,0) equals the direct first-generator evaluation") {
        auto rep = odd_dim_obstruction(e->spec);
        std::map<VarId, Rational> cs{{0, Rational(1)}, {1, Rational(0)}};
        const auto& w1 = e->spec.generators[0];
        DiffForm top = wedge(w1, wpow(ext_d(w1), 2));
        Rational direct = evaluate_at(top, rep.point, rep.frame);
        CHECK(rep.circle_poly.eval(cs) == direct);
    }
    SUBCASE("degenerate pair (w, w) vanishes along c = -s") {
        PSphereSpec pair;
        pair.chart = e->spec.chart;
        pair.generators = {e->spec.generators[0], e->spec.generators[0]};
        auto rep = odd_dim_obstruction(pair);
        CHECK(rep.refutes);
        // P = (c+s)^3 * w^(dw)^2(frame); its zero line c = -s has no rational
        // point on the circle, so the zero comes back as an interval
        std::map<VarId, Rational> at{{0, Rational(1)}, {1, Rational(0)}};
        CHECK_FALSE(rep.circle_poly.eval(at).is_zero());
    }
    SUBCASE("scaling a frame vector scales the polynomial, not the verdict") {
        auto base = odd_dim_obstruction(e->spec);
        auto frame = base.frame;
        frame[0] = frame[0].scale(Rational(2));
        auto scaled = odd_dim_obstruction(e->spec, base.point, frame);
        CHECK(scaled.circle_poly == base.circle_poly.scale(Rational(2)));
        CHECK(scaled.refutes);
    }
    SUBCASE("wrong dimension is rejected") {
        auto spec3 = t3_circle(1);
        CHECK_THROWS_AS(odd_dim_obstruction(spec3), InputError);
    }
}

TEST_CASE("degree-7 systems") {
    auto cex1 = find_example("r7-round-not-taut")->spec;
    auto cex2 = find_example("r7-taut-not-round")->spec;

    SUBCASE("taut pair passes all four equations") {
        auto rep = taut7_check(cex2);
        CHECK(rep.all_zero);
        for (auto& r : rep.residues) CHECK(r.equal);
    }
    SUBCASE("non-taut pair fails at least one equation") {
        auto rep = taut7_check(cex1);
        CHECK_FALSE(rep.all_zero);
    }
    SUBCASE("identical pair: first equation trivial, second not") {
        PSphereSpec pair;
        pair.chart = cex1.chart;
        pair.generators = {cex1.generators[0], cex1.generators[0]};
        auto rep = taut7_check(pair);
        CHECK(rep.residues[0].equal);
        CHECK_FALSE(rep.residues[1].equal);
        // residue is 4 w1 ^ (dw1)^3
        auto expect = wedge(pair.generators[0], wpow(ext_d(pair.generators[0]), 3)).scale(Rational(4));
        CHECK(rep.residues[1].residue == expect);
    }
    SUBCASE("taut7 verdict equals taut verdict on dimension-7 pairs") {
        CHECK(taut7_check(cex1).all_zero == taut_check(cex1).taut);
        CHECK(taut7_check(cex2).all_zero == taut_check(cex2).taut);
    }
    SUBCASE("necessary round+taut system outcomes recorded") {
        // computed exactly; both counterexample pairs fail both equations
        auto r1 = roundtaut7_necessary(cex1);
        CHECK_FALSE(r1.residues[0].equal);
        CHECK_FALSE(r1.residues[1].equal);
        auto r2 = roundtaut7_necessary(cex2);
        CHECK_FALSE(r2.residues[0].equal);
        CHECK_FALSE(r2.residues[1].equal);
    }
}

TEST_CASE("Reeb independence") {
    SUBCASE("flat torus pair: minor sum reduces to a positive constant") {
        auto rep = reeb_independence_check(t3_circle(1));
        CHECK(rep.independent);
        CHECK(rep.minor_sum == Poly(1));
    }
    SUBCASE("quaternionic pair is certified independent") {
        auto spec = matrix_contact_sphere(hurwitz_radon_family(4));
        PSphereSpec pair;
        pair.chart = spec.chart;
        pair.generators = {spec.generators[0], spec.generators[1]};
        auto rep = reeb_independence_check(pair);
        CHECK(rep.independent);
    }
    SUBCASE("a duplicated generator is dependent") {
        auto spec = t3_circle(1);
        PSphereSpec pair;
        pair.chart = spec.chart;
        pair.generators = {spec.generators[0], spec.generators[0]};
        auto rep = reeb_independence_check(pair);
        CHECK(rep.dependent);
        CHECK(rep.minor_sum.is_zero());
    }
}

TEST_CASE("taut families keep the member volume constant at exact lambda samples") {
    for (auto& e : example_catalog()) {
        if (!e.expect_taut || !*e.expect_taut) continue;
        if (e.name == "hr-sphere(8)") continue;
        INFO(e.name);
        auto& spec = e.spec;
        Poly base = volume_coefficient(spec.generators[0]).coefficient;
        std::vector<VarId> ids;
        for (size_t i = 0; i < spec.generators.size(); ++i) ids.push_back((VarId)i);
        for (unsigned long long n = 1; n <= 20; ++n) {
            auto lam = rational_sphere_point(ids, 13 * n + 3);
            DiffForm combo = DiffForm::zero(spec.chart);
            for (size_t i = 0; i < spec.generators.size(); ++i)
                combo = combo + spec.generators[i].scale(lam[(VarId)i]);
            CHECK(volume_coefficient(combo).coefficient == base);
        }
    }
}
