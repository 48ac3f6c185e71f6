#include "doctest.h"

#include <functional>

#include "csl/form.hpp"

#include "gen.hpp"

using namespace csl;

namespace {

// Independent evaluation oracle for wedge products: the shuffle formula
// (a^b)(v_1..v_{p+q}) = sum over (p,q)-shuffles of sgn * a(v_I) * b(v_J).
// It never calls wedge(), only evaluate_at on the factors.
Rational shuffle_eval(const DiffForm& a, const DiffForm& b, const std::map<VarId, Rational>& pt,
                      const std::vector<VectorField>& frame) {
    int p = a.degree(), q = b.degree();
    REQUIRE((int)frame.size() == p + q);
    std::vector<int> pick(p + q, 0);
    std::fill(pick.begin(), pick.begin() + p, 1);
    std::sort(pick.begin(), pick.end());
    Rational acc(0);
    // iterate all subsets of size p via permutations of the mask
    do {
        std::vector<VectorField> va, vb;
        std::vector<int> ia, ib;
        for (int i = 0; i < p + q; ++i)
            (pick[i] ? va : vb).push_back(frame[i]), (pick[i] ? ia : ib).push_back(i);
        int inversions = 0;
        for (int x : ia)
            for (int y : ib)
                if (y < x) ++inversions;
        Rational term = evaluate_at(a, pt, va) * evaluate_at(b, pt, vb);
        acc += (inversions % 2) ? -term : term;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return acc;
}

VectorField rational_field(const ChartPtr& ch, cslt::Rng& rng) {
    std::map<int, Poly> m;
    for (int g = 0; g < ch->ngens(); ++g) m[g] = Poly(cslt::rand_rational(rng, 3, 2));
    return VectorField(ch, std::move(m));
}

} // namespace

TEST_CASE("wedge: anticommutativity and squares of 1-forms") {
    auto ch = ambient_chart("r2", {"x1", "x2"});
    auto dx1 = DiffForm::generator(ch, 0), dx2 = DiffForm::generator(ch, 1);
    CHECK(wedge(dx1, dx2) == -wedge(dx2, dx1));
    auto a = dx2.scale(Poly::var(0));  // x1 dx2
    CHECK(wedge(a, a).is_zero());
}

TEST_CASE("wedge: quaternionic hand expansion") {
    auto ch = ambient_chart("r4", {"q1", "q2", "q3", "q4"});
    Poly q1 = Poly::var(0), q2 = Poly::var(1), q3 = Poly::var(2), q4 = Poly::var(3);
    auto dq = [&](int i) { return DiffForm::generator(ch, i); };
    auto a = dq(1).scale(q1) - dq(0).scale(q2);
    auto b = dq(3).scale(q3) - dq(2).scale(q4);
    // hand expansion: q1q3 dq2^dq4 - q1q4 dq2^dq3 - q2q3 dq1^dq4 + q2q4 dq1^dq3
    auto expect = wedge(dq(1), dq(3)).scale(q1 * q3) - wedge(dq(1), dq(2)).scale(q1 * q4) -
                  wedge(dq(0), dq(3)).scale(q2 * q3) + wedge(dq(0), dq(2)).scale(q2 * q4);
    CHECK(wedge(a, b) == expect);
}

TEST_CASE("ext_d: frozen seven-dimensional example") {
    auto ch = ambient_chart("r7", {"x1", "x2", "x3", "x4", "x5", "x6", "x7"});
    auto dx = [&](int i) { return DiffForm::generator(ch, i - 1); };
    auto omega = dx(2).scale(Poly::var(0)) + dx(4).scale(Poly::var(2)) + dx(6).scale(Poly::var(4)) + dx(7);
    auto expect = wedge(dx(1), dx(2)) + wedge(dx(3), dx(4)) + wedge(dx(5), dx(6));
    CHECK(ext_d(omega) == expect);
}

TEST_CASE("ext_d on the bundle chart follows the declared differential") {
    // ds = c*g1, dc = -s*g1, d(alpha) = f*g1^g2
    ChartBuilder b("bundle");
    VarId f = b.add_param("f");
    auto [s, c] = b.add_trig_pair("s1", "c1", "t1");  // gen t1 gets index 0
    int g2 = b.add_abstract_gen("t2");
    FormData dalpha;
    dalpha[{0, g2}] = Poly::var(f);
    int al = b.add_abstract_gen("al", dalpha);
    auto ch = b.build();
    auto alpha = DiffForm::generator(ch, al);
    auto got = ext_d(alpha.scale(Poly::var(s)));
    auto t1 = DiffForm::generator(ch, ch->find_gen("t1"));
    auto t2 = DiffForm::generator(ch, ch->find_gen("t2"));
    auto expect = wedge(t1, alpha).scale(Poly::var(c)) + wedge(t1, t2).scale(Poly::var(f) * Poly::var(s));
    CHECK(got == expect);
}

TEST_CASE("d of d = 0: scalars and random forms, 200+ cases") {
    cslt::Rng rng(101);
    int cases = 0;
    while (cases < 200) {
        auto ch = cslt::rand_chart(rng);
        Poly p = cslt::rand_poly(rng, ch->nvars(), 3, 4);
        CHECK(form_is_zero(ext_d(ext_d(DiffForm::scalar(ch, p)))).equal);
        for (int deg = 1; deg <= 2; ++deg) {
            auto a = cslt::rand_form(rng, ch, deg);
            CHECK(form_is_zero(ext_d(ext_d(a))).equal);
            ++cases;
        }
    }
}

TEST_CASE("Leibniz rule, 200 cases") {
    cslt::Rng rng(202);
    int cases = 0;
    while (cases < 200) {
        auto ch = cslt::rand_chart(rng);
        for (auto [da, db] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
            auto a = cslt::rand_form(rng, ch, da);
            auto b2 = cslt::rand_form(rng, ch, db);
            auto lhs = ext_d(wedge(a, b2));
            auto rhs = wedge(ext_d(a), b2) +
                       ((da % 2) ? -wedge(a, ext_d(b2)) : wedge(a, ext_d(b2)));
            CHECK(form_eq(lhs, rhs).equal);
            ++cases;
        }
    }
}

TEST_CASE("contract: frozen examples") {
    auto ch = ambient_chart("r7", {"x1", "x2", "x3", "x4", "x5", "x6", "x7"});
    auto d12 = wedge(DiffForm::generator(ch, 0), DiffForm::generator(ch, 1));
    CHECK(contract(VectorField::dual(ch, 6), d12).is_zero());
    CHECK(contract(VectorField::dual(ch, 0), d12) == DiffForm::generator(ch, 1));
}

TEST_CASE("contract: quaternionic pairing identity") {
    auto ch = ambient_chart("r4", {"q1", "q2", "q3", "q4"});
    Poly q1 = Poly::var(0), q2 = Poly::var(1), q3 = Poly::var(2), q4 = Poly::var(3);
    auto dq = [&](int i) { return DiffForm::generator(ch, i); };
    // <iq, dq> and <jq, dq>
    auto w1 = dq(0).scale(-q2) + dq(1).scale(q1) + dq(2).scale(-q4) + dq(3).scale(q3);
    auto w2 = dq(0).scale(-q3) + dq(1).scale(q4) + dq(2).scale(q1) + dq(3).scale(-q2);
    VectorField R1(ch, {{0, -q2}, {1, q1}, {2, -q4}, {3, q3}});
    VectorField R2(ch, {{0, -q3}, {1, q4}, {2, q1}, {3, -q2}});
    CHECK(contract(R1, ext_d(w2)) == -contract(R2, ext_d(w1)));
}

TEST_CASE("contract is an antiderivation, 200 cases") {
    cslt::Rng rng(303);
    int cases = 0;
    while (cases < 200) {
        auto ch = cslt::rand_chart(rng);
        std::map<int, Poly> vc;
        for (int g = 0; g < ch->ngens(); ++g) vc[g] = cslt::rand_poly(rng, ch->nvars(), 1, 2);
        VectorField v(ch, std::move(vc));
        for (auto [da, db] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
            auto a = cslt::rand_form(rng, ch, da);
            auto b2 = cslt::rand_form(rng, ch, db);
            auto lhs = contract(v, wedge(a, b2));
            auto rhs = wedge(contract(v, a), b2) +
                       ((da % 2) ? -wedge(a, contract(v, b2)) : wedge(a, contract(v, b2)));
            CHECK(lhs == rhs);
            ++cases;
        }
    }
}

TEST_CASE("wedge agrees with the shuffle evaluation oracle, 120 cases") {
    cslt::Rng rng(404);
    int cases = 0;
    while (cases < 120) {
        auto ch = cslt::rand_chart(rng);
        if (!ch->groups.empty()) continue;  // oracle points: keep it unconstrained
        for (auto [da, db] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
            if (da + db > ch->ngens()) continue;
            auto a = cslt::rand_form(rng, ch, da);
            auto b2 = cslt::rand_form(rng, ch, db);
            std::map<VarId, Rational> pt;
            for (int v = 0; v < ch->nvars(); ++v) pt[v] = cslt::rand_rational(rng, 2, 2);
            std::vector<VectorField> frame;
            for (int i = 0; i < da + db; ++i) frame.push_back(rational_field(ch, rng));
            CHECK(evaluate_at(wedge(a, b2), pt, frame) == shuffle_eval(a, b2, pt, frame));
            ++cases;
        }
    }
}

TEST_CASE("form_eq: frozen cases") {
    SUBCASE("anticommuted pair") {
        auto ch = ambient_chart("r2", {"x1", "x2"});
        auto a = wedge(DiffForm::generator(ch, 0), DiffForm::generator(ch, 1));
        auto b = -wedge(DiffForm::generator(ch, 1), DiffForm::generator(ch, 0));
        auto r = form_eq(a, b);
        CHECK(r.equal);
    }
    SUBCASE("differentiated relation on a function sphere") {
        ChartBuilder b("phi");
        VarId p1 = b.add_var("phi1"), p2 = b.add_var("phi2"), p3 = b.add_var("phi3");
        b.add_group({p1, p2, p3});
        auto ch = b.build();
        auto d1 = DiffForm::generator(ch, 0), d2 = DiffForm::generator(ch, 1), d3 = DiffForm::generator(ch, 2);
        auto lhs = d3.scale(Poly::var(p3));
        auto rhs = -(d1.scale(Poly::var(p1)) + d2.scale(Poly::var(p2)));
        CHECK(form_eq(lhs, rhs).equal);
    }
    SUBCASE("ambient top form vanishes on the sphere chart") {
        auto ch = sphere_chart("s3", {"q1", "q2", "q3", "q4"});
        DiffForm vol = DiffForm::generator(ch, 0);
        for (int i = 1; i < 4; ++i) vol = wedge(vol, DiffForm::generator(ch, i));
        auto r = form_is_zero(vol);
        CHECK(r.equal);
        CHECK(r.cleared);
    }
    SUBCASE("2-form on the circle chart vanishes") {
        ChartBuilder b("circle");
        VarId s = b.add_var("s"), c = b.add_var("c");
        b.add_group({s, c});
        auto ch = b.build();
        auto r = form_is_zero(wedge(DiffForm::generator(ch, 0), DiffForm::generator(ch, 1)));
        CHECK(r.equal);
        CHECK(r.cleared);
    }
    SUBCASE("genuinely different forms are refuted with a witness") {
        auto ch = ambient_chart("r3", {"x1", "x2", "x3"});
        auto a = DiffForm::generator(ch, 0).scale(Poly::var(2));
        auto r = form_eq(a, DiffForm::generator(ch, 1));
        CHECK_FALSE(r.equal);
        CHECK(r.conclusive);
        CHECK_FALSE(r.witness.empty());
    }
}

TEST_CASE("form_eq invariance under ideal moves, 100 cases") {
    cslt::Rng rng(505);
    ChartBuilder b("inv");
    VarId x = b.add_var("x");
    VarId s = b.add_var("s"), c = b.add_var("c");
    b.add_group({s, c});
    auto ch = b.build();
    (void)x;
    auto iota = group_iota(ch, ch->groups[0]);
    for (int i = 0; i < 100; ++i) {
        auto a = cslt::rand_form(rng, ch, 1 + (int)(rng() % 2));
        // add an ideal multiple to one coefficient
        Poly noise = cslt::rand_poly(rng, 3, 2, 3) * ch->groups[0].relation_poly();
        DiffForm noisy = a + DiffForm::from_components(ch, {{a.components().begin()->first, noise}});
        CHECK(form_eq(a, noisy).equal);
        // shifting by multiples of iota = s ds + c dc does not change the class
        if (a.degree() == 1) {
            auto plus_iota = a + iota.scale(cslt::rand_poly(rng, 3, 1, 2));
            auto plus_other_iota = a + iota.scale(cslt::rand_poly(rng, 3, 1, 2));
            CHECK(form_eq(a, plus_iota).equal);
            CHECK(form_eq(plus_iota, plus_other_iota).equal);
        }
    }
}

TEST_CASE("evaluate_at: frozen examples and relation checking") {
    auto ch = ambient_chart("r2", {"x1", "x2"});
    auto d12 = wedge(DiffForm::generator(ch, 0), DiffForm::generator(ch, 1));
    std::map<VarId, Rational> pt{{0, Rational{Int(3), Int(2)}}, {1, Rational(0)}};
    auto e1 = VectorField::dual(ch, 0), e2 = VectorField::dual(ch, 1);
    CHECK(evaluate_at(d12, pt, {e1, e2}) == Rational(1));
    CHECK(evaluate_at(d12, pt, {e2, e1}) == Rational(-1));
    CHECK(evaluate_at(DiffForm::generator(ch, 1).scale(Poly::var(0)), pt, {e2}) == Rational{Int(3), Int(2)});

    auto sph = sphere_chart("s1", {"a", "b"});
    std::map<VarId, Rational> bad{{0, Rational(1)}, {1, Rational(1)}};
    CHECK_THROWS_AS(evaluate_at(DiffForm::generator(sph, 0), bad, {VectorField::dual(sph, 0)}), InputError);
}

TEST_CASE("mixed-chart operations are rejected") {
    auto a = ambient_chart("a", {"x"});
    auto b = ambient_chart("b", {"y"});
    CHECK_THROWS_AS(wedge(DiffForm::generator(a, 0), DiffForm::generator(b, 0)), InputError);
    CHECK_THROWS_AS(contract(VectorField::dual(a, 0), DiffForm::generator(b, 0)), InputError);
}
