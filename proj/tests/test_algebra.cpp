#include "doctest.h"

#include "csl/linsolve.hpp"
#include "csl/relations.hpp"
#include "csl/sturm.hpp"

#include "gen.hpp"

using namespace csl;

TEST_CASE("rational invariants") {
    Rational r{Int(6), Int(-4)};
    CHECK(r.numerator() == Int(-3));
    CHECK(r.denominator() == Int(2));
    CHECK(r.str() == "-3/2");
    CHECK((Rational{Int(2), Int(4)} == Rational{Int(1), Int(2)}));
    CHECK_THROWS_AS((Rational{Int(1), Int(0)}), InputError);
    // arbitrary precision survives big products
    Rational big{Int("123456789123456789"), Int(1)};
    CHECK((big * big).numerator() == Int("15241578780673678515622620750190521"));
}

TEST_CASE("poly arithmetic basics") {
    Poly x = Poly::var(0), y = Poly::var(1);
    Poly p = x * x + y.scale(Rational(2)) + Poly(Rational(1));
    Poly q = x * x + y + y + Poly(Rational(1));
    CHECK(p == q);
    CHECK((p - q).is_zero());
    CHECK(p.total_degree() == 2);
    CHECK(p.degree_in(1) == 1);
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK(p.eval({{0, Rational(2)}, {1, Rational{Int(1), Int(2)}}}) == Rational(6));
    CHECK(p.derivative(0) == x.scale(Rational(2)));
    CHECK((x * x * y).divide_exact(x * y).value() == x);
    CHECK_FALSE((x * x + y).divide_exact(x).has_value());
}

TEST_CASE("normal_form: the relation itself reduces to 1") {
    // q1^2+q2^2+q3^2+q4^2 with group {q1..q4} -> 1
    Poly p;
    for (int i = 0; i < 4; ++i) p += Poly::var(i, 2);
    RelationGroup g{{0, 1, 2, 3}};
    CHECK(normal_form(p, {g}) == Poly(Rational(1)));
}

TEST_CASE("normal_form: no pivot square present is a fixpoint") {
    Poly xy = Poly::var(0) * Poly::var(1);
    CHECK(normal_form(xy, {RelationGroup{{0, 1}}}) == xy);
}

TEST_CASE("normal_form: two groups, hand-substituted oracle") {
    // vars: s=0 c=1 (group), l1=2 l2=3 (group)
    Poly s = Poly::var(0), c = Poly::var(1), l1 = Poly::var(2), l2 = Poly::var(3);
    Poly p = l1 * l1 * s * s + (l1 * l2 * s * c).scale(Rational(2)) + l2 * l2 * c * c;
    // oracle: substitute c^2 -> 1-s^2 and l2^2 -> 1-l1^2 by hand
    Poly expect = l1 * l1 * s * s + (l1 * l2 * s * c).scale(Rational(2)) +
                  (Poly(Rational(1)) - l1 * l1) * (Poly(Rational(1)) - s * s);
    auto nf = normal_form(p, {RelationGroup{{0, 1}}, RelationGroup{{2, 3}}});
    CHECK(nf == expect);
}

TEST_CASE("normal_form rejects undersized or overlapping groups") {
    CHECK_THROWS_AS(normal_form(Poly::var(0), {RelationGroup{{0}}}), InputError);
    CHECK_THROWS_AS(normal_form(Poly::var(0), {RelationGroup{{0, 1}}, RelationGroup{{1, 2}}}), InputError);
}

TEST_CASE("normal_form properties: idempotence and ring map, 250 cases") {
    cslt::Rng rng(11);
    std::vector<RelationGroup> groups{RelationGroup{{0, 1}}, RelationGroup{{2, 3, 4}}};
    for (int i = 0; i < 250; ++i) {
        Poly p = cslt::rand_poly(rng, 6, 4, 6);
        Poly q = cslt::rand_poly(rng, 6, 3, 4);
        Poly np = normal_form(p, groups);
        CHECK(normal_form(np, groups) == np);
        CHECK(normal_form(p * q, groups) ==
              normal_form(normal_form(p, groups) * normal_form(q, groups), groups));
    }
}

TEST_CASE("normal form is a complete ideal-membership test") {
    cslt::Rng rng(7);
    std::vector<RelationGroup> groups{RelationGroup{{0, 1}}, RelationGroup{{2, 3, 4}}};
    for (int i = 0; i < 50; ++i) {
        Poly p = cslt::rand_poly(rng, 6, 3, 4);
        Poly member = cslt::rand_poly(rng, 6, 2, 3) * groups[0].relation_poly() +
                      cslt::rand_poly(rng, 6, 2, 3) * groups[1].relation_poly();
        CHECK(normal_form(p + member, groups) == normal_form(p, groups));
    }
}

TEST_CASE("solve_linear frozen examples") {
    Poly x = Poly::var(0);
    SUBCASE("identity") {
        PolyMatrix id{{Poly(1), Poly(0), Poly(0)}, {Poly(0), Poly(1), Poly(0)}, {Poly(0), Poly(0), Poly(1)}};
        auto sol = solve_linear(id, {Poly(1), x, Poly(0)});
        CHECK(sol[0].num == Poly(1));
        CHECK(sol[1].num == x);
        CHECK(sol[1].den == Poly(1));
        CHECK(sol[2].num.is_zero());
    }
    SUBCASE("hand Cramer") {
        // [[x,1],[1,0]] (0,1)^T -> (1, -x)
        PolyMatrix m{{x, Poly(1)}, {Poly(1), Poly(0)}};
        auto sol = solve_linear(m, {Poly(0), Poly(1)});
        CHECK(sol[0].num == Poly(1));
        CHECK(sol[0].den == Poly(1));
        CHECK(sol[1].num == -x);
        CHECK(sol[1].den == Poly(1));
    }
    SUBCASE("proportional rows are singular") {
        PolyMatrix m{{x, x}, {Poly(1), Poly(1)}};
        CHECK_THROWS_AS(solve_linear(m, {Poly(0), Poly(1)}), SingularSystem);
    }
}

TEST_CASE("solve_linear substitution property, 200 random systems") {
    cslt::Rng rng(23);
    int solved = 0;
    while (solved < 200) {
        size_t n = 2 + (rng() % 3);
        PolyMatrix m(n, std::vector<Poly>(n));
        std::vector<Poly> b(n);
        for (auto& row : m)
            for (auto& e : row) e = cslt::rand_poly(rng, 3, 1, 2);
        for (auto& e : b) e = cslt::rand_poly(rng, 3, 1, 2);
        try {
            auto sol = solve_linear(m, b);  // substitution check runs inside
            for (auto& f : sol) CHECK_FALSE(f.den.is_zero());
            ++solved;
        } catch (const SingularSystem&) {
            // fine, try another draw
        }
    }
}

TEST_CASE("bareiss determinant matches cofactor expansion on small rational matrices") {
    cslt::Rng rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        size_t n = 2 + (rng() % 2);
        PolyMatrix m(n, std::vector<Poly>(n));
        for (auto& row : m)
            for (auto& e : row) e = Poly(cslt::rand_rational(rng));
        // cofactor oracle on rationals
        std::function<Rational(std::vector<std::vector<Rational>>)> det = [&](auto a) -> Rational {
            size_t k = a.size();
            if (k == 1) return a[0][0];
            Rational acc(0);
            int sign = 1;
            for (size_t j = 0; j < k; ++j) {
                std::vector<std::vector<Rational>> minor;
                for (size_t i = 1; i < k; ++i) {
                    std::vector<Rational> row;
                    for (size_t jj = 0; jj < k; ++jj)
                        if (jj != j) row.push_back(a[i][jj]);
                    minor.push_back(row);
                }
                acc += Rational(sign) * a[0][j] * det(minor);
                sign = -sign;
            }
            return acc;
        };
        std::vector<std::vector<Rational>> ra(n, std::vector<Rational>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) ra[i][j] = m[i][j].constant_value();
        CHECK(bareiss_determinant(m).constant_term() == det(ra));
    }
}

TEST_CASE("sturm frozen examples") {
    VarId u = 0;
    SUBCASE("u^2 - 2 on [-1,1] is strictly negative") {
        // oracle: max at the endpoints is -1
        Poly p = Poly::var(u, 2) - Poly(2);
        auto r = sturm_sign_on_interval(p, u, Rational(-1), Rational(1));
        CHECK(r.verdict == SturmVerdict::StrictlyNegative);
    }
    SUBCASE("constant 3 is strictly positive") {
        auto r = sturm_sign_on_interval(Poly(3), u, Rational(0), Rational(1));
        CHECK(r.verdict == SturmVerdict::StrictlyPositive);
    }
    SUBCASE("u on [-1,1] has a zero isolated around the origin") {
        auto r = sturm_sign_on_interval(Poly::var(u), u, Rational(-1), Rational(1));
        CHECK(r.verdict == SturmVerdict::HasZero);
        CHECK(r.lo <= Rational(0));
        CHECK(r.hi >= Rational(0));
        CHECK(r.hi - r.lo <= Rational{Int(2), Int(1) << 30});
    }
    SUBCASE("zero polynomial is rejected") {
        CHECK_THROWS_AS(sturm_sign_on_interval(Poly(0), u, Rational(0), Rational(1)), ZeroPolynomial);
    }
    SUBCASE("double root still reports a zero") {
        Poly p = Poly::var(u, 2);  // no sign change anywhere
        auto r = sturm_sign_on_interval(p, u, Rational(-1), Rational(1));
        CHECK(r.verdict == SturmVerdict::HasZero);
        CHECK(r.lo <= Rational(0));
        CHECK(r.hi >= Rational(0));
    }
}

TEST_CASE("sturm agrees with dense evaluation, 200 random polys") {
    cslt::Rng rng(41);
    std::uniform_int_distribution<int> deg(0, 8);
    int done = 0;
    while (done < 200) {
        int d = deg(rng);
        Poly p;
        for (int i = 0; i <= d; ++i) p.add_term(Monomial::var(0, i), cslt::rand_rational(rng));
        if (p.is_zero()) continue;
        auto r = sturm_sign_on_interval(p, 0, Rational(-2), Rational(2));
        auto coeffs = to_univariate(p, 0);
        bool any_nonpos = false, any_nonneg = false;
        for (int i = 0; i <= 1000; ++i) {
            Rational x = Rational(-2) + Rational(Int(4 * i), Int(1000));
            Rational v = eval_univariate(coeffs, x);
            any_nonpos = any_nonpos || v.sign() <= 0;
            any_nonneg = any_nonneg || v.sign() >= 0;
        }
        if (r.verdict == SturmVerdict::StrictlyPositive) CHECK_FALSE(any_nonpos);
        if (r.verdict == SturmVerdict::StrictlyNegative) CHECK_FALSE(any_nonneg);
        if (r.verdict == SturmVerdict::HasZero) {
            // witness re-verifies: endpoint zero or an enclosing sign change
            bool endpoint_zero = r.value_lo.is_zero() || r.value_hi.is_zero();
            bool enclosed = r.value_lo.sign() * r.value_hi.sign() < 0 || r.root_count >= 1;
            CHECK((endpoint_zero || enclosed));
        }
        ++done;
    }
}

TEST_CASE("rational sphere points satisfy their relations exactly") {
    for (unsigned long long n = 0; n < 200; ++n) {
        auto pt = rational_sphere_point({0, 1, 2}, n);
        Rational s(0);
        for (auto& [v, x] : pt) s += x * x;
        CHECK(s == Rational(1));
    }
    SpherePointSource src({RelationGroup{{0, 1}}, RelationGroup{{2, 3, 4}}}, {5});
    for (unsigned long long n = 0; n < 100; ++n) {
        auto pt = src.point(n);
        CHECK(pt.size() == 6);
        CHECK(pt.at(0) * pt.at(0) + pt.at(1) * pt.at(1) == Rational(1));
        CHECK(pt.at(2) * pt.at(2) + pt.at(3) * pt.at(3) + pt.at(4) * pt.at(4) == Rational(1));
    }
}
