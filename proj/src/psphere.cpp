#include "csl/psphere.hpp"

#include <algorithm>
#include <sstream>

namespace csl {

DiffForm transplant(const DiffForm& f, const ChartPtr& to) {
    return DiffForm::from_components(to, FormData(f.components()));
}

static void require_family(const PSphereSpec& spec) {
    if (spec.generators.empty()) throw InputError("a family needs at least one generator");
    for (auto& w : spec.generators) {
        if (w.chart() != spec.chart) throw InputError("family generators must share one chart");
        if (w.is_zero() || w.degree() != 1) throw InputError("family generators must be 1-forms");
    }
}

LambdaExtension extend_with_lambda(const PSphereSpec& spec) {
    require_family(spec);
    int n = (int)spec.generators.size();
    auto ext = std::make_shared<Chart>(*spec.chart);
    ext->name += "+lambda";
    LambdaExtension out;
    for (int i = 0; i < n; ++i) {
        std::string name = "lam" + std::to_string(i + 1);
        while (ext->find_var(name) >= 0) name += "_";
        ext->vars.push_back(name);
        ext->var_diff.emplace_back();
        out.lambda.push_back(ext->nvars() - 1);
    }
    ext->groups.push_back(RelationGroup{out.lambda});
    validate_groups(ext->groups);
    out.chart = ext;

    DiffForm acc = DiffForm::zero(out.chart);
    for (int i = 0; i < n; ++i)
        acc = acc + transplant(spec.generators[i], out.chart).scale(Poly::var(out.lambda[i]));
    out.omega_lambda = acc;

    for (auto& h : spec.hints) out.hints.push_back(h);
    if (!spec.lambda_pairing.empty()) {
        if ((int)spec.lambda_pairing.size() != n)
            throw InputError("lambda pairing must list one base variable per generator");
        BoundHint h;
        for (int i = 0; i < n; ++i)
            h.auxiliary += Poly::var(out.lambda[i]) * Poly::var(spec.lambda_pairing[i]);
        h.name = "u";
        out.hints.push_back(h);
    }
    return out;
}

FormEqResult manifold_form_is_zero(const DiffForm& a) {
    const ChartPtr& ch = a.chart();
    if (ch->mode == ChartMode::Sphere && !a.is_zero() && a.is_homogeneous()) {
        const auto& host = ch->groups[ch->sphere_group];
        if (a.degree() == (int)host.vars.size() - 1) {
            // theta restricts to zero iff theta ^ iota lies in the scalar ideal
            DiffForm top = wedge(a, group_iota(ch, host));
            FormEqResult res;
            GenTuple full;
            for (int i = 0; i < ch->ngens(); ++i) full.push_back(i);
            Poly c = ch->nf(top.component(full));
            res.equal = c.is_zero();
            res.conclusive = true;
            res.residue = top;
            if (!res.equal) res.note = "top coefficient after wedging with iota is nonzero";
            return res;
        }
    }
    return form_is_zero(a);
}

// --- family contact certificate ---------------------------------------------

Certificate psphere_check(const PSphereSpec& spec, const CheckOptions& opts) {
    require_family(spec);
    const ChartPtr& ch = spec.chart;

    if (spec.p() == 0) {
        auto vol = volume_coefficient(spec.generators[0]);
        std::vector<BoundHint> hints = spec.hints;
        Certificate cert = nonvanishing_certificate(vol.coefficient, ch, hints, opts);
        cert.trace.insert(cert.trace.begin(),
                          "single-generator family {w, -w}: certified via the volume coefficient of w");
        return cert;
    }

    // in ambient dimension 4n+1 the family coefficient restricted to any
    // circle of the family is an odd polynomial, so it vanishes somewhere
    if (ch->mode == ChartMode::Ambient && ch->dimension() % 4 == 1) {
        PSphereSpec pair = spec;
        pair.generators = {spec.generators[0], spec.generators[1]};
        auto obs = odd_dim_obstruction(pair);
        Certificate cert;
        cert.status = CertStatus::Refuted;
        cert.method = "odd-degree-obstruction";
        cert.witness_point = obs.point;
        if (obs.exact_zero_cs) {
            cert.trace.push_back("family coefficient vanishes exactly at lambda = (" +
                                 obs.exact_zero_cs->first.str() + ", " + obs.exact_zero_cs->second.str() +
                                 ") at the report point");
        }
        if (obs.zero) {
            cert.witness_interval = IntervalWitness{obs.zero->lo, obs.zero->hi, obs.zero->value_lo,
                                                    obs.zero->value_hi, "half-angle parameter of the family circle"};
        }
        cert.trace.push_back("odd-dimensional obstruction: the restricted family coefficient is an odd "
                             "polynomial on the circle and must vanish");
        return cert;
    }

    auto ext = extend_with_lambda(spec);
    auto vol = volume_coefficient(ext.omega_lambda);
    return nonvanishing_certificate(vol.coefficient, ext.chart, ext.hints, opts);
}

// --- tautness ----------------------------------------------------------------

TautnessReport taut_check(const PSphereSpec& spec) {
    require_family(spec);
    TautnessReport rep;
    auto ext = extend_with_lambda(spec);
    rep.chart = ext.chart;
    rep.lambda_vars = ext.lambda;
    rep.lambda_coefficient = volume_coefficient(ext.omega_lambda).coefficient;
    for (auto& [m, c] : rep.lambda_coefficient.terms()) {
        bool has_lambda = false;
        for (VarId l : ext.lambda) has_lambda = has_lambda || m.degree_in(l) > 0;
        (has_lambda ? rep.residual : rep.lambda_free_part).add_term(m, c);
    }
    rep.taut = rep.residual.is_zero();

    // independent cross-check in the three-dimensional circle case:
    // w1^dw1 = w2^dw2 and w1^dw2 = -w2^dw1
    int manifold_dim = spec.chart->mode == ChartMode::Sphere
                           ? (int)spec.chart->groups[spec.chart->sphere_group].vars.size() - 1
                           : spec.chart->dimension();
    if (spec.p() == 1 && manifold_dim == 3) {
        const auto& w1 = spec.generators[0];
        const auto& w2 = spec.generators[1];
        auto top = [&](const DiffForm& a, const DiffForm& b) {
            DiffForm t = wedge(a, ext_d(b));
            if (spec.chart->mode == ChartMode::Sphere)
                t = wedge(t, group_iota(spec.chart, spec.chart->groups[spec.chart->sphere_group]));
            GenTuple full;
            for (int i = 0; i < spec.chart->ngens(); ++i) full.push_back(i);
            return spec.chart->nf(t.component(full));
        };
        bool eq1 = (top(w1, w1) - top(w2, w2)).is_zero();
        bool eq2 = (top(w1, w2) + top(w2, w1)).is_zero();
        rep.dim3_cross_check = eq1 && eq2;
        if (*rep.dim3_cross_check != rep.taut)
            throw InternalError("tautness cross-check disagrees with the lambda reduction");
    }
    return rep;
}

// --- roundness ----------------------------------------------------------------

RoundnessReport round_check(const PSphereSpec& spec) {
    require_family(spec);
    RoundnessReport rep;
    const ChartPtr& ch = spec.chart;
    int n = (int)spec.generators.size();
    std::vector<DiffForm> dws;
    for (auto& w : spec.generators) dws.push_back(ext_d(w));
    for (auto& w : spec.generators) rep.reeb.push_back(reeb_field(w));

    auto fail = [&](int i, int j, const std::string& cond) {
        if (!rep.first_failure) {
            rep.first_failure = {i + 1, j + 1};
            rep.first_failure_condition = cond;
        }
    };

    rep.round = true;
    for (int i = 0; i < n; ++i) {
        // condition (ii) with i = j reads 2 R_i . dw_i = 0: automatic for a
        // Reeb field, asserted as a solver sanity check
        const auto& Ri = rep.reeb[i];
        DiffForm self = contract(Ri.numerator, dws[i]);
        if (Ri.multiplier && ch->mode == ChartMode::Sphere)
            self = self - group_iota(ch, ch->groups[ch->sphere_group]).scale(*Ri.multiplier);
        auto self_eq = form_is_zero(self + self);
        rep.cond_ii_residues[{i + 1, i + 1}] = self_eq;
        if (!self_eq.equal) throw InternalError("Reeb field fails its own contraction identity");
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& Ri = rep.reeb[i];
            const auto& Rj = rep.reeb[j];
            // w_i(R_j) + w_j(R_i) = 0, denominators cleared
            Poly pairing;
            for (auto& [g, c] : Rj.numerator.coefficients())
                pairing += spec.generators[i].component({g}) * c * Ri.denominator;
            for (auto& [g, c] : Ri.numerator.coefficients())
                pairing += spec.generators[j].component({g}) * c * Rj.denominator;
            Poly res_i = ch->nf(pairing);
            rep.cond_i_residues[{i + 1, j + 1}] = res_i;
            if (!res_i.is_zero()) {
                rep.round = false;
                fail(i, j, "i");
            }

            // R_i . dw_j + R_j . dw_i = 0, denominators cleared; on a sphere
            // chart each term may shed a multiple of iota, which the form
            // reduction absorbs
            DiffForm lhs = contract(Ri.numerator, dws[j]).scale(Rj.denominator) +
                           contract(Rj.numerator, dws[i]).scale(Ri.denominator);
            auto eq = form_is_zero(lhs);
            rep.cond_ii_residues[{i + 1, j + 1}] = eq;
            if (!eq.equal) {
                rep.round = false;
                fail(i, j, "ii");
            }
        }
    }
    return rep;
}

// --- odd-dimension obstruction -------------------------------------------------

static Rational frame_det_at(const ChartPtr& ch, const GenTuple& t, const std::vector<VectorField>& frame,
                             const std::map<VarId, Rational>& pt) {
    size_t k = frame.size();
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) m[i][j] = frame[j].coefficient(t[i]).eval(pt);
    (void)ch;
    // Gaussian elimination over exact rationals
    Rational det(1);
    for (size_t c = 0; c < k; ++c) {
        size_t sel = c;
        while (sel < k && m[sel][c].is_zero()) ++sel;
        if (sel == k) return Rational(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (size_t r = c + 1; r < k; ++r) {
            Rational f = m[r][c] * inv;
            if (f.is_zero()) continue;
            for (size_t cc = c; cc < k; ++cc) m[r][cc] -= f * m[c][cc];
        }
    }
    return det;
}

ObstructionReport odd_dim_obstruction(const PSphereSpec& spec) {
    const ChartPtr& ch = spec.chart;
    std::map<VarId, Rational> pt;
    for (VarId v = 0; v < ch->nvars(); ++v) pt[v] = Rational(0);
    for (auto& g : ch->groups) pt[g.pivot()] = Rational(1);
    std::vector<VectorField> frame;
    for (int g = 0; g < ch->ngens(); ++g) frame.push_back(VectorField::dual(ch, g));
    return odd_dim_obstruction(spec, pt, frame);
}

ObstructionReport odd_dim_obstruction(const PSphereSpec& spec, const std::map<VarId, Rational>& point,
                                      const std::vector<VectorField>& frame) {
    require_family(spec);
    const ChartPtr& ch = spec.chart;
    if (spec.p() != 1) throw InputError("the circle obstruction takes a pair of generators");
    if (ch->mode != ChartMode::Ambient) throw InputError("the circle obstruction runs on ambient charts");
    int dim = ch->dimension();
    if (dim % 4 != 1) throw InputError("the circle obstruction needs dimension 1 mod 4");
    if ((int)frame.size() != dim) throw InputError("the obstruction frame must have full length");
    ch->require_point(point);

    ObstructionReport rep;
    rep.point = point;
    rep.frame = frame;

    // extend the chart by the circle coefficients (c, s)
    auto ext = std::make_shared<Chart>(*ch);
    ext->name += "+circle";
    std::string cn = "c", sn = "s";
    while (ext->find_var(cn) >= 0) cn += "_";
    while (ext->find_var(sn) >= 0) sn += "_";
    ext->vars.push_back(cn);
    ext->var_diff.emplace_back();
    VarId cv = ext->nvars() - 1;
    ext->vars.push_back(sn);
    ext->var_diff.emplace_back();
    VarId sv = ext->nvars() - 1;
    ext->groups.push_back(RelationGroup{{cv, sv}});
    ChartPtr extp = ext;

    DiffForm omega = transplant(spec.generators[0], extp).scale(Poly::var(cv)) +
                     transplant(spec.generators[1], extp).scale(Poly::var(sv));
    int n = (dim - 1) / 2;
    DiffForm top = wedge(omega, wpow(ext_d(omega), n));
    GenTuple full;
    for (int i = 0; i < extp->ngens(); ++i) full.push_back(i);
    Poly coeff = top.component(full);

    // specialize the base point; transfer to a dedicated (c, s) chart
    Poly restricted = coeff.eval_partial(point);
    std::map<VarId, Rational> framept = point;
    framept[cv] = Rational(1);
    framept[sv] = Rational(0);
    Rational frame_factor = frame_det_at(ch, [&] {
        GenTuple t;
        for (int i = 0; i < dim; ++i) t.push_back(i);
        return t;
    }(), frame, point);

    ChartBuilder cb("circle");
    VarId ccv = cb.add_param("c");
    VarId csv = cb.add_param("s");
    cb.add_group({ccv, csv});
    rep.circle_chart = cb.build();
    Poly circle;
    for (auto& [m, k] : restricted.terms()) {
        Monomial nm = Monomial::var(ccv, m.degree_in(cv)) * Monomial::var(csv, m.degree_in(sv));
        if (m.degree() != m.degree_in(cv) + m.degree_in(sv))
            throw InternalError("restriction left base variables behind");
        circle.add_term(nm, k * frame_factor);
    }
    rep.circle_poly = circle;

    rep.all_odd = true;
    for (auto& [m, k] : circle.terms()) rep.all_odd = rep.all_odd && (m.degree() % 2 == 1);
    if (!rep.all_odd)
        throw InternalError("family coefficient restriction is not odd; expansion bookkeeping broken");

    if (circle.is_zero()) {
        rep.refutes = true;
        rep.exact_zero_cs = {Rational(1), Rational(0)};
        rep.note = "the family coefficient vanishes identically at the report point";
        return rep;
    }

    // half-angle substitution c = (1-u^2)/(1+u^2), s = 2u/(1+u^2); the odd
    // total degree makes every complementary power even, hence polynomial
    int deg = circle.total_degree();
    VarId u = 0;
    Poly one_minus = Poly(Rational(1)) - Poly::var(u, 2);
    Poly one_plus = Poly(Rational(1)) + Poly::var(u, 2);
    Poly two_u = Poly::var(u).scale(Rational(2));
    Poly q;
    for (auto& [m, k] : circle.terms()) {
        int a = m.degree_in(ccv), b = m.degree_in(csv);
        q += (one_minus.pow(a) * two_u.pow(b) * one_plus.pow((unsigned)((deg - a - b) / 2))).scale(k);
    }
    auto sr = sturm_sign_on_interval(q, u, Rational(-1), Rational(1));
    if (sr.is_strict_sign())
        throw InternalError("odd circle polynomial claims a strict sign; impossible");
    rep.zero = sr;
    if (sr.lo == sr.hi) {
        Rational u0 = sr.lo;
        Rational den = Rational(1) + u0 * u0;
        rep.exact_zero_cs = {(Rational(1) - u0 * u0) / den, Rational(2) * u0 / den};
    }
    rep.refutes = true;
    std::ostringstream os;
    os << "odd polynomial of degree " << deg << " on the family circle; zero isolated in ["
       << sr.lo.str() << ", " << sr.hi.str() << "]";
    rep.note = os.str();
    return rep;
}

// --- degree-7 systems -----------------------------------------------------------

static int manifold_dimension(const ChartPtr& ch) {
    return ch->mode == ChartMode::Sphere ? (int)ch->groups[ch->sphere_group].vars.size() - 1
                                         : ch->dimension();
}

SystemReport taut7_check(const PSphereSpec& spec) {
    require_family(spec);
    if (spec.p() != 1) throw InputError("the degree-7 tautness system takes a pair");
    if (manifold_dimension(spec.chart) != 7) throw InputError("the degree-7 system needs dimension 7");
    const auto& w1 = spec.generators[0];
    const auto& w2 = spec.generators[1];
    DiffForm d1 = ext_d(w1), d2 = ext_d(w2);

    auto c3 = [&](const DiffForm& a, const DiffForm& x, const DiffForm& y, const DiffForm& z) {
        return wedge(a, wedge(x, wedge(y, z)));
    };
    SystemReport rep;
    rep.labels = {"w1^(dw1)^3 - w2^(dw2)^3", "3 w2^dw2^(dw1)^2 + 3 w1^dw1^(dw2)^2 - 2 w1^(dw1)^3",
                  "w1^(dw2)^3 + 3 w2^dw1^(dw2)^2", "w2^(dw1)^3 + 3 w1^dw2^(dw1)^2"};
    rep.residues.push_back(manifold_form_is_zero(c3(w1, d1, d1, d1) - c3(w2, d2, d2, d2)));
    rep.residues.push_back(manifold_form_is_zero(c3(w2, d2, d1, d1).scale(Rational(3)) +
                                                 c3(w1, d1, d2, d2).scale(Rational(3)) -
                                                 c3(w1, d1, d1, d1).scale(Rational(2))));
    rep.residues.push_back(manifold_form_is_zero(c3(w1, d2, d2, d2) + c3(w2, d1, d2, d2).scale(Rational(3))));
    rep.residues.push_back(manifold_form_is_zero(c3(w2, d1, d1, d1) + c3(w1, d2, d1, d1).scale(Rational(3))));
    rep.all_zero = true;
    for (auto& r : rep.residues) rep.all_zero = rep.all_zero && r.equal;
    return rep;
}

SystemReport roundtaut7_necessary(const PSphereSpec& spec) {
    require_family(spec);
    if (spec.p() != 1) throw InputError("the degree-6 consequence system takes a pair");
    if (manifold_dimension(spec.chart) != 7) throw InputError("the degree-6 system needs dimension 7");
    DiffForm d1 = ext_d(spec.generators[0]), d2 = ext_d(spec.generators[1]);
    SystemReport rep;
    rep.labels = {"(dw1)^3 - 3 dw1^(dw2)^2", "(dw2)^3 - 3 dw2^(dw1)^2"};
    rep.residues.push_back(manifold_form_is_zero(wpow(d1, 3) - wedge(d1, wpow(d2, 2)).scale(Rational(3))));
    rep.residues.push_back(manifold_form_is_zero(wpow(d2, 3) - wedge(d2, wpow(d1, 2)).scale(Rational(3))));
    rep.all_zero = true;
    for (auto& r : rep.residues) rep.all_zero = rep.all_zero && r.equal;
    return rep;
}

// --- Reeb independence -----------------------------------------------------------

IndependenceReport reeb_independence_check(const PSphereSpec& spec, const CheckOptions& opts) {
    require_family(spec);
    if (spec.p() != 1) throw InputError("Reeb independence takes a pair");
    const ChartPtr& ch = spec.chart;
    ReebField r1 = reeb_field(spec.generators[0]);
    ReebField r2 = reeb_field(spec.generators[1]);

    IndependenceReport rep;
    Poly sum;
    for (int g = 0; g < ch->ngens(); ++g) {
        for (int h = g + 1; h < ch->ngens(); ++h) {
            Poly minor = r1.numerator.coefficient(g) * r2.numerator.coefficient(h) -
                         r1.numerator.coefficient(h) * r2.numerator.coefficient(g);
            minor = ch->nf(minor);
            sum += minor * minor;
        }
    }
    rep.minor_sum = ch->nf(sum);
    rep.minor_certificate = nonvanishing_certificate(rep.minor_sum, ch, {}, opts);
    rep.independent = rep.minor_certificate.certified();
    rep.dependent = rep.minor_certificate.status == CertStatus::Refuted;
    return rep;
}

} // namespace csl
