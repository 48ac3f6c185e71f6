#include "csl/contact.hpp"

#include <sstream>

#include "csl/linsolve.hpp"
#include "csl/sturm.hpp"

namespace csl {

std::string Certificate::status_str() const {
    switch (status) {
        case CertStatus::CertifiedConstant: return "certified-constant";
        case CertStatus::CertifiedSign:
            return conditional ? "conditional-sign" : (std::string("certified-sign-") + (sign > 0 ? "positive" : "negative"));
        case CertStatus::Refuted: return "refuted";
        case CertStatus::NumericUnrefuted: return "numeric-unrefuted";
    }
    return "?";
}

std::string VolumeReport::reference_str(const ChartPtr& chart) const {
    std::string s;
    for (size_t i = 0; i < reference.size(); ++i) {
        if (i) s += "^";
        s += chart->gens[reference[i]].name;
    }
    return s;
}

const VectorField& ReebField::field() const {
    if (!polynomial()) throw InternalError("Reeb field has a non-trivial denominator");
    return numerator;
}

// --- volume coefficient ----------------------------------------------------

VolumeReport volume_coefficient(const DiffForm& omega) {
    const ChartPtr& ch = omega.chart();
    if (omega.is_zero() || omega.degree() != 1) throw InputError("volume coefficient needs a 1-form");

    VolumeReport rep;
    DiffForm dw = ext_d(omega);
    if (ch->mode == ChartMode::Sphere) {
        const auto& g = ch->groups[ch->sphere_group];
        if (g.vars.size() % 2) throw InputError("sphere mode needs an even ambient dimension");
        rep.sphere_mode = true;
        rep.power = ((int)g.vars.size() - 2) / 2;
        DiffForm top = wedge(wedge(omega, wpow(dw, rep.power)), group_iota(ch, g));
        for (int i = 0; i < ch->ngens(); ++i) rep.reference.push_back(i);
        rep.coefficient = ch->nf(top.component(rep.reference));
    } else {
        int dim = ch->dimension();
        if (dim % 2 == 0) throw InputError("volume form needs an odd-dimensional chart");
        rep.power = (dim - 1) / 2;
        DiffForm top = wedge(omega, wpow(dw, rep.power));
        for (int i = 0; i < dim; ++i) rep.reference.push_back(i);
        rep.coefficient = ch->nf(top.component(rep.reference));
    }
    return rep;
}

// --- nonvanishing certificates ---------------------------------------------

bool verify_hint(BoundHint& hint, const Chart& chart) {
    hint.verified = false;
    if (hint.auxiliary.is_zero()) return false;
    int ga = -1, gb = -1;
    Rational max_abs(0);
    std::vector<bool> used_a, used_b;
    auto group_of = [&](VarId v) {
        for (size_t i = 0; i < chart.groups.size(); ++i)
            if (chart.groups[i].contains(v)) return (int)i;
        return -1;
    };
    for (auto& [m, c] : hint.auxiliary.terms()) {
        auto& e = m.exponents();
        if (e.size() != 2 || e[0].second != 1 || e[1].second != 1) return false;
        int g0 = group_of(e[0].first), g1 = group_of(e[1].first);
        if (g0 < 0 || g1 < 0 || g0 == g1) return false;
        if (ga < 0) {
            ga = std::min(g0, g1);
            gb = std::max(g0, g1);
            used_a.assign(chart.groups[ga].vars.size(), false);
            used_b.assign(chart.groups[gb].vars.size(), false);
        }
        if (std::min(g0, g1) != ga || std::max(g0, g1) != gb) return false;
        VarId va = g0 == ga ? e[0].first : e[1].first;
        VarId vb = g0 == ga ? e[1].first : e[0].first;
        auto idx = [&](const RelationGroup& g, VarId v) {
            for (size_t i = 0; i < g.vars.size(); ++i)
                if (g.vars[i] == v) return (int)i;
            return -1;
        };
        int ia = idx(chart.groups[ga], va), ib = idx(chart.groups[gb], vb);
        if (used_a[ia] || used_b[ib]) return false;  // pairing must be one-to-one
        used_a[ia] = used_b[ib] = true;
        if (c.abs() > max_abs) max_abs = c.abs();
    }
    if (hint.lo > -max_abs || hint.hi < max_abs) return false;
    hint.verified = true;
    std::ostringstream os;
    os << "|" << hint.name << "| <= " << max_abs.str()
       << " by Cauchy-Schwarz over two unit relation groups";
    hint.justification = os.str();
    return true;
}

// try to write c as a univariate polynomial in u (modulo the relations)
static std::optional<std::vector<Rational>> decompose_in(const Poly& c, const Poly& u,
                                                         const ChartPtr& ch) {
    if (u.is_constant()) return std::nullopt;
    int m = std::max(1, c.total_degree() / std::max(1, u.total_degree()));
    std::vector<Poly> powers{Poly(Rational(1))};
    for (int j = 1; j <= m; ++j) powers.push_back(ch->nf(powers.back() * u));

    // rows: monomials of c - sum a_j u^j ; unknowns a_j
    std::map<Monomial, size_t> row_of;
    auto row = [&](const Monomial& mo) {
        auto [it, fresh] = row_of.try_emplace(mo, row_of.size());
        (void)fresh;
        return it->second;
    };
    std::vector<std::map<size_t, Rational>> cols(m + 1);
    for (int j = 0; j <= m; ++j)
        for (auto& [mo, k] : powers[j].terms()) cols[j][row(mo)] = k;
    std::map<size_t, Rational> rhs;
    Poly cnf = ch->nf(c);
    for (auto& [mo, k] : cnf.terms()) rhs[row(mo)] = k;

    RatMatrix A(row_of.size(), std::vector<Rational>(m + 1, Rational(0)));
    std::vector<Rational> b(row_of.size(), Rational(0));
    for (int j = 0; j <= m; ++j)
        for (auto& [r, k] : cols[j]) A[r][j] = k;
    for (auto& [r, k] : rhs) b[r] = k;
    return solve_rational(std::move(A), std::move(b));
}

Certificate nonvanishing_certificate(const Poly& coefficient, const ChartPtr& chart,
                                     const std::vector<BoundHint>& hints, const CheckOptions& opts) {
    Certificate cert;
    Poly c = chart->nf(coefficient);
    std::vector<VarId> free_vars;
    for (VarId v = 0; v < chart->nvars(); ++v) {
        bool grouped = false;
        for (auto& g : chart->groups) grouped = grouped || g.contains(v);
        if (!grouped) free_vars.push_back(v);
    }
    SpherePointSource source(chart->groups, free_vars);

    if (c.is_zero()) {
        cert.status = CertStatus::Refuted;
        cert.method = "identically-zero";
        cert.witness_point = source.point(0);
        cert.trace.push_back("coefficient is identically zero; any relation point is a witness");
        return cert;
    }
    if (c.is_constant()) {
        cert.status = CertStatus::CertifiedConstant;
        cert.constant_value = c.constant_value();
        cert.method = "constant";
        cert.trace.push_back("coefficient reduces to the constant " + cert.constant_value.str());
        return cert;
    }

    // coefficient bound: every non-constant monomial confined to unit groups
    // is bounded by 1 in absolute value on the variety
    {
        Rational K = c.constant_term();
        bool confined = true;
        Rational noise(0);
        for (auto& [m, k] : c.terms()) {
            if (m.is_one()) continue;
            for (auto& [v, e] : m.exponents()) {
                bool grouped = false;
                for (auto& g : chart->groups) grouped = grouped || g.contains(v);
                confined = confined && grouped;
            }
            noise += k.abs();
        }
        if (confined && !K.is_zero() && noise < K.abs()) {
            cert.status = CertStatus::CertifiedSign;
            cert.sign = K.sign();
            cert.method = "coefficient-bound";
            cert.bound_constant = K;
            cert.bound_noise = noise;
            cert.trace.push_back("unit-group monomials bound the non-constant part by " + noise.str() +
                                 " < |" + K.str() + "|");
            return cert;
        }
    }

    // hint route: c univariate in a bounded auxiliary
    for (BoundHint hint : hints) {
        bool usable = hint.assumed || verify_hint(hint, *chart);
        if (!usable) {
            cert.trace.push_back("hint '" + hint.name + "' failed verification; ignored");
            continue;
        }
        auto dec = decompose_in(c, hint.auxiliary, chart);
        if (!dec) {
            cert.trace.push_back("coefficient is not a polynomial in hint '" + hint.name + "'");
            continue;
        }
        Poly g = from_univariate(*dec, 0);
        if (g.is_zero()) continue;
        auto sr = sturm_sign_on_interval(*dec, hint.lo, hint.hi);
        std::string just = hint.assumed ? "assumed range" : hint.justification;
        if (sr.is_strict_sign()) {
            cert.status = CertStatus::CertifiedSign;
            cert.sign = sr.sign();
            cert.method = "sturm-hint";
            cert.conditional = hint.assumed;
            cert.trace.push_back("coefficient = g(" + hint.name + ") with g strictly " +
                                 (sr.sign() > 0 ? "positive" : "negative") + " on [" + hint.lo.str() +
                                 ", " + hint.hi.str() + "] (" + just + ")");
            return cert;
        }
        cert.trace.push_back("Sturm found a zero of the hint-variable profile; falling through to grid refutation");
    }

    // exact grid: refute or report honestly
    Rational best;
    bool have_best = false;
    for (unsigned long long n = 0; n < opts.grid_points; ++n) {
        auto pt = source.point(n);
        Rational v = c.eval(pt);
        if (v.is_zero()) {
            cert.status = CertStatus::Refuted;
            cert.method = "grid";
            cert.witness_point = pt;
            cert.samples = n + 1;
            cert.trace.push_back("exact zero of the coefficient at a relation-satisfying rational point");
            return cert;
        }
        if (!have_best || v.abs() < best) {
            best = v.abs();
            have_best = true;
        }
    }
    cert.status = CertStatus::NumericUnrefuted;
    cert.method = "grid";
    cert.samples = opts.grid_points;
    cert.min_abs = best;
    cert.trace.push_back("no zero among " + std::to_string(opts.grid_points) +
                         " exact points; min |value| = " + best.str() + " (no proof)");
    return cert;
}

// --- Reeb fields -------------------------------------------------------------

namespace {

// normal-form monomial basis of degree <= d
std::vector<Monomial> nf_monomials(const ChartPtr& ch, int d) {
    std::vector<Monomial> out{Monomial()};
    for (int step = 0; step < d; ++step) {
        std::vector<Monomial> next = out;
        for (auto& m : out) {
            for (VarId v = 0; v < ch->nvars(); ++v) {
                Monomial cand = m * Monomial::var(v);
                bool ok = true;
                for (auto& g : ch->groups) ok = ok && cand.degree_in(g.pivot()) < 2;
                if (ok) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        out = std::move(next);
    }
    return out;
}

struct ReebProblem {
    const ChartPtr& ch;
    const DiffForm& omega;
    DiffForm dw;
    bool sphere;
    const RelationGroup* host = nullptr;
    std::vector<DiffForm> dual_contractions;  // per generator: dual_g . dw
    DiffForm iota;

    explicit ReebProblem(const DiffForm& w)
        : ch(w.chart()), omega(w), dw(ext_d(w)), sphere(w.chart()->mode == ChartMode::Sphere),
          iota(DiffForm::zero(w.chart())) {
        for (int g = 0; g < ch->ngens(); ++g)
            dual_contractions.push_back(contract(VectorField::dual(ch, g), dw));
        if (sphere) {
            host = &ch->groups[ch->sphere_group];
            iota = group_iota(ch, *host);
        }
    }
};

// verify the defining equations, with denominators cleared; throws on failure
void verify_reeb(const ReebProblem& prob, const ReebField& R) {
    Poly pairing;
    for (auto& [g, coeff] : R.numerator.coefficients()) pairing += prob.omega.component({g}) * coeff;
    if (!prob.ch->nf(pairing - R.denominator).is_zero())
        throw InternalError("Reeb self-check failed: omega(R) != 1");

    DiffForm contracted = contract(R.numerator, prob.dw);
    if (prob.sphere && R.multiplier) contracted = contracted - prob.iota.scale(*R.multiplier);
    if (!form_is_zero(contracted).equal)
        throw InternalError("Reeb self-check failed: R . d(omega) residue");

    if (prob.sphere) {
        Poly t;
        for (VarId v : prob.host->vars) {
            int g = prob.ch->gen_of_var(v);
            t += Poly::var(v) * R.numerator.coefficient(g);
        }
        if (!prob.ch->nf(t).is_zero()) throw InternalError("Reeb self-check failed: not tangent");
    }
}

std::optional<ReebField> reeb_polynomial_route(const ReebProblem& prob, int degree) {
    const ChartPtr& ch = prob.ch;
    auto basis = nf_monomials(ch, degree);
    size_t nb = basis.size();

    // unknown layout: coordinate-dual components first, then abstract duals,
    // then the sphere multiplier; free unknowns resolve to zero
    std::vector<int> gen_order;
    for (int g = 0; g < ch->ngens(); ++g)
        if (ch->gens[g].coord_var >= 0) gen_order.push_back(g);
    for (int g = 0; g < ch->ngens(); ++g)
        if (ch->gens[g].coord_var < 0) gen_order.push_back(g);
    size_t nunk = gen_order.size() * nb + (prob.sphere ? nb : 0);

    // rows keyed by (equation tag, generator tuple, monomial)
    std::map<std::tuple<int, GenTuple, Monomial>, size_t> row_of;
    auto row = [&](int eq, const GenTuple& t, const Monomial& m) {
        auto [it, fresh] = row_of.try_emplace(std::make_tuple(eq, t, m), row_of.size());
        (void)fresh;
        return it->second;
    };
    std::vector<std::map<size_t, Rational>> cols(nunk);
    std::map<size_t, Rational> rhs;

    auto add_poly = [&](int eq, const GenTuple& t, const Poly& p, size_t unknown) {
        for (auto& [m, c] : p.terms()) cols[unknown][row(eq, t, m)] += c;
    };

    for (size_t gi = 0; gi < gen_order.size(); ++gi) {
        int g = gen_order[gi];
        for (size_t bi = 0; bi < nb; ++bi) {
            size_t u = gi * nb + bi;
            Poly mono = Poly::term(Rational(1), basis[bi]);
            // omega(R) = 1
            add_poly(0, {}, ch->nf(mono * prob.omega.component({g})), u);
            // R . dw (= mu * iota in sphere mode)
            for (auto& [t, p] : prob.dual_contractions[g].components())
                add_poly(1, t, ch->nf(mono * p), u);
            // tangency
            if (prob.sphere) {
                int v = ch->gens[g].coord_var;
                if (v >= 0 && prob.host->contains(v)) add_poly(2, {}, ch->nf(mono * Poly::var(v)), u);
            }
        }
    }
    if (prob.sphere) {
        for (size_t bi = 0; bi < nb; ++bi) {
            size_t u = gen_order.size() * nb + bi;
            Poly mono = Poly::term(Rational(1), basis[bi]);
            for (auto& [t, p] : prob.iota.components()) add_poly(1, t, ch->nf(-(mono * p)), u);
        }
    }
    rhs[row(0, {}, Monomial())] = Rational(1);

    RatMatrix A(row_of.size(), std::vector<Rational>(nunk, Rational(0)));
    std::vector<Rational> b(row_of.size(), Rational(0));
    for (size_t u = 0; u < nunk; ++u)
        for (auto& [r, k] : cols[u]) A[r][u] = k;
    for (auto& [r, k] : rhs) b[r] = k;

    auto full = solve_rational_full(std::move(A), std::move(b));
    if (!full) return std::nullopt;
    // a Reeb field is unique; freedom in the solution space means the
    // defining system is degenerate, which the fraction route diagnoses
    if (!full->unique()) return std::nullopt;
    auto& sol = full->x;

    std::map<int, Poly> coeffs;
    for (size_t gi = 0; gi < gen_order.size(); ++gi) {
        Poly p;
        for (size_t bi = 0; bi < nb; ++bi) p.add_term(basis[bi], sol[gi * nb + bi]);
        if (!p.is_zero()) coeffs[gen_order[gi]] = p;
    }
    ReebField R;
    R.numerator = VectorField(ch, std::move(coeffs));
    R.route = "polynomial";
    if (prob.sphere) {
        Poly mu;
        for (size_t bi = 0; bi < nb; ++bi) mu.add_term(basis[bi], sol[gen_order.size() * nb + bi]);
        R.multiplier = ch->nf(mu);
        R.numerator.tangent_to_sphere = true;
    }
    verify_reeb(prob, R);
    return R;
}

std::optional<ReebField> reeb_fraction_route(const ReebProblem& prob) {
    const ChartPtr& ch = prob.ch;
    int d = ch->ngens();

    auto omega_coeff = [&](int g) { return prob.omega.component({g}); };
    auto contraction_coeff = [&](int h, int g) { return prob.dual_contractions[g].component({h}); };

    if (!prob.sphere) {
        // bordered system [[0, w],[-w, C]] (nu, R) = e1; nu vanishes identically
        PolyMatrix M(d + 1, std::vector<Poly>(d + 1));
        std::vector<Poly> b(d + 1);
        for (int g = 0; g < d; ++g) M[0][g + 1] = omega_coeff(g);
        for (int h = 0; h < d; ++h) {
            M[h + 1][0] = -omega_coeff(h);
            for (int g = 0; g < d; ++g) M[h + 1][g + 1] = contraction_coeff(h, g);
        }
        b[0] = Poly(Rational(1));
        Poly det = bareiss_determinant(M);
        if (det.is_zero()) return std::nullopt;
        std::map<int, Poly> num;
        for (int g = 0; g < d; ++g) {
            PolyMatrix Mj = M;
            for (int i = 0; i <= d; ++i) Mj[i][g + 1] = b[i];
            Poly nj = ch->nf(bareiss_determinant(std::move(Mj)));
            if (!nj.is_zero()) num[g] = nj;
        }
        ReebField R;
        R.denominator = ch->nf(det);
        if (R.denominator.is_zero()) return std::nullopt;
        R.numerator = VectorField(ch, std::move(num));
        R.route = "fraction";
        if (R.denominator.is_constant()) {
            Rational k = R.denominator.constant_value();
            R.numerator = R.numerator.scale(Rational(1) / k);
            R.denominator = Poly(Rational(1));
        }
        verify_reeb(prob, R);
        return R;
    }

    // sphere mode: m+2 equations, m+1 unknowns (R, mu); drop one row at a time
    int m = d;
    std::vector<std::vector<Poly>> rows;
    std::vector<Poly> rhs;
    {
        std::vector<Poly> r(m + 1);
        for (int g = 0; g < m; ++g) r[g] = omega_coeff(g);
        rows.push_back(r);
        rhs.push_back(Poly(Rational(1)));
    }
    for (int h = 0; h < m; ++h) {
        std::vector<Poly> r(m + 1);
        for (int g = 0; g < m; ++g) r[g] = contraction_coeff(h, g);
        r[m] = -prob.iota.component({h});
        rows.push_back(r);
        rhs.push_back(Poly());
    }
    {
        std::vector<Poly> r(m + 1);
        for (int g = 0; g < m; ++g) {
            int v = ch->gens[g].coord_var;
            if (v >= 0) r[g] = Poly::var(v);
        }
        rows.push_back(r);
        rhs.push_back(Poly());
    }

    for (size_t drop = 0; drop < rows.size(); ++drop) {
        PolyMatrix M;
        std::vector<Poly> b;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == drop) continue;
            M.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        Poly det = bareiss_determinant(M);
        if (det.is_zero()) continue;
        std::vector<Poly> nums(m + 1);
        for (int j = 0; j <= m; ++j) {
            PolyMatrix Mj = M;
            for (size_t i = 0; i < Mj.size(); ++i) Mj[i][j] = b[i];
            nums[j] = ch->nf(bareiss_determinant(std::move(Mj)));
        }
        ReebField R;
        R.denominator = ch->nf(det);
        if (R.denominator.is_zero()) continue;
        std::map<int, Poly> num;
        for (int g = 0; g < m; ++g)
            if (!nums[g].is_zero()) num[g] = nums[g];
        R.numerator = VectorField(ch, std::move(num));
        R.multiplier = nums[m];
        R.route = "fraction";
        if (R.denominator.is_constant()) {
            Rational k = R.denominator.constant_value();
            R.numerator = R.numerator.scale(Rational(1) / k);
            R.multiplier = R.multiplier->scale(Rational(1) / k);
            R.denominator = Poly(Rational(1));
        }
        try {
            verify_reeb(prob, R);
        } catch (const InternalError&) {
            continue;  // dropped a load-bearing equation; try the next
        }
        R.numerator.tangent_to_sphere = true;
        return R;
    }
    return std::nullopt;
}

} // namespace

ReebField reeb_field(const DiffForm& omega) {
    if (omega.is_zero() || omega.degree() != 1) throw InputError("Reeb field needs a 1-form");
    ReebProblem prob(omega);

    int max_coeff_degree = 0;
    for (auto& [t, p] : omega.components()) max_coeff_degree = std::max(max_coeff_degree, p.total_degree());
    int dmax = std::max(2, max_coeff_degree + 1);
    for (int d = 0; d <= dmax; ++d) {
        auto R = reeb_polynomial_route(prob, d);
        if (R) return *R;
    }
    auto R = reeb_fraction_route(prob);
    if (R) return *R;

    if (prob.sphere)
        throw NotContactOnSphere("no tangent Reeb solution for the form on the sphere chart");
    throw NotContact("the Reeb defining system is singular over the fraction field");
}

} // namespace csl
