#include "csl/form.hpp"

#include <algorithm>
#include <sstream>

#include "csl/errors.hpp"

namespace csl {

static void normalize_data(const Chart& chart, FormData& d) {
    for (auto it = d.begin(); it != d.end();) {
        if (chart.tuple_vanishes(it->first)) {
            it = d.erase(it);
            continue;
        }
        it->second = chart.nf(it->second);
        it = it->second.is_zero() ? d.erase(it) : std::next(it);
    }
}

static void require_same_chart(const DiffForm& a, const DiffForm& b) {
    if (a.chart() != b.chart()) throw InputError("forms live on different charts");
}

DiffForm DiffForm::scalar(ChartPtr c, Poly p) {
    c->validate_vars(p);
    FormData d;
    d[{}] = std::move(p);
    return from_components(std::move(c), std::move(d));
}

DiffForm DiffForm::generator(ChartPtr c, int gen_index) {
    if (gen_index < 0 || gen_index >= c->ngens()) throw InputError("unknown generator index");
    FormData d;
    d[{gen_index}] = Poly(Rational(1));
    return DiffForm(std::move(c), std::move(d));
}

DiffForm DiffForm::from_components(ChartPtr c, FormData data) {
    for (auto& [t, p] : data) {
        c->validate_vars(p);
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] < 0 || t[i] >= c->ngens()) throw InputError("component uses unknown generator");
            if (i && t[i] <= t[i - 1]) throw InputError("generator tuples must be strictly increasing");
        }
    }
    normalize_data(*c, data);
    return DiffForm(std::move(c), std::move(data));
}

Poly DiffForm::component(const GenTuple& t) const {
    auto it = c_.find(t);
    return it == c_.end() ? Poly() : it->second;
}

bool DiffForm::is_homogeneous() const {
    if (c_.empty()) return true;
    size_t d = c_.begin()->first.size();
    for (auto& [t, p] : c_)
        if (t.size() != d) return false;
    return true;
}

int DiffForm::degree() const {
    if (c_.empty()) return 0;
    if (!is_homogeneous()) throw InputError("degree of a mixed-degree form");
    return (int)c_.begin()->first.size();
}

int DiffForm::max_degree() const {
    int d = 0;
    for (auto& [t, p] : c_) d = std::max(d, (int)t.size());
    return d;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    require_same_chart(*this, o);
    FormData d = c_;
    for (auto& [t, p] : o.c_) {
        auto [it, fresh] = d.try_emplace(t, p);
        if (!fresh) it->second += p;
    }
    normalize_data(*chart_, d);
    return DiffForm(chart_, std::move(d));
}

DiffForm DiffForm::operator-(const DiffForm& o) const { return *this + (-o); }

DiffForm DiffForm::operator-() const {
    FormData d;
    for (auto& [t, p] : c_) d[t] = -p;
    return DiffForm(chart_, std::move(d));
}

DiffForm DiffForm::scale(const Poly& p) const {
    chart_->validate_vars(p);
    FormData d;
    for (auto& [t, q] : c_) d[t] = q * p;
    normalize_data(*chart_, d);
    return DiffForm(chart_, std::move(d));
}

// merge two strictly increasing tuples; nullopt on a shared generator
static std::optional<std::pair<int, GenTuple>> merge_tuples(const GenTuple& a, const GenTuple& b) {
    GenTuple m;
    m.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            m.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a-entries
            if ((a.size() - i) % 2) sign = -sign;
            m.push_back(b[j++]);
        }
    }
    while (i < a.size()) m.push_back(a[i++]);
    while (j < b.size()) m.push_back(b[j++]);
    return std::make_pair(sign, std::move(m));
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    require_same_chart(a, b);
    FormData out;
    for (auto& [ta, pa] : a.c_) {
        for (auto& [tb, pb] : b.c_) {
            auto m = merge_tuples(ta, tb);
            if (!m) continue;
            if (a.chart_->tuple_vanishes(m->second)) continue;
            Poly prod = pa * pb;
            if (m->first < 0) prod = -prod;
            auto [it, fresh] = out.try_emplace(m->second, prod);
            if (!fresh) it->second += prod;
        }
    }
    normalize_data(*a.chart_, out);
    return DiffForm(a.chart_, std::move(out));
}

DiffForm wpow(const DiffForm& a, unsigned n) {
    DiffForm r = DiffForm::scalar(a.chart(), Poly(Rational(1)));
    for (unsigned i = 0; i < n; ++i) r = wedge(r, a);
    return r;
}

DiffForm ext_d(const DiffForm& a) {
    const ChartPtr& ch = a.chart_;
    FormData out;
    auto add = [&](const GenTuple& t, const Poly& p) {
        if (p.is_zero() || ch->tuple_vanishes(t)) return;
        auto [it, fresh] = out.try_emplace(t, p);
        if (!fresh) it->second += p;
    };

    for (auto& [t, p] : a.c_) {
        // d(coefficient) ^ e_t
        for (VarId v : p.variables()) {
            Poly dp = p.derivative(v);
            if (dp.is_zero()) continue;
            for (auto& [gt, gc] : ch->var_diff[v]) {
                auto m = merge_tuples(gt, t);
                if (!m) continue;
                Poly contrib = dp * gc;
                if (m->first < 0) contrib = -contrib;
                add(m->second, contrib);
            }
        }
        // coefficient * d(e_t): the 2-form dg_j commutes with 1-forms, so
        // d(e_t) = sum_j (-1)^j dg_{t_j} ^ e_{t minus j}
        for (size_t j = 0; j < t.size(); ++j) {
            const FormData& dg = ch->gens[t[j]].differential;
            if (dg.empty()) continue;
            GenTuple rest;
            for (size_t i = 0; i < t.size(); ++i)
                if (i != j) rest.push_back(t[i]);
            int slot_sign = (j % 2) ? -1 : 1;
            for (auto& [gt, gc] : dg) {
                auto m = merge_tuples(gt, rest);
                if (!m) continue;
                Poly contrib = p * gc;
                if (slot_sign * m->first < 0) contrib = -contrib;
                add(m->second, contrib);
            }
        }
    }
    normalize_data(*ch, out);
    return DiffForm(ch, std::move(out));
}

VectorField::VectorField(ChartPtr c, std::map<int, Poly> coeffs) : chart_(std::move(c)), c_(std::move(coeffs)) {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first < 0 || it->first >= chart_->ngens()) throw InputError("vector field on unknown generator");
        it->second = chart_->nf(it->second);
        it = it->second.is_zero() ? c_.erase(it) : std::next(it);
    }
}

VectorField VectorField::dual(ChartPtr c, int gen_index) {
    std::map<int, Poly> m;
    m[gen_index] = Poly(Rational(1));
    return VectorField(std::move(c), std::move(m));
}

Poly VectorField::coefficient(int gen) const {
    auto it = c_.find(gen);
    return it == c_.end() ? Poly() : it->second;
}

VectorField VectorField::operator+(const VectorField& o) const {
    if (chart_ != o.chart_) throw InputError("vector fields on different charts");
    std::map<int, Poly> m = c_;
    for (auto& [g, p] : o.c_) {
        auto [it, fresh] = m.try_emplace(g, p);
        if (!fresh) it->second += p;
    }
    return VectorField(chart_, std::move(m));
}

VectorField VectorField::scale(const Poly& p) const {
    std::map<int, Poly> m;
    for (auto& [g, q] : c_) m[g] = q * p;
    return VectorField(chart_, std::move(m));
}

DiffForm contract(const VectorField& v, const DiffForm& a) {
    if (v.chart() != a.chart()) throw InputError("contraction across charts");
    const ChartPtr& ch = a.chart_;
    FormData out;
    for (auto& [t, p] : a.c_) {
        for (size_t j = 0; j < t.size(); ++j) {
            Poly vc = v.coefficient(t[j]);
            if (vc.is_zero()) continue;
            GenTuple rest;
            for (size_t i = 0; i < t.size(); ++i)
                if (i != j) rest.push_back(t[i]);
            Poly contrib = p * vc;
            if (j % 2) contrib = -contrib;
            auto [it, fresh] = out.try_emplace(rest, contrib);
            if (!fresh) it->second += contrib;
        }
    }
    normalize_data(*ch, out);
    return DiffForm(ch, std::move(out));
}

static Rational det_rational(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t k = 0; k < n; ++k) {
        size_t sel = k;
        while (sel < n && m[sel][k].is_zero()) ++sel;
        if (sel == n) return Rational(0);
        if (sel != k) {
            std::swap(m[sel], m[k]);
            det = -det;
        }
        det *= m[k][k];
        Rational inv = Rational(1) / m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            Rational f = m[i][k] * inv;
            if (f.is_zero()) continue;
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

Rational evaluate_at(const DiffForm& a, const std::map<VarId, Rational>& point,
                     const std::vector<VectorField>& frame) {
    const ChartPtr& ch = a.chart();
    ch->require_point(point);
    if (a.is_zero()) return Rational(0);
    if (!a.is_homogeneous()) throw InputError("evaluate_at needs a homogeneous form");
    if ((int)frame.size() != a.degree()) throw InputError("frame length must match the form degree");
    for (auto& v : frame)
        if (v.chart() != ch) throw InputError("frame vector on a different chart");

    size_t k = frame.size();
    Rational acc(0);
    for (auto& [t, p] : a.components()) {
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) m[i][j] = frame[j].coefficient(t[i]).eval(point);
        acc += p.eval(point) * det_rational(std::move(m));
    }
    return acc;
}

DiffForm group_iota(const ChartPtr& c, const RelationGroup& g) {
    FormData d;
    for (VarId v : g.vars) {
        int gi = c->gen_of_var(v);
        if (gi < 0) throw InputError("group variable without a coordinate differential");
        d[{gi}] = Poly::var(v);
    }
    return DiffForm::from_components(c, std::move(d));
}

// --- equality modulo relations -------------------------------------------

namespace {

// one pass of the pivot rewrite v*dv -> -sum(w*dw) over every group whose
// pivot carries a coordinate differential; returns true when a rule fired
bool rewrite_pass(const ChartPtr& ch, FormData& d) {
    bool fired = false;
    for (auto& g : ch->groups) {
        VarId pv = g.pivot();
        int pg = ch->gen_of_var(pv);
        if (pg < 0) continue;
        FormData next;
        auto add = [&](const GenTuple& t, const Poly& p) {
            if (p.is_zero() || ch->tuple_vanishes(t)) return;
            auto [it, fresh] = next.try_emplace(t, p);
            if (!fresh) {
                it->second += p;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        for (auto& [t, p] : d) {
            auto pos = std::find(t.begin(), t.end(), pg);
            if (pos == t.end()) {
                add(t, p);
                continue;
            }
            size_t j = (size_t)(pos - t.begin());
            Poly divisible, rest;
            for (auto& [m, c] : p.terms()) {
                if (m.degree_in(pv) > 0)
                    divisible.add_term(m, c);
                else
                    rest.add_term(m, c);
            }
            if (divisible.is_zero()) {
                add(t, p);
                continue;
            }
            fired = true;
            add(t, rest);
            // divisible = pv * q ; replace q * (pv dpv) by -q * sum(w dw)
            Poly q = *divisible.divide_exact(Poly::var(pv));
            GenTuple base;
            for (size_t i = 0; i < t.size(); ++i)
                if (i != j) base.push_back(t[i]);
            // moving dpv to the end of the tuple costs (size-1-j) swaps
            int out_sign = ((t.size() - 1 - j) % 2) ? -1 : 1;
            for (VarId w : g.vars) {
                if (w == pv) continue;
                int wg = ch->gen_of_var(w);
                if (wg < 0) throw InternalError("relation group mixes generator kinds");
                GenTuple single{wg};
                auto m = merge_tuples(base, single);
                if (!m) continue;
                Poly contrib = q * Poly::var(w);
                if (out_sign * m->first > 0) contrib = -contrib;  // the rewrite carries a minus sign
                add(m->second, contrib);
            }
        }
        d = std::move(next);
    }
    for (auto it = d.begin(); it != d.end();) {
        it->second = ch->nf(it->second);
        it = it->second.is_zero() ? d.erase(it) : std::next(it);
    }
    return fired;
}

FormData reduce_to_fixpoint(const ChartPtr& ch, FormData d) {
    for (int pass = 0; pass < 100; ++pass)
        if (!rewrite_pass(ch, d)) break;
    return d;
}

// basis of tangent vector fields at pt: duals of abstract generators and of
// ungrouped coordinates, plus the orthogonal complement of the point inside
// each relation group that carries coordinate differentials
std::vector<VectorField> tangent_basis(const ChartPtr& ch, const std::map<VarId, Rational>& pt) {
    std::vector<VectorField> basis;
    std::vector<bool> handled(ch->ngens(), false);
    for (auto& g : ch->groups) {
        bool coords = true;
        for (VarId v : g.vars) coords = coords && ch->gen_of_var(v) >= 0;
        if (!coords) continue;
        size_t k = g.vars.size(), p = 0;
        while (p < k && pt.at(g.vars[p]).is_zero()) ++p;
        for (size_t j = 0; j < k; ++j) {
            handled[ch->gen_of_var(g.vars[j])] = true;
            if (j == p) continue;
            std::map<int, Poly> m;
            m[ch->gen_of_var(g.vars[j])] = Poly(Rational(1));
            m[ch->gen_of_var(g.vars[p])] = Poly(-(pt.at(g.vars[j]) / pt.at(g.vars[p])));
            basis.push_back(VectorField(ch, std::move(m)));
        }
    }
    for (int i = 0; i < ch->ngens(); ++i)
        if (!handled[i]) basis.push_back(VectorField::dual(ch, i));
    return basis;
}

// advance a strictly increasing index combination inside [0, n)
bool next_combination(std::vector<size_t>& idx, size_t n) {
    size_t k = idx.size();
    for (size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::optional<std::map<VarId, Rational>> find_form_witness(const ChartPtr& ch, const DiffForm& residue) {
    std::vector<VarId> free_vars;
    for (VarId v = 0; v < ch->nvars(); ++v) {
        bool grouped = false;
        for (auto& g : ch->groups) grouped = grouped || g.contains(v);
        if (!grouped) free_vars.push_back(v);
    }
    SpherePointSource src(ch->groups, free_vars);
    std::map<size_t, FormData> by_degree;
    for (auto& [t, p] : residue.components())
        if (!t.empty()) by_degree[t.size()][t] = p;

    for (unsigned long long n = 0; n < 50; ++n) {
        auto pt = src.point(n);
        auto basis = tangent_basis(ch, pt);
        for (auto& [deg, fd] : by_degree) {
            if (deg > basis.size()) continue;
            DiffForm piece = DiffForm::from_components(ch, FormData(fd));
            if (piece.is_zero()) continue;
            std::vector<size_t> idx(deg);
            for (size_t i = 0; i < deg; ++i) idx[i] = i;
            do {
                std::vector<VectorField> frame;
                for (size_t i : idx) frame.push_back(basis[i]);
                if (!evaluate_at(piece, pt, frame).is_zero()) return pt;
            } while (next_combination(idx, basis.size()));
        }
    }
    return std::nullopt;
}

} // namespace

FormEqResult form_is_zero(const DiffForm& a) {
    const ChartPtr& ch = a.chart();
    FormEqResult res;

    FormData d = reduce_to_fixpoint(ch, a.components());
    if (d.empty()) {
        res.equal = true;
        res.residue = DiffForm::zero(ch);
        res.conclusive = true;
        return res;
    }

    // denominator clearing: multiply by pivot variables of groups whose
    // pivots carry differentials, singly and then jointly
    std::vector<Poly> multipliers;
    Poly all(Rational(1));
    bool any = false;
    for (auto& g : ch->groups) {
        if (ch->gen_of_var(g.pivot()) < 0) continue;
        multipliers.push_back(Poly::var(g.pivot()));
        all *= Poly::var(g.pivot());
        any = true;
    }
    if (any && multipliers.size() > 1) multipliers.push_back(all);
    for (auto& mult : multipliers) {
        FormData scaled;
        for (auto& [t, p] : d) scaled[t] = p * mult;
        if (reduce_to_fixpoint(ch, std::move(scaled)).empty()) {
            res.equal = true;
            res.cleared = true;
            res.conclusive = true;
            res.residue = DiffForm::zero(ch);
            res.note = "zero after pivot clearing";
            return res;
        }
    }

    res.equal = false;
    res.residue = DiffForm::from_components(ch, d);

    // A degree-0 residue is a scalar: its normal form is a complete decision
    // for the relation ideal, so a nonzero scalar residue is a refutation
    // outright (the real spheres are Zariski-dense in the complex variety).
    bool scalar_only = true;
    for (auto& [t, p] : res.residue.components()) scalar_only = scalar_only && t.empty();
    if (scalar_only) {
        res.conclusive = true;
        std::vector<VarId> free_vars;
        for (VarId v = 0; v < ch->nvars(); ++v) {
            bool grouped = false;
            for (auto& g : ch->groups) grouped = grouped || g.contains(v);
            if (!grouped) free_vars.push_back(v);
        }
        SpherePointSource src(ch->groups, free_vars);
        for (unsigned long long n = 0; n < 500; ++n) {
            auto pt = src.point(n);
            if (!res.residue.component({}).eval(pt).is_zero()) {
                res.witness = pt;
                res.note = "scalar residue is outside the relation ideal; nonzero at the witness point";
                return res;
            }
        }
        res.note = "scalar residue is outside the relation ideal";
        return res;
    }

    // Degree >= 1: certify non-vanishing by evaluating the residue on frames
    // of tangent vectors at exact points. Skipped on bundle-model charts,
    // where some generators are formal symbols rather than directions.
    if (!ch->base_dim) {
        auto wit = find_form_witness(ch, res.residue);
        if (wit) {
            res.conclusive = true;
            res.witness = *wit;
            res.note = "residue evaluates nonzero on a tangent frame at the witness point";
            return res;
        }
    }
    res.note = "residue did not reduce to zero (inconclusive)";
    return res;
}

FormEqResult form_eq(const DiffForm& a, const DiffForm& b) {
    require_same_chart(a, b);
    return form_is_zero(a - b);
}

std::string DiffForm::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [t, p] : c_) {
        if (!first) os << " + ";
        first = false;
        if (t.empty()) {
            os << "(" << p.str(chart_->vars) << ")";
            continue;
        }
        os << "(" << p.str(chart_->vars) << ")*";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) os << "^";
            os << chart_->gens[t[i]].name;
        }
    }
    return os.str();
}

std::string VectorField::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [g, p] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str(chart_->vars) << ")*@" << chart_->gens[g].name;
    }
    return os.str();
}

} // namespace csl
