#include "csl/chart.hpp"

#include "csl/errors.hpp"

namespace csl {

int Chart::find_var(const std::string& n) const {
    for (int i = 0; i < nvars(); ++i)
        if (vars[i] == n) return i;
    return -1;
}

int Chart::find_gen(const std::string& n) const {
    for (int i = 0; i < ngens(); ++i)
        if (gens[i].name == n) return i;
    return -1;
}

int Chart::gen_of_var(VarId v) const {
    for (int i = 0; i < ngens(); ++i)
        if (gens[i].coord_var == v) return i;
    return -1;
}

void Chart::validate_vars(const Poly& p) const {
    for (VarId v : p.variables())
        if (v < 0 || v >= nvars()) throw InputError("polynomial uses an undeclared variable");
}

bool Chart::point_on_relations(const std::map<VarId, Rational>& pt) const {
    for (auto& g : groups) {
        Rational s(0);
        for (VarId v : g.vars) {
            auto it = pt.find(v);
            if (it == pt.end()) return false;
            s += it->second * it->second;
        }
        if (s != Rational(1)) return false;
    }
    return true;
}

void Chart::require_point(const std::map<VarId, Rational>& pt) const {
    for (int v = 0; v < nvars(); ++v)
        if (!pt.count(v)) throw InputError("point misses a value for variable " + vars[v]);
    if (!point_on_relations(pt)) throw InputError("point violates a chart relation");
}

int Chart::horizontal_count(const GenTuple& t) const {
    int n = 0;
    for (int g : t)
        if (gens[g].horizontal) ++n;
    return n;
}

ChartBuilder::ChartBuilder(std::string name) : c_(std::make_shared<Chart>()) { c_->name = std::move(name); }

VarId ChartBuilder::add_var_raw(const std::string& n) {
    if (n.empty() || n[0] == 'd') throw InputError("variable names must not begin with 'd': " + n);
    if (c_->find_var(n) >= 0) throw InputError("duplicate variable " + n);
    c_->vars.push_back(n);
    c_->var_diff.emplace_back();
    return c_->nvars() - 1;
}

VarId ChartBuilder::add_var(const std::string& n, bool horizontal) {
    VarId v = add_var_raw(n);
    GenInfo gi;
    gi.name = "d" + n;
    gi.coord_var = v;
    gi.horizontal = horizontal;
    c_->gens.push_back(gi);
    c_->var_diff[v][{c_->ngens() - 1}] = Poly(Rational(1));
    return v;
}

VarId ChartBuilder::add_param(const std::string& n) { return add_var_raw(n); }

void ChartBuilder::add_group(const std::vector<VarId>& vs) {
    for (VarId v : vs)
        if (v < 0 || v >= c_->nvars()) throw InputError("relation group over undeclared variable");
    c_->groups.push_back(RelationGroup{vs});
    validate_groups(c_->groups);
}

int ChartBuilder::add_abstract_gen(const std::string& n, FormData differential, bool horizontal) {
    if (n.empty() || n[0] == 'd') throw InputError("generator names must not begin with 'd': " + n);
    if (c_->find_gen(n) >= 0) throw InputError("duplicate generator " + n);
    for (auto& [t, p] : differential) {
        if (t.size() != 2) throw InputError("declared differential must be a 2-form");
        for (int g : t)
            if (g < 0 || g >= c_->ngens())
                throw InputError("differential of " + n + " references an undeclared generator");
        c_->validate_vars(p);
    }
    GenInfo gi;
    gi.name = n;
    gi.horizontal = horizontal;
    gi.differential = std::move(differential);
    c_->gens.push_back(gi);
    return c_->ngens() - 1;
}

std::pair<VarId, VarId> ChartBuilder::add_trig_pair(const std::string& s, const std::string& c,
                                                    const std::string& gen_name, int factor,
                                                    bool horizontal) {
    VarId sv = add_var_raw(s);
    VarId cv = add_var_raw(c);
    int g = add_abstract_gen(gen_name, {}, horizontal);
    c_->var_diff[sv][{g}] = Poly::var(cv).scale(Rational(factor));
    c_->var_diff[cv][{g}] = Poly::var(sv).scale(Rational(-factor));
    add_group({sv, cv});
    return {sv, cv};
}

void ChartBuilder::set_sphere() {
    if (c_->groups.size() != 1) throw InputError("sphere mode needs exactly one relation group");
    c_->mode = ChartMode::Sphere;
    c_->sphere_group = 0;
}

void ChartBuilder::set_base_dim(int d) { c_->base_dim = d; }

ChartPtr ChartBuilder::build() {
    if (c_->mode == ChartMode::Sphere) {
        auto& g = c_->groups[c_->sphere_group];
        for (int i = 0; i < c_->ngens(); ++i) {
            int v = c_->gens[i].coord_var;
            if (v >= 0 && !g.contains(v))
                throw InputError("sphere mode: every coordinate differential must belong to the host sphere group");
        }
    }
    return c_;
}

ChartPtr ambient_chart(const std::string& name, const std::vector<std::string>& vars) {
    ChartBuilder b(name);
    for (auto& v : vars) b.add_var(v);
    return b.build();
}

ChartPtr sphere_chart(const std::string& name, const std::vector<std::string>& vars) {
    ChartBuilder b(name);
    std::vector<VarId> ids;
    for (auto& v : vars) ids.push_back(b.add_var(v));
    b.add_group(ids);
    b.set_sphere();
    return b.build();
}

} // namespace csl
