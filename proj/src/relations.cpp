#include "csl/relations.hpp"

#include <set>

#include "csl/errors.hpp"

namespace csl {

Poly RelationGroup::relation_poly() const {
    Poly p(Rational(-1));
    for (VarId v : vars) p += Poly::var(v, 2);
    return p;
}

void validate_groups(const std::vector<RelationGroup>& groups) {
    std::set<VarId> seen;
    for (auto& g : groups) {
        if (g.vars.size() < 2) throw InputError("relation group needs at least two variables");
        for (VarId v : g.vars)
            if (!seen.insert(v).second) throw InputError("relation groups must be pairwise disjoint");
    }
}

static Poly reduce_group(const Poly& p, const RelationGroup& g) {
    VarId pv = g.pivot();
    // 1 - sum of other squares
    Poly repl(Rational(1));
    for (VarId v : g.vars)
        if (v != pv) repl -= Poly::var(v, 2);

    Poly out;
    for (auto& [m, c] : p.terms()) {
        int e = m.degree_in(pv);
        if (e < 2) {
            out.add_term(m, c);
            continue;
        }
        Monomial base = m.erase_var(pv);
        if (e % 2) base = base * Monomial::var(pv, 1);
        out += Poly::term(c, base) * repl.pow((unsigned)(e / 2));
    }
    return out;
}

Poly normal_form(const Poly& p, const std::vector<RelationGroup>& groups) {
    return normal_form(p, groups, {});
}

Poly normal_form(const Poly& p, const std::vector<RelationGroup>& groups,
                 const std::vector<MonomialRule>& extra) {
    validate_groups(groups);
    Poly r = p;
    for (auto& g : groups) r = reduce_group(r, g);
    if (!extra.empty()) {
        for (int pass = 0; pass < 64; ++pass) {
            bool fired = false;
            for (auto& rule : extra) {
                Poly out;
                for (auto& [m, c] : r.terms()) {
                    if (rule.lhs.divides(m)) {
                        out += Poly::term(c, rule.lhs.divide(m)) * rule.rhs;
                        fired = true;
                    } else {
                        out.add_term(m, c);
                    }
                }
                r = out;
            }
            if (fired)
                for (auto& g : groups) r = reduce_group(r, g);
            else
                break;
        }
    }
    return r;
}

// --- rational sphere points ---------------------------------------------

// deterministic rational parameter sequence: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ...
static Rational param_value(unsigned long long k) {
    if (k == 0) return Rational(0);
    unsigned long long i = (k - 1) / 2 + 1;
    int sign = (k % 2) ? 1 : -1;
    // enumerate p/q over a diagonal: i -> (num, den)
    unsigned long long d = 1, n = i;
    while (n > d + 1) {
        n -= d + 1;
        ++d;
    }
    Rational r{Int(n), Int(d)};
    return sign > 0 ? r : -r;
}

std::map<VarId, Rational> rational_sphere_point(const std::vector<VarId>& vars, unsigned long long n) {
    size_t k = vars.size();
    std::map<VarId, Rational> pt;
    if (k == 1) {
        pt[vars[0]] = (n % 2) ? Rational(-1) : Rational(1);
        return pt;
    }
    // spread n across k-1 parameters by mixed radix
    std::vector<Rational> t(k - 1);
    unsigned long long rest = n;
    for (size_t i = 0; i < k - 1; ++i) {
        t[i] = param_value(rest % 23);
        rest /= 23;
    }
    Rational norm(0);
    for (auto& ti : t) norm += ti * ti;
    Rational denom = norm + Rational(1);
    for (size_t i = 0; i < k - 1; ++i) pt[vars[i]] = Rational(2) * t[i] / denom;
    pt[vars[k - 1]] = (Rational(1) - norm) / denom;
    return pt;
}

SpherePointSource::SpherePointSource(std::vector<RelationGroup> groups, std::vector<VarId> free_vars)
    : groups_(std::move(groups)), free_(std::move(free_vars)) {}

std::map<VarId, Rational> SpherePointSource::point(unsigned long long n) const {
    std::map<VarId, Rational> pt;
    unsigned long long rest = n;
    for (auto& g : groups_) {
        auto sub = rational_sphere_point(g.vars, rest % 101);
        rest /= 101;
        pt.insert(sub.begin(), sub.end());
    }
    for (VarId v : free_) {
        pt[v] = param_value(rest % 17);
        rest /= 17;
    }
    return pt;
}

} // namespace csl
