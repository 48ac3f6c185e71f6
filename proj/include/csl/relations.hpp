#pragma once

/*
 * Unit-sphere relation groups and the normal form they induce.
 *
 * A RelationGroup over variables (v1..vk) imposes v1^2+...+vk^2 = 1. The
 * normal form rewrites pivot^2 -> 1 - (sum of the other squares), where the
 * pivot is the last declared variable. One exhaustive pass per group is
 * confluent because the replacement introduces no pivot of any group; the
 * rules form a Groebner basis of the relation ideal (the leading monomials
 * pivot^2 of distinct groups are pairwise coprime), so the scalar normal
 * form decides ideal membership exactly.
 */

#include <vector>

#include "csl/poly.hpp"

namespace csl {

struct RelationGroup {
    std::vector<VarId> vars;  // at least two, pairwise distinct
    VarId pivot() const { return vars.back(); }
    bool contains(VarId v) const {
        for (VarId w : vars)
            if (w == v) return true;
        return false;
    }
    // v1^2 + ... + vk^2 - 1
    Poly relation_poly() const;
};

void validate_groups(const std::vector<RelationGroup>& groups);

// extra single-monomial rewrite lhs -> rhs, applied to fixpoint after the
// group rules; heuristic helper for linear relations like sum(phi_i*C_i)=1
struct MonomialRule {
    Monomial lhs;
    Poly rhs;
};

Poly normal_form(const Poly& p, const std::vector<RelationGroup>& groups);
Poly normal_form(const Poly& p, const std::vector<RelationGroup>& groups,
                 const std::vector<MonomialRule>& extra);

// Exact rational points on the product of unit spheres.
//
// A group of size k is parametrized by k-1 rational parameters t via the
// stereographic map x = (2t1, ..., 2t_{k-1}, 1 - |t|^2) / (1 + |t|^2); every
// produced point satisfies the relation exactly. Variables outside every
// group are swept over a small rational grid. Enumeration is deterministic.
class SpherePointSource {
public:
    SpherePointSource(std::vector<RelationGroup> groups, std::vector<VarId> free_vars);
    // n'th point of the deterministic sequence
    std::map<VarId, Rational> point(unsigned long long n) const;

private:
    std::vector<RelationGroup> groups_;
    std::vector<VarId> free_;
};

// convenience: the n'th exact rational point on the unit sphere of dimension
// vars.size()-1 (half-angle parametrization)
std::map<VarId, Rational> rational_sphere_point(const std::vector<VarId>& vars, unsigned long long n);

} // namespace csl
