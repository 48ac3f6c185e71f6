#pragma once

/*
 * A Chart is the coordinate context differential forms live on: scalar
 * variables (with unit-sphere relation groups), a basis of 1-form
 * generators, and a differential table. Generators are either coordinate
 * differentials d<var> or abstract symbols with a declared differential
 * (connection forms and angle differentials). Variables without a
 * generator of their own map into the table (trig pairs, parameters).
 *
 * Charts modeling a circle bundle over a base carry base_dim; components
 * whose generator tuple holds more than base_dim horizontal (pullback)
 * generators vanish identically on such a chart.
 */

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csl/relations.hpp"

namespace csl {

using GenTuple = std::vector<int>;
using FormData = std::map<GenTuple, Poly>;

struct GenInfo {
    std::string name;
    int coord_var = -1;  // >= 0 when this is d<var>
    bool horizontal = false;
    FormData differential;  // degree 2; empty means closed
};

enum class ChartMode { Ambient, Sphere };

class Chart {
public:
    std::string name;
    std::vector<std::string> vars;
    std::vector<RelationGroup> groups;
    std::vector<GenInfo> gens;
    std::vector<FormData> var_diff;  // degree-1 data per variable; empty = 0
    ChartMode mode = ChartMode::Ambient;
    int sphere_group = -1;
    std::optional<int> base_dim;

    int nvars() const { return (int)vars.size(); }
    int ngens() const { return (int)gens.size(); }
    int dimension() const { return ngens(); }

    int find_var(const std::string& n) const;
    int find_gen(const std::string& n) const;
    // index of the coordinate generator of v, or -1
    int gen_of_var(VarId v) const;

    Poly nf(const Poly& p) const { return normal_form(p, groups); }
    void validate_vars(const Poly& p) const;
    bool point_on_relations(const std::map<VarId, Rational>& pt) const;
    // throws InputError when the point misses variables or violates a relation
    void require_point(const std::map<VarId, Rational>& pt) const;

    int horizontal_count(const GenTuple& t) const;
    bool tuple_vanishes(const GenTuple& t) const {
        return base_dim && horizontal_count(t) > *base_dim;
    }
};

using ChartPtr = std::shared_ptr<const Chart>;

class ChartBuilder {
public:
    explicit ChartBuilder(std::string name);

    // coordinate variable with its own generator d<name>
    VarId add_var(const std::string& n, bool horizontal = false);
    // scalar parameter with zero differential (family coefficients, constants)
    VarId add_param(const std::string& n);
    void add_group(const std::vector<VarId>& vs);
    int add_abstract_gen(const std::string& n, FormData differential = {}, bool horizontal = false);
    // sin/cos pair s,c with relation {s,c} and angle generator g:
    // ds = factor*c*g, dc = -factor*s*g
    std::pair<VarId, VarId> add_trig_pair(const std::string& s, const std::string& c,
                                          const std::string& gen_name, int factor = 1,
                                          bool horizontal = false);
    void set_sphere();  // mark the unique group as the host sphere
    void set_base_dim(int d);

    ChartPtr build();

private:
    std::shared_ptr<Chart> c_;
    VarId add_var_raw(const std::string& n);
};

// ambient R^n chart with coordinate differentials
ChartPtr ambient_chart(const std::string& name, const std::vector<std::string>& vars);
// unit sphere of R^n in sphere mode
ChartPtr sphere_chart(const std::string& name, const std::vector<std::string>& vars);

} // namespace csl
